#include "swiptrc/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swiptrc {
namespace {

void check_unit_interval(double v, const char* name, bool open) {
  const bool ok = open ? (v > 0.0 && v < 1.0) : (v >= 0.0 && v <= 1.0);
  if (!ok) {
    throw std::domain_error(std::string(name) + " outside its unit interval");
  }
}

// Destination-side rate of the collaboration phase, per channel use.
double accumulation_rate(double relay_snr, ReceivingMethod method,
                         const RateCoefficients& k) {
  if (method == ReceivingMethod::InfoAccumulation) {
    return k.b + std::log1p(relay_snr);
  }
  return std::log1p(k.m + relay_snr);
}

}  // namespace

double relay_power(const ProtocolParams& params, const ChannelState& ch,
                   const SystemParams& sys) {
  const double harvest_scale = sys.eta * ch.h_sr * sys.p_s;
  if (const auto* id = std::get_if<IdealSplit>(&params)) {
    check_unit_interval(id->lambda, "lambda", true);
    return harvest_scale * id->lambda / (1.0 - id->lambda);
  }
  if (const auto* ps = std::get_if<PowerSplit>(&params)) {
    check_unit_interval(ps->lambda, "lambda", true);
    check_unit_interval(ps->rho, "rho", false);
    return ps->rho * harvest_scale * ps->lambda / (1.0 - ps->lambda);
  }
  const auto& ts = std::get<TimeSwitch>(params);
  if (ts.alpha3 <= 0.0) {
    if (ts.alpha2 > 0.0) {
      throw std::domain_error("relay_power: harvested energy with no transmit phase");
    }
    return 0.0;
  }
  return ts.alpha2 * harvest_scale / ts.alpha3;
}

double rate_ideal(double lambda, ReceivingMethod method,
                  const RateCoefficients& k) {
  check_unit_interval(lambda, "lambda", true);
  const double t = lambda / (1.0 - lambda);
  const double relay_arm = lambda * (k.a + k.b);
  const double dest_arm =
      lambda * k.b + (1.0 - lambda) * accumulation_rate(k.c * t, method, k);
  return std::min(relay_arm, dest_arm);
}

double rate_ps(double lambda, double rho, ReceivingMethod method,
               const ChannelState& ch, const SystemParams& sys) {
  check_unit_interval(lambda, "lambda", true);
  check_unit_interval(rho, "rho", false);
  const RateCoefficients k = coefficients(ch, sys);
  // Splitting off rho of the received power before conversion rescales the
  // decoder SNR; the conversion noise sigma_b2 is not split.
  const double keep = 1.0 - rho;
  const double c_sr_ps =
      std::log1p(keep * sys.p_s * ch.h_sr / (keep * ch.sigma_a2 + ch.sigma_b2));
  const double t = lambda / (1.0 - lambda);
  const double relay_arm = lambda * c_sr_ps;
  const double dest_arm =
      lambda * k.b + (1.0 - lambda) * accumulation_rate(rho * k.c * t, method, k);
  return std::min(relay_arm, dest_arm);
}

double rate_ts(const std::array<double, 3>& alpha, ReceivingMethod method,
               const ChannelState& ch, const SystemParams& sys) {
  const double sum = alpha[0] + alpha[1] + alpha[2];
  if (std::fabs(sum - 1.0) > 1e-9 || alpha[0] < 0.0 || alpha[1] < 0.0 ||
      alpha[2] < 0.0) {
    throw std::domain_error("rate_ts: fractions off the unit simplex");
  }
  const RateCoefficients k = coefficients(ch, sys);
  const double c_sr = k.a + k.b;
  if (alpha[2] <= 0.0) {
    if (alpha[1] > 1e-12) {
      throw std::domain_error("rate_ts: harvest phase with no transmit phase");
    }
    return std::min(alpha[0] * c_sr, k.b);
  }
  const double relay_snr = k.c * alpha[1] / alpha[2];
  const double relay_arm = alpha[0] * c_sr;
  const double dest_arm = (alpha[0] + alpha[1]) * k.b +
                          alpha[2] * accumulation_rate(relay_snr, method, k);
  return std::min(relay_arm, dest_arm);
}

std::optional<double> ps_rho_threshold(const ChannelState& ch) {
  // Full diversion is harmless when there is no direct link to beat.
  if (ch.h_sd <= 0.0) return 1.0;
  const double denom = ch.h_sr * ch.sigma_d2 - ch.h_sd * ch.sigma_a2;
  if (denom <= 0.0) return std::nullopt;
  const double rho_th = 1.0 - ch.h_sd * ch.sigma_b2 / denom;
  if (rho_th <= 0.0) return std::nullopt;
  return rho_th;
}

}  // namespace swiptrc
