#include "swiptrc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swiptrc {
namespace {

void check_epsilon(const SystemParams& sys) {
  if (!(sys.epsilon > 0.0 && sys.epsilon <= 0.5)) {
    throw std::domain_error("scan resolution epsilon outside (0, 0.5]");
  }
}

}  // namespace

double rate_budgeted(double lambda, double p_src, double p_relay,
                     ReceivingMethod method, const ChannelState& ch) {
  const double c_sr = std::log1p(p_src * ch.h_sr / ch.sigma_r2());
  const double c_sd = std::log1p(p_src * ch.h_sd / ch.sigma_d2);
  double j;
  if (method == ReceivingMethod::InfoAccumulation) {
    j = c_sd + std::log1p(p_relay * ch.h_rd / ch.sigma_d2);
  } else {
    j = std::log1p((p_src * ch.h_sd + p_relay * ch.h_rd) / ch.sigma_d2);
  }
  return std::min(lambda * c_sr, lambda * c_sd + (1.0 - lambda) * j);
}

double rate_direct(const ChannelState& ch, const SystemParams& sys) {
  return std::log1p(sys.p_s * ch.h_sd / ch.sigma_d2);
}

BaselineAllocation optimize_nonswipt_rc(const ChannelState& ch,
                                        const SystemParams& sys,
                                        ReceivingMethod method) {
  check_epsilon(sys);
  const double eps = sys.epsilon;
  const long n_lambda = static_cast<long>(1.0 / eps + 1e-9) - 1;
  const long n_power = static_cast<long>(1.0 / eps + 1e-9);

  BaselineAllocation best;
  best.rate = -1.0;
  long evals = 0;
  for (long j = 1; j <= n_lambda; ++j) {
    const double lambda = static_cast<double>(j) * eps;
    for (long i = 0; i <= n_power; ++i) {
      const double p_src = std::min(static_cast<double>(i) * eps, 1.0) * sys.p_s;
      // The relay absorbs the remaining budget; its energy is spent over
      // the collaboration fraction, hence the 1/(1 - lambda) scale.
      const double p_relay = (sys.p_s - p_src) / (1.0 - lambda);
      const double r = rate_budgeted(lambda, p_src, p_relay, method, ch);
      ++evals;
      if (r > best.rate) {
        best.rate = r;
        best.lambda = lambda;
        best.p_s = p_src;
        best.p_r = p_relay;
      }
    }
  }
  best.scan_evaluations = evals;
  return best;
}

BaselineAllocation rate_nonswipt_norc(const ChannelState& ch,
                                      const SystemParams& sys) {
  check_epsilon(sys);
  const double eps = sys.epsilon;
  const long n_power = static_cast<long>(1.0 / eps + 1e-9);

  BaselineAllocation best;
  best.rate = -1.0;
  best.lambda = 0.5;
  long evals = 0;
  for (long i = 0; i <= n_power; ++i) {
    const double p_src = std::min(static_cast<double>(i) * eps, 1.0) * sys.p_s;
    const double p_relay = 2.0 * (sys.p_s - p_src);
    const double r = rate_budgeted(0.5, p_src, p_relay,
                                   ReceivingMethod::EnergyAccumulation, ch);
    ++evals;
    if (r > best.rate) {
      best.rate = r;
      best.p_s = p_src;
      best.p_r = p_relay;
    }
  }
  best.scan_evaluations = evals;
  return best;
}

}  // namespace swiptrc
