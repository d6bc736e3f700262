#include "swiptrc/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace swiptrc {

GainPair gains_from_geometry(const Topology& topo) {
  const double bracket =
      1.0 + topo.zeta * topo.zeta - 2.0 * topo.zeta * std::cos(topo.theta);
  if (!(bracket > 1e-12) || !(topo.zeta > 1e-12)) {
    throw std::domain_error("gains_from_geometry: degenerate relay placement");
  }
  GainPair g;
  g.g_sr = std::pow(bracket, 0.5 * topo.kappa);
  g.g_rd = g.g_sr / std::pow(topo.zeta, topo.kappa);
  return g;
}

GainPair gains_from_coordinates(double x, double y, double kappa) {
  const double d_sr = std::hypot(x, y);
  const double d_rd = std::hypot(x - 1.0, y);
  if (!(d_sr > 1e-9) || !(d_rd > 1e-9)) {
    throw std::domain_error("gains_from_coordinates: relay on an endpoint");
  }
  return {std::pow(d_sr, -kappa), std::pow(d_rd, -kappa)};
}

double capacity(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("capacity: negative SNR");
  return std::log1p(snr);
}

RateCoefficients coefficients(const ChannelState& ch, const SystemParams& sys) {
  RateCoefficients k;
  k.m = sys.p_s * ch.h_sd / ch.sigma_d2;
  k.b = std::log1p(k.m);
  k.a = capacity(sys.p_s * ch.h_sr / ch.sigma_r2()) - k.b;
  k.c = sys.eta * ch.h_sr * ch.h_rd * sys.p_s / ch.sigma_d2;
  return k;
}

ChannelState random_channel(std::uint64_t seed, double sigma_a2,
                            double sigma_b2, double sigma_d2) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  ChannelState ch;
  ch.h_sd = exp1(rng);
  ch.h_sr = exp1(rng);
  ch.h_rd = exp1(rng);
  ch.sigma_a2 = sigma_a2;
  ch.sigma_b2 = sigma_b2;
  ch.sigma_d2 = sigma_d2;
  return ch;
}

}  // namespace swiptrc
