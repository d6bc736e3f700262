#pragma once

#include <cstdint>

namespace swiptrc {

// Power gains and noise levels of the three-node relay channel: source S,
// energy-harvesting relay R, destination D. Gains are linear power ratios
// (pathloss times fading), noises are variances in the same units.
// The relay front end splits its noise into an antenna part (sigma_a2,
// hit before any power split) and a conversion part (sigma_b2, added
// after), so the full decoding noise at R is their sum.
struct ChannelState {
  double h_sd = 0.0;  // source -> destination
  double h_sr = 0.0;  // source -> relay
  double h_rd = 0.0;  // relay -> destination
  double sigma_a2 = 1.0;
  double sigma_b2 = 1.0;
  double sigma_d2 = 1.0;

  double sigma_r2() const { return sigma_a2 + sigma_b2; }
};

// Transmit power budget and energy-conversion efficiency of the source,
// plus the step used by the scan-based optimizers.
struct SystemParams {
  double p_s = 1.0;      // source transmit power
  double eta = 1.0;      // harvested-energy conversion efficiency, in (0, 1]
  double epsilon = 1e-3; // linear-search resolution
};

// Relay placement relative to the unit-length S-D axis, described by the
// distance ratio zeta = d_rd / d_sr, the angle theta at the relay between
// the two links, and the pathloss exponent kappa.
struct Topology {
  double zeta = 1.0;
  double theta = 3.141592653589793;
  double kappa = 4.0;
};

// Pathloss gains of the two relay links normalised by the direct link.
struct GainPair {
  double g_sr = 1.0;
  double g_rd = 1.0;
};

// Maps relay geometry to normalised pathloss gains. The law of cosines
// ties d_sr to (zeta, theta) for unit d_sd, giving
//   g_sr = (1 + zeta^2 - 2 zeta cos(theta))^(kappa/2),  g_rd = g_sr / zeta^kappa.
// Throws std::domain_error when the geometry degenerates (the bracket or
// zeta vanish, i.e. the relay collides with an endpoint).
GainPair gains_from_geometry(const Topology& topo);

// Same mapping for a relay at coordinates (x, y) with the source at the
// origin and the destination at (1, 0): each link gain is d^(-kappa).
// Degenerate when the relay sits on either endpoint.
GainPair gains_from_coordinates(double x, double y, double kappa);

// Shannon rate of a scalar Gaussian channel at the given SNR, in nats.
// Negative SNR throws std::domain_error.
double capacity(double snr);

// The four scalars every rate expression reduces to:
//   a = advantage of the relay link over the direct one, C_sr - C_sd
//   b = direct-link rate C_sd
//   c = harvested-relay SNR scale, eta * h_sr * h_rd * p_s / sigma_d2
//   m = direct-link SNR, p_s * h_sd / sigma_d2  (so b = ln(1 + m))
struct RateCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double m = 0.0;
};

RateCoefficients coefficients(const ChannelState& ch, const SystemParams& sys);

// Draws an instance with unit-mean exponentially distributed power gains
// (Rayleigh fading magnitudes squared), for randomized property tests.
// Deterministic in the seed.
ChannelState random_channel(std::uint64_t seed, double sigma_a2,
                            double sigma_b2, double sigma_d2);

}  // namespace swiptrc
