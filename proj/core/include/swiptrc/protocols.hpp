#pragma once

#include <array>
#include <optional>
#include <variant>

#include "swiptrc/channel.hpp"

namespace swiptrc {

// How the destination combines the source block with the relay block once
// the relay has decoded. InfoAccumulation decodes the two transmissions
// separately and adds mutual information; EnergyAccumulation combines them
// coherently and adds SNRs, which is never better.
enum class ReceivingMethod { InfoAccumulation, EnergyAccumulation };

// Time/power split of one fountain-coded block, per protocol.
//
// Ideal: the relay listens for a fraction lambda of the block while
// harvesting for free, then retransmits for the remaining 1 - lambda.
struct IdealSplit {
  double lambda = 0.5;
};

// Power splitting: during the listening phase a fraction rho of the
// received power is diverted to the harvester, the rest to the decoder.
struct PowerSplit {
  double lambda = 0.5;
  double rho = 0.0;
};

// Time switching: the block is divided into a decode phase alpha1, a
// dedicated harvest phase alpha2 and a relay transmit phase alpha3;
// the fractions lie on the unit simplex.
struct TimeSwitch {
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
};

using ProtocolParams = std::variant<IdealSplit, PowerSplit, TimeSwitch>;

// Power the relay can spend in its transmit phase, funded entirely by the
// energy harvested from the source signal. Throws std::domain_error when
// the transmit phase has zero length but stored energy to flush (lambda
// at an endpoint, or alpha3 = 0 with alpha2 > 0).
double relay_power(const ProtocolParams& params, const ChannelState& ch,
                   const SystemParams& sys);

// End-to-end decodable rate of the ideal protocol at listening fraction
// lambda in (0, 1), in nats per symbol. The rate is the smaller of what
// the relay can decode, lambda * (a + b), and what the destination
// accumulates, lambda * b + (1 - lambda) * J with J the collaboration-
// phase rate. Degenerate c = 0 is allowed (the relay then never helps
// beyond the direct link).
double rate_ideal(double lambda, ReceivingMethod method,
                  const RateCoefficients& k);

// Same for power splitting: rho in [0, 1] reduces the relay's decoding
// SNR while scaling the harvested power. rho = 0 reproduces rate_ideal
// with c = 0; rho = 1 leaves the relay deaf, rate 0.
double rate_ps(double lambda, double rho, ReceivingMethod method,
               const ChannelState& ch, const SystemParams& sys);

// Same for time switching at a simplex point (alpha1, alpha2, alpha3).
// The simplex constraint is enforced to 1e-9; alpha3 = 0 is only valid
// with alpha2 = 0 (nothing harvested, nothing to transmit).
double rate_ts(const std::array<double, 3>& alpha, ReceivingMethod method,
               const ChannelState& ch, const SystemParams& sys);

// Largest diversion fraction that still leaves the relay a better decoder
// than the destination. Empty when relaying cannot help at all, i.e. the
// relay's SNR per unit power does not exceed the destination's.
std::optional<double> ps_rho_threshold(const ChannelState& ch);

}  // namespace swiptrc
