#pragma once

#include <optional>

#include "swiptrc/channel.hpp"
#include "swiptrc/optimizers.hpp"
#include "swiptrc/protocols.hpp"

namespace swiptrc {
namespace oracle {

// Independent reference maximizers for cross-checking the closed-form and
// scan-based solvers. Everything here works by exhaustive evaluation of
// the rate functions plus bisection; none of it touches the Lambert-W
// machinery, so agreement with the optimizers is meaningful evidence.
// (optimizers.hpp is included for the shared solution type only.)

struct GridSpec {
  double resolution = 1e-4;
  bool refine = false;  // one local golden-section pass around the winner
};

// Exhausts lambda over the open unit interval in resolution steps.
// Ties keep the smallest lambda.
ProtocolSolution grid_max_ideal(const RateCoefficients& k,
                                ReceivingMethod method, const GridSpec& grid);

// Exhausts (lambda, rho) with rho below the diversion threshold.
// Ties keep the lexicographically smallest (lambda, rho).
ProtocolSolution grid_max_ps(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method, const GridSpec& grid);

// Exhausts the (alpha1, alpha3) face of the simplex, alpha2 taking the
// remainder. Ties keep the lexicographically smallest (alpha3, alpha1).
ProtocolSolution grid_max_ts(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method, const GridSpec& grid);

ProtocolSolution grid_max(ProtocolKind kind, const ChannelState& ch,
                          const SystemParams& sys, ReceivingMethod method,
                          const GridSpec& grid);

// Root of the arm-balance equation a*t = b + ln(1 + c*t) (information
// accumulation) or a*t = ln(1 + m + c*t) (energy accumulation), returned
// as lambda = t/(1+t). Requires a feasible instance (a > 0, c > 0); the
// root is unique because the left side is linear and the right concave.
double bisect_arm_equality(ReceivingMethod method, const RateCoefficients& k);

// Decode fraction balancing the two time-switching arms at fixed alpha3,
// by bisection over alpha1 in [0, 1 - alpha3]. Empty when even spending
// the whole remainder on decoding leaves the relay arm short.
std::optional<double> bisect_ts_alpha1(double alpha3, ReceivingMethod method,
                                       const RateCoefficients& k);

}  // namespace oracle
}  // namespace swiptrc
