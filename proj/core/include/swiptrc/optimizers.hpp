#pragma once

#include <array>
#include <optional>

#include "swiptrc/channel.hpp"
#include "swiptrc/protocols.hpp"

namespace swiptrc {

enum class ProtocolKind { Ideal, PowerSplitting, TimeSwitching, DirectLink };

// What the solvers did on the way to an answer. The two lambda candidates
// are the arm-crossing point and the stationary point of the accumulation
// arm; the optimum is whichever lies further right. Scan counters separate
// the resolution-bound grid pass from the constant-cost refinement so the
// two cost regimes stay measurable.
struct SolveDiagnostics {
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  double arm_residual = 0.0;  // |relay arm - destination arm| at lambda1
  bool clamped = false;       // round-off pushed a candidate out of (0,1)
  long scan_evaluations = 0;
  long refine_evaluations = 0;
  double scan_step = 0.0;
};

// A solved operating point. Parameters are present exactly when the
// protocol uses them; rate always equals the corresponding evaluator at
// those parameters. DirectLink marks instances where relaying cannot beat
// the plain source-to-destination transmission.
struct ProtocolSolution {
  ProtocolKind kind = ProtocolKind::DirectLink;
  ReceivingMethod method = ReceivingMethod::InfoAccumulation;
  double rate = 0.0;
  std::optional<double> lambda;
  std::optional<double> rho;
  std::optional<std::array<double, 3>> alpha;
  std::optional<double> relay_pow;
  SolveDiagnostics diag;
};

// Closed-form optimum of the ideal protocol over the listening fraction.
// The best lambda is max(lambda1, lambda2) with lambda1 the arm crossing
// (lower Lambert branch) and lambda2 the accumulation-arm stationary point
// (principal branch). Degenerate cases: a <= 0 falls back to DirectLink;
// c = 0 yields the smallest maximizer lambda = b / (a + b) of the plateau.
// This overload has no channel to price the harvested energy, so the
// solution carries no relay power.
ProtocolSolution optimize_ideal(const RateCoefficients& k,
                                ReceivingMethod method);

// Same, from the physical description; also fills in the relay power.
ProtocolSolution optimize_ideal(const ChannelState& ch,
                                const SystemParams& sys,
                                ReceivingMethod method);

// Power splitting: for each rho the inner problem has the same shape as
// the ideal one with coefficients (a(rho), b, rho * c), so the closed form
// is reused pointwise while rho itself is found by an epsilon-step scan
// over [0, rho_threshold) followed by one golden-section pass on the
// winning bracket (sharpens rho to about 1e-6). Ties keep the smallest rho.
ProtocolSolution optimize_ps(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method);

// Power splitting with rho pinned; only the closed-form inner solve runs.
// An infeasible rho (at or beyond the threshold) degrades to DirectLink.
ProtocolSolution optimize_ps_fixed_rho(double rho, const ChannelState& ch,
                                       const SystemParams& sys,
                                       ReceivingMethod method);

// Decode fraction that balances the two time-switching arms at a given
// transmit fraction alpha3, via the principal Lambert branch evaluated in
// log form (the raw argument overflows long before the interesting
// region). Empty when the balancing alpha1 leaves the unit simplex.
std::optional<double> ts_alpha1_of_alpha3(double alpha3,
                                          ReceivingMethod method,
                                          const RateCoefficients& k);

// Time switching: scans alpha3 over (0, 1] in epsilon steps, pairing each
// with its balancing alpha1, then golden-refines the winning bracket.
// Throws std::runtime_error when no grid point is feasible (not expected
// for instances with a > 0). a <= 0 or c = 0 degrade to DirectLink.
ProtocolSolution optimize_ts(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method);

// Time switching with the harvest fraction alpha2 pinned: the remaining
// degree of freedom alpha3 is scanned and refined the same way.
ProtocolSolution optimize_ts_fixed_alpha2(double alpha2,
                                          const ChannelState& ch,
                                          const SystemParams& sys,
                                          ReceivingMethod method);

}  // namespace swiptrc
