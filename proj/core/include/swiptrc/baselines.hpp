#pragma once

#include "swiptrc/channel.hpp"
#include "swiptrc/protocols.hpp"

namespace swiptrc {

// Reference schemes without wireless power transfer: the relay spends
// grid power instead of harvested power, and source plus weighted relay
// power share the same budget p_s.
struct BaselineAllocation {
  double p_s = 0.0;     // source share of the budget
  double p_r = 0.0;     // relay transmit power
  double lambda = 0.5;  // listening fraction
  double rate = 0.0;
  long scan_evaluations = 0;
};

// Rate of the source-to-destination link alone, full budget, no relay.
double rate_direct(const ChannelState& ch, const SystemParams& sys);

// Two-arm rate of budgeted relaying at explicit power shares: the relay
// decodes at p_src, then spends p_relay over the collaboration fraction.
double rate_budgeted(double lambda, double p_src, double p_relay,
                     ReceivingMethod method, const ChannelState& ch);

// Best rateless-coded relaying under the shared budget
// p_s_tilde + (1 - lambda) * p_r_tilde <= p_s: a two-dimensional
// epsilon-step scan over lambda in (0, 1) and the source share in
// [0, p_s], with the relay share taking the slack (the budget binds at
// any optimum). Ties keep the lexicographically smallest (lambda, p_s).
BaselineAllocation optimize_nonswipt_rc(const ChannelState& ch,
                                        const SystemParams& sys,
                                        ReceivingMethod method);

// Conventional relaying without rateless codes: the block split is fixed
// at one half, the destination combines by maximum-ratio (energy
// accumulation), and only the power share is scanned.
BaselineAllocation rate_nonswipt_norc(const ChannelState& ch,
                                      const SystemParams& sys);

}  // namespace swiptrc
