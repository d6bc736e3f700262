#include "swiptrc/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swiptrc/specfun.hpp"

namespace swiptrc {
namespace {

constexpr double kUnitFloor = 1e-15;
constexpr double kGolden = 0.6180339887498949;
constexpr int kGoldenIters = 60;

double clamp_unit_open(double v, bool* clamped) {
  if (v < kUnitFloor) {
    *clamped = true;
    return kUnitFloor;
  }
  if (v > 1.0 - kUnitFloor) {
    *clamped = true;
    return 1.0 - kUnitFloor;
  }
  return v;
}

void check_epsilon(const SystemParams& sys) {
  if (!(sys.epsilon > 0.0 && sys.epsilon <= 0.5)) {
    throw std::domain_error("scan resolution epsilon outside (0, 0.5]");
  }
}

ProtocolSolution direct_solution(double rate_direct_link,
                                 ReceivingMethod method) {
  ProtocolSolution s;
  s.kind = ProtocolKind::DirectLink;
  s.method = method;
  s.rate = rate_direct_link;
  s.relay_pow = 0.0;
  return s;
}

// Arm-crossing candidate of the two-arm rate in t = lambda / (1 - lambda):
// a*t = b + ln(1 + c*t) for information accumulation,
// a*t = ln(1 + m + c*t) for energy accumulation.
// Both reduce to u = -W_{-1}(-(a/c) e^{-q}) with q = b + a/c resp.
// a(1+m)/c, after which 1 + c*t (resp. 1 + m + c*t) equals c*u/a. Solving
// the log of that identity for t instead of forming u - a/(c*...) keeps
// full precision when a/c is large and u is dominated by it.
double crossing_t(const RateCoefficients& k, ReceivingMethod method) {
  const double ln_ac = std::log(k.a / k.c);
  if (method == ReceivingMethod::InfoAccumulation) {
    const double u = -lambert_wm1_of_neg_exp(ln_ac - k.b - k.a / k.c);
    return (k.b + std::log(k.c * u / k.a)) / k.a;
  }
  const double u =
      -lambert_wm1_of_neg_exp(ln_ac - k.a * (1.0 + k.m) / k.c);
  return std::log(k.c * u / k.a) / k.a;
}

// Stationary point of the destination (accumulation) arm, through the
// principal branch. Both arguments stay at or above -1/e for any c >= 0.
double stationary_lambda(const RateCoefficients& k, ReceivingMethod method,
                         bool* clamped) {
  if (method == ReceivingMethod::InfoAccumulation) {
    const double g =
        lambert_w(WBranch::Principal, (k.c - 1.0) * std::exp(-1.0));
    const double sm1 = std::expm1(g + 1.0);  // s - 1 without cancellation
    return clamp_unit_open(sm1 / (sm1 + k.c), clamped);
  }
  const double g = lambert_w(WBranch::Principal,
                             (k.c - (1.0 + k.m)) * std::exp(-1.0 - k.b));
  // y - (1+m) for y = exp(g + b + 1); routing the b = ln(1+m) identity
  // through expm1 keeps the difference exact as c -> 0.
  const double delta = std::log1p(k.m) - k.b;
  const double num = (1.0 + k.m) * std::expm1(g + 1.0 - delta);
  return clamp_unit_open(num / (num + k.c), clamped);
}

double arm_gap_at_t(double t, const RateCoefficients& k,
                    ReceivingMethod method) {
  const double rhs = method == ReceivingMethod::InfoAccumulation
                         ? k.b + std::log1p(k.c * t)
                         : std::log1p(k.m + k.c * t);
  // (relay arm - destination arm) = (1 - lambda) * (a*t - rhs)
  return (k.a * t - rhs) / (1.0 + t);
}

// Closed-form optimum over the listening fraction for given coefficients.
ProtocolSolution solve_split(const RateCoefficients& k,
                             ReceivingMethod method) {
  if (!(k.c >= 0.0) || !(k.m >= 0.0)) {
    throw std::domain_error("optimize_ideal: coefficients out of range");
  }
  if (k.a <= 0.0) return direct_solution(k.b, method);

  ProtocolSolution s;
  s.kind = ProtocolKind::Ideal;
  s.method = method;
  if (k.c == 0.0) {
    if (k.b <= 0.0) return direct_solution(0.0, method);
    // The rate plateaus at b for every lambda >= b/(a+b); report the
    // left edge of the plateau.
    s.lambda = k.b / (k.a + k.b);
    s.rate = rate_ideal(*s.lambda, method, k);
    return s;
  }

  bool clamped = false;
  const double t1 = crossing_t(k, method);
  const double l1 = clamp_unit_open(t1 / (1.0 + t1), &clamped);
  const double l2 = stationary_lambda(k, method, &clamped);
  const double star = std::max(l1, l2);
  s.lambda = star;
  s.rate = rate_ideal(star, method, k);
  s.diag.lambda1 = l1;
  s.diag.lambda2 = l2;
  s.diag.clamped = clamped;
  s.diag.arm_residual = std::fabs(arm_gap_at_t(t1, k, method));
  return s;
}

// Relay decoding rate left after diverting rho of the received power.
double ps_relay_capacity(double rho, const ChannelState& ch,
                         const SystemParams& sys) {
  const double keep = 1.0 - rho;
  return std::log1p(keep * sys.p_s * ch.h_sr /
                    (keep * ch.sigma_a2 + ch.sigma_b2));
}

// Inner closed-form solve of the power-splitting problem at fixed rho.
ProtocolSolution ps_inner_solve(double rho, const ChannelState& ch,
                                const SystemParams& sys,
                                ReceivingMethod method,
                                const RateCoefficients& k_full) {
  RateCoefficients k = k_full;
  k.a = ps_relay_capacity(rho, ch, sys) - k_full.b;
  k.c = rho * k_full.c;
  return solve_split(k, method);
}

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  long evaluations = 0;
};

// Golden-section maximization on [lo, hi]; assumes the bracket is one
// scan step wide, where the objective is locally unimodal.
template <typename F>
GoldenResult golden_max(F&& f, double lo, double hi) {
  GoldenResult r;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  r.evaluations = 2;
  for (int it = 0; it < kGoldenIters; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    }
    ++r.evaluations;
  }
  if (f1 >= f2) {
    r.x = x1;
    r.value = f1;
  } else {
    r.x = x2;
    r.value = f2;
  }
  return r;
}

}  // namespace

ProtocolSolution optimize_ideal(const RateCoefficients& k,
                                ReceivingMethod method) {
  return solve_split(k, method);
}

ProtocolSolution optimize_ideal(const ChannelState& ch,
                                const SystemParams& sys,
                                ReceivingMethod method) {
  ProtocolSolution s = solve_split(coefficients(ch, sys), method);
  if (s.kind == ProtocolKind::Ideal) {
    s.relay_pow = relay_power(IdealSplit{*s.lambda}, ch, sys);
  }
  return s;
}

ProtocolSolution optimize_ps(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method) {
  check_epsilon(sys);
  const RateCoefficients k_full = coefficients(ch, sys);
  const auto rho_th = ps_rho_threshold(ch);
  if (!rho_th) return direct_solution(k_full.b, method);

  const double eps = sys.epsilon;
  long scans = 0;
  double best_rate = -1.0;
  double best_rho = 0.0;
  ProtocolSolution best_inner;
  for (long i = 0;; ++i) {
    const double rho = static_cast<double>(i) * eps;
    if (rho >= *rho_th || rho > 1.0) break;
    ProtocolSolution inner = ps_inner_solve(rho, ch, sys, method, k_full);
    ++scans;
    if (inner.rate > best_rate) {
      best_rate = inner.rate;
      best_rho = rho;
      best_inner = inner;
    }
  }

  // One golden pass on the winning bracket sharpens rho past the grid.
  const double lo = std::max(0.0, best_rho - eps);
  const double hi = std::min(best_rho + eps, *rho_th * (1.0 - 1e-12));
  long refine_evals = 0;
  if (hi > lo) {
    GoldenResult g = golden_max(
        [&](double rho) {
          return ps_inner_solve(rho, ch, sys, method, k_full).rate;
        },
        lo, hi);
    refine_evals = g.evaluations;
    if (g.value > best_rate) {
      best_rate = g.value;
      best_rho = g.x;
      best_inner = ps_inner_solve(best_rho, ch, sys, method, k_full);
    }
  }

  if (best_inner.kind != ProtocolKind::Ideal) {
    // Every candidate degenerated to the direct link; rho = 0 ties it.
    ProtocolSolution s = direct_solution(k_full.b, method);
    s.diag.scan_evaluations = scans;
    s.diag.refine_evaluations = refine_evals;
    s.diag.scan_step = eps;
    return s;
  }

  ProtocolSolution s;
  s.kind = ProtocolKind::PowerSplitting;
  s.method = method;
  s.lambda = best_inner.lambda;
  s.rho = best_rho;
  s.rate = rate_ps(*s.lambda, best_rho, method, ch, sys);
  s.relay_pow = relay_power(PowerSplit{*s.lambda, best_rho}, ch, sys);
  s.diag = best_inner.diag;
  s.diag.scan_evaluations = scans;
  s.diag.refine_evaluations = refine_evals;
  s.diag.scan_step = eps;
  return s;
}

ProtocolSolution optimize_ps_fixed_rho(double rho, const ChannelState& ch,
                                       const SystemParams& sys,
                                       ReceivingMethod method) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::domain_error("optimize_ps_fixed_rho: rho outside [0, 1]");
  }
  const RateCoefficients k_full = coefficients(ch, sys);
  const auto rho_th = ps_rho_threshold(ch);
  if (!rho_th || rho >= *rho_th) return direct_solution(k_full.b, method);

  ProtocolSolution inner = ps_inner_solve(rho, ch, sys, method, k_full);
  if (inner.kind != ProtocolKind::Ideal) {
    return direct_solution(k_full.b, method);
  }
  ProtocolSolution s;
  s.kind = ProtocolKind::PowerSplitting;
  s.method = method;
  s.lambda = inner.lambda;
  s.rho = rho;
  s.rate = rate_ps(*s.lambda, rho, method, ch, sys);
  s.relay_pow = relay_power(PowerSplit{*s.lambda, rho}, ch, sys);
  s.diag = inner.diag;
  return s;
}

std::optional<double> ts_alpha1_of_alpha3(double alpha3,
                                          ReceivingMethod method,
                                          const RateCoefficients& k) {
  if (!(alpha3 > 0.0 && alpha3 <= 1.0)) {
    throw std::domain_error("ts_alpha1_of_alpha3: alpha3 outside (0, 1]");
  }
  if (k.a <= 0.0) return std::nullopt;
  const double A = k.a + k.b;

  double a1;
  if (k.c == 0.0) {
    // Harvesting buys nothing; the arms balance at the direct-link ratio.
    a1 = k.b / A;
  } else {
    // The balance equation in alpha1 solves through the principal branch
    // evaluated at exp(ln_arg); ln_arg grows like 1/alpha3, so the
    // argument itself is never materialized.
    double ln_arg;
    double shift;  // A/c term of the solution, per method
    if (method == ReceivingMethod::InfoAccumulation) {
      shift = A / k.c;
      ln_arg = std::log(shift) - k.b / alpha3 +
               A * (1.0 - alpha3) / alpha3 + shift;
    } else {
      shift = A * (1.0 + k.m) / k.c;
      ln_arg = std::log(A / k.c) - (1.0 - alpha3) * k.b / alpha3 +
               A * (1.0 - alpha3) / alpha3 + shift;
    }
    const double w = lambert_w0_of_exp(ln_arg);
    a1 = (1.0 - alpha3) + alpha3 / A * (shift - w);
  }

  if (a1 < -1e-12 || a1 + alpha3 > 1.0 + 1e-12) return std::nullopt;
  return std::clamp(a1, 0.0, 1.0 - alpha3);
}

namespace {

ProtocolSolution ts_solution_at(double a1, double a3, ReceivingMethod method,
                                const ChannelState& ch,
                                const SystemParams& sys) {
  ProtocolSolution s;
  s.kind = ProtocolKind::TimeSwitching;
  s.method = method;
  const double a2 = std::max(0.0, 1.0 - a1 - a3);
  s.alpha = {a1, a2, a3};
  s.rate = rate_ts(*s.alpha, method, ch, sys);
  s.relay_pow = relay_power(TimeSwitch{a1, a2, a3}, ch, sys);
  return s;
}

}  // namespace

ProtocolSolution optimize_ts(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method) {
  check_epsilon(sys);
  const RateCoefficients k = coefficients(ch, sys);
  if (k.a <= 0.0 || k.c <= 0.0) return direct_solution(k.b, method);

  const double eps = sys.epsilon;
  const long n_steps = static_cast<long>(1.0 / eps + 1e-9);
  long scans = 0;
  bool any = false;
  double best_rate = -1.0;
  double best_a1 = 0.0;
  double best_a3 = 0.0;
  for (long j = 1; j <= n_steps; ++j) {
    const double a3 = std::min(static_cast<double>(j) * eps, 1.0);
    ++scans;
    const auto a1 = ts_alpha1_of_alpha3(a3, method, k);
    if (!a1) continue;
    const double r =
        rate_ts({*a1, std::max(0.0, 1.0 - *a1 - a3), a3}, method, ch, sys);
    if (r > best_rate) {
      best_rate = r;
      best_a1 = *a1;
      best_a3 = a3;
      any = true;
    }
  }
  if (!any) {
    throw std::runtime_error(
        "optimize_ts: no feasible transmit fraction on the scan grid");
  }

  const double lo = std::max(best_a3 - eps, eps * 1e-6);
  const double hi = std::min(best_a3 + eps, 1.0);
  GoldenResult g = golden_max(
      [&](double a3) {
        const auto a1 = ts_alpha1_of_alpha3(a3, method, k);
        if (!a1) return -1.0;
        return rate_ts({*a1, std::max(0.0, 1.0 - *a1 - a3), a3}, method, ch,
                       sys);
      },
      lo, hi);
  if (g.value > best_rate) {
    best_rate = g.value;
    best_a3 = g.x;
    best_a1 = *ts_alpha1_of_alpha3(best_a3, method, k);
  }

  ProtocolSolution s = ts_solution_at(best_a1, best_a3, method, ch, sys);
  s.diag.scan_evaluations = scans;
  s.diag.refine_evaluations = g.evaluations;
  s.diag.scan_step = eps;
  // The balance residual at the reported split; zero up to the Lambert
  // evaluation tolerance by construction.
  const double A = k.a + k.b;
  const double a2 = (*s.alpha)[1];
  const double relay_snr = k.c * a2 / best_a3;
  const double j_rate = method == ReceivingMethod::InfoAccumulation
                            ? k.b + std::log1p(relay_snr)
                            : std::log1p(k.m + relay_snr);
  s.diag.arm_residual =
      std::fabs(best_a1 * A - ((best_a1 + a2) * k.b + best_a3 * j_rate));
  return s;
}

ProtocolSolution optimize_ts_fixed_alpha2(double alpha2,
                                          const ChannelState& ch,
                                          const SystemParams& sys,
                                          ReceivingMethod method) {
  if (!(alpha2 >= 0.0 && alpha2 < 1.0)) {
    throw std::domain_error("optimize_ts_fixed_alpha2: alpha2 outside [0, 1)");
  }
  check_epsilon(sys);
  const RateCoefficients k = coefficients(ch, sys);
  if (k.a <= 0.0 || k.c <= 0.0) return direct_solution(k.b, method);

  const double eps = sys.epsilon;
  const long n_steps = static_cast<long>(1.0 / eps + 1e-9);
  long scans = 0;
  double best_rate = -1.0;
  double best_a3 = 0.0;
  for (long j = 1; j <= n_steps; ++j) {
    const double a3 = static_cast<double>(j) * eps;
    const double a1 = 1.0 - alpha2 - a3;
    if (a1 < 0.0) break;
    ++scans;
    const double r = rate_ts({a1, alpha2, a3}, method, ch, sys);
    if (r > best_rate) {
      best_rate = r;
      best_a3 = a3;
    }
  }
  if (best_rate < 0.0) return direct_solution(k.b, method);

  const double lo = std::max(best_a3 - eps, eps * 1e-6);
  const double hi = std::min(best_a3 + eps, 1.0 - alpha2);
  GoldenResult g = golden_max(
      [&](double a3) {
        return rate_ts({1.0 - alpha2 - a3, alpha2, a3}, method, ch, sys);
      },
      lo, hi);
  if (g.value > best_rate) {
    best_rate = g.value;
    best_a3 = g.x;
  }

  ProtocolSolution s =
      ts_solution_at(1.0 - alpha2 - best_a3, best_a3, method, ch, sys);
  s.diag.scan_evaluations = scans;
  s.diag.refine_evaluations = g.evaluations;
  s.diag.scan_step = eps;
  return s;
}

}  // namespace swiptrc
