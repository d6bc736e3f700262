#include "swiptrc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swiptrc {
namespace oracle {
namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr int kGoldenIters = 80;

void check_resolution(const GridSpec& grid) {
  if (!(grid.resolution > 0.0 && grid.resolution <= 0.5)) {
    throw std::domain_error("grid resolution outside (0, 0.5]");
  }
}

template <typename F>
double golden_max(F&& f, double lo, double hi, double* best_x, long* evals) {
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  *evals += 2;
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
    ++*evals;
  }
  if (f1 >= f2) {
    *best_x = x1;
    return f1;
  }
  *best_x = x2;
  return f2;
}

// Destination-arm collaboration rate from raw coefficients; used by the
// bisection helpers, which work on the balance equation rather than the
// min-of-arms rate.
double accumulation(double relay_snr, ReceivingMethod method,
                    const RateCoefficients& k) {
  return method == ReceivingMethod::InfoAccumulation
             ? k.b + std::log1p(relay_snr)
             : std::log1p(k.m + relay_snr);
}

}  // namespace

ProtocolSolution grid_max_ideal(const RateCoefficients& k,
                                ReceivingMethod method, const GridSpec& grid) {
  check_resolution(grid);
  const double res = grid.resolution;
  ProtocolSolution s;
  s.kind = ProtocolKind::Ideal;
  s.method = method;
  s.diag.scan_step = res;

  double best_rate = -1.0;
  double best_lambda = 0.0;
  long evals = 0;
  for (long i = 1;; ++i) {
    const double lambda = static_cast<double>(i) * res;
    if (lambda >= 1.0) break;
    const double r = rate_ideal(lambda, method, k);
    ++evals;
    if (r > best_rate) {
      best_rate = r;
      best_lambda = lambda;
    }
  }
  s.diag.scan_evaluations = evals;

  if (grid.refine) {
    const double lo = std::max(best_lambda - res, 1e-15);
    const double hi = std::min(best_lambda + res, 1.0 - 1e-15);
    double x = best_lambda;
    long refine_evals = 0;
    const double r = golden_max(
        [&](double l) { return rate_ideal(l, method, k); }, lo, hi, &x,
        &refine_evals);
    s.diag.refine_evaluations = refine_evals;
    if (r > best_rate) {
      best_rate = r;
      best_lambda = x;
    }
  }

  s.lambda = best_lambda;
  s.rate = best_rate;
  return s;
}

ProtocolSolution grid_max_ps(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method, const GridSpec& grid) {
  check_resolution(grid);
  const double res = grid.resolution;
  const auto rho_th = ps_rho_threshold(ch);
  if (!rho_th) {
    ProtocolSolution s;
    s.kind = ProtocolKind::DirectLink;
    s.method = method;
    s.rate = coefficients(ch, sys).b;
    return s;
  }

  ProtocolSolution s;
  s.kind = ProtocolKind::PowerSplitting;
  s.method = method;
  s.diag.scan_step = res;

  double best_rate = -1.0;
  double best_lambda = 0.0;
  double best_rho = 0.0;
  long evals = 0;
  for (long i = 1;; ++i) {
    const double lambda = static_cast<double>(i) * res;
    if (lambda >= 1.0) break;
    for (long j = 0;; ++j) {
      const double rho = static_cast<double>(j) * res;
      if (rho >= *rho_th || rho > 1.0) break;
      const double r = rate_ps(lambda, rho, method, ch, sys);
      ++evals;
      if (r > best_rate) {
        best_rate = r;
        best_lambda = lambda;
        best_rho = rho;
      }
    }
  }
  s.diag.scan_evaluations = evals;

  if (grid.refine) {
    long refine_evals = 0;
    double x = best_lambda;
    double r = golden_max(
        [&](double l) { return rate_ps(l, best_rho, method, ch, sys); },
        std::max(best_lambda - res, 1e-15),
        std::min(best_lambda + res, 1.0 - 1e-15), &x, &refine_evals);
    if (r > best_rate) {
      best_rate = r;
      best_lambda = x;
    }
    r = golden_max(
        [&](double rho) { return rate_ps(best_lambda, rho, method, ch, sys); },
        std::max(best_rho - res, 0.0),
        std::min(best_rho + res, *rho_th * (1.0 - 1e-12)), &x, &refine_evals);
    if (r > best_rate) {
      best_rate = r;
      best_rho = x;
    }
    s.diag.refine_evaluations = refine_evals;
  }

  s.lambda = best_lambda;
  s.rho = best_rho;
  s.rate = best_rate;
  return s;
}

ProtocolSolution grid_max_ts(const ChannelState& ch, const SystemParams& sys,
                             ReceivingMethod method, const GridSpec& grid) {
  check_resolution(grid);
  const double res = grid.resolution;
  ProtocolSolution s;
  s.kind = ProtocolKind::TimeSwitching;
  s.method = method;
  s.diag.scan_step = res;

  double best_rate = -1.0;
  double best_a1 = 0.0;
  double best_a3 = 0.0;
  long evals = 0;
  const long n3 = static_cast<long>(1.0 / res + 1e-9);
  for (long j = 1; j <= n3; ++j) {
    const double a3 = std::min(static_cast<double>(j) * res, 1.0);
    const double a1_max = 1.0 - a3;
    for (long i = 0;; ++i) {
      const double a1 = std::min(static_cast<double>(i) * res, a1_max);
      const double a2 = std::max(0.0, 1.0 - a1 - a3);
      const double r = rate_ts({a1, a2, a3}, method, ch, sys);
      ++evals;
      if (r > best_rate) {
        best_rate = r;
        best_a1 = a1;
        best_a3 = a3;
      }
      if (a1 >= a1_max) break;
    }
  }
  s.diag.scan_evaluations = evals;

  if (grid.refine) {
    long refine_evals = 0;
    double x = best_a1;
    double r = golden_max(
        [&](double a1) {
          return rate_ts({a1, std::max(0.0, 1.0 - a1 - best_a3), best_a3},
                         method, ch, sys);
        },
        std::max(best_a1 - res, 0.0), std::min(best_a1 + res, 1.0 - best_a3),
        &x, &refine_evals);
    if (r > best_rate) {
      best_rate = r;
      best_a1 = x;
    }
    r = golden_max(
        [&](double a3) {
          return rate_ts({best_a1, std::max(0.0, 1.0 - best_a1 - a3), a3},
                         method, ch, sys);
        },
        std::max(best_a3 - res, 1e-15), std::min(best_a3 + res, 1.0 - best_a1),
        &x, &refine_evals);
    if (r > best_rate) {
      best_rate = r;
      best_a3 = x;
    }
    s.diag.refine_evaluations = refine_evals;
  }

  s.alpha = {best_a1, std::max(0.0, 1.0 - best_a1 - best_a3), best_a3};
  s.rate = best_rate;
  return s;
}

ProtocolSolution grid_max(ProtocolKind kind, const ChannelState& ch,
                          const SystemParams& sys, ReceivingMethod method,
                          const GridSpec& grid) {
  switch (kind) {
    case ProtocolKind::Ideal:
      return grid_max_ideal(coefficients(ch, sys), method, grid);
    case ProtocolKind::PowerSplitting:
      return grid_max_ps(ch, sys, method, grid);
    case ProtocolKind::TimeSwitching:
      return grid_max_ts(ch, sys, method, grid);
    case ProtocolKind::DirectLink:
    default: {
      ProtocolSolution s;
      s.kind = ProtocolKind::DirectLink;
      s.method = method;
      s.rate = coefficients(ch, sys).b;
      return s;
    }
  }
}

double bisect_arm_equality(ReceivingMethod method, const RateCoefficients& k) {
  if (!(k.a > 0.0 && k.c > 0.0 && k.b > 0.0)) {
    throw std::domain_error(
        "bisect_arm_equality: needs a > 0, b > 0, c > 0 for a bracket");
  }
  auto gap = [&](double t) {
    return k.a * t - accumulation(k.c * t, method, k);
  };
  // gap(0) = -b < 0; the linear side eventually dominates the log side.
  double lo = 0.0;
  double hi = 1.0;
  int guard = 0;
  while (gap(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 200) {
      throw std::runtime_error("bisect_arm_equality: no sign change found");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, lo)) break;
  }
  const double t = 0.5 * (lo + hi);
  return t / (1.0 + t);
}

std::optional<double> bisect_ts_alpha1(double alpha3, ReceivingMethod method,
                                       const RateCoefficients& k) {
  if (!(alpha3 > 0.0 && alpha3 < 1.0)) {
    throw std::domain_error("bisect_ts_alpha1: alpha3 outside (0, 1)");
  }
  const double A = k.a + k.b;
  auto gap = [&](double a1) {
    const double a2 = 1.0 - a1 - alpha3;
    return a1 * A - ((a1 + a2) * k.b +
                     alpha3 * accumulation(k.c * a2 / alpha3, method, k));
  };
  double lo = 0.0;
  double hi = 1.0 - alpha3;
  if (gap(hi) < 0.0) return std::nullopt;  // the relay arm never catches up
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-16) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
}  // namespace swiptrc
