#include "swiptrc/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace swiptrc {
namespace {

constexpr int kMaxIter = 50;

// Expansion of W about the branch point -1/e in p = +-sqrt(2(e*x + 1));
// the sign of p selects the branch. Ten terms keep the truncation error
// below 1e-15 for |p| <= 0.032, where iteration is unreliable because
// both dW/dx and the iteration Jacobians degenerate.
double branch_point_series(double p) {
  constexpr double a[] = {
      -1.0,
      1.0,
      -1.0 / 3.0,
      11.0 / 72.0,
      -43.0 / 540.0,
      769.0 / 17280.0,
      -221.0 / 8505.0,
      680863.0 / 43545600.0,
      -1963.0 / 204120.0,
      226287557.0 / 37623398400.0,
  };
  double s = a[9];
  for (int i = 8; i >= 0; --i) s = a[i] + p * s;
  return s;
}

// Halley iteration on f(w) = w*exp(w) - x. Iterates are kept on the
// branch side of w = -1 by bisecting toward the boundary instead of
// crossing it. Suitable while exp(w) neither over- nor underflows.
double halley_we(double w, double x, double lo, double hi) {
  for (int it = 0; it < kMaxIter; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    const double w1 = w + 1.0;
    const double denom = ew * w1 - (w + 2.0) * f / (2.0 * w1);
    double next = w - f / denom;
    if (next < lo) next = 0.5 * (w + lo);
    if (next > hi) next = 0.5 * (w + hi);
    const double step = std::fabs(next - w);
    w = next;
    if (step <= 1e-13 * std::fabs(w)) break;
  }
  return w;
}

// Newton iteration on g(w) = w + ln(w) - L, the log form of the principal
// branch at exp(L). Monotone and well conditioned for w >= 1, i.e. L >= 1.
double principal_log_form(double L) {
  const double lnL = std::log(L);
  double w = L - lnL + lnL / L;
  for (int it = 0; it < kMaxIter; ++it) {
    const double g = w + std::log(w) - L;
    const double dw = g / (1.0 + 1.0 / w);
    w -= dw;
    if (std::fabs(dw) <= 1e-14 * std::fabs(w)) break;
  }
  return w;
}

// Newton iteration on h(w) = w + ln(-w) - L, the log form of the lower
// branch at -exp(L). h is increasing on (-inf, -1] with h' = 1 + 1/w,
// which vanishes at the branch point; callers must start far enough
// below -1 (the series start guarantees this for the near zone).
double lower_log_form(double w, double L) {
  for (int it = 0; it < kMaxIter; ++it) {
    const double h = w + std::log(-w) - L;
    const double dw = h / (1.0 + 1.0 / w);
    double next = w - dw;
    if (next > -1.0) next = 0.5 * (w - 1.0);
    const double step = std::fabs(next - w);
    w = next;
    if (step <= 1e-14 * std::fabs(w)) break;
  }
  return w;
}

}  // namespace

double lambert_w(WBranch branch, double x) {
  const double inv_e = std::exp(-1.0);
  // Round-off guard: treat arguments within 1e-15 below -1/e as -1/e.
  if (!(x >= -inv_e)) {
    if (x >= -inv_e - 1e-15) {
      x = -inv_e;
    } else {
      throw std::domain_error("lambert_w: argument below -1/e");
    }
  }

  if (branch == WBranch::Principal) {
    if (x == 0.0) return 0.0;
    if (x >= 3.0) return principal_log_form(std::log(x));
    if (x < 0.0) {
      double q = std::exp(1.0) * x + 1.0;
      if (q < 0.0) q = 0.0;
      if (q <= 5e-4) return branch_point_series(std::sqrt(2.0 * q));
      if (x < -0.25) {
        return halley_we(branch_point_series(std::sqrt(2.0 * q)), x, -1.0,
                         0.0);
      }
    }
    // Moderate arguments: a log-based starting guess keeps Halley within
    // three or four steps everywhere in (-0.25, 3).
    const double l = std::log1p(x);
    const double w0 = l * (1.0 - std::log1p(l) / (2.0 + l));
    return halley_we(w0, x, -1.0, 800.0);
  }

  if (!(x < 0.0)) {
    throw std::domain_error("lambert_w: lower branch needs x in [-1/e, 0)");
  }
  return lambert_wm1_of_neg_exp(std::log(-x));
}

double lambert_w0_of_exp(double ln_x) {
  if (!(ln_x == ln_x)) {
    throw std::domain_error("lambert_w0_of_exp: NaN argument");
  }
  // Below the log-form comfort zone the exponential is small and safe.
  if (ln_x <= 2.0) return lambert_w(WBranch::Principal, std::exp(ln_x));
  return principal_log_form(ln_x);
}

double lambert_wm1_of_neg_exp(double ln_mx) {
  if (!(ln_mx <= -1.0)) {
    // -exp(ln_mx) >= -1/e requires ln_mx <= -1; allow round-off slack.
    if (ln_mx <= -1.0 + 1e-12) {
      ln_mx = -1.0;
    } else {
      throw std::domain_error(
          "lambert_wm1_of_neg_exp: argument magnitude above 1/e");
    }
  }

  double q = -std::expm1(ln_mx + 1.0);  // 1 - e*|x|, distance from the branch point
  if (q < 0.0) q = 0.0;
  if (q <= 5e-4) return branch_point_series(-std::sqrt(2.0 * q));

  double w0;
  if (ln_mx > -2.0) {
    w0 = branch_point_series(-std::sqrt(2.0 * q));
    if (w0 > -1.0 - 1e-8) w0 = -1.0 - 1e-8;
  } else {
    const double lnl = std::log(-ln_mx);
    w0 = ln_mx - lnl + lnl / ln_mx;
  }
  return lower_log_form(w0, ln_mx);
}

}  // namespace swiptrc
