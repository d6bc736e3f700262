#pragma once

namespace swiptrc {

// Real branches of the Lambert W function, the inverse of w -> w*exp(w).
// Principal covers w >= -1 (arguments in [-1/e, inf)); Lower covers
// w <= -1 (arguments in [-1/e, 0)).
enum class WBranch { Principal, Lower };

// Evaluates the requested branch at x. Arguments within 1e-15 below -1/e
// are treated as -1/e (round-off guard); anything further out, or a
// non-negative x on the Lower branch, throws std::domain_error.
// Round-trip accuracy: |w*exp(w) - x| <= 1e-12 * max(1, |x|).
double lambert_w(WBranch branch, double x);

// Principal branch of W at exp(ln_x), evaluated without forming exp(ln_x).
// Solves w + ln(w) = ln_x, which stays finite for ln_x far beyond the
// overflow point of exp. Agrees with lambert_w(Principal, exp(ln_x))
// wherever the exponential is representable.
double lambert_w0_of_exp(double ln_x);

// Lower branch of W at -exp(ln_mx), again without forming the exponential.
// Solves w + ln(-w) = ln_mx for w <= -1; requires ln_mx <= -1 (the image
// of [-1/e, 0) under ln of the magnitude). Companion of lambert_w0_of_exp
// for arguments that underflow to zero.
double lambert_wm1_of_neg_exp(double ln_mx);

}  // namespace swiptrc
