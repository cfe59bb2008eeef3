#pragma once

// Core numerics shared by the whole toolkit:
//  - adaptive Simpson quadrature
//  - exact/controlled integrals of power-log terms  c * t^a * (1+|log t|)^b
//
// "Infinite" is a regular value throughout the library: divergent integrals
// return +inf and IEEE arithmetic propagates it, so callers can treat
// divergence as data instead of an exception.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace lorentz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }

// ---------------------------------------------------------------------------
// Adaptive Simpson with Richardson correction.  Tolerance is relative to the
// running estimate with an absolute floor, so it behaves on integrands whose
// scale is not known in advance.
// ---------------------------------------------------------------------------
namespace detail {

template <class F>
double simpson_rec(F& f, double a, double fa, double b, double fb, double m,
                   double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol = 1e-12,
                        double abs_floor = 0.0, int max_depth = 40) {
  if (!(a < b)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol =
      std::max(abs_floor, std::abs(whole) * rel_tol) + 1e-300;
  return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Power-log integrals.
//
//   powlog_integral(a, b, lo, hi) = ∫_lo^hi t^a (1+|log t|)^b dt
//
// with 0 <= lo < hi <= inf.  Divergent integrals return +inf.  The b == 0 and
// a == -1 cases are closed forms; everything else is reduced by t = e^s to
// Gamma-type integrals ∫ e^{-sigma} (A + B sigma)^b dsigma which are handled
// by panel-wise adaptive Simpson with an analytic cutoff for improper ends.
// ---------------------------------------------------------------------------

bool powlog_integrable_at_zero(double a, double b);
bool powlog_integrable_at_inf(double a, double b);

double powlog_integral(double a, double b, double lo, double hi);

// Antiderivative-style helper used by cumulative evaluations: same integral
// but guaranteed-finite arguments (throws on misuse).
double powlog_integral_finite(double a, double b, double lo, double hi);

}  // namespace lorentz
