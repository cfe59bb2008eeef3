#pragma once

// Weight-condition evaluators for the Fourier inequality between weighted
// Lorentz spaces: the kernel-section ratio constant and its two-parameter
// form, the one-parameter sufficient/necessary variants, the L log L
// condition, and Lorentz-Zygmund index admissibility.
//
// Every evaluator returns a ConditionReport whose verdict follows the grid
// scan policy: a supremum that keeps rising past 1e12 along a probe is
// "infinite", one still rising at the probe limit is "undecided", and the
// reported value never overshoots the true supremum.

#include <string>
#include <vector>

#include "lorentz/grid.hpp"
#include "lorentz/weight.hpp"

namespace lorentz {

struct ConditionReport {
  std::string name;
  std::string params;   // echo of the inputs
  double lower = 0.0;   // certified lower estimate of the supremum
  double upper = 0.0;   // upper estimate; equals lower for exact evaluations
  bool exact = true;    // upper bound is not a separate estimate
  Verdict verdict = Verdict::Undecided;
  std::string note;     // scan metadata and diagnostics
  double value() const { return upper; }
};

// v(t) = t^(p-2) w(1/t), exactly, term by term:
// (c, a, b) on (lo, hi) becomes (c, p-2-a, b) on (1/hi, 1/lo).
Weight dual_weight(const Weight& w, double p);

// w(t)^e as a weight; requires the pieces of w to be non-overlapping.
Weight pointwise_power(const Weight& w, double e);

// x^-p int_0^x w + int_x^inf w(t) t^-p dt, the denominator shared by the
// two-parameter and one-parameter conditions; equals
// (1/x)^p ||omega_(1/x)||_(p/2,v)^(p/2) for the dual weight v.
double condition_denominator(const Weight& w, double p, double x);

// sup over z > 1 of ||omega_z||_(Theta_(q/2)(u)) / ||omega_z||_(p/2,v).
// q == 2 is exact through the level function of u; q > 2 reports the
// identity-operator lower and level-function upper brackets.  q < 2 throws.
ConditionReport c_omega(const Weight& u, const Weight& w, double p, double q,
                        const GridSpec& grid = {});

// sup over 1 < 1/x < y of ((1/(xy)) int_0^y u)^(1/2) times
// condition_denominator(w, p, x)^(-1/p).  Requires 0 < p <= 2.
ConditionReport c_xy(const Weight& u, const Weight& w, double p,
                     const GridSpec& grid = {});

// sup over 0 < x < 1 of (int_0^(1/x) u)^(1/q) times
// condition_denominator(w, p, x)^(-1/p).  Requires p <= q, q >= 2; the
// average-domination hypotheses on u are the caller's responsibility.
ConditionReport nolevel_condition(const Weight& u, const Weight& w, double p,
                                  double q, const GridSpec& grid = {});

// sup over 0 < x < 1 of x (int_0^(1/x) u)^(1/q) (int_0^x w)^(-1/p).
ConditionReport bhc_condition(const Weight& u, const Weight& w, double p,
                              double q, const GridSpec& grid = {});

// sup over 0 < x < 1 of (int_0^(1/x) u°)^(1/q) (int_0^x w^(1-p'))^(1/p')
// with u° the level function and p' = p/(p-1).  At p == 1 the second factor
// degenerates to the essential supremum of 1/w on (0, x).
ConditionReport hardy_dual_condition(const Weight& u, const Weight& w,
                                     double p, double q,
                                     const GridSpec& grid = {});

// sup over z > 1 of z/(1+log z)^q sup_(y>z) (1/y) int_0^y u.  Requires q >= 2.
ConditionReport llogl_condition(const Weight& u, double q,
                                const GridSpec& grid = {});

// Index bookkeeping for maps from L^(r,p)(log L)^alpha into
// l^(s,q)(log l)^beta.  `nontrivial` reflects the integrability of the
// domain weight near zero; `admissible` is the conjunction of the two
// necessary clauses, each echoed in `satisfied` or `violated`.
struct LZReport {
  bool admissible = false;
  bool nontrivial = false;
  std::vector<std::string> satisfied;
  std::vector<std::string> violated;
};

LZReport lz_admissible(double r, double p, double alpha, double s, double q,
                       double beta);

}  // namespace lorentz
