// Weighted Lorentz functionals and weight-class constants.
//
// Values that may be infinite are regular doubles (IEEE inf) paired with a
// Verdict; grid-estimated quantities say so via Kind/note.

#pragma once

#include <string>

#include "lorentz/averaging.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/level.hpp"
#include "lorentz/stepfn.hpp"
#include "lorentz/weight.hpp"

namespace lorentz {

struct NormValue {
  double lower = 0.0;
  double upper = 0.0;
  enum class Kind { Exact, LowerBound, Bounds } kind = Kind::Exact;
  Verdict verdict = Verdict::Finite;
  std::string note;

  double value() const { return upper; }

  static NormValue exact(double v);
};

// sup_t t^p (int_t^inf w(s) s^-p ds) / (int_0^t w); p > 1.
// Grid supremum: the reported value never overshoots the true constant.
NormValue bp_constant(const Weight& w, double p, const GridSpec& grid = {});

// sup_{0<x<y} ((1/y) int_0^y w) / ((1/x) int_0^x w).
NormValue b1inf_constant(const Weight& w, const GridSpec& grid = {});

// || f* ||_{p,w}
NormValue lambda_norm(const StepFunction& f, double p, const Weight& w);

// || f** ||_{p,w}
NormValue gamma_norm(const StepFunction& f, double p, const Weight& w);

// sup over averaging operators of ||A h||_{p,w} for non-increasing h.
// p = 1: exact, equal to ||h||_{1,w~} with w~ the level function of w.
// p > 1: bounds; lower = max over a finite operator family, upper =
// min(||h||_{p,w~}, ||h**||_{p,w}).
NormValue theta_norm(const DecreasingStep& h, double p, const Weight& w,
                     const GridSpec& grid = {});

// int_lo^hi (f**)^p w dt with f** the Hardy average of the non-increasing f.
// Exact (binomial expansion against power-log terms) for integer p <= 12;
// adaptive quadrature with a certified truncation otherwise.
double hardy_power_integral(const DecreasingStep& f, const Weight& w, double p,
                            double lo = 0.0, double hi = kInf);

// Level function of a weight. Exact when w is non-increasing (fixed point)
// or piecewise constant (finite hull); otherwise discretized onto the grid.
struct LevelWeight {
  Weight weight;
  bool exact = true;
  std::string note;
};
LevelWeight level_weight(const Weight& w, const GridSpec& grid = {});

}  // namespace lorentz
