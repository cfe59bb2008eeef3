#pragma once

// Piecewise-constant functions on (0, inf) with an optional power-log tail,
// plus the rearrangement toolbox built on them: distribution function,
// decreasing rearrangement, Hardy averages, weighted integrals.

#include <optional>
#include <vector>

#include "lorentz/weight.hpp"

namespace lorentz {

enum class DomainKind { HalfLine, UnitInterval };

// Analytic tail c * t^a * (1+|log t|)^b, applied beyond the last breakpoint.
struct Tail {
  double c = 0.0;
  double a = 0.0;
  double b = 0.0;

  double value_at(double t) const;
  // Is the tail non-increasing on (t0, inf)?  Exact endpoint analysis.
  bool nonincreasing_from(double t0) const;
  // sup over (t0, inf); for non-monotone tails evaluates the interior
  // critical points as well.
  double sup_from(double t0) const;
  double limit_at_inf() const;  // 0, finite, or +inf
};

// Cells are half-open: value(i) on [cell_lo(i), cell_hi(i)) with cell_lo(0)=0.
// Beyond the last breakpoint the function equals the tail (or 0 without one).
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<double> breakpoints, std::vector<double> values,
               std::optional<Tail> tail = std::nullopt,
               DomainKind domain = DomainKind::HalfLine);

  size_t cells() const { return val_.size(); }
  double cell_lo(size_t i) const { return i == 0 ? 0.0 : bp_[i - 1]; }
  double cell_hi(size_t i) const { return bp_[i]; }
  double value(size_t i) const { return val_[i]; }
  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<double>& values() const { return val_; }
  const std::optional<Tail>& tail() const { return tail_; }
  DomainKind domain() const { return domain_; }
  double support_end() const;  // last breakpoint (0 when empty)

  double operator()(double t) const;
  double max_value() const;  // sup over cells and tail

  double integral() const;             // ∫_0^inf f
  double cumulative(double t) const;   // ∫_0^t f, exact
  double power_integral(double p) const;  // ∫_0^inf f^p

  bool is_nonincreasing() const;

 private:
  std::vector<double> bp_;
  std::vector<double> val_;
  std::vector<double> cum_;  // cum_[i] = ∫_0^{bp_[i]} f, for O(log n) lookups
  std::optional<Tail> tail_;
  DomainKind domain_ = DomainKind::HalfLine;
};

// A StepFunction together with a checked monotonicity certificate.
class DecreasingStep {
 public:
  DecreasingStep() = default;
  explicit DecreasingStep(StepFunction f);

  const StepFunction& fn() const { return f_; }
  operator const StepFunction&() const { return f_; }
  double operator()(double t) const { return f_(t); }

  // f**(t) = (1/t) ∫_0^t f*;  t > 0.
  double hardy_average(double t) const;

 private:
  StepFunction f_;
};

// Measure of { t : f(t) > lambda }.  For lambda == 0 this may be +inf; for
// lambda > 0 an infinite superlevel set raises (the function cannot be
// rearranged).
double distribution(const StepFunction& f, double lambda);

// Decreasing rearrangement.  Always possible for tail-free inputs and for
// inputs that are already non-increasing; a non-monotone function with a tail
// is supported when every cell value dominates the tail (the rearrangement
// then stays in the representable class), otherwise throws.
DecreasingStep rearrange(const StepFunction& f);

double hardy_average(const DecreasingStep& f, double t);

// ∫_0^inf f(t)^p w(t) dt, exact via power-log reduction; +inf when divergent.
double weighted_integral(const StepFunction& f, const Weight& w, double p);

// Weighted L^p "norm" version: (∫ f^p w)^{1/p}.
double weighted_p_norm(const StepFunction& f, const Weight& w, double p);

// Convert a piecewise-constant weight/step into the other representation.
// step_to_weight represents cells (and a constant tail) as indicator terms.
Weight step_to_weight(const StepFunction& f);
// Exact only when every term has a == b == 0 (pure steps); throws otherwise.
StepFunction weight_to_step(const Weight& w);

}  // namespace lorentz
