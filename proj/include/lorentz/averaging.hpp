// Averaging operators: replace a function by its mean on each interval of a
// finite disjoint family, identity elsewhere. Formally self-adjoint:
// integral (Af) g = integral f (Ag).

#pragma once

#include <utility>
#include <vector>

#include "lorentz/stepfn.hpp"

namespace lorentz {

class AveragingOp {
 public:
  AveragingOp() = default;  // identity
  explicit AveragingOp(std::vector<std::pair<double, double>> intervals);

  const std::vector<std::pair<double, double>>& intervals() const {
    return iv_;
  }
  bool is_identity() const { return iv_.empty(); }

 private:
  std::vector<std::pair<double, double>> iv_;
};

// Exact application. When an interval reaches past the cell region, the
// analytic tail must be covered by the intervals up to their end (a gap
// over the tail has no piecewise-constant representation and throws).
StepFunction apply_averaging(const AveragingOp& A, const StepFunction& f);

}  // namespace lorentz
