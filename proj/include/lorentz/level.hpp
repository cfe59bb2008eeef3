// Least concave majorants of piecewise-linear data and the level function:
// the decreasing function whose cumulative integral is the least concave
// majorant of the input's cumulative integral.

#pragma once

#include <vector>

#include "lorentz/stepfn.hpp"

namespace lorentz {

struct MajorantNode {
  double x = 0.0;
  double y = 0.0;
};

// Concave piecewise-linear function: straight segments between vertices,
// then a ray of slope `slope_at_inf` beyond the last vertex.
class ConcaveMajorant {
 public:
  ConcaveMajorant(std::vector<MajorantNode> vertices, double slope_at_inf);

  const std::vector<MajorantNode>& vertices() const { return v_; }
  double slope_at_inf() const { return slope_inf_; }

  double operator()(double x) const;
  // right derivative; a non-increasing right-continuous step in x
  double right_slope(double x) const;
  // the right derivative as a function object (constant tail when the
  // final ray has positive slope)
  DecreasingStep right_derivative() const;

 private:
  std::vector<MajorantNode> v_;
  double slope_inf_;
};

// Least concave majorant of the piecewise-linear function through `nodes`
// that continues beyond the last node as a ray of slope `final_slope`.
// A node at x=0 is implied (origin) when not supplied.
ConcaveMajorant least_concave_majorant(std::vector<MajorantNode> nodes,
                                       double final_slope = 0.0);

// Least concave majorant of t -> integral_0^t u. Exact for tail-free inputs
// and for constant tails (the cumulative is eventually linear). Analytic
// decaying tails have no finite-vertex majorant and are rejected; growing
// tails put the cumulative above every line and are rejected as well.
ConcaveMajorant cumulative_majorant(const StepFunction& u);

// The level function: derivative of cumulative_majorant(u). Non-increasing
// inputs are returned unchanged (their cumulative is already concave),
// which keeps arbitrary tails exact on that path.
DecreasingStep level_function(const StepFunction& u);

// For input data that is linear with slope c on (0, xi), the majorant is
// itself linear on (0, xi); verifies that property on the computed hull.
// Throws if the input fails the linear-on-(0,xi) precondition.
bool lcm_segment_check(const std::vector<MajorantNode>& nodes, double xi,
                       double c, double final_slope = 0.0);

}  // namespace lorentz
