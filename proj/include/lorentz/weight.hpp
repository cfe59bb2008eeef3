#pragma once

// Weights on (0, inf) of power-log type: finite sums of
//
//     c * t^a * L^b * chi_(lo,hi)(t),      L = 1 + |log t|
//
// with c > 0.  This class is closed under the products that arise in the
// toolkit (dual weights, powers against tails, kernel-section integrands), so
// every weighted integral of a step function reduces to powlog_integral.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lorentz/numeric.hpp"

namespace lorentz {

struct WeightTerm {
  double c = 1.0;   // coefficient, > 0
  double a = 0.0;   // power of t
  double b = 0.0;   // power of L = 1 + |log t|
  double lo = 0.0;  // support (lo, hi), 0 <= lo < hi <= inf
  double hi = kInf;
};

class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<WeightTerm> terms);

  static Weight one();                     // w == 1 on (0, inf)
  static Weight indicator(double lo, double hi, double c = 1.0);

  const std::vector<WeightTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  double operator()(double t) const;

  // ∫_x^y t^e L^d w(t) dt  (+inf when divergent)
  double integral_powlog(double e, double d, double x, double y) const;
  double integral(double x, double y) const { return integral_powlog(0, 0, x, y); }

  // Sorted support endpoints inside [clamp_lo, clamp_hi], plus the log kink
  // at t = 1 when interior; used for quadrature splitting and grid building.
  std::vector<double> partition_points(double clamp_lo, double clamp_hi) const;

  // Sufficient symbolic test: true means w is non-increasing on (0, inf).
  // (Conservative: may return false for weights that do decrease.)
  bool is_nonincreasing() const;

  std::string to_expr() const;

 private:
  std::vector<WeightTerm> terms_;
};

struct WeightParseError : std::runtime_error {
  WeightParseError(std::string msg, size_t position)
      : std::runtime_error(std::move(msg)), pos(position) {}
  size_t pos = 0;
};

// Grammar:   weight := term ("+" term)*
//            term   := [NUM ["*"]] "t^" NUM ["*L^" NUM] ["on(" NUM "," (NUM|"inf") ")"]
//                    |  NUM ["on(" NUM "," (NUM|"inf") ")"]
// Coefficients must be strictly positive; intervals need 0 <= lo < hi.
Weight parse_weight(std::string_view expr);

}  // namespace lorentz
