// Geometric parameter grids and supremum estimation with divergence
// detection. A grid supremum is always a lower bound for the true
// supremum; the verdict records whether the scan gives reason to believe
// the true value is infinite (objective still rising past 1e12) or
// undecidable at this resolution (still rising at the probe limit).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lorentz/numeric.hpp"

namespace lorentz {

struct GridSpec {
  double t_min = 1e-6;
  double t_max = 1e6;
  int per_decade = 64;
  // The objective extends continuously to the finite endpoint(s): evaluate
  // there and do not treat values rising into that boundary as suspicious.
  bool closed_lo = false;
  bool closed_hi = false;

  // geometric points of the grid restricted to the open interval (lo, hi),
  // plus algebraic refinement toward finite endpoints
  std::vector<double> points(double lo, double hi) const;
};

enum class Verdict { Finite, Infinite, Undecided };

const char* to_string(Verdict v);

struct SupResult {
  double value = 0.0;  // grid supremum (never overshoots the true sup)
  double arg = 0.0;
  Verdict verdict = Verdict::Finite;
  std::string note;
};

// Scan `objective` over the grid on (lo, hi). Open infinite/zero ends are
// probed geometrically beyond the grid (4 points/decade out to 1e+-300);
// an objective that keeps rising past 1e12 is reported Infinite, one still
// rising at the probe limit is Undecided. NaN points are skipped.
SupResult grid_supremum(const std::function<double(double)>& objective,
                        double lo, double hi, const GridSpec& grid = {});

}  // namespace lorentz
