#include "lorentz/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lorentz {

AveragingOp::AveragingOp(std::vector<std::pair<double, double>> intervals)
    : iv_(std::move(intervals)) {
  std::sort(iv_.begin(), iv_.end());
  double prev_end = 0.0;
  for (const auto& [a, b] : iv_) {
    if (!(a >= 0.0) || !(b > a) || !std::isfinite(b))
      throw std::invalid_argument("AveragingOp: intervals must satisfy 0 <= a < b");
    if (a < prev_end)
      throw std::invalid_argument("AveragingOp: intervals must be disjoint");
    prev_end = b;
  }
}

StepFunction apply_averaging(const AveragingOp& A, const StepFunction& f) {
  if (A.is_identity()) return f;
  const double t0 = f.support_end();
  const double last_end = A.intervals().back().second;

  if (f.tail() && last_end > t0) {
    // every point of (t0, last_end) must lie inside some interval
    double covered_to = t0;
    for (const auto& [a, b] : A.intervals()) {
      if (b <= t0) continue;
      if (a > covered_to)
        throw std::invalid_argument(
            "apply_averaging: interval gap over the analytic tail is not "
            "representable as a step function");
      covered_to = std::max(covered_to, b);
    }
  }

  // cut points: f's breakpoints and all interval endpoints up to the region
  // that becomes cells
  const double cell_end = std::max(t0, last_end);
  std::vector<double> cuts(f.breakpoints());
  for (const auto& [a, b] : A.intervals()) {
    if (a > 0.0) cuts.push_back(a);
    cuts.push_back(b);
  }
  cuts.push_back(cell_end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return c <= 0.0 || c > cell_end; }),
             cuts.end());

  std::vector<double> bp, val;
  double prev = 0.0;
  for (double c : cuts) {
    const double mid = 0.5 * (prev + c);
    double v = -1.0;
    for (const auto& [a, b] : A.intervals()) {
      if (a <= prev && c <= b) {
        v = (f.cumulative(b) - f.cumulative(a)) / (b - a);
        break;
      }
    }
    if (v < 0.0) v = f(mid);  // outside every interval: identity
    bp.push_back(c);
    val.push_back(v);
    prev = c;
  }
  std::optional<Tail> tail = f.tail();
  const DomainKind dom = f.domain();
  if (dom == DomainKind::UnitInterval && cell_end > 1.0)
    throw std::invalid_argument(
        "apply_averaging: intervals leave the unit-interval domain");
  return StepFunction(std::move(bp), std::move(val), tail, dom);
}

}  // namespace lorentz
