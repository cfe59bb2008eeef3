#include "lorentz/level.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lorentz {

namespace {

double slope(const MajorantNode& a, const MajorantNode& b) {
  return (b.y - a.y) / (b.x - a.x);
}

// z-component of (b-a) x (p-b); >= 0 means the path a->b->p does not turn
// right, i.e. b is dominated by (or collinear with) the chord a->p.
double cross(const MajorantNode& a, const MajorantNode& b,
             const MajorantNode& p) {
  return (b.x - a.x) * (p.y - b.y) - (b.y - a.y) * (p.x - b.x);
}

}  // namespace

ConcaveMajorant::ConcaveMajorant(std::vector<MajorantNode> vertices,
                                 double slope_at_inf)
    : v_(std::move(vertices)), slope_inf_(slope_at_inf) {
  if (v_.empty()) throw std::invalid_argument("ConcaveMajorant: no vertices");
  if (!(slope_inf_ >= 0.0) || !std::isfinite(slope_inf_))
    throw std::invalid_argument("ConcaveMajorant: slope at infinity must be >= 0");
  double prev_x = -1.0, prev_slope = kInf;
  for (size_t i = 0; i < v_.size(); ++i) {
    if (!std::isfinite(v_[i].x) || !std::isfinite(v_[i].y) || v_[i].x < 0.0 ||
        v_[i].y < 0.0)
      throw std::invalid_argument("ConcaveMajorant: vertices must be finite, >= 0");
    if (v_[i].x <= prev_x)
      throw std::invalid_argument("ConcaveMajorant: vertices must increase in x");
    if (i > 0) {
      const double s = slope(v_[i - 1], v_[i]);
      if (s > prev_slope * (1.0 + 1e-12) + 1e-12)
        throw std::invalid_argument("ConcaveMajorant: segment slopes must decrease");
      prev_slope = s;
    }
    prev_x = v_[i].x;
  }
  if (slope_inf_ > prev_slope * (1.0 + 1e-12) + 1e-12)
    throw std::invalid_argument(
        "ConcaveMajorant: ray slope exceeds the last segment slope");
}

double ConcaveMajorant::operator()(double x) const {
  if (x <= v_.front().x) return v_.front().y;
  if (x >= v_.back().x) return v_.back().y + slope_inf_ * (x - v_.back().x);
  const auto it = std::upper_bound(
      v_.begin(), v_.end(), x,
      [](double t, const MajorantNode& n) { return t < n.x; });
  const MajorantNode& hi = *it;
  const MajorantNode& lo = *(it - 1);
  return lo.y + slope(lo, hi) * (x - lo.x);
}

double ConcaveMajorant::right_slope(double x) const {
  if (x >= v_.back().x) return slope_inf_;
  const auto it = std::upper_bound(
      v_.begin(), v_.end(), x,
      [](double t, const MajorantNode& n) { return t < n.x; });
  const size_t idx = static_cast<size_t>(it - v_.begin());
  if (idx == 0) return slope(v_[0], v_[1]);
  return slope(v_[idx - 1], v_[idx]);
}

DecreasingStep ConcaveMajorant::right_derivative() const {
  std::vector<double> bp, val;
  for (size_t i = 1; i < v_.size(); ++i) {
    bp.push_back(v_[i].x);
    val.push_back(std::max(0.0, slope(v_[i - 1], v_[i])));
  }
  std::optional<Tail> tail;
  if (slope_inf_ > 0.0) tail = Tail{slope_inf_, 0.0, 0.0};
  while (!tail && !val.empty() && val.back() == 0.0) {
    val.pop_back();
    bp.pop_back();
  }
  return DecreasingStep(StepFunction(std::move(bp), std::move(val), tail));
}

ConcaveMajorant least_concave_majorant(std::vector<MajorantNode> nodes,
                                       double final_slope) {
  for (const auto& n : nodes)
    if (!std::isfinite(n.x) || !std::isfinite(n.y) || n.x < 0.0 || n.y < 0.0)
      throw std::invalid_argument(
          "least_concave_majorant: nodes must be finite and >= 0");
  if (!(final_slope >= 0.0) || !std::isfinite(final_slope))
    throw std::invalid_argument(
        "least_concave_majorant: final slope must be finite and >= 0");
  std::sort(nodes.begin(), nodes.end(),
            [](const MajorantNode& a, const MajorantNode& b) {
              return a.x < b.x || (a.x == b.x && a.y < b.y);
            });
  // collapse duplicate abscissas onto the larger ordinate
  std::vector<MajorantNode> pts;
  for (const auto& n : nodes) {
    if (!pts.empty() && pts.back().x == n.x)
      pts.back().y = n.y;  // sorted so n.y is the larger
    else
      pts.push_back(n);
  }
  if (pts.empty() || pts.front().x > 0.0)
    pts.insert(pts.begin(), MajorantNode{0.0, 0.0});

  // monotone-chain upper hull
  std::vector<MajorantNode> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  // absorb trailing vertices dominated by the final ray
  while (hull.size() >= 2 &&
         slope(hull[hull.size() - 2], hull.back()) <= final_slope)
    hull.pop_back();
  return ConcaveMajorant(std::move(hull), final_slope);
}

ConcaveMajorant cumulative_majorant(const StepFunction& u) {
  double final_slope = 0.0;
  if (u.tail()) {
    const Tail& tl = *u.tail();
    if (tl.a == 0.0 && tl.b == 0.0) {
      final_slope = tl.c;  // cumulative is exactly linear beyond the cells
    } else if (std::isinf(tl.limit_at_inf())) {
      throw std::domain_error(
          "cumulative_majorant: cumulative lies under no line "
          "(requires limiting construction)");
    } else {
      throw std::invalid_argument(
          "cumulative_majorant: analytic decaying tails have no finite-vertex "
          "majorant; truncate the tail onto cells first");
    }
  }
  std::vector<MajorantNode> nodes;
  nodes.reserve(u.cells() + 1);
  nodes.push_back({0.0, 0.0});
  double acc = 0.0;
  for (size_t i = 0; i < u.cells(); ++i) {
    acc += u.value(i) * (u.cell_hi(i) - u.cell_lo(i));
    nodes.push_back({u.cell_hi(i), acc});
  }
  return least_concave_majorant(std::move(nodes), final_slope);
}

DecreasingStep level_function(const StepFunction& u) {
  if (u.is_nonincreasing()) return DecreasingStep(u);
  return cumulative_majorant(u).right_derivative();
}

bool lcm_segment_check(const std::vector<MajorantNode>& nodes, double xi,
                       double c, double final_slope) {
  if (!(xi > 0.0) || !std::isfinite(xi))
    throw std::invalid_argument("lcm_segment_check: need finite xi > 0");
  if (!(c >= 0.0))
    throw std::invalid_argument("lcm_segment_check: need slope c >= 0");
  const double scale = std::max(1.0, c * xi);
  for (const auto& n : nodes) {
    if (n.x <= xi && std::abs(n.y - c * n.x) > 1e-9 * scale)
      throw std::invalid_argument(
          "lcm_segment_check: input is not linear on (0, xi)");
  }
  ConcaveMajorant m = least_concave_majorant(nodes, final_slope);
  // linear on (0, xi) means m(x) = x * m(xi) / xi there; test by value so
  // that ulp-collinear hull vertices inside the segment do not matter
  const double end = m(xi);
  const double vscale = std::max(1.0, end);
  for (double f : {0.125, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.875}) {
    if (std::abs(m(f * xi) - f * end) > 1e-9 * vscale) return false;
  }
  return true;
}

}  // namespace lorentz
