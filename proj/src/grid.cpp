#include "lorentz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lorentz {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "finite";
    case Verdict::Infinite: return "infinite";
    default: return "undecided";
  }
}

std::vector<double> GridSpec::points(double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi > lo))
    throw std::invalid_argument("GridSpec::points: need 0 <= lo < hi");
  if (per_decade < 1)
    throw std::invalid_argument("GridSpec::points: per_decade >= 1 required");
  std::vector<double> pts;
  const double lo_eff = lo > 0.0 ? lo : t_min;
  const double hi_eff = std::isfinite(hi) ? hi : t_max;
  const int decades =
      static_cast<int>(std::ceil(std::log10(t_max / t_min))) * per_decade;
  for (int k = 0; k <= decades; ++k) {
    const double t = t_min * std::pow(10.0, static_cast<double>(k) / per_decade);
    if (t > lo && t < hi) pts.push_back(t);
  }
  // algebraic refinement toward finite endpoints, where suprema often live
  if (hi_eff > lo_eff) {
    const double span = hi_eff - lo_eff;
    for (int j = 1; j <= 12; ++j) {
      const double d = span * std::pow(10.0, -j);
      if (lo > 0.0) pts.push_back(lo + d);
      if (std::isfinite(hi)) pts.push_back(hi - d);
    }
    pts.push_back(0.5 * (lo_eff + hi_eff));
  }
  // windows outside [t_min, t_max]: fall back to a local geometric grid
  if (pts.empty()) {
    const double a = lo > 0.0 ? lo : hi_eff * 1e-4;
    const double b = std::isfinite(hi) ? hi : lo * 1e4;
    if (b > a && a > 0.0) {
      const double ratio = b / a;
      for (int k = 1; k < 64; ++k)
        pts.push_back(a * std::pow(ratio, k / 64.0));
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(),
                           [&](double t) {
                             return t <= lo || t >= hi || !std::isfinite(t) ||
                                    t <= 0.0;
                           }),
            pts.end());
  if (pts.empty())
    throw std::invalid_argument("GridSpec::points: empty grid for interval");
  return pts;
}

namespace {

constexpr double kDivergeThreshold = 1e12;
constexpr double kProbeLimitHi = 1e300;
constexpr double kProbeLimitLo = 1e-300;

// probe beyond an open end; returns true if the result was finalized
// (verdict set to Infinite/Undecided), false when the scan simply ran
// freshened values into `best`/`arg` and fell off a plateau.
bool probe_open_end(const std::function<double(double)>& obj, double start,
                    bool upward, double& best, double& arg, Verdict& verdict,
                    std::string& note) {
  const double step = std::pow(10.0, 0.25);
  double t = start;
  int stale = 0;  // consecutive probe points without improvement
  bool improved_any = false;
  while (upward ? t < kProbeLimitHi : t > kProbeLimitLo) {
    t = upward ? t * step : t / step;
    const double v = obj(t);
    if (std::isnan(v)) continue;
    if (std::isinf(v)) {
      best = kInf;
      arg = t;
      verdict = Verdict::Infinite;
      return true;
    }
    if (v > best * (1.0 + 1e-9) || (best == 0.0 && v > 0.0)) {
      best = v;
      arg = t;
      stale = 0;
      improved_any = true;
      if (best > kDivergeThreshold) {
        verdict = Verdict::Infinite;
        note = upward ? "rising past threshold as t -> inf"
                      : "rising past threshold as t -> 0";
        return true;
      }
    } else if (++stale >= 16) {
      return false;  // plateaued or declining: grid value stands
    }
  }
  if (improved_any && stale == 0) {
    verdict = Verdict::Undecided;
    note = upward ? "still rising at probe limit t ~ 1e300"
                  : "still rising at probe limit t ~ 1e-300";
    return true;
  }
  return false;
}

}  // namespace

SupResult grid_supremum(const std::function<double(double)>& objective,
                        double lo, double hi, const GridSpec& grid) {
  const std::vector<double> pts = grid.points(lo, hi);
  SupResult r;
  r.value = -kInf;
  std::vector<double> vals(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    const double v = objective(pts[i]);
    vals[i] = v;
    if (std::isnan(v)) continue;
    if (v > r.value) {
      r.value = v;
      r.arg = pts[i];
    }
    if (std::isinf(v)) {
      r.verdict = Verdict::Infinite;
      r.note = "objective diverges at a grid point";
      return r;
    }
  }
  if (r.value == -kInf) {
    r.value = 0.0;
    r.note = "objective undefined on the whole grid";
    r.verdict = Verdict::Undecided;
    return r;
  }
  if (r.value > kDivergeThreshold) {
    r.verdict = Verdict::Infinite;
    r.note = "grid supremum past threshold";
    return r;
  }

  // open ends: extend the scan geometrically
  if (std::isinf(hi) &&
      probe_open_end(objective, pts.back(), true, r.value, r.arg, r.verdict,
                     r.note))
    return r;
  if (lo == 0.0 &&
      probe_open_end(objective, pts.front(), false, r.value, r.arg, r.verdict,
                     r.note))
    return r;
  if (r.value > kDivergeThreshold) {
    r.verdict = Verdict::Infinite;
    r.note = "probe supremum past threshold";
    return r;
  }

  // closed finite ends: the boundary value itself is a candidate
  auto eval_boundary = [&](double t) {
    const double v = objective(t);
    if (std::isnan(v)) return;
    if (v > r.value) {
      r.value = v;
      r.arg = t;
    }
    if (std::isinf(v) || v > kDivergeThreshold) {
      r.verdict = Verdict::Infinite;
      r.note = "objective diverges at a closed boundary";
    }
  };
  if (grid.closed_lo && lo > 0.0) eval_boundary(lo);
  if (grid.closed_hi && std::isfinite(hi)) eval_boundary(hi);
  if (r.verdict == Verdict::Infinite) return r;

  // finite ends: flag a supremum still rising into the boundary
  auto rising_into = [&](bool at_hi) {
    const size_t n = vals.size();
    if (n < 3) return false;
    double a, b, c;
    if (at_hi) {
      a = vals[n - 3], b = vals[n - 2], c = vals[n - 1];
    } else {
      a = vals[2], b = vals[1], c = vals[0];
    }
    if (std::isnan(a) || std::isnan(b) || std::isnan(c)) return false;
    return c > b * (1.0 + 1e-9) && b > a * (1.0 + 1e-9) &&
           c >= r.value * (1.0 - 1e-12);
  };
  if (!grid.closed_hi && std::isfinite(hi) && rising_into(true)) {
    r.verdict = Verdict::Undecided;
    r.note = "still rising into the upper boundary";
  } else if (!grid.closed_lo && lo > 0.0 && rising_into(false)) {
    r.verdict = Verdict::Undecided;
    r.note = "still rising into the lower boundary";
  }
  return r;
}

}  // namespace lorentz
