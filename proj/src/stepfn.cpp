#include "lorentz/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lorentz {

// ---------------------------------------------------------------------------
// Tail
// ---------------------------------------------------------------------------

double Tail::value_at(double t) const {
  if (!(t > 0.0)) {  // limit as t -> 0+ (power factor dominates the log factor)
    if (a > 0.0) return 0.0;
    if (a < 0.0) return kInf;
    return b > 0.0 ? kInf : (b < 0.0 ? 0.0 : c);
  }
  if (std::isinf(t)) return limit_at_inf();
  const double L = 1.0 + std::abs(std::log(t));
  return c * std::pow(t, a) * std::pow(L, b);
}

namespace {

// slope*L + off <= 0 for all L in [Lmin, Lmax]?
bool lin_nonpos(double slope, double off, double Lmin, double Lmax) {
  if (std::isinf(Lmax)) {
    if (slope > 0.0) return false;
    if (slope == 0.0 && off > 0.0) return false;
    return slope * Lmin + off <= 0.0;
  }
  return slope * Lmin + off <= 0.0 && slope * Lmax + off <= 0.0;
}

bool powlog_nonincreasing(double a, double b, double p, double q) {
  if (p < 1.0) {
    const double t_hi = std::min(q, 1.0);
    const double Lmin = 1.0 - std::log(t_hi);
    const double Lmax = p == 0.0 ? kInf : 1.0 - std::log(p);
    if (!lin_nonpos(a, -b, Lmin, Lmax)) return false;
  }
  if (q > 1.0) {
    const double t_lo = std::max(p, 1.0);
    const double Lmin = 1.0 + std::log(t_lo);
    const double Lmax = std::isinf(q) ? kInf : 1.0 + std::log(q);
    if (!lin_nonpos(a, b, Lmin, Lmax)) return false;
  }
  return true;
}

}  // namespace

bool Tail::nonincreasing_from(double t0) const {
  return powlog_nonincreasing(a, b, t0, kInf);
}

double Tail::limit_at_inf() const {
  if (a < 0.0) return 0.0;
  if (a > 0.0) return kInf;
  if (b < 0.0) return 0.0;
  if (b > 0.0) return kInf;
  return c;
}

double Tail::sup_from(double t0) const {
  double best = std::max(value_at(t0), limit_at_inf());
  if (t0 < 1.0) {
    best = std::max(best, value_at(1.0));
    // critical point below 1: a*L - b = 0 with L = 1 - log t
    if (a != 0.0) {
      const double Lstar = b / a;
      if (Lstar > 1.0) {
        const double tc = std::exp(1.0 - Lstar);
        if (tc > t0 && tc < 1.0) best = std::max(best, value_at(tc));
      }
    }
  }
  // critical point above 1: a*L + b = 0 with L = 1 + log t
  if (a != 0.0) {
    const double Lstar = -b / a;
    if (Lstar > 1.0) {
      const double tc = std::exp(Lstar - 1.0);
      if (tc > std::max(t0, 1.0)) best = std::max(best, value_at(tc));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// StepFunction
// ---------------------------------------------------------------------------

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values, std::optional<Tail> tail,
                           DomainKind domain)
    : bp_(std::move(breakpoints)), val_(std::move(values)), tail_(tail),
      domain_(domain) {
  if (bp_.size() != val_.size())
    throw std::invalid_argument("StepFunction: breakpoints/values size mismatch");
  double prev = 0.0;
  for (double b : bp_) {
    if (!(b > prev) || !std::isfinite(b))
      throw std::invalid_argument(
          "StepFunction: breakpoints must be strictly increasing and positive");
    prev = b;
  }
  for (double v : val_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("StepFunction: values must be finite and >= 0");
  }
  if (tail_) {
    if (!(tail_->c > 0.0) || !std::isfinite(tail_->c) ||
        !std::isfinite(tail_->a) || !std::isfinite(tail_->b))
      throw std::invalid_argument("StepFunction: invalid tail descriptor");
  }
  if (domain_ == DomainKind::UnitInterval) {
    if (tail_) throw std::invalid_argument(
        "StepFunction: unit-interval functions cannot carry a tail");
    if (!bp_.empty() && bp_.back() > 1.0)
      throw std::invalid_argument(
          "StepFunction: unit-interval breakpoints must lie in (0, 1]");
  }
  cum_.resize(bp_.size());
  double acc = 0.0;
  for (size_t i = 0; i < bp_.size(); ++i) {
    acc += val_[i] * (cell_hi(i) - cell_lo(i));
    cum_[i] = acc;
  }
}

double StepFunction::support_end() const { return bp_.empty() ? 0.0 : bp_.back(); }

double StepFunction::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  const auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
  const size_t idx = static_cast<size_t>(it - bp_.begin());
  if (idx < val_.size()) return val_[idx];
  return tail_ ? tail_->value_at(t) : 0.0;
}

double StepFunction::max_value() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, v);
  if (tail_) m = std::max(m, tail_->sup_from(support_end()));
  return m;
}

double StepFunction::integral() const {
  double s = 0.0;
  for (size_t i = 0; i < cells(); ++i) s += val_[i] * (cell_hi(i) - cell_lo(i));
  if (tail_) {
    const double t0 = support_end();
    s += t0 > 0.0 ? tail_->c * powlog_integral(tail_->a, tail_->b, t0, kInf)
                  : tail_->c * powlog_integral(tail_->a, tail_->b, 0.0, kInf);
  }
  return s;
}

double StepFunction::cumulative(double t) const {
  if (!(t > 0.0)) return 0.0;
  const auto it = std::lower_bound(bp_.begin(), bp_.end(), t);
  const size_t idx = static_cast<size_t>(it - bp_.begin());
  if (idx < cells()) {
    const double base = idx > 0 ? cum_[idx - 1] : 0.0;
    return base + val_[idx] * (t - cell_lo(idx));
  }
  double s = cum_.empty() ? 0.0 : cum_.back();
  if (tail_) {
    const double t0 = support_end();
    if (t > t0) s += tail_->c * powlog_integral(tail_->a, tail_->b, t0, t);
  }
  return s;
}

double StepFunction::power_integral(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("power_integral: need p > 0");
  double s = 0.0;
  for (size_t i = 0; i < cells(); ++i)
    if (val_[i] > 0.0)
      s += std::pow(val_[i], p) * (cell_hi(i) - cell_lo(i));
  if (tail_)
    s += std::pow(tail_->c, p) *
         powlog_integral(p * tail_->a, p * tail_->b, support_end(), kInf);
  return s;
}

bool StepFunction::is_nonincreasing() const {
  for (size_t i = 1; i < val_.size(); ++i)
    if (val_[i] > val_[i - 1]) return false;
  if (tail_) {
    const double t0 = support_end();
    if (!tail_->nonincreasing_from(t0)) return false;
    if (!val_.empty()) {
      const double at_junction = tail_->value_at(t0);
      if (at_junction > val_.back() * (1.0 + 1e-12) + 1e-300) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// DecreasingStep
// ---------------------------------------------------------------------------

DecreasingStep::DecreasingStep(StepFunction f) : f_(std::move(f)) {
  if (!f_.is_nonincreasing())
    throw std::invalid_argument("DecreasingStep: function is not non-increasing");
}

double DecreasingStep::hardy_average(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("hardy_average: need t > 0");
  return f_.cumulative(t) / t;
}

double hardy_average(const DecreasingStep& f, double t) {
  return f.hardy_average(t);
}

// ---------------------------------------------------------------------------
// distribution / rearrange
// ---------------------------------------------------------------------------

namespace {

// measure of { t in (t0, inf) : tail(t) > lambda } for lambda > 0,
// assuming the superlevel set has finite measure (checked by caller).
double tail_superlevel_measure(const Tail& tl, double t0, double lambda) {
  // split (t0, inf) into monotone segments at the kink t=1 and interior
  // critical points, then locate the crossing on each by bisection in log t.
  std::vector<double> cuts{std::max(t0, 1e-300)};  // keep log(t) finite
  if (t0 < 1.0) cuts.push_back(1.0);
  if (tl.a != 0.0) {
    const double Ls_below = tl.b / tl.a;       // t < 1 critical point
    if (Ls_below > 1.0) {
      const double tc = std::exp(1.0 - Ls_below);
      if (tc > t0 && tc < 1.0) cuts.push_back(tc);
    }
    const double Ls_above = -tl.b / tl.a;      // t > 1 critical point
    if (Ls_above > 1.0) {
      const double tc = std::exp(Ls_above - 1.0);
      if (tc > std::max(t0, 1.0)) cuts.push_back(tc);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto crossing = [&](double lo, double hi, bool decreasing) {
    // g monotone on [lo, hi]; find t with g(t) = lambda (bracket guaranteed)
    double llo = std::log(lo), lhi = std::log(hi);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (llo + lhi);
      const bool above = tl.value_at(std::exp(mid)) > lambda;
      if (above == decreasing)
        llo = mid;
      else
        lhi = mid;
      if (lhi - llo < 1e-15 * std::max(1.0, std::abs(llo))) break;
    }
    return std::exp(0.5 * (llo + lhi));
  };

  double measure = 0.0;
  for (size_t i = 0; i < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = i + 1 < cuts.size() ? cuts[i + 1] : kInf;
    double glo = tl.value_at(lo * (1.0 + 1e-15));
    double ghi = std::isinf(hi) ? tl.limit_at_inf()
                                : tl.value_at(hi * (1.0 - 1e-15));
    if (glo <= lambda && ghi <= lambda) continue;
    if (glo > lambda && ghi > lambda) {
      measure += hi - lo;  // caller guarantees finiteness
      continue;
    }
    if (std::isinf(hi)) {
      // decreasing through lambda on an infinite segment: bracket the end
      double hb = std::max(2.0 * lo, lo + 1.0);
      while (tl.value_at(hb) > lambda) hb *= 2.0;
      measure += crossing(lo, hb, true) - lo;
    } else if (glo > lambda) {
      measure += crossing(lo, hi, true) - lo;
    } else {
      measure += hi - crossing(lo, hi, false);
    }
  }
  return measure;
}

}  // namespace

double distribution(const StepFunction& f, double lambda) {
  if (!(lambda >= 0.0))
    throw std::invalid_argument("distribution: need lambda >= 0");
  double m = 0.0;
  for (size_t i = 0; i < f.cells(); ++i)
    if (f.value(i) > lambda) m += f.cell_hi(i) - f.cell_lo(i);
  if (!f.tail()) return m;

  const Tail& tl = *f.tail();
  if (lambda == 0.0) return kInf;  // power-log tails are a.e. positive
  if (lambda < tl.limit_at_inf())
    throw std::domain_error(
        "distribution: non-rearrangeable (superlevel set has infinite measure)");
  return m + tail_superlevel_measure(tl, f.support_end(), lambda);
}

DecreasingStep rearrange(const StepFunction& f) {
  if (f.is_nonincreasing()) return DecreasingStep(f);

  if (f.tail()) {
    const double t0 = f.support_end();
    const double tail_sup = f.tail()->sup_from(t0);
    double min_val = kInf;
    for (size_t i = 0; i < f.cells(); ++i) min_val = std::min(min_val, f.value(i));
    if (!f.tail()->nonincreasing_from(t0) || min_val < tail_sup)
      throw std::invalid_argument(
          "rearrange: result is not representable (tail interleaves with cells)");
  }

  // stable sort of (value, length) by descending value
  std::vector<std::pair<double, double>> cells;
  cells.reserve(f.cells());
  for (size_t i = 0; i < f.cells(); ++i) {
    const double len = f.cell_hi(i) - f.cell_lo(i);
    if (f.value(i) > 0.0 || f.tail())
      cells.emplace_back(f.value(i), len);
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  std::vector<double> bp, val;
  double pos = 0.0;
  for (const auto& [v, len] : cells) {
    pos += len;
    if (!val.empty() && val.back() == v)
      bp.back() = pos;  // merge equal-value cells
    else {
      bp.push_back(pos);
      val.push_back(v);
    }
  }
  std::optional<Tail> tail = f.tail();
  if (tail && !bp.empty()) bp.back() = f.support_end();  // cells tile (0, t0)
  const DomainKind dom =
      f.domain() == DomainKind::UnitInterval ? DomainKind::UnitInterval
                                             : DomainKind::HalfLine;
  return DecreasingStep(StepFunction(std::move(bp), std::move(val), tail, dom));
}

// ---------------------------------------------------------------------------
// weighted integrals
// ---------------------------------------------------------------------------

double weighted_integral(const StepFunction& f, const Weight& w, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("weighted_integral: need p > 0");
  double s = 0.0;
  for (size_t i = 0; i < f.cells(); ++i) {
    if (f.value(i) <= 0.0) continue;
    s += std::pow(f.value(i), p) * w.integral(f.cell_lo(i), f.cell_hi(i));
  }
  if (f.tail()) {
    const Tail& tl = *f.tail();
    s += std::pow(tl.c, p) *
         w.integral_powlog(p * tl.a, p * tl.b, f.support_end(), kInf);
  }
  return s;
}

double weighted_p_norm(const StepFunction& f, const Weight& w, double p) {
  const double I = weighted_integral(f, w, p);
  return std::isfinite(I) ? std::pow(I, 1.0 / p) : kInf;
}

// ---------------------------------------------------------------------------
// conversions
// ---------------------------------------------------------------------------

Weight step_to_weight(const StepFunction& f) {
  std::vector<WeightTerm> terms;
  for (size_t i = 0; i < f.cells(); ++i)
    if (f.value(i) > 0.0)
      terms.push_back(WeightTerm{f.value(i), 0.0, 0.0, f.cell_lo(i), f.cell_hi(i)});
  if (f.tail())
    terms.push_back(
        WeightTerm{f.tail()->c, f.tail()->a, f.tail()->b, f.support_end(), kInf});
  return Weight(std::move(terms));
}

StepFunction weight_to_step(const Weight& w) {
  std::vector<double> pts;
  double const_tail = 0.0;
  for (const auto& t : w.terms()) {
    if (t.a != 0.0 || t.b != 0.0)
      throw std::invalid_argument(
          "weight_to_step: weight is not piecewise constant");
    if (t.lo > 0.0) pts.push_back(t.lo);
    if (std::isfinite(t.hi))
      pts.push_back(t.hi);
    else
      const_tail += t.c;
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<double> bp, val;
  double prev = 0.0;
  for (double p : pts) {
    double v = 0.0;
    for (const auto& t : w.terms())
      if (t.lo <= prev && p <= t.hi) v += t.c;
    bp.push_back(p);
    val.push_back(v);
    prev = p;
  }
  std::optional<Tail> tail;
  if (const_tail > 0.0) tail = Tail{const_tail, 0.0, 0.0};
  // drop trailing zero cells (cosmetic only)
  while (!val.empty() && val.back() == 0.0 && !tail) {
    val.pop_back();
    bp.pop_back();
  }
  return StepFunction(std::move(bp), std::move(val), tail);
}

}  // namespace lorentz
