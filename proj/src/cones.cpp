#include "lorentz/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lorentz/numeric.hpp"

namespace lorentz {

void ConeParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(xi) ||
      !(alpha + beta > 0.0) || !(xi >= 0.0))
    throw std::invalid_argument("ConeParams: need alpha + beta > 0 and xi >= 0");
}

double kernel_value(const ConeParams& pr, double x, double t) {
  if (!(x > 0.0) || !(t > 0.0))
    throw std::domain_error("kernel_value: arguments must be positive");
  return std::min(std::pow(x, pr.beta) * std::pow(t, -pr.alpha),
                  std::pow(x, -pr.alpha) * std::pow(t, pr.beta));
}

namespace {

double power_int(double e, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (e == -1.0) return std::log(hi / lo);
  const double hp = std::isinf(hi) ? (e + 1.0 > 0.0 ? kInf : 0.0)
                                   : std::pow(hi, e + 1.0);
  const double lp = lo == 0.0 ? (e + 1.0 > 0.0 ? 0.0 : kInf)
                              : std::pow(lo, e + 1.0);
  return (hp - lp) / (e + 1.0);
}

// int_a^b k_t(x) dx, exact
double kernel_window_integral(const ConeParams& pr, double t, double a,
                              double b) {
  double acc = 0.0;
  const double m = std::min(b, t);
  if (m > a) acc += std::pow(t, -pr.alpha) * power_int(pr.beta, a, m);
  const double m2 = std::max(a, t);
  if (b > m2) acc += std::pow(t, pr.beta) * power_int(-pr.alpha, m2, b);
  return acc;
}

double eval_terms(const std::vector<PowerTerm>& ts, double x) {
  double s = 0.0;
  for (const auto& t : ts)
    s += t.c * std::pow(x, t.e) * (t.l ? std::log(x) : 1.0);
  return s;
}

// int c x^e (log x)^l over (lo, hi); divergent ends give +-inf
double term_integral(const PowerTerm& t, double lo, double hi) {
  if (!(hi > lo) || t.c == 0.0) return 0.0;
  if (t.l == 0) return t.c * power_int(t.e, lo, hi);
  const double ep = t.e + 1.0;
  if (ep == 0.0) {
    auto F = [](double x) {
      const double L = std::log(x);
      return 0.5 * L * L;
    };
    if (lo == 0.0 || std::isinf(hi)) return t.c > 0.0 ? kInf : -kInf;
    return t.c * (F(hi) - F(lo));
  }
  if ((lo == 0.0 && ep < 0.0) || (std::isinf(hi) && ep > 0.0))
    return t.c > 0.0 ? kInf : -kInf;
  auto F = [&](double x) {
    if (x == 0.0 || std::isinf(x)) return 0.0;  // convergent-end limits
    return std::pow(x, ep) * (ep * std::log(x) - 1.0) / (ep * ep);
  };
  return t.c * (F(hi) - F(lo));
}

void append_merged(std::vector<PowerTerm>& ts, const PowerTerm& t) {
  if (t.c == 0.0) return;
  for (auto& s : ts) {
    if (s.e == t.e && s.l == t.l) {
      s.c += t.c;
      return;
    }
  }
  ts.push_back(t);
}

std::vector<PowerTerm> merge_terms(std::vector<PowerTerm> raw) {
  std::vector<PowerTerm> out;
  for (const auto& t : raw) append_merged(out, t);
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const PowerTerm& t) { return t.c == 0.0; }),
            out.end());
  return out;
}

}  // namespace

double kernel_norm(const ConeParams& pr, double t, double p, const Weight& w) {
  if (!(t > 0.0) || !(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("kernel_norm: need t > 0 and 0 < p < inf");
  const double below =
      std::pow(t, -p * pr.alpha) * w.integral_powlog(p * pr.beta, 0.0, 0.0, t);
  const double above =
      std::pow(t, p * pr.beta) * w.integral_powlog(-p * pr.alpha, 0.0, t, kInf);
  const double I = below + above;
  return std::isfinite(I) ? std::pow(I, 1.0 / p) : kInf;
}

double averaged_kernel_norm(const ConeParams& pr, const AveragingOp& A,
                            double t, double q, const Weight& w) {
  if (A.is_identity()) return kernel_norm(pr, t, q, w);
  if (!(t > 0.0) || !(q > 0.0) || !std::isfinite(q))
    throw std::invalid_argument("averaged_kernel_norm: need t > 0, 0 < q < inf");
  double acc = 0.0;
  auto untouched = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    const double m = std::min(hi, t);
    if (m > lo)
      acc += std::pow(t, -q * pr.alpha) *
             w.integral_powlog(q * pr.beta, 0.0, lo, m);
    const double m2 = std::max(lo, t);
    if (hi > m2)
      acc += std::pow(t, q * pr.beta) *
             w.integral_powlog(-q * pr.alpha, 0.0, m2, hi);
  };
  double pos = 0.0;
  for (const auto& iv : A.intervals()) {
    untouched(pos, iv.first);
    const double mean =
        kernel_window_integral(pr, t, iv.first, iv.second) /
        (iv.second - iv.first);
    if (!std::isfinite(mean)) return kInf;
    if (mean > 0.0) acc += std::pow(mean, q) * w.integral(iv.first, iv.second);
    pos = iv.second;
  }
  untouched(pos, kInf);
  return std::isfinite(acc) ? std::pow(acc, 1.0 / q) : kInf;
}

ConeElement::ConeElement(ConeParams pr, std::vector<double> cuts,
                         std::vector<std::vector<PowerTerm>> pieces)
    : pr_(pr), cuts_(std::move(cuts)), pieces_(std::move(pieces)) {
  pr_.validate();
  if (pieces_.size() != cuts_.size() + 1)
    throw std::invalid_argument("ConeElement: need one piece per gap");
  double prev = 0.0;
  for (double c : cuts_) {
    if (!(c > prev) || !std::isfinite(c))
      throw std::invalid_argument("ConeElement: cuts must increase and be positive");
    prev = c;
  }
}

double ConeElement::operator()(double x) const {
  if (!(x > 0.0)) throw std::domain_error("ConeElement: x > 0 required");
  const size_t i =
      std::upper_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin();
  return eval_terms(pieces_[i], x);
}

double ConeElement::integral(double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi > lo))
    throw std::invalid_argument("ConeElement::integral: need 0 <= lo < hi");
  double acc = 0.0;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const double pl = i == 0 ? 0.0 : cuts_[i - 1];
    const double ph = i == cuts_.size() ? kInf : cuts_[i];
    const double a = std::max(lo, pl), b = std::min(hi, ph);
    for (const auto& t : pieces_[i]) acc += term_integral(t, a, b);
  }
  return acc;
}

bool ConeElement::certify(int samples_per_piece, double rtol) const {
  std::vector<double> xs;
  auto add_range = [&](double a, double b) {
    if (!(b > a) || !(a > 0.0)) return;
    const double r = b / a;
    for (int k = 1; k < samples_per_piece; ++k)
      xs.push_back(a * std::pow(r, static_cast<double>(k) / samples_per_piece));
  };
  const double lo_ref = cuts_.empty() ? 1.0 : cuts_.front();
  const double hi_ref = cuts_.empty() ? 1.0 : cuts_.back();
  add_range(lo_ref * 1e-4, lo_ref);
  for (size_t i = 1; i < cuts_.size(); ++i) add_range(cuts_[i - 1], cuts_[i]);
  add_range(hi_ref, hi_ref * 1e4);
  if (pr_.xi > 0.0) add_range(pr_.xi * 1e-4, pr_.xi);
  std::sort(xs.begin(), xs.end());

  double up_prev = -kInf;   // x^alpha f, must not decrease
  double down_prev = kInf;  // x^-beta f, must not increase
  double const_min = kInf, const_max = -kInf;
  for (double x : xs) {
    const double f = (*this)(x);
    if (!std::isfinite(f) || f < -rtol) return false;
    const double up = std::pow(x, pr_.alpha) * f;
    const double down = std::pow(x, -pr_.beta) * f;
    if (up < up_prev * (1.0 - rtol) - 1e-300) return false;
    if (down > down_prev * (1.0 + rtol) + 1e-300) return false;
    up_prev = std::max(up_prev, up);
    down_prev = std::min(down_prev, down);
    if (x < pr_.xi) {
      const_min = std::min(const_min, down);
      const_max = std::max(const_max, down);
    }
  }
  if (pr_.xi > 0.0 && const_max > const_min * (1.0 + rtol) + 1e-300)
    return false;
  return true;
}

ConeElement add(const ConeElement& f, const ConeElement& g) {
  const ConeParams& a = f.params();
  const ConeParams& b = g.params();
  if (a.alpha != b.alpha || a.beta != b.beta || a.xi != b.xi)
    throw std::invalid_argument("add: cone parameters must match");
  std::vector<double> cuts(f.cuts());
  cuts.insert(cuts.end(), g.cuts().begin(), g.cuts().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto piece_at = [](const ConeElement& e, double x) {
    const size_t i =
        std::upper_bound(e.cuts().begin(), e.cuts().end(), x) - e.cuts().begin();
    return e.pieces()[i];
  };
  std::vector<std::vector<PowerTerm>> pieces;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    const double pl = i == 0 ? 0.0 : cuts[i - 1];
    const double ph = i == cuts.size() ? kInf : cuts[i];
    const double mid = std::isinf(ph) ? pl * 2.0 + 1.0 : 0.5 * (pl + ph);
    std::vector<PowerTerm> ts = piece_at(f, mid);
    for (const auto& t : piece_at(g, mid)) ts.push_back(t);
    pieces.push_back(merge_terms(std::move(ts)));
  }
  return ConeElement(a, std::move(cuts), std::move(pieces));
}

ConeElement scale(const ConeElement& f, double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("scale: factor must be positive and finite");
  std::vector<std::vector<PowerTerm>> pieces(f.pieces());
  for (auto& piece : pieces)
    for (auto& t : piece) t.c *= c;
  return ConeElement(f.params(), f.cuts(), std::move(pieces));
}

ConeElement kernel_element(const ConeParams& pr, double t) {
  pr.validate();
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::invalid_argument("kernel_element: need 0 < t < inf");
  std::vector<std::vector<PowerTerm>> pieces;
  pieces.push_back({PowerTerm{std::pow(t, -pr.alpha), pr.beta, 0}});
  pieces.push_back({PowerTerm{std::pow(t, pr.beta), -pr.alpha, 0}});
  return ConeElement(pr, {t}, std::move(pieces));
}

ConeElement apply_K(const ConeParams& pr, const StepFunction& h) {
  pr.validate();
  const double al = pr.alpha, be = pr.beta, xi = pr.xi;
  double tc = 0.0, ta = 0.0;  // tail coefficient / exponent
  if (h.tail()) {
    const Tail& tl = *h.tail();
    if (tl.b != 0.0)
      throw std::invalid_argument("apply_K: tail must be a pure power");
    if (tl.c > 0.0 && !(tl.a - al < -1.0))
      throw std::domain_error("apply_K: integral diverges (tail too heavy)");
    tc = tl.c;
    ta = tl.a;
  }

  std::vector<double> cuts;
  if (xi > 0.0) cuts.push_back(xi);
  for (double c : h.breakpoints())
    if (c > xi) cuts.push_back(c);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // pure analytic tail over the whole half-line (no cells above zero)
  if (cuts.empty()) {
    if (tc == 0.0) return ConeElement(pr, {}, {{}});
    if (!(be + ta > -1.0))
      throw std::domain_error("apply_K: integral diverges near zero");
    std::vector<PowerTerm> ts = merge_terms(
        {PowerTerm{tc / (be + ta + 1.0), be + ta + 1.0 - al, 0},
         PowerTerm{tc / (al - ta - 1.0), be + ta + 1.0 - al, 0}});
    return ConeElement(pr, {}, {std::move(ts)});
  }

  const size_t M = cuts.size();
  auto seg_value = [&](size_t j) {  // h on (cuts[j-1], cuts[j]), j >= 1
    return h(0.5 * (cuts[j - 1] + cuts[j]));
  };
  const double v_first = h(0.5 * cuts[0]);  // h on (0, cuts[0])
  if (xi == 0.0 && v_first > 0.0 && be <= -1.0)
    throw std::domain_error("apply_K: integral diverges near zero");

  // prefix integrals of t^be h from the integration start (xi or 0)
  std::vector<double> P(M, 0.0);
  P[0] = xi > 0.0 ? 0.0 : v_first * power_int(be, 0.0, cuts[0]);
  for (size_t j = 1; j < M; ++j)
    P[j] = P[j - 1] + seg_value(j) * power_int(be, cuts[j - 1], cuts[j]);

  // suffix integrals of t^-al h beyond each cut
  std::vector<double> Q(M, 0.0);
  const double R = cuts.back();
  Q[M - 1] = tc > 0.0 ? tc * power_int(ta - al, std::max(R, h.support_end()),
                                       kInf)
                      : 0.0;
  for (size_t j = M - 1; j-- > 0;)
    Q[j] = Q[j + 1] + seg_value(j + 1) * power_int(-al, cuts[j], cuts[j + 1]);

  // segment (l, r) with h == v there: x^-al I1(x) + x^be I2(x)
  auto segment_terms = [&](double l, double r, double v, double Pl,
                           double Qr) {
    std::vector<PowerTerm> ts;
    if (v == 0.0) {
      ts.push_back({Pl, -al, 0});
      ts.push_back({Qr, be, 0});
      return merge_terms(std::move(ts));
    }
    if (be == -1.0) {
      ts.push_back({Pl - v * std::log(l), -al, 0});
      ts.push_back({v, -al, 1});
    } else {
      const double lp = l == 0.0 ? 0.0 : std::pow(l, be + 1.0);
      ts.push_back({Pl - v * lp / (be + 1.0), -al, 0});
      ts.push_back({v / (be + 1.0), be + 1.0 - al, 0});
    }
    if (al == 1.0) {
      ts.push_back({Qr + v * std::log(r), be, 0});
      ts.push_back({-v, be, 1});
    } else {
      ts.push_back({Qr + v * std::pow(r, 1.0 - al) / (1.0 - al), be, 0});
      ts.push_back({-v / (1.0 - al), be + 1.0 - al, 0});
    }
    return merge_terms(std::move(ts));
  };

  std::vector<std::vector<PowerTerm>> pieces;
  if (xi > 0.0)
    pieces.push_back(merge_terms({PowerTerm{Q[0], be, 0}}));
  else
    pieces.push_back(segment_terms(0.0, cuts[0], v_first, 0.0, Q[0]));
  for (size_t j = 1; j < M; ++j)
    pieces.push_back(
        segment_terms(cuts[j - 1], cuts[j], seg_value(j), P[j - 1], Q[j]));

  // beyond the last cut
  const double PT = P[M - 1];
  if (tc == 0.0) {
    pieces.push_back(merge_terms({PowerTerm{PT, -al, 0}}));
  } else {
    std::vector<PowerTerm> ts;
    if (be + ta == -1.0) {
      ts.push_back({PT - tc * std::log(R), -al, 0});
      ts.push_back({tc, -al, 1});
      ts.push_back({tc / (al - ta - 1.0), -al, 0});  // be + ta + 1 - al = -al
    } else {
      ts.push_back({PT - tc * std::pow(R, be + ta + 1.0) / (be + ta + 1.0),
                    -al, 0});
      ts.push_back({tc / (be + ta + 1.0), be + ta + 1.0 - al, 0});
      ts.push_back({tc / (al - ta - 1.0), be + ta + 1.0 - al, 0});
    }
    pieces.push_back(merge_terms(std::move(ts)));
  }
  return ConeElement(pr, std::move(cuts), std::move(pieces));
}

namespace {

// int_LO^HI f^p w for a cone element; closed form on single-power pieces,
// adaptive quadrature in log coordinates on mixed pieces
double cone_power_integral(const ConeElement& f, double p, const Weight& w,
                           double LO, double HI) {
  const auto& cuts = f.cuts();
  double acc = 0.0;
  for (size_t i = 0; i < f.pieces().size(); ++i) {
    const auto& ts = f.pieces()[i];
    if (ts.empty()) continue;
    const double pl = i == 0 ? 0.0 : cuts[i - 1];
    const double ph = i == cuts.size() ? kInf : cuts[i];
    double a = std::max(LO, pl), b = std::min(HI, ph);
    if (!(b > a)) continue;
    if (ts.size() == 1 && ts[0].l == 0 && ts[0].c >= 0.0) {
      acc += std::pow(ts[0].c, p) * w.integral_powlog(ts[0].e * p, 0.0, a, b);
      if (std::isinf(acc)) return kInf;
      continue;
    }
    // dominant-power handling for unbounded window ends
    if (a == 0.0) {
      const auto dom = *std::min_element(
          ts.begin(), ts.end(),
          [](const PowerTerm& s, const PowerTerm& t) { return s.e < t.e; });
      const double cut = (std::isfinite(b) ? b : 1.0) * 1e-10;
      if (dom.l == 0 && dom.c > 0.0)
        acc += std::pow(dom.c, p) * w.integral_powlog(dom.e * p, 0.0, 0.0, cut);
      a = cut;
    }
    if (std::isinf(b)) {
      const auto dom = *std::max_element(
          ts.begin(), ts.end(),
          [](const PowerTerm& s, const PowerTerm& t) { return s.e < t.e; });
      const double cut = a * 1e10;
      if (dom.l == 0 && dom.c > 0.0)
        acc +=
            std::pow(dom.c, p) * w.integral_powlog(dom.e * p, 0.0, cut, kInf);
      b = cut;
    }
    if (std::isinf(acc)) return kInf;
    auto integrand = [&](double s) {
      const double x = std::exp(s);
      const double val = std::max(0.0, eval_terms(ts, x));
      return std::pow(val, p) * w(x) * x;
    };
    acc += adaptive_simpson(integrand, std::log(a), std::log(b), 1e-9);
    if (std::isinf(acc)) return kInf;
  }
  return acc;
}

}  // namespace

double cone_norm(const ConeElement& f, double p, const Weight& w) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("cone_norm: need 0 < p < inf");
  const double I = cone_power_integral(f, p, w, 0.0, kInf);
  return std::isfinite(I) ? std::pow(I, 1.0 / p) : kInf;
}

double ApproxSequenceTerm::operator()(double t) const {
  if (!(t > 0.0)) throw std::domain_error("ApproxSequenceTerm: t > 0 required");
  return step_part(t) + over_t_part(t) / t;
}

namespace {

// pointwise sum of two tail-free step functions
StepFunction add_steps(const StepFunction& s1, const StepFunction& s2) {
  if (s1.cells() == 0) return s2;
  if (s2.cells() == 0) return s1;
  std::vector<double> bp(s1.breakpoints());
  bp.insert(bp.end(), s2.breakpoints().begin(), s2.breakpoints().end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> val;
  double prev = 0.0;
  for (double b : bp) {
    const double mid = 0.5 * (prev + b);
    val.push_back(s1(mid) + s2(mid));
    prev = b;
  }
  return StepFunction(std::move(bp), std::move(val));
}

double step_window_integral(const StepFunction& s, double lo, double hi) {
  const double end = s.support_end();
  const double b = std::min(hi, end);
  if (!(b > lo)) return 0.0;
  return s.cumulative(b) - s.cumulative(lo);
}

// int t s(t) dt over (lo, hi) for a tail-free step function
double step_t_integral(const StepFunction& s, double lo, double hi) {
  double acc = 0.0;
  double prev = 0.0;
  for (size_t i = 0; i < s.cells(); ++i) {
    const double l = std::max(lo, prev), r = std::min(hi, s.breakpoints()[i]);
    if (r > l) acc += s.values()[i] * 0.5 * (r * r - l * l);
    prev = s.breakpoints()[i];
  }
  return acc;
}

// int s(t)/t dt over (lo, hi) for a tail-free step function
double step_over_t_integral(const StepFunction& s, double lo, double hi) {
  double acc = 0.0;
  double prev = 0.0;
  for (size_t i = 0; i < s.cells(); ++i) {
    const double l = std::max(lo, prev), r = std::min(hi, s.breakpoints()[i]);
    if (r > l && l > 0.0) acc += s.values()[i] * std::log(r / l);
    prev = s.breakpoints()[i];
  }
  return acc;
}

}  // namespace

ApproxSequenceTerm ell_n(const ConcaveMajorant& g, double xi, int n) {
  if (!(xi >= 0.0) || !std::isfinite(xi))
    throw std::invalid_argument("ell_n: need xi >= 0");
  if (n < 1 || !(static_cast<double>(n) > xi))
    throw std::invalid_argument("ell_n: need integer n >= 1 with n > xi");
  const DecreasingStep phi = g.right_derivative();
  const StepFunction& ph = phi.fn();
  const double phi_inf = ph.tail() ? ph.tail()->c : 0.0;

  double a = xi > 0.0 ? g(xi) - xi * ph(xi) : g.vertices().front().y;
  a = std::max(a, 0.0);

  // window of height phi(inf) on (n, n+1)
  StepFunction step_part;
  if (phi_inf > 0.0)
    step_part = StepFunction({static_cast<double>(n), n + 1.0},
                             {0.0, phi_inf});

  // difference quotient numerator (phi(t) - phi(t (n+1)/n)) / log((n+1)/n)
  const double c = (n + 1.0) / n;
  const double logc = std::log(c);
  std::vector<double> bp;
  for (double b : ph.breakpoints()) {
    bp.push_back(b);
    bp.push_back(b / c);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  StepFunction quotient;
  if (!bp.empty()) {
    std::vector<double> val;
    double prev = 0.0;
    for (double b : bp) {
      const double mid = 0.5 * (prev + b);
      val.push_back(std::max(0.0, (ph(mid) - ph(mid * c)) / logc));
      prev = b;
    }
    while (!val.empty() && val.back() == 0.0) {
      val.pop_back();
      bp.pop_back();
    }
    quotient = StepFunction(std::move(bp), std::move(val));
  }

  // intercept spike (a/t) n on (xi, xi + 1/n): contributes a*n to the
  // 1/t-carrying numerator
  StepFunction spike;
  if (a > 0.0) {
    if (xi > 0.0)
      spike = StepFunction({xi, xi + 1.0 / n}, {0.0, a * n});
    else
      spike = StepFunction({1.0 / n}, {a * n});
  }

  ApproxSequenceTerm out;
  out.step_part = std::move(step_part);
  out.over_t_part = add_steps(quotient, spike);
  out.xi = xi;
  out.n = n;
  return out;
}

double apply_K01(const ApproxSequenceTerm& ell, double x) {
  if (!(x > 0.0)) throw std::domain_error("apply_K01: x > 0 required");
  const double xi = ell.xi;
  const double m = std::max(xi, x);
  double acc = step_t_integral(ell.step_part, xi, m) +
               x * step_window_integral(ell.step_part, m, kInf);
  acc += step_window_integral(ell.over_t_part, xi, m) +
         x * step_over_t_integral(ell.over_t_part, m, kInf);
  return acc;
}

std::vector<ConeElement> sample_cone(const ConeParams& pr, uint64_t seed,
                                     int count) {
  pr.validate();
  if (count < 1) throw std::invalid_argument("sample_cone: count >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ncells(2, 6);
  std::uniform_real_distribution<double> logu(-2.0, 3.0);
  std::uniform_real_distribution<double> unif(1e-12, 1.0);
  const double base = std::max(pr.xi, 1e-2);
  std::vector<ConeElement> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const int m = ncells(rng);
    std::vector<double> bp;
    for (int j = 0; j < m; ++j) bp.push_back(base * std::pow(10.0, logu(rng)));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> val;
    for (size_t j = 0; j < bp.size(); ++j) val.push_back(-std::log(unif(rng)));
    // keep the kernel integral convergent near zero
    if (pr.xi == 0.0 && pr.beta <= -1.0) val.front() = 0.0;
    out.push_back(apply_K(pr, StepFunction(std::move(bp), std::move(val))));
  }
  return out;
}

RatioBounds ratio_supremum_bounds(const ConeParams& pr, const Weight& u,
                                  const Weight& v, double p, double q,
                                  const AveragingOp& A, const GridSpec& grid,
                                  int samples, uint64_t seed) {
  pr.validate();
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q))
    throw std::invalid_argument("ratio_supremum_bounds: need finite p, q > 0");
  const bool identity = A.is_identity();
  if (identity) {
    if (!(p <= q))
      throw std::invalid_argument(
          "ratio_supremum_bounds: identity form requires 0 < p <= q < inf");
  } else if (!(p <= 1.0 && 1.0 <= q)) {
    throw std::invalid_argument(
        "ratio_supremum_bounds: averaging form requires 0 < p <= 1 <= q < inf");
  }
  const double factor = identity ? std::pow(2.0, 1.0 / q) : 2.0;

  auto ratio = [&](double z) {
    const double den = kernel_norm(pr, z, p, v);
    const double num = identity ? kernel_norm(pr, z, q, u)
                                : averaged_kernel_norm(pr, A, z, q, u);
    if (std::isinf(den)) return std::isinf(num) ? std::nan("") : 0.0;
    if (den == 0.0) return num > 0.0 ? kInf : std::nan("");
    return num / den;
  };
  GridSpec g2 = grid;
  g2.closed_lo = true;  // the ratio extends continuously to z = xi
  const SupResult s = grid_supremum(ratio, pr.xi, kInf, g2);

  RatioBounds rb;
  rb.lower = s.value;
  rb.factor = factor;
  rb.upper = std::isinf(s.value) ? kInf : factor * s.value;
  rb.verdict = s.verdict;
  rb.note = s.note;

  auto sample_ratio = [&](const ConeElement& f) {
    const double den = cone_norm(f, p, v);
    if (!(den > 0.0) || std::isinf(den)) return 0.0;
    double num;
    if (identity) {
      num = cone_norm(f, q, u);
    } else {
      double acc = 0.0;
      double pos = 0.0;
      for (const auto& iv : A.intervals()) {
        acc += cone_power_integral(f, q, u, pos, iv.first);
        const double mean =
            f.integral(iv.first, iv.second) / (iv.second - iv.first);
        if (mean > 0.0)
          acc += std::pow(mean, q) * u.integral(iv.first, iv.second);
        pos = iv.second;
      }
      acc += cone_power_integral(f, q, u, pos, kInf);
      num = std::isfinite(acc) ? std::pow(acc, 1.0 / q) : kInf;
    }
    return std::isfinite(num) ? num / den : 0.0;
  };

  double best = 0.0;
  for (const ConeElement& f : sample_cone(pr, seed, samples))
    best = std::max(best, sample_ratio(f));
  // the best kernel section found by the scan is itself a cone element
  if (rb.verdict == Verdict::Finite && s.arg > 0.0 && std::isfinite(s.arg))
    best = std::max(best, sample_ratio(kernel_element(pr, s.arg)));
  rb.sampled = best;
  return rb;
}

}  // namespace lorentz
