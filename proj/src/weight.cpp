#include "lorentz/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace lorentz {

Weight::Weight(std::vector<WeightTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!(t.c > 0.0) || !std::isfinite(t.c))
      throw std::invalid_argument("Weight: coefficients must be positive and finite");
    if (!std::isfinite(t.a) || !std::isfinite(t.b))
      throw std::invalid_argument("Weight: exponents must be finite");
    if (t.lo < 0.0 || !(t.hi > t.lo))
      throw std::invalid_argument("Weight: interval must satisfy 0 <= lo < hi");
  }
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const WeightTerm& x, const WeightTerm& y) { return x.lo < y.lo; });
}

Weight Weight::one() { return Weight({WeightTerm{1.0, 0.0, 0.0, 0.0, kInf}}); }

Weight Weight::indicator(double lo, double hi, double c) {
  return Weight({WeightTerm{c, 0.0, 0.0, lo, hi}});
}

double Weight::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  const double L = 1.0 + std::abs(std::log(t));
  double v = 0.0;
  for (const auto& w : terms_)
    if (w.lo < t && t < w.hi) v += w.c * std::pow(t, w.a) * std::pow(L, w.b);
  return v;
}

double Weight::integral_powlog(double e, double d, double x, double y) const {
  if (!(y > x)) return 0.0;
  double total = 0.0;
  for (const auto& w : terms_) {
    const double lo = std::max(w.lo, x);
    const double hi = std::min(w.hi, y);
    if (hi > lo) total += w.c * powlog_integral(w.a + e, w.b + d, lo, hi);
  }
  return total;
}

std::vector<double> Weight::partition_points(double clamp_lo, double clamp_hi) const {
  std::vector<double> pts;
  for (const auto& w : terms_) {
    if (w.lo > clamp_lo && w.lo < clamp_hi) pts.push_back(w.lo);
    if (std::isfinite(w.hi) && w.hi > clamp_lo && w.hi < clamp_hi) pts.push_back(w.hi);
  }
  if (clamp_lo < 1.0 && 1.0 < clamp_hi) pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace {

// Is  c t^a L^b  non-increasing on the interval (p, q) (0 <= p < q <= inf)?
// Derivative sign: for t < 1 it is a*L - b with L = 1 - log t; for t > 1 it is
// a*L + b with L = 1 + log t.  Both are linear in L, so endpoint checks are
// exact.
bool term_nonincreasing(double a, double b, double p, double q) {
  auto lin_nonpos = [](double slope, double off, double Lmin, double Lmax) {
    // slope*L + off <= 0 for all L in [Lmin, Lmax] (Lmax may be inf)
    if (std::isinf(Lmax)) {
      if (slope > 0.0) return false;
      if (slope == 0.0 && off > 0.0) return false;
      return slope * Lmin + off <= 0.0;
    }
    return slope * Lmin + off <= 0.0 && slope * Lmax + off <= 0.0;
  };
  if (p < 1.0) {
    const double t_hi = std::min(q, 1.0);
    const double Lmin = 1.0 - std::log(t_hi);  // at the right end
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

bool Weight::is_nonincreasing() const {
  if (terms_.empty()) return true;
  std::vector<double> cuts = partition_points(0.0, kInf);
  cuts.insert(cuts.begin(), 0.0);
  double last_hi = 0.0;
  for (const auto& w : terms_) last_hi = std::max(last_hi, w.hi);
  cuts.push_back(last_hi);

  double prev_left_limit = kInf;  // value approaching each cut from the left
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double p = cuts[i], q = cuts[i + 1];
    if (!(q > p)) continue;
    double value_at_left = 0.0;  // right limit at p
    bool any = false;
    for (const auto& w : terms_) {
      if (w.lo <= p && q <= w.hi) {
        any = true;
        if (!term_nonincreasing(w.a, w.b, p, q)) return false;
        if (p > 0.0) {
          const double L = 1.0 + std::abs(std::log(p));
          value_at_left += w.c * std::pow(p, w.a) * std::pow(L, w.b);
        } else {
          value_at_left = kInf;  // decreasing pieces may blow up at 0+
        }
      }
    }
    (void)any;
    if (p > 0.0 && value_at_left > prev_left_limit * (1.0 + 1e-12) + 1e-300)
      return false;  // upward jump at p
    // left limit at q for the next junction
    if (std::isfinite(q)) {
      double v = 0.0;
      const double L = 1.0 + std::abs(std::log(q));
      for (const auto& w : terms_)
        if (w.lo <= p && q <= w.hi) v += w.c * std::pow(q, w.a) * std::pow(L, w.b);
      prev_left_limit = v;
    }
  }
  // beyond the last support point the weight is 0, never an upward jump
  return true;
}

std::string Weight::to_expr() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& w : terms_) {
    if (!first) os << " + ";
    first = false;
    if (w.c != 1.0 || (w.a == 0.0 && w.b == 0.0)) os << w.c;
    if (w.a != 0.0 || w.b != 0.0 || w.c == 1.0) {
      if (w.c != 1.0) os << "*";
      os << "t^" << w.a;
      if (w.b != 0.0) os << "*L^" << w.b;
    }
    if (w.lo != 0.0 || std::isfinite(w.hi)) {
      os << " on(" << w.lo << ",";
      if (std::isfinite(w.hi))
        os << w.hi;
      else
        os << "inf";
      os << ")";
    }
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------
namespace {

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek_is(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool try_consume(std::string_view tok) {
    skip_ws();
    if (s.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok, const char* what) {
    if (!try_consume(tok))
      throw WeightParseError(std::string("expected ") + what, pos);
  }
  double number(const char* what) {
    skip_ws();
    if (try_consume("inf")) return kInf;
    const std::string tmp(s.substr(pos));
    const char* begin = tmp.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin)
      throw WeightParseError(std::string("expected ") + what, pos);
    pos += static_cast<size_t>(end - begin);
    return v;
  }
  bool starts_number() {
    skip_ws();
    if (pos >= s.size()) return false;
    const char c = s[pos];
    return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+';
  }
};

WeightTerm parse_term(Cursor& cur) {
  WeightTerm term;
  bool have_coeff = false;
  bool have_power = false;
  const size_t term_start = cur.pos;

  if (cur.starts_number()) {
    const size_t at = cur.pos;
    term.c = cur.number("coefficient");
    have_coeff = true;
    if (!(term.c > 0.0))
      throw WeightParseError("coefficient must be positive", at);
    cur.try_consume("*");
  }
  if (cur.try_consume("t^")) {
    term.a = cur.number("exponent after t^");
    have_power = true;
    if (cur.try_consume("*L^") || cur.try_consume("L^"))
      term.b = cur.number("exponent after L^");
  }
  if (!have_coeff && !have_power)
    throw WeightParseError("expected term (NUM or t^...)", term_start);
  if (cur.try_consume("on(")) {
    const size_t at = cur.pos;
    term.lo = cur.number("interval lower endpoint");
    cur.expect(",", "',' in on(lo,hi)");
    term.hi = cur.number("interval upper endpoint or inf");
    cur.expect(")", "')' closing on(...)");
    if (term.lo < 0.0 || !(term.hi > term.lo))
      throw WeightParseError("interval must satisfy 0 <= lo < hi", at);
  }
  return term;
}

}  // namespace

Weight parse_weight(std::string_view expr) {
  Cursor cur{expr, 0};
  std::vector<WeightTerm> terms;
  if (cur.eof()) throw WeightParseError("empty weight expression", 0);
  terms.push_back(parse_term(cur));
  while (!cur.eof()) {
    cur.expect("+", "'+' between terms");
    terms.push_back(parse_term(cur));
  }
  return Weight(std::move(terms));
}

}  // namespace lorentz
