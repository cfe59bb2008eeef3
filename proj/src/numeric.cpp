#include "lorentz/numeric.hpp"

#include <algorithm>

namespace lorentz {

bool powlog_integrable_at_zero(double a, double b) {
  return a > -1.0 || (a == -1.0 && b < -1.0);
}

bool powlog_integrable_at_inf(double a, double b) {
  return a < -1.0 || (a == -1.0 && b < -1.0);
}

namespace {

// E(b, A, B, X) = ∫_0^X e^{-s} (A + B s)^b ds with A > 0 and A + B s > 0 on
// the whole range.  X may be +inf (only reached with B > 0, coming from the
// decaying-exponential reduction).  Panel-wise adaptive Simpson; panels past
// the integrand's peak terminate once the analytic remainder bound is
// negligible relative to the accumulated value.
double gamma_type_integral(double b, double A, double B, double X) {
  if (!(X > 0.0)) return 0.0;
  auto g = [&](double s) { return std::exp(-s) * std::pow(A + B * s, b); };

  const double sigma_peak = (B > 0.0 && b > 0.0) ? std::max(0.0, b - A / B) : 0.0;
  double acc = 0.0, comp = 0.0;
  double j = 0.0;
  while (j < X) {
    const double hi = std::min(j + 1.0, X);
    const double panel = adaptive_simpson(g, j, hi, 1e-13);
    // Kahan accumulation: panels are nonnegative, no cancellation.
    const double y = panel - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    j = hi;
    if (j >= X) break;

    // Remainder bounds for early termination on long / improper ranges.
    if (B <= 0.0 || b <= 0.0) {
      // (A+Bs)^b is monotone on [j, X]; bound it by its endpoint maximum.
      const double base_hi = std::isinf(X) ? kInf : A + B * X;
      double mb;
      if (b <= 0.0) {
        mb = (B <= 0.0) ? std::pow(std::min(A + B * j, base_hi), b)
                        : std::pow(A + B * j, b);
      } else {
        mb = std::pow(std::max(A + B * j, base_hi), b);
      }
      if (mb * std::exp(-j) <= 1e-14 * acc) break;
    } else {
      // B > 0, b > 0: past the peak successive panels decay at least
      // geometrically with ratio < e^{-2/3}; remainder ≲ 2.3 * panel.
      if (j >= sigma_peak + 2.0 * b + 2.0 &&
          (panel <= 4e-14 * acc || panel == 0.0))
        break;
    }
    if (panel == 0.0 && j > sigma_peak + 2.0 && acc == 0.0) break;
  }
  return acc;
}

// ∫_{s0}^{s1} e^{kappa s} (1+s)^b ds over 0 <= s0 <= s1 <= inf.
double exp_poly_integral(double kappa, double b, double s0, double s1) {
  if (!(s1 > s0)) return 0.0;
  const bool inf_end = std::isinf(s1);
  if (inf_end && !(kappa < 0.0 || (kappa == 0.0 && b < -1.0))) return kInf;
  if (kappa == 0.0) {
    if (b == -1.0) return inf_end ? kInf : std::log((1.0 + s1) / (1.0 + s0));
    const double bp = b + 1.0;
    if (inf_end) return bp < 0.0 ? -std::pow(1.0 + s0, bp) / bp : kInf;
    return (std::pow(1.0 + s1, bp) - std::pow(1.0 + s0, bp)) / bp;
  }
  if (b == 0.0) {
    if (inf_end) return std::exp(kappa * s0) / (-kappa);
    return (std::exp(kappa * s1) - std::exp(kappa * s0)) / kappa;
  }
  if (kappa < 0.0) {
    const double X = inf_end ? kInf : (-kappa) * (s1 - s0);
    return std::exp(kappa * s0) / (-kappa) *
           gamma_type_integral(b, 1.0 + s0, -1.0 / kappa, X);
  }
  const double X = kappa * (s1 - s0);
  return std::exp(kappa * s1) / kappa *
         gamma_type_integral(b, 1.0 + s1, -1.0 / kappa, X);
}

}  // namespace

double powlog_integral(double a, double b, double lo, double hi) {
  if (std::isnan(a) || std::isnan(b) || std::isnan(lo) || std::isnan(hi))
    throw std::invalid_argument("powlog_integral: NaN argument");
  if (lo < 0.0 || !(hi > lo))
    throw std::invalid_argument("powlog_integral: need 0 <= lo < hi");

  const double kappa = a + 1.0;
  if (b == 0.0) {
    if (kappa == 0.0) {
      if (lo == 0.0 || std::isinf(hi)) return kInf;
      return std::log(hi / lo);
    }
    const double plo = lo == 0.0 ? (kappa > 0.0 ? 0.0 : kInf)
                                 : std::pow(lo, kappa);
    const double phi = std::isinf(hi) ? (kappa < 0.0 ? 0.0 : kInf)
                                      : std::pow(hi, kappa);
    if (std::isinf(plo) || std::isinf(phi)) return kInf;
    return (phi - plo) / kappa;
  }

  double total = 0.0;
  if (lo < 1.0) {
    // (lo, min(hi,1)]: substitute q = -log t, integrand e^{-kappa q}(1+q)^b.
    const double top = std::min(hi, 1.0);
    const double q0 = -std::log(top);           // >= 0
    const double q1 = lo == 0.0 ? kInf : -std::log(lo);
    total += exp_poly_integral(-kappa, b, q0, q1);
  }
  if (hi > 1.0) {
    const double bot = std::max(lo, 1.0);
    const double s0 = std::log(bot);
    const double s1 = std::isinf(hi) ? kInf : std::log(hi);
    total += exp_poly_integral(kappa, b, s0, s1);
  }
  return total;
}

double powlog_integral_finite(double a, double b, double lo, double hi) {
  const double v = powlog_integral(a, b, lo, hi);
  if (!std::isfinite(v))
    throw std::domain_error("powlog_integral_finite: divergent integral");
  return v;
}

}  // namespace lorentz
