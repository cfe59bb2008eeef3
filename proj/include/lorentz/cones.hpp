// Generalized quasi-concave cones, their kernels and integral operators.
//
// The cone with parameters (alpha, beta), alpha + beta > 0, consists of
// nonnegative f with x^alpha f(x) non-decreasing and x^-beta f(x)
// non-increasing; the restricted cone additionally has x^-beta f(x)
// constant on (0, xi). Kernel sections k_t(x) = min(x^beta t^-alpha,
// x^-alpha t^beta) generate the cone: integrating a nonnegative step
// function against them lands inside it, and suprema of norm ratios over
// the whole cone are sandwiched by suprema over kernel sections alone.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorentz/averaging.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/level.hpp"
#include "lorentz/stepfn.hpp"
#include "lorentz/weight.hpp"

namespace lorentz {

struct ConeParams {
  double alpha = 2.0;
  double beta = 0.0;
  double xi = 0.0;

  void validate() const;  // alpha + beta > 0, xi >= 0, all finite
};

// k_t(x) = min(x^beta t^-alpha, x^-alpha t^beta)
double kernel_value(const ConeParams& pr, double x, double t);

// || k_t ||_{p,w}: closed form (two power-weight integrals split at t)
double kernel_norm(const ConeParams& pr, double t, double p, const Weight& w);

// || A k_t ||_{q,w}: exact piecewise integration (constants on the
// averaging intervals, kernel powers elsewhere)
double averaged_kernel_norm(const ConeParams& pr, const AveragingOp& A,
                            double t, double q, const Weight& w);

// One summand c * x^e * (log x)^l with l in {0, 1}.
struct PowerTerm {
  double c = 0.0;
  double e = 0.0;
  int l = 0;
};

// Exact piecewise representation of a cone element: on each piece between
// consecutive cuts the value is a sum of power terms. The first piece
// covers (0, cuts[0]), the last (cuts.back(), inf).
class ConeElement {
 public:
  ConeElement(ConeParams pr, std::vector<double> cuts,
              std::vector<std::vector<PowerTerm>> pieces);

  double operator()(double x) const;
  const ConeParams& params() const { return pr_; }
  const std::vector<double>& cuts() const { return cuts_; }
  const std::vector<std::vector<PowerTerm>>& pieces() const { return pieces_; }

  // exact termwise integral over (lo, hi), both ends may be 0 / inf
  double integral(double lo, double hi) const;

  // membership certificate, checked on geometric grids within each piece:
  // x^alpha f non-decreasing, x^-beta f non-increasing, and x^-beta f
  // constant on (0, xi)
  bool certify(int samples_per_piece = 64, double rtol = 1e-9) const;

 private:
  ConeParams pr_;
  std::vector<double> cuts_;
  std::vector<std::vector<PowerTerm>> pieces_;
};

// closed under addition and positive scaling
ConeElement add(const ConeElement& f, const ConeElement& g);
ConeElement scale(const ConeElement& f, double c);

// the kernel section itself as an exact cone element
ConeElement kernel_element(const ConeParams& pr, double t);

// integral of k(x, t) h(t) dt over (xi, inf), exact cellwise.
// h must be a step function whose tail (if any) is a pure power decaying
// fast enough for the integral to converge.
ConeElement apply_K(const ConeParams& pr, const StepFunction& h);

// (int_0^inf f^p w)^(1/p); single-power pieces are closed-form, interior
// mixed pieces use adaptive quadrature in log coordinates
double cone_norm(const ConeElement& f, double p, const Weight& w);

// The approximating sequence for a concave majorant g with right
// derivative phi: a window of height phi(inf) on (n, n+1), an intercept
// spike (a/t) n on (xi, xi + 1/n), and the difference quotient
// (phi(t) - phi(t (n+1)/n)) / (t log((n+1)/n)). Stored as a step part
// plus a part carrying an explicit 1/t factor, so that applying the
// concave-generating kernel is exact cellwise.
struct ApproxSequenceTerm {
  StepFunction step_part;    // phi(inf) window
  StepFunction over_t_part;  // numerator of the 1/t-carrying terms
  double xi = 0.0;
  int n = 0;

  double operator()(double t) const;
};

ApproxSequenceTerm ell_n(const ConcaveMajorant& g, double xi, int n);

// K^{0,1}_xi applied to an approximating term, exact cellwise
double apply_K01(const ApproxSequenceTerm& ell, double x);

// deterministic cone elements: random positive step functions pushed
// through apply_K
std::vector<ConeElement> sample_cone(const ConeParams& pr, uint64_t seed,
                                     int count);

struct RatioBounds {
  double lower = 0.0;    // sup of the kernel-section ratio on a z-grid
  double upper = 0.0;    // factor * lower
  double factor = 0.0;   // 2 (averaging form) or 2^(1/q) (identity form)
  double sampled = 0.0;  // empirical supremum over sampled cone elements
  Verdict verdict = Verdict::Finite;
  std::string note;
};

// Bounds for sup over the restricted cone of ||A f||_{q,u} / ||f||_{p,v}.
// Identity A: requires 0 < p <= q < inf, factor 2^(1/q).
// Proper averaging A: requires 0 < p <= 1 <= q < inf, factor 2.
RatioBounds ratio_supremum_bounds(const ConeParams& pr, const Weight& u,
                                  const Weight& v, double p, double q,
                                  const AveragingOp& A = {},
                                  const GridSpec& grid = {}, int samples = 12,
                                  uint64_t seed = 1);

}  // namespace lorentz
