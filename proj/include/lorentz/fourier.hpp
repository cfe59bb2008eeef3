// Fourier coefficients of modulated step functions on the unit circle and
// the machinery built on them.
//
// Everything is closed form — no FFT, no quadrature. Each piece
// amp·e^{i(2πmx+θ)}·χ_{[x0,x1)} contributes
//   amp·e^{iθ}·e^{−πi(n−m)(x0+x1)}·sin(π(n−m)(x1−x0))/(π(n−m))
// to ĝ(n) (amp·e^{iθ}·(x1−x0) at n = m), so magnitude tables carry
// certified truncation bounds. On top of the tables sit:
//   * the decreasing rearrangement of the coefficient sequence (counting
//     measure: a step function constant on [j, j+1)),
//   * a second-mean comparison check for the coefficient map
//     (∫_0^z (ĝ)**² against 8·∫_0^z (∫_0^{1/t} g*)²),
//   * adversarial test functions whose coefficient rearrangements are
//     certifiably large against averaged min(z^{−2}, t^{−2}) profiles, and
//   * an end-to-end verifier for weighted inequalities between ‖ĝ‖ and
//     ‖g‖ with the theoretical ceiling/floor attached.

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lorentz/averaging.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/stepfn.hpp"
#include "lorentz/weight.hpp"

namespace lorentz {

// One piece amp·e^{i(2πmx+θ)} on [x0, x1) ⊂ [0, 1).
struct ModPiece {
  double x0 = 0.0;
  double x1 = 0.0;
  double amplitude = 1.0;
  long long m = 0;
  double theta = 0.0;

  double length() const { return x1 - x0; }
};

// A finite sum of modulated pieces with pairwise disjoint supports and
// total length at most 1 (so |g| is a step function on the circle).
class ModulatedStep {
 public:
  ModulatedStep() = default;
  explicit ModulatedStep(std::vector<ModPiece> pieces);

  const std::vector<ModPiece>& pieces() const { return pieces_; }
  double total_length() const;
  double l1_norm() const;     // ∫|g| = Σ amp·len
  double l2_norm_sq() const;  // ∫|g|² = Σ amp²·len
  long long max_abs_frequency() const;

  // |g| as a step function on the unit interval.
  StepFunction abs_step() const;

  // Exact single coefficient (with phase).
  std::complex<double> coefficient(long long n) const;

 private:
  std::vector<ModPiece> pieces_;
};

// x ↦ e^{2πi·freq·x}·g(x − shift): supports move up by shift, frequencies
// by freq, phases pick up −2π·m·shift per piece.
ModulatedStep translate_modulate(const ModulatedStep& g, double shift,
                                 long long freq);

// Dense magnitude table: |ĝ(n)| for every |n| ≤ N, plus a bound dominating
// every omitted coefficient (Σ amp·min(len, 1/(π(N+1−|m|))) per piece).
struct CoefficientTable {
  long long N = 0;
  std::vector<double> mags;  // mags[i] = |ĝ(i − N)|, size 2N+1
  double tail_bound = 0.0;

  double mag(long long n) const;  // |n| ≤ N
};

CoefficientTable coefficients(const ModulatedStep& g, long long N);

// Ranked coefficient magnitudes as a decreasing step on [j, j+1), together
// with the certificate that makes partial rankings usable:
//   * star ranks `count` evaluated coefficients — a pointwise lower bound
//     for the true rearrangement, and exact wherever star > tail_bound
//     (every unevaluated coefficient is ≤ tail_bound);
//   * padded() majorizes the true rearrangement on (0, count).
struct StarRanking {
  DecreasingStep star;
  double tail_bound = 0.0;
  double count = 0.0;
  std::vector<std::pair<long long, long long>> windows;  // evaluated ranges

  DecreasingStep padded() const;
};

StarRanking coeff_rearrangement(const CoefficientTable& table);

// Evaluates |ĝ(n)| only on windows of the given half-width around each
// distinct piece frequency (merged when they overlap) and ranks those.
// Outside the windows every coefficient is ≤ Σ amp·min(len, 1/(π(W+1))),
// which becomes the ranking's tail_bound. This is how test functions with
// very large separation frequencies stay tractable.
StarRanking windowed_rearrangement(const ModulatedStep& g,
                                   long long half_width);

// Exact ∫_0^z (∫_0^{1/t} f*(s) ds)² dt for a decreasing step f*.
double jt_rhs_integral(const DecreasingStep& fstar, double z);

// Second-mean comparison for the coefficient map: at each z of the grid,
//   ∫_0^z (ĝ)**(t)² dt ≤ 8 · ∫_0^z (∫_0^{1/t} g*)² dt.
// The left side is evaluated from the padded ranking (an upper bound), so
// a pass is rigorous up to the reported truncation quality.
struct JTReport {
  double constant = 8.0;
  double max_ratio = 0.0;
  double arg_z = 0.0;
  std::vector<double> zs;
  std::vector<double> ratios;
  double tail_bound = 0.0;
  bool precondition_ok = false;  // tail_bound < 1% of (ĝ)**(z_max)
  bool pass = false;
  std::string note;
};

JTReport jt_check(const ModulatedStep& f, const std::vector<double>& zs,
                  long long N = 65536);

// A claimed floor for the coefficient rearrangement: certified statement
// ĝ*(y) ≥ value(y) − eps on the range a table can resolve.
struct StarBound {
  std::string label;
  std::function<double(double)> value;
  double eps = 0.0;
};

// A constructed test function with its certificates. For kind == "full"
// the main certificate is √((Aω_z)(y)) ≤ constant·(ĝ*(y) + eps) with
// ω_z(t) = min(z^{−2}, t^{−2}), carried in bounds[] like the rest.
struct TestFunction {
  ModulatedStep g;
  std::string kind;
  double z = 0.0;    // profile ceiling: g* ≤ χ_{[0,1/z)}
  double eps = 0.0;  // total additive slack spent by the construction
  std::vector<StarBound> bounds;
  AveragingOp averaging;      // full only
  double constant = 0.0;      // full only: 183 (z ≥ 3) or 549 (fallback)
  double z_effective = 0.0;   // full only: max(z, 3)
};

// (A min(z^{−2}, ·^{−2}))(t), exactly: the mean of min(z^{−2}, s^{−2}) over
// the interval [a, b) containing t, or the plain value off the intervals.
// Unlike apply_averaging this stays usable when intervals sit inside the
// analytic tail (the result is not a step function, only a point value).
double averaged_omega(const AveragingOp& A, double z, double t);

TestFunction testfun_basic(double z);  // z ≥ 3: f = χ_{(0,1/z)}
// k adjacent translates of χ_{[0,1/(kz))} modulated in steps of
// M = ceil(2k/(πε)); |g| = χ_{[0,1/z)}. k == 1 is ε-free.
TestFunction testfun_dilated(long long k, double z, double eps);
// Picks the integer k with r ≤ k < r+1 and delegates to testfun_dilated;
// attaches the floor 1/(3πy/r + 9π(r+1)z) − ε. Requires z ≥ 3.
TestFunction testfun_combined(double z, double r, double eps);
// Plain characteristic pieces of the given lengths, packed left to right
// and modulated by separation frequencies M_j (cumulative sums of
// (2^j + 2^{j−1})/(πε) + 1, rounded up); |g| = χ_{[0,Σp)}.
TestFunction testfun_assembled(const std::vector<double>& lengths,
                               double eps);
// The full adversarial construction against an averaging operator A:
// χ_{[0,1/(4z'))}, an extra piece when z' lies inside an interval of A,
// and one piece per interval (a,b) of A with z' ≤ a ≤ b/2, assembled with
// separation frequencies; z' = max(z, 3). Certifies
// √((Aω_z)(y)) ≤ constant·(ĝ*(y)+ε) and g* ≤ χ_{[0,1/z)}.
TestFunction testfun_full(double z, const AveragingOp& A, double eps);

// Checks every StarBound of tf against a ranking, at integer y in
// [0, min(y_max, count−1)]. A failure only counts as a violation where the
// ranking is exact at the claimed level (value > 2·tail_bound); below that
// the point is reported as unverifiable at this table size.
struct BoundCheck {
  std::string label;
  long long checked = 0;
  long long verified = 0;
  long long unverifiable = 0;
  long long violations = 0;
  double worst_ratio = 0.0;  // min over decided y of (ĝ*_lower(y)+eps)/value(y)

  bool pass() const { return violations == 0; }
};

std::vector<BoundCheck> check_star_bounds(const TestFunction& tf,
                                          const StarRanking& ranking,
                                          double y_max);

enum class InequalityForm { GammaGamma, GammaLambda, LambdaLambda };

std::string form_name(InequalityForm f);

// One suite entry: the coefficient-norm bracket (lower from the ranked
// subset, upper from padding) over the exact function norm.
struct SuiteRatio {
  std::string label;
  double lhs_lower = 0.0;
  double lhs_upper = 0.0;
  double rhs = 0.0;
  double ratio_lower = 0.0;
  double ratio_upper = 0.0;
};

struct VerifyReport {
  InequalityForm form = InequalityForm::GammaGamma;
  double p = 0.0, q = 0.0;
  double max_ratio_lower = 0.0;
  double max_ratio_upper = 0.0;
  std::string argmax;
  // Theoretical sandwich (gamma-gamma form only): ceiling 8·C_xy for q = 2
  // or 4·√C_ω for q > 2; floor C_xy/549 or √C_ω/549.
  std::string ceiling_kind;
  double ceiling = 0.0;
  Verdict ceiling_verdict = Verdict::Undecided;
  bool ceiling_respected = true;
  double floor = 0.0;
  double floor_slack = 0.0;  // max_ratio_lower / floor
  std::vector<SuiteRatio> entries;
  std::string note;
};

VerifyReport verify_inequality(const Weight& u, const Weight& w, double p,
                               double q, InequalityForm form,
                               const std::vector<ModulatedStep>& random_suite,
                               const std::vector<TestFunction>& adversarial,
                               long long N = 65536,
                               long long adversarial_half_width = 1 << 17,
                               const GridSpec& grid = {});

}  // namespace lorentz
