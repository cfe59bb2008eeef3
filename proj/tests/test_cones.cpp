#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lorentz/cones.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/numeric.hpp"

using namespace lorentz;

namespace {

StepFunction omega(double z) {
  return StepFunction({z}, {1.0 / (z * z)}, Tail{1.0, -2.0, 0.0});
}

StepFunction random_step_in(std::mt19937_64& rng, double lo, double hi,
                            int max_cells = 4) {
  std::uniform_int_distribution<int> n_cells(2, max_cells);
  std::uniform_real_distribution<double> pos(std::log(lo), std::log(hi));
  std::uniform_real_distribution<double> val(0.1, 3.0);
  const int n = n_cells(rng);
  std::vector<double> bp;
  for (int i = 0; i < n; ++i) bp.push_back(std::exp(pos(rng)));
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> vals;
  for (size_t i = 0; i < bp.size(); ++i) vals.push_back(val(rng));
  return StepFunction(bp, vals);
}

// quadrature oracle for the kernel integral, split at the kink and at the
// breakpoints of h
double brute_K(const ConeParams& pr, const StepFunction& h, double x) {
  std::vector<double> cuts{pr.xi, x};
  for (double b : h.breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return c < pr.xi; }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double acc = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += adaptive_simpson(
        [&](double t) {
          if (t <= 0.0) return 0.0;  // kernel vanishes at the origin here
          return kernel_value(pr, x, t) * h(t);
        },
        cuts[i], cuts[i + 1], 1e-12);
  }
  return acc;
}

}  // namespace

TEST_CASE("kernel sections take the truncated power shape") {
  const ConeParams pr{2.0, 0.0, 0.0};
  for (double z : {0.5, 1.0, 3.0}) {
    StepFunction om = omega(z);
    for (double x : {0.1, 0.9, 1.1, 2.5, 10.0})
      CHECK(kernel_value(pr, x, z) == doctest::Approx(om(x)).epsilon(1e-13));
  }
  const ConeParams concave{0.0, 1.0, 0.0};
  CHECK(kernel_value(concave, 0.5, 2.0) == doctest::Approx(0.5));
  CHECK(kernel_value(concave, 3.0, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("powers of kernel sections are kernel sections") {
  const ConeParams pr{1.5, 0.7, 0.0};
  const double q = 3.0, t = 2.3;
  const ConeParams prq{q * pr.alpha, q * pr.beta, 0.0};
  for (double x : {0.05, 0.4, 1.0, 2.3, 9.0})
    CHECK(std::pow(kernel_value(pr, x, t), q) ==
          doctest::Approx(kernel_value(prq, x, t)).epsilon(1e-12));
}

TEST_CASE("cone parameter validation") {
  CHECK_THROWS(ConeParams{1.0, -1.0, 0.0}.validate());
  CHECK_THROWS(ConeParams{2.0, 0.0, -1.0}.validate());
  CHECK_NOTHROW(ConeParams{2.0, 0.0, 1.0}.validate());
  CHECK_THROWS(kernel_norm(ConeParams{2.0, 0.0, 0.0}, 1.0, 0.0, Weight::one()));
}

TEST_CASE("kernel operator on an indicator has the concave profile") {
  const ConeParams pr{0.0, 1.0, 0.0};
  ConeElement f = apply_K(pr, StepFunction({1.0, 2.0}, {0.0, 1.0}));
  CHECK(f(0.5) == doctest::Approx(0.5).epsilon(1e-13));   // x * 1
  CHECK(f(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(f(1.5) == doctest::Approx(1.375).epsilon(1e-13));
  CHECK(f(3.0) == doctest::Approx(1.5).epsilon(1e-13));   // int_1^2 t dt
  CHECK(f(100.0) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(f.certify());
}

TEST_CASE("kernel operator matches brute-force quadrature") {
  std::mt19937_64 rng(3);
  const std::vector<ConeParams> cases = {
      {2.0, 0.0, 1.0},  {0.0, 1.0, 0.0},  {1.5, -0.5, 0.5},
      {1.0, 1.0, 0.0},  {2.0, -1.0, 0.3},
  };
  for (const auto& pr : cases) {
    for (int rep = 0; rep < 4; ++rep) {
      StepFunction h = random_step_in(rng, 0.05, 8.0);
      ConeElement f = apply_K(pr, h);
      for (double x : {0.07, 0.4, 1.1, 2.5, 7.0}) {
        const double expect = brute_K(pr, h, x);
        CHECK(f(x) == doctest::Approx(expect).epsilon(1e-8));
      }
      CHECK(f.certify());
    }
  }
}

TEST_CASE("kernel operator output is constant below the cone threshold") {
  std::mt19937_64 rng(9);
  const ConeParams pr{2.0, 0.0, 1.0};
  for (int rep = 0; rep < 5; ++rep) {
    ConeElement f = apply_K(pr, random_step_in(rng, 0.2, 20.0));
    const double v = f(0.5);
    CHECK(f(0.1) == doctest::Approx(v).epsilon(1e-12));
    CHECK(f(0.9) == doctest::Approx(v).epsilon(1e-12));
    CHECK(f.certify());
  }
}

TEST_CASE("cone elements are closed under addition and positive scaling") {
  std::mt19937_64 rng(12);
  const ConeParams pr{1.5, 0.5, 0.7};
  ConeElement f = apply_K(pr, random_step_in(rng, 0.1, 5.0));
  ConeElement g = apply_K(pr, random_step_in(rng, 0.3, 12.0));
  ConeElement s = add(f, g);
  ConeElement c = scale(f, 2.5);
  for (double x : {0.2, 0.8, 1.7, 4.0, 15.0}) {
    CHECK(s(x) == doctest::Approx(f(x) + g(x)).epsilon(1e-12));
    CHECK(c(x) == doctest::Approx(2.5 * f(x)).epsilon(1e-12));
  }
  CHECK(s.certify());
  CHECK(c.certify());
}

TEST_CASE("power substitutions map between cones") {
  // g(t) = t^gamma f(t^(1/lambda)) belongs to the (alpha, beta) cone exactly
  // when f belongs to the (lambda(alpha+gamma), lambda(beta-gamma)) one
  std::mt19937_64 rng(21);
  const double lambda = 2.0, gamma = 0.5;
  const double alpha = 1.0, beta = 0.5;
  const ConeParams src{lambda * (alpha + gamma), lambda * (beta - gamma), 0.0};
  for (int rep = 0; rep < 5; ++rep) {
    ConeElement f = apply_K(src, random_step_in(rng, 0.1, 10.0));
    auto g = [&](double t) {
      return std::pow(t, gamma) * f(std::pow(t, 1.0 / lambda));
    };
    double up_prev = -kInf, down_prev = kInf;
    for (double t = 1e-3; t < 1e3; t *= 1.15) {
      const double up = std::pow(t, alpha) * g(t);
      const double down = std::pow(t, -beta) * g(t);
      CHECK(up >= up_prev * (1.0 - 1e-9));
      CHECK(down <= down_prev * (1.0 + 1e-9));
      up_prev = std::max(up_prev, up);
      down_prev = std::min(down_prev, down);
    }
  }
}

TEST_CASE("approximating a linear majorant needs only the far window") {
  ConcaveMajorant ray({{0.0, 0.0}}, 0.7);
  ApproxSequenceTerm ell = ell_n(ray, 0.0, 5);
  CHECK(ell.over_t_part.cells() == 0);
  CHECK(ell(5.5) == doctest::Approx(0.7));
  CHECK(ell(4.9) == 0.0);
  CHECK(ell(6.1) == 0.0);
  // applying the concave generator gives the moving average of 0.7 min(x, t)
  CHECK(apply_K01(ell, 2.0) == doctest::Approx(1.4).epsilon(1e-13));
  CHECK(apply_K01(ell, 50.0) == doctest::Approx(0.7 * 5.5).epsilon(1e-13));
}

TEST_CASE("approximating sequence recovers the unit concave cap") {
  // majorant of min(x, 1): below the knee the images are exactly x, above
  // it they are (1/(n+1)) / log((n+1)/n), increasing to 1
  ConcaveMajorant cap = least_concave_majorant({{1.0, 1.0}}, 0.0);
  const std::vector<int> ns = {2, 8, 32, 128};
  std::vector<double> xs;
  for (double x = 0.05; x < 20.0; x *= 1.5) xs.push_back(x);
  std::vector<double> prev(xs.size(), -1.0);
  for (int n : ns) {
    ApproxSequenceTerm ell = ell_n(cap, 0.0, n);
    const double c = (n + 1.0) / n;
    for (size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      const double got = apply_K01(ell, x);
      // exact profile of the image
      double expect;
      if (x <= 1.0 / c) {
        expect = x;
      } else if (x >= 1.0) {
        expect = (1.0 / (n + 1.0)) / std::log(c);
      } else {
        expect = (x - 1.0 / c + x * std::log(1.0 / x)) / std::log(c);
      }
      CHECK(got == doctest::Approx(expect).epsilon(1e-12));
      CHECK(got <= cap(x) * (1.0 + 1e-12));
      CHECK(got >= prev[i] * (1.0 - 1e-12));  // increases with n
      prev[i] = got;
    }
  }
  // the gap closes: at x = 1 the n = 128 image is within 1% of the cap
  CHECK(prev.back() >= 0.0);
  ApproxSequenceTerm fine = ell_n(cap, 0.0, 128);
  CHECK(apply_K01(fine, 1.0) > 0.99);
}

TEST_CASE("intercept spike recovers a constant majorant") {
  // constant majorant of height 2 with threshold 2: the whole sequence is
  // the spike (a/t) n on (2, 2 + 1/n) with a = 2
  ConcaveMajorant flat({{0.0, 2.0}}, 0.0);
  double prev = -1.0;
  for (int n : {4, 16, 64, 256, 4096}) {
    ApproxSequenceTerm ell = ell_n(flat, 2.0, n);
    CHECK(ell.step_part.cells() == 0);
    const double at_half = apply_K01(ell, 1.0);  // -> a min(x/xi, 1) = 1
    CHECK(at_half >= prev * (1.0 - 1e-13));
    prev = at_half;
    // beyond the spike the image is exactly a
    CHECK(apply_K01(ell, 5.0) == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("sampled cone elements are deterministic and certified") {
  const ConeParams pr{2.0, 0.0, 1.0};
  auto a = sample_cone(pr, 7, 5);
  auto b = sample_cone(pr, 7, 5);
  REQUIRE(a.size() == 5);
  for (size_t i = 0; i < a.size(); ++i) {
    for (double x : {0.3, 1.4, 6.0})
      CHECK(a[i](x) == b[i](x));
    CHECK(a[i].certify());
    // constant on (0, 1), non-increasing overall for this parameter choice
    CHECK(a[i](0.2) == doctest::Approx(a[i](0.8)).epsilon(1e-12));
  }
}

TEST_CASE("kernel elements reproduce closed-form norms") {
  const Weight w = parse_weight("1 on(0,1) + t^-3 on(1,inf)");
  for (const ConeParams pr : {ConeParams{2.0, 0.0, 1.0}, ConeParams{0.0, 1.0, 0.0}}) {
    for (double z : {1.5, 4.0}) {
      for (double p : {0.5, 1.0, 2.0}) {
        const double direct = kernel_norm(pr, z, p, w);
        const double via_element = cone_norm(kernel_element(pr, z), p, w);
        CHECK(via_element == doctest::Approx(direct).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("averaged kernel norms agree with explicit averaging") {
  // the closed-form piecewise integration must match pushing the kernel
  // section (a step function for beta = 0) through the averaging machinery
  const ConeParams pr{2.0, 0.0, 1.0};
  const Weight u = parse_weight("1 on(0,3)");
  const AveragingOp A({{0.0, 2.0}});
  for (double z : {1.2, 1.5, 3.0}) {
    for (double q : {1.0, 2.0}) {
      const double direct = averaged_kernel_norm(pr, A, z, q, u);
      const double via_step =
          weighted_p_norm(apply_averaging(A, omega(z)), u, q);
      CHECK(direct == doctest::Approx(via_step).epsilon(1e-12));
    }
  }
}

TEST_CASE("ratio bounds sandwich the sampled supremum, identity form") {
  const ConeParams pr{2.0, 0.0, 1.0};
  const Weight u = parse_weight("1 on(0,1)");
  const Weight v = parse_weight("1 on(0,2)");
  RatioBounds rb = ratio_supremum_bounds(pr, u, v, 1.0, 1.0);
  CHECK(rb.verdict == Verdict::Finite);
  CHECK(rb.factor == doctest::Approx(2.0));
  CHECK(rb.lower > 0.0);
  CHECK(rb.upper == doctest::Approx(2.0 * rb.lower));
  CHECK(rb.sampled >= rb.lower * (1.0 - 1e-6));
  CHECK(rb.sampled <= rb.upper * (1.0 + 1e-6));

  // equal weights at p = q: every ratio is 1
  RatioBounds unit = ratio_supremum_bounds(pr, u, u, 1.0, 1.0);
  CHECK(unit.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(unit.sampled == doctest::Approx(1.0).epsilon(1e-6));

  // the factor shrinks with q
  RatioBounds q2 = ratio_supremum_bounds(pr, u, v, 1.0, 2.0);
  CHECK(q2.factor == doctest::Approx(std::pow(2.0, 0.5)));
}

TEST_CASE("ratio bounds sandwich the sampled supremum, averaging form") {
  const ConeParams pr{2.0, 0.0, 1.0};
  const Weight u = parse_weight("1 on(0,3)");
  const Weight v = parse_weight("1 on(0,2)");
  const AveragingOp A({{0.0, 2.0}});
  RatioBounds rb = ratio_supremum_bounds(pr, u, v, 1.0, 1.0, A);
  CHECK(rb.verdict == Verdict::Finite);
  CHECK(rb.factor == doctest::Approx(2.0));
  CHECK(rb.lower > 0.0);
  CHECK(rb.sampled >= rb.lower * (1.0 - 1e-6));
  CHECK(rb.sampled <= rb.upper * (1.0 + 1e-6));
}

TEST_CASE("ratio bounds validate their index ranges") {
  const ConeParams pr{2.0, 0.0, 1.0};
  const Weight w = Weight::one();
  const AveragingOp A({{0.0, 2.0}});
  CHECK_THROWS(ratio_supremum_bounds(pr, w, w, 2.0, 1.0));        // p > q
  CHECK_THROWS(ratio_supremum_bounds(pr, w, w, 1.5, 2.0, A));     // p > 1
  CHECK_THROWS(ratio_supremum_bounds(pr, w, w, 0.5, 0.8, A));     // q < 1
  CHECK_NOTHROW(ratio_supremum_bounds(pr, parse_weight("1 on(0,1)"),
                                      parse_weight("1 on(0,1)"), 0.5, 1.0, A));
}
