#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lorentz/stepfn.hpp"

using namespace lorentz;

namespace {

StepFunction omega(double z) {
  // min(z^-2, t^-2): constant z^-2 up to z, then a t^-2 tail
  return StepFunction({z}, {1.0 / (z * z)}, Tail{1.0, -2.0, 0.0});
}

StepFunction random_step(std::mt19937_64& rng, int max_cells = 8) {
  std::uniform_int_distribution<int> ncells(1, max_cells);
  std::uniform_real_distribution<double> len(0.05, 2.0);
  std::uniform_real_distribution<double> val(0.0, 5.0);
  const int n = ncells(rng);
  std::vector<double> bp, v;
  double pos = 0.0;
  for (int i = 0; i < n; ++i) {
    pos += len(rng);
    bp.push_back(pos);
    v.push_back(val(rng));
  }
  return StepFunction(std::move(bp), std::move(v));
}

// test-local p-th power integral, independent of library quadrature
double plain_power_integral(const StepFunction& f, double p) {
  double s = 0.0;
  for (size_t i = 0; i < f.cells(); ++i)
    s += std::pow(f.value(i), p) * (f.cell_hi(i) - f.cell_lo(i));
  return s;
}

// pointwise sum of two tail-free step functions on the merged partition
StepFunction step_sum(const StepFunction& f, const StepFunction& g) {
  std::vector<double> bp(f.breakpoints());
  bp.insert(bp.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> v;
  double prev = 0.0;
  for (double b : bp) {
    const double mid = 0.5 * (prev + b);
    v.push_back(f(mid) + g(mid));
    prev = b;
  }
  return StepFunction(std::move(bp), std::move(v));
}

}  // namespace

TEST_CASE("StepFunction validation") {
  CHECK_THROWS_AS(StepFunction({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({-1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({1.0}, {-0.5}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({2.0}, {1.0}, std::nullopt,
                               DomainKind::UnitInterval),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({0.5}, {1.0}, Tail{1.0, -2.0, 0.0},
                               DomainKind::UnitInterval),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({1.0}, {1.0}, Tail{-1.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_NOTHROW(StepFunction({}, {}));  // the zero function
}

TEST_CASE("StepFunction evaluation uses half-open cells") {
  StepFunction f({0.25, 0.5}, {2.0, 1.0});
  CHECK(f(0.1) == 2.0);
  CHECK(f(0.25) == 1.0);  // breakpoint belongs to the next cell
  CHECK(f(0.4) == 1.0);
  CHECK(f(0.5) == 0.0);
  CHECK(f(-1.0) == 0.0);

  StepFunction w = omega(1.0);
  CHECK(w(0.5) == 1.0);
  CHECK(w(2.0) == doctest::Approx(0.25));
}

TEST_CASE("Tail sup and monotonicity analysis") {
  Tail decaying{1.0, -2.0, 0.0};
  CHECK(decaying.sup_from(1.0) == doctest::Approx(1.0));
  CHECK(decaying.nonincreasing_from(1.0));
  CHECK(decaying.limit_at_inf() == 0.0);

  // t^-1 (1+log t)^2 peaks at t = e with value 4/e
  Tail humped{1.0, -1.0, 2.0};
  CHECK(humped.sup_from(1.0) == doctest::Approx(4.0 / std::exp(1.0)));
  CHECK_FALSE(humped.nonincreasing_from(1.0));
  CHECK(humped.nonincreasing_from(std::exp(1.0)));

  Tail constant{3.0, 0.0, 0.0};
  CHECK(constant.limit_at_inf() == 3.0);
  CHECK(constant.sup_from(10.0) == doctest::Approx(3.0));
}

TEST_CASE("distribution on pure step functions") {
  StepFunction f({0.25, 0.5}, {2.0, 1.0});
  CHECK(distribution(f, 1.5) == doctest::Approx(0.25));
  CHECK(distribution(f, 0.5) == doctest::Approx(0.5));
  CHECK(distribution(f, 2.0) == 0.0);
  CHECK(distribution(f, 0.0) == doctest::Approx(0.5));

  StepFunction g({1.0 / 3.0}, {1.0});
  CHECK(distribution(g, 0.5) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("distribution of a sampled t^-1/2 profile") {
  // sample t^-1/2 on (0,1) with 1e5 midpoint cells; {t^-1/2 > 2} = (0, 1/4)
  const int N = 100000;
  std::vector<double> bp, v;
  bp.reserve(N);
  v.reserve(N);
  for (int i = 0; i < N; ++i) {
    bp.push_back((i + 1.0) / N);
    v.push_back(1.0 / std::sqrt((i + 0.5) / N));
  }
  StepFunction f(std::move(bp), std::move(v));
  CHECK(distribution(f, 2.0) == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("distribution with analytic tails") {
  StepFunction w = omega(1.0);
  // {omega_1 > lambda} = (0, lambda^-1/2) for lambda < 1
  CHECK(distribution(w, 0.25) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(distribution(w, 0.01) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(distribution(w, 1.0) == 0.0);
  CHECK(std::isinf(distribution(w, 0.0)));

  StepFunction c({1.0}, {5.0}, Tail{2.0, 0.0, 0.0});
  CHECK_THROWS_AS(distribution(c, 1.0), std::domain_error);
  CHECK(distribution(c, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("rearrange matches the hand-worked example") {
  // 2 on [0.1,0.2) plus 1 on [0.5,0.75) -> 2 on [0,0.1), 1 on [0.1,0.35)
  StepFunction f({0.1, 0.2, 0.5, 0.75}, {0.0, 2.0, 0.0, 1.0});
  DecreasingStep fs = rearrange(f);
  REQUIRE(fs.fn().cells() == 2);
  CHECK(fs.fn().breakpoints()[0] == doctest::Approx(0.1));
  CHECK(fs.fn().breakpoints()[1] == doctest::Approx(0.35));
  CHECK(fs.fn().values()[0] == 2.0);
  CHECK(fs.fn().values()[1] == 1.0);
}

TEST_CASE("rearrange is the identity on decreasing inputs") {
  StepFunction f({1.0, 2.0}, {3.0, 1.0}, Tail{1.0, -2.0, 0.0});
  DecreasingStep fs = rearrange(f);
  CHECK(fs.fn().breakpoints() == f.breakpoints());
  CHECK(fs.fn().values() == f.values());
  CHECK(fs.fn().tail().has_value());
}

TEST_CASE("rearrange is idempotent and equimeasurable") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 100; ++k) {
    StepFunction f = random_step(rng);
    DecreasingStep fs = rearrange(f);
    DecreasingStep fss = rearrange(fs.fn());
    CHECK(fss.fn().breakpoints() == fs.fn().breakpoints());
    CHECK(fss.fn().values() == fs.fn().values());
    for (double lam : {0.0, 0.1, 0.7, 1.3, 2.5, 4.9}) {
      CHECK(distribution(f, lam) ==
            doctest::Approx(distribution(fs.fn(), lam)).epsilon(1e-12));
    }
    // equal p-th power integrals (computed by a test-local loop)
    for (double p : {1.0, 2.0}) {
      CHECK(plain_power_integral(f, p) ==
            doctest::Approx(plain_power_integral(fs.fn(), p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("rearrange rejects tails that interleave with cells") {
  StepFunction f({1.0}, {0.5}, Tail{1.0, -2.0, 0.0});
  CHECK_FALSE(f.is_nonincreasing());
  CHECK_THROWS_AS(rearrange(f), std::invalid_argument);
}

TEST_CASE("DecreasingStep rejects non-monotone data") {
  CHECK_THROWS_AS(DecreasingStep(StepFunction({1.0, 2.0}, {1.0, 2.0})),
                  std::invalid_argument);
  CHECK_NOTHROW(DecreasingStep(omega(2.0)));
}

TEST_CASE("hardy_average closed forms") {
  DecreasingStep f(StepFunction({0.5}, {1.0}));
  CHECK(hardy_average(f, 0.3) == doctest::Approx(1.0));
  CHECK(hardy_average(f, 0.5) == doctest::Approx(1.0));
  CHECK(hardy_average(f, 2.0) == doctest::Approx(0.25));

  DecreasingStep g(StepFunction({0.25}, {1.0}));
  CHECK(hardy_average(g, 1.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(hardy_average(g, 0.0), std::invalid_argument);
}

TEST_CASE("hardy_average dominates f* and is non-increasing") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    DecreasingStep fs = rearrange(random_step(rng));
    double prev = kInf;
    for (double t = 0.05; t < 12.0; t += 0.13) {
      const double avg = hardy_average(fs, t);
      CHECK(avg >= fs(t) - 1e-12);
      CHECK(avg <= prev + 1e-12);
      prev = avg;
    }
  }
}

TEST_CASE("subadditivity of the Hardy average under sums") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    StepFunction f = random_step(rng), g = random_step(rng);
    DecreasingStep fs = rearrange(f), gs = rearrange(g);
    DecreasingStep ss = rearrange(step_sum(f, g));
    for (double t = 0.1; t < 10.0; t += 0.37) {
      CHECK(hardy_average(ss, t) <=
            hardy_average(fs, t) + hardy_average(gs, t) + 1e-10);
    }
  }
}

TEST_CASE("cumulative and integral are exact") {
  StepFunction w = omega(1.0);
  CHECK(w.cumulative(0.5) == doctest::Approx(0.5));
  CHECK(w.cumulative(2.0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(w.integral() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.max_value() == doctest::Approx(1.0));
}

TEST_CASE("weighted_integral examples") {
  StepFunction chi({1.0}, {1.0});
  CHECK(weighted_integral(chi, Weight::indicator(0.0, 1.0), 1.0) ==
        doctest::Approx(1.0));
  // int_0^inf omega_1 = 2
  CHECK(weighted_integral(omega(1.0), Weight::one(), 1.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // int_0^1 (1 - log t) dt = 2
  Weight logw({WeightTerm{1.0, 0.0, 1.0, 0.0, 1.0}});
  CHECK(weighted_integral(chi, logw, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  // divergent integrals signal infinity, not an exception
  Weight invt({WeightTerm{1.0, -1.0, 0.0, 0.0, 1.0}});
  CHECK(std::isinf(weighted_integral(chi, invt, 1.0)));
  // tail-by-weight cross terms: int omega_1^2 t^1/2 dt = 2/3 + 2/5
  Weight root({WeightTerm{1.0, 0.5, 0.0, 0.0, kInf}});
  CHECK(weighted_integral(omega(1.0), root, 2.0) ==
        doctest::Approx(16.0 / 15.0).epsilon(1e-12));
  CHECK(weighted_p_norm(omega(1.0), root, 2.0) ==
        doctest::Approx(std::sqrt(16.0 / 15.0)).epsilon(1e-12));
}

TEST_CASE("power_integral matches weighted_integral with unit weight") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    StepFunction f = random_step(rng);
    for (double p : {0.5, 1.0, 2.0}) {
      CHECK(f.power_integral(p) ==
            doctest::Approx(weighted_integral(f, Weight::one(), p))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("step/weight conversions round-trip") {
  StepFunction w = omega(2.0);
  Weight asw = step_to_weight(w);
  // (skip cell boundaries: weight terms are open intervals there)
  for (double t : {0.1, 1.0, 1.9, 2.5, 3.0, 10.0}) {
    CHECK(asw(t) == doctest::Approx(w(t)));
  }
  // pure-step weights convert back exactly
  Weight pure = parse_weight("2 on(0,1) + 1 on(1,3) + 0.5 on(2,inf)");
  StepFunction s = weight_to_step(pure);
  for (double t : {0.5, 1.5, 2.5, 4.0, 100.0}) {
    CHECK(s(t) == doctest::Approx(pure(t)));
  }
  CHECK_THROWS_AS(weight_to_step(parse_weight("t^-1 on(1,2)")),
                  std::invalid_argument);
}
