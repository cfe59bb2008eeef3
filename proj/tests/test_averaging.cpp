#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lorentz/averaging.hpp"
#include "lorentz/stepfn.hpp"

using namespace lorentz;

namespace {

StepFunction omega(double z) {
  return StepFunction({z}, {1.0 / (z * z)}, Tail{1.0, -2.0, 0.0});
}

StepFunction random_step(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_cells(1, 6);
  std::uniform_real_distribution<double> len(0.05, 2.0);
  std::uniform_real_distribution<double> val(0.0, 4.0);
  int n = n_cells(rng);
  std::vector<double> bp, vals;
  double x = 0.0;
  for (int i = 0; i < n; ++i) {
    x += len(rng);
    bp.push_back(x);
    vals.push_back(val(rng));
  }
  return StepFunction(bp, vals);
}

AveragingOp random_op(std::mt19937_64& rng, double span) {
  std::uniform_int_distribution<int> n_iv(1, 4);
  std::uniform_real_distribution<double> pick(0.0, span);
  int n = n_iv(rng);
  std::vector<double> cuts;
  for (int i = 0; i < 2 * n; ++i) cuts.push_back(pick(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> iv;
  for (int i = 0; i + 1 < static_cast<int>(cuts.size()); i += 2) {
    if (cuts[i + 1] > cuts[i] + 1e-9) iv.emplace_back(cuts[i], cuts[i + 1]);
  }
  if (iv.empty()) iv.emplace_back(0.0, span);
  return AveragingOp(iv);
}

}  // namespace

TEST_CASE("identity operator returns its input") {
  AveragingOp id;
  CHECK(id.is_identity());
  StepFunction f({1.0, 2.0}, {3.0, 1.0});
  StepFunction g = apply_averaging(id, f);
  CHECK(g(0.5) == 3.0);
  CHECK(g(1.5) == 1.0);
  CHECK(g(2.5) == 0.0);
}

TEST_CASE("construction validates intervals") {
  CHECK_THROWS(AveragingOp({{1.0, 0.5}}));
  CHECK_THROWS(AveragingOp({{-1.0, 0.5}}));
  CHECK_THROWS(AveragingOp({{0.0, 1.0}, {0.5, 2.0}}));  // overlap
  CHECK_NOTHROW(AveragingOp({{0.0, 1.0}, {1.0, 2.0}}));  // touching is fine
}

TEST_CASE("averaging a truncated power tail over a prefix interval") {
  // f(t) = min(z^-2, t^-2); averaging over (0, y) with y > z replaces the
  // prefix by its mean (1/y)(2/z - 1/y) and keeps t^-2 beyond y.
  const double z = 1.0, y = 2.0;
  StepFunction f = omega(z);
  StepFunction g = apply_averaging(AveragingOp({{0.0, y}}), f);
  const double mean = (1.0 / y) * (2.0 / z - 1.0 / y);
  CHECK(g(0.3) == doctest::Approx(mean).epsilon(1e-13));
  CHECK(g(1.5) == doctest::Approx(mean).epsilon(1e-13));
  CHECK(g(3.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
  CHECK(g.integral() == doctest::Approx(f.integral()).epsilon(1e-13));
}

TEST_CASE("averaging preserves the total integral") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 60; ++it) {
    StepFunction f = random_step(rng);
    AveragingOp op = random_op(rng, f.support_end() * 1.2 + 0.5);
    StepFunction g = apply_averaging(op, f);
    CHECK(g.integral() ==
          doctest::Approx(f.integral()).epsilon(1e-11));
  }
}

TEST_CASE("averaged function is constant on each interval") {
  StepFunction f({0.5, 1.0, 2.0}, {4.0, 2.0, 1.0});
  AveragingOp op({{0.25, 1.5}});
  StepFunction g = apply_averaging(op, f);
  // mean over (0.25, 1.5): (0.25*4 + 0.5*2 + 0.5*1) / 1.25 = 2.0
  CHECK(g(0.3) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(g(1.4) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(g(0.1) == 4.0);   // before the interval, untouched
  CHECK(g(1.7) == 1.0);   // after it, untouched
}

TEST_CASE("self-adjointness of averaging") {
  // integral (Af) g == integral f (Ag) for every pair of step functions
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    StepFunction f = random_step(rng);
    StepFunction g = random_step(rng);
    double span = std::max(f.support_end(), g.support_end()) * 1.1 + 0.1;
    AveragingOp op = random_op(rng, span);
    StepFunction af = apply_averaging(op, f);
    StepFunction ag = apply_averaging(op, g);
    double lhs = weighted_integral(af, step_to_weight(g), 1.0);
    double rhs = weighted_integral(ag, step_to_weight(f), 1.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("interval gaps over an analytic tail are rejected") {
  StepFunction f = omega(1.0);
  // (2,3) lies beyond the last breakpoint with a gap (1,2) over the tail:
  // the result would not be a step function, so the operation must refuse.
  CHECK_THROWS(apply_averaging(AveragingOp({{2.0, 3.0}}), f));
  // covering the tail from inside the cell region is fine
  CHECK_NOTHROW(apply_averaging(AveragingOp({{0.5, 3.0}}), f));
  // intervals fully inside the cell region are always fine
  CHECK_NOTHROW(apply_averaging(AveragingOp({{0.25, 0.75}}), f));
}

TEST_CASE("averaging over an interval covering part of the tail") {
  // f = min(1, t^-2); average over (0.5, 3): mean = (0.5 + 1 - 1/3) / 2.5
  StepFunction f = omega(1.0);
  StepFunction g = apply_averaging(AveragingOp({{0.5, 3.0}}), f);
  const double mean = (0.5 + (1.0 - 1.0 / 3.0)) / 2.5;
  CHECK(g(1.0) == doctest::Approx(mean).epsilon(1e-13));
  CHECK(g(2.9) == doctest::Approx(mean).epsilon(1e-13));
  CHECK(g(4.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
  CHECK(g(0.4) == 1.0);
}
