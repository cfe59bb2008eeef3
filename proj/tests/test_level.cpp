#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lorentz/level.hpp"

using namespace lorentz;

namespace {

// brute-force least concave majorant: the pointwise max over all chords
// between graph points and all rays of the final slope started at a node.
double lcm_oracle(const std::vector<MajorantNode>& nodes, double final_slope,
                  double x) {
  std::vector<MajorantNode> pts(nodes);
  if (pts.empty() || pts.front().x > 0.0)
    pts.insert(pts.begin(), MajorantNode{0.0, 0.0});
  double best = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].x <= x)
      best = std::max(best, pts[i].y + final_slope * (x - pts[i].x));
    if (pts[i].x == x) best = std::max(best, pts[i].y);
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].x <= x && x <= pts[j].x) {
        const double s = (pts[j].y - pts[i].y) / (pts[j].x - pts[i].x);
        best = std::max(best, pts[i].y + s * (x - pts[i].x));
      }
    }
  }
  return best;
}

std::vector<MajorantNode> random_nodes(std::mt19937_64& rng, int max_n = 10) {
  std::uniform_int_distribution<int> count(2, max_n);
  std::uniform_real_distribution<double> step(0.05, 1.5);
  std::uniform_real_distribution<double> yval(0.0, 4.0);
  std::vector<MajorantNode> nodes;
  double x = 0.0;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    x += step(rng);
    nodes.push_back({x, yval(rng)});
  }
  return nodes;
}

}  // namespace

TEST_CASE("ConcaveMajorant validates its invariants") {
  CHECK_NOTHROW(ConcaveMajorant({{0.0, 0.0}, {1.0, 1.0}, {3.0, 2.0}}, 0.25));
  // increasing slopes
  CHECK_THROWS_AS(ConcaveMajorant({{0.0, 0.0}, {1.0, 1.0}, {2.0, 3.0}}, 0.0),
                  std::invalid_argument);
  // ray steeper than the last segment
  CHECK_THROWS_AS(ConcaveMajorant({{0.0, 0.0}, {1.0, 1.0}, {3.0, 2.0}}, 0.9),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConcaveMajorant({}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConcaveMajorant({{0.0, 0.0}, {1.0, -1.0}}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("least_concave_majorant of concave input is the input") {
  // vertices of min(x, 1)
  ConcaveMajorant m = least_concave_majorant({{0.0, 0.0}, {1.0, 1.0}}, 0.0);
  REQUIRE(m.vertices().size() == 2);
  CHECK(m(0.5) == doctest::Approx(0.5));
  CHECK(m(1.0) == doctest::Approx(1.0));
  CHECK(m(7.0) == doctest::Approx(1.0));
  CHECK(m.right_slope(0.2) == doctest::Approx(1.0));
  CHECK(m.right_slope(2.0) == 0.0);
}

TEST_CASE("least_concave_majorant matches the chord oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> slope(0.0, 1.0);
  std::uniform_real_distribution<double> probe(0.0, 1.1);
  for (int k = 0; k < 40; ++k) {
    std::vector<MajorantNode> nodes = random_nodes(rng);
    const double s = k % 3 == 0 ? 0.0 : slope(rng);
    ConcaveMajorant m = least_concave_majorant(nodes, s);
    const double xmax = nodes.back().x;
    for (int j = 0; j < 40; ++j) {
      const double x = probe(rng) * xmax * 1.4;
      const double want = lcm_oracle(nodes, s, x);
      CHECK(m(x) == doctest::Approx(want).epsilon(1e-10));
    }
    // domination at the input nodes
    for (const auto& n : nodes) CHECK(m(n.x) >= n.y - 1e-12);
    // contact: every hull vertex is an input point (or the origin)
    for (const auto& v : m.vertices()) {
      const bool is_origin = v.x == 0.0 && v.y == 0.0;
      const bool is_input =
          std::any_of(nodes.begin(), nodes.end(), [&](const MajorantNode& n) {
            return n.x == v.x && n.y == v.y;
          });
      CHECK((is_origin || is_input));
    }
  }
}

TEST_CASE("level_function is the identity on non-increasing inputs") {
  StepFunction u({1.0, 2.0}, {3.0, 1.0}, Tail{1.0, -2.0, 0.0});
  DecreasingStep lev = level_function(u);
  CHECK(lev.fn().breakpoints() == u.breakpoints());
  CHECK(lev.fn().values() == u.values());
  CHECK(lev.fn().tail().has_value());
}

TEST_CASE("level function of a shifted bump spreads it to the origin") {
  // indicator of (1,2): cumulative hull is x/2 up to 2, flat after
  StepFunction u({1.0, 2.0}, {0.0, 1.0});
  DecreasingStep lev = level_function(u);
  REQUIRE(lev.fn().cells() == 1);
  CHECK(lev.fn().breakpoints()[0] == doctest::Approx(2.0));
  CHECK(lev.fn().values()[0] == doctest::Approx(0.5));
  CHECK_FALSE(lev.fn().tail().has_value());
}

TEST_CASE("level function of two bumps touches the cumulative at contacts") {
  StepFunction u({1.0, 2.0, 3.0}, {1.0, 0.0, 1.0});
  DecreasingStep lev = level_function(u);
  // hull contacts at x = 0, 1, 3
  for (double x : {1e-9, 0.3, 1.0, 1.7, 2.4, 3.0, 4.0}) {
    CHECK(lev.fn().cumulative(x) >= u.cumulative(x) - 1e-12);
  }
  CHECK(lev.fn().cumulative(1.0) == doctest::Approx(u.cumulative(1.0)));
  CHECK(lev.fn().cumulative(3.0) == doctest::Approx(u.cumulative(3.0)));
  REQUIRE(lev.fn().cells() == 2);
  CHECK(lev.fn().values()[0] == doctest::Approx(1.0));
  CHECK(lev.fn().values()[1] == doctest::Approx(0.5));
}

TEST_CASE("level function handles constant tails exactly") {
  // zero on (0,1), then constant 2: majorant is the line of slope 2
  StepFunction u({1.0}, {0.0}, Tail{2.0, 0.0, 0.0});
  DecreasingStep lev = level_function(u);
  CHECK(lev.fn().cells() == 0);
  REQUIRE(lev.fn().tail().has_value());
  CHECK(lev.fn().tail()->c == doctest::Approx(2.0));
  CHECK(lev.fn().tail()->a == 0.0);
  CHECK(lev(123.0) == doctest::Approx(2.0));
}

TEST_CASE("level function rejects non-representable tails") {
  // growing tail: cumulative lies above every line
  StepFunction grow({1.0}, {1.0}, Tail{1.0, 1.0, 0.0});
  CHECK_THROWS_AS(level_function(grow), std::domain_error);
  // decaying analytic tail on a non-monotone input: no finite hull
  StepFunction bump({1.0, 2.0}, {0.0, 3.0}, Tail{1.0, -2.0, 0.0});
  CHECK_THROWS_AS(level_function(bump), std::invalid_argument);
}

TEST_CASE("level_function is idempotent") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> len(0.1, 1.0);
  std::uniform_real_distribution<double> val(0.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> bp, v;
    double x = 0.0;
    for (int i = 0; i < 6; ++i) {
      x += len(rng);
      bp.push_back(x);
      v.push_back(val(rng));
    }
    StepFunction u(std::move(bp), std::move(v));
    DecreasingStep lev = level_function(u);
    DecreasingStep lev2 = level_function(lev.fn());
    CHECK(lev2.fn().breakpoints() == lev.fn().breakpoints());
    CHECK(lev2.fn().values() == lev.fn().values());
    // the level function never loses mass
    CHECK(lev.fn().integral() ==
          doctest::Approx(u.integral()).epsilon(1e-12));
  }
}

TEST_CASE("majorant of quasi-concave data stays below twice the data") {
  // quasi-concave samples: finite maxima of min(a x, b) profiles
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coef(0.2, 5.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<std::pair<double, double>> ab;
    for (int j = 0; j < 4; ++j) ab.emplace_back(coef(rng), coef(rng));
    auto g = [&](double x) {
      double m = 0.0;
      for (auto [a, b] : ab) m = std::max(m, std::min(a * x, b));
      return m;
    };
    // kinks can only fall where some a_i x meets some b_j
    std::vector<double> xs;
    for (auto [a, _] : ab)
      for (auto [_, b] : ab) xs.push_back(b / a);
    std::sort(xs.begin(), xs.end());
    std::vector<MajorantNode> nodes;
    for (double x : xs) nodes.push_back({x, g(x)});
    ConcaveMajorant m = least_concave_majorant(nodes, 0.0);
    for (double x : xs) {
      CHECK(m(x) >= g(x) - 1e-12);
      CHECK(m(x) <= 2.0 * g(x) + 1e-12);
    }
    // also probe between kinks
    for (size_t i = 1; i < xs.size(); ++i) {
      const double x = 0.5 * (xs[i - 1] + xs[i]);
      CHECK(m(x) >= g(x) - 1e-12);
      CHECK(m(x) <= 2.0 * g(x) + 1e-12);
    }
  }
}

TEST_CASE("lcm_segment_check validates linear initial segments") {
  // flat start, then a rise: majorant is linear across (0,1)
  CHECK(lcm_segment_check({{1.0, 0.0}, {2.0, 5.0}}, 1.0, 0.0));
  // tangency case: linear start continued concavely
  CHECK(lcm_segment_check({{1.0, 1.0}, {3.0, 2.0}}, 1.0, 1.0));
  // steep later rise pulls the majorant over the whole prefix
  CHECK(lcm_segment_check({{1.0, 1.0}, {2.0, 4.0}}, 1.0, 1.0));
  // non-linear prefix violates the precondition
  CHECK_THROWS_AS(lcm_segment_check({{0.5, 3.0}, {1.0, 1.0}, {2.0, 2.0}}, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("lcm_segment_check passes on random linear-prefix inputs") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> cdist(0.0, 3.0);
  std::uniform_real_distribution<double> xidist(0.5, 2.0);
  std::uniform_real_distribution<double> step(0.1, 1.0);
  std::uniform_real_distribution<double> yval(0.0, 6.0);
  for (int k = 0; k < 50; ++k) {
    const double c = cdist(rng), xi = xidist(rng);
    std::vector<MajorantNode> nodes;
    nodes.push_back({xi / 3.0, c * xi / 3.0});
    nodes.push_back({xi, c * xi});
    double x = xi;
    for (int j = 0; j < 5; ++j) {
      x += step(rng);
      nodes.push_back({x, yval(rng)});
    }
    CHECK(lcm_segment_check(nodes, xi, c));
  }
}
