#include "lorentz/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lorentz/conditions.hpp"
#include "lorentz/kernels.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/numeric.hpp"
#include "lorentz/parallel.hpp"

namespace lorentz {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kMaxExactFreq = 4503599627370496.0;  // 2^52

std::vector<kernels::PieceView> piece_views(const ModulatedStep& g) {
  std::vector<kernels::PieceView> out;
  out.reserve(g.pieces().size());
  for (const ModPiece& p : g.pieces())
    out.push_back({p.length(), p.x0 + p.x1, p.amplitude,
                   p.theta, static_cast<double>(p.m)});
  return out;
}

long long checked_ceil(double x, const char* what) {
  if (!(x < kMaxExactFreq))
    throw std::invalid_argument(std::string(what) +
                                ": separation frequency exceeds the exact "
                                "integer range of double (eps too small)");
  return static_cast<long long>(std::ceil(x));
}

std::string num_str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Ranked magnitudes (descending, zeros dropped) as a decreasing step with
// cells [j, j+1), equal runs merged.
DecreasingStep rank_to_step(std::vector<double>&& mags) {
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  while (!mags.empty() && mags.back() == 0.0) mags.pop_back();
  std::vector<double> bp, val;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (!val.empty() && val.back() == mags[i])
      bp.back() += 1.0;
    else {
      bp.push_back(static_cast<double>(i) + 1.0);
      val.push_back(mags[i]);
    }
  }
  if (val.empty()) {
    bp = {1.0};
    val = {0.0};
  }
  return DecreasingStep(StepFunction(std::move(bp), std::move(val)));
}

double omitted_bound(const ModulatedStep& g, double min_distance) {
  double s = 0.0;
  for (const ModPiece& p : g.pieces()) {
    double cap = p.amplitude * p.length();
    if (min_distance > 0.0)
      cap = std::min(cap, p.amplitude / (kPi * min_distance));
    s += cap;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModulatedStep
// ---------------------------------------------------------------------------

ModulatedStep::ModulatedStep(std::vector<ModPiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty())
    throw std::invalid_argument("ModulatedStep: need at least one piece");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const ModPiece& a, const ModPiece& b) { return a.x0 < b.x0; });
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const ModPiece& p = pieces_[i];
    if (!std::isfinite(p.x0) || !std::isfinite(p.x1) ||
        !std::isfinite(p.amplitude) || !std::isfinite(p.theta))
      throw std::invalid_argument("ModulatedStep: non-finite piece data");
    if (!(0.0 <= p.x0 && p.x0 < p.x1 && p.x1 <= 1.0))
      throw std::invalid_argument(
          "ModulatedStep: pieces must satisfy 0 <= x0 < x1 <= 1");
    if (p.amplitude < 0.0)
      throw std::invalid_argument("ModulatedStep: amplitude must be >= 0");
    if (std::llabs(p.m) >= static_cast<long long>(kMaxExactFreq))
      throw std::invalid_argument("ModulatedStep: |m| exceeds 2^52");
    if (i > 0 && p.x0 < pieces_[i - 1].x1)
      throw std::invalid_argument("ModulatedStep: pieces overlap");
    total += p.length();
  }
  if (total > 1.0 + 1e-9)
    throw std::invalid_argument(
        "ModulatedStep: total piece length exceeds the circle");
}

double ModulatedStep::total_length() const {
  double s = 0.0;
  for (const ModPiece& p : pieces_) s += p.length();
  return s;
}

double ModulatedStep::l1_norm() const {
  double s = 0.0;
  for (const ModPiece& p : pieces_) s += p.amplitude * p.length();
  return s;
}

double ModulatedStep::l2_norm_sq() const {
  double s = 0.0;
  for (const ModPiece& p : pieces_) s += p.amplitude * p.amplitude * p.length();
  return s;
}

long long ModulatedStep::max_abs_frequency() const {
  long long m = 0;
  for (const ModPiece& p : pieces_) m = std::max(m, std::llabs(p.m));
  return m;
}

StepFunction ModulatedStep::abs_step() const {
  std::vector<double> bp, val;
  for (const ModPiece& p : pieces_) {
    if (bp.empty() ? p.x0 > 0.0 : p.x0 > bp.back()) {
      bp.push_back(p.x0);
      val.push_back(0.0);
    }
    bp.push_back(p.x1);
    val.push_back(p.amplitude);
  }
  return StepFunction(std::move(bp), std::move(val), std::nullopt,
                      DomainKind::UnitInterval);
}

std::complex<double> ModulatedStep::coefficient(long long n) const {
  double re = 0.0, im = 0.0;
  for (const ModPiece& p : pieces_) {
    const double d = static_cast<double>(n) - static_cast<double>(p.m);
    if (d == 0.0) {
      const double c = p.amplitude * p.length();
      re += c * std::cos(p.theta);
      im += c * std::sin(p.theta);
    } else {
      const double s = p.amplitude * std::sin(kPi * d * p.length()) / (kPi * d);
      const double a = p.theta - kPi * d * (p.x0 + p.x1);
      re += s * std::cos(a);
      im += s * std::sin(a);
    }
  }
  return {re, im};
}

ModulatedStep translate_modulate(const ModulatedStep& g, double shift,
                                 long long freq) {
  std::vector<ModPiece> out;
  out.reserve(g.pieces().size());
  for (ModPiece p : g.pieces()) {
    const double wrapped =
        std::remainder(p.theta - 2.0 * kPi * static_cast<double>(p.m) * shift,
                       2.0 * kPi);
    out.push_back({p.x0 + shift, p.x1 + shift, p.amplitude, p.m + freq,
                   wrapped});
  }
  return ModulatedStep(std::move(out));
}

// ---------------------------------------------------------------------------
// coefficient tables and rankings
// ---------------------------------------------------------------------------

double CoefficientTable::mag(long long n) const {
  if (std::llabs(n) > N)
    throw std::out_of_range("CoefficientTable::mag: |n| > N");
  return mags[static_cast<std::size_t>(n + N)];
}

CoefficientTable coefficients(const ModulatedStep& g, long long N) {
  if (N < 1) throw std::invalid_argument("coefficients: need N >= 1");
  CoefficientTable t;
  t.N = N;
  t.mags.resize(static_cast<std::size_t>(2 * N + 1));
  const auto views = piece_views(g);
  const kernels::Kernel k = kernels::select_kernel();
  parallel_chunks(t.mags.size(), [&](std::size_t b, std::size_t e) {
    kernels::coefficient_magnitudes(views, -N + static_cast<long long>(b),
                                    e - b, t.mags.data() + b, k);
  });
  // every omitted |n| > N has |n - m| >= N + 1 - |m| for each piece
  double s = 0.0;
  for (const ModPiece& p : g.pieces()) {
    const double slack =
        static_cast<double>(N) + 1.0 - std::abs(static_cast<double>(p.m));
    double cap = p.amplitude * p.length();
    if (slack > 0.0) cap = std::min(cap, p.amplitude / (kPi * slack));
    s += cap;
  }
  t.tail_bound = s;
  return t;
}

DecreasingStep StarRanking::padded() const {
  const StepFunction& f = star.fn();
  std::vector<double> bp, val;
  for (std::size_t i = 0; i < f.cells(); ++i) {
    bp.push_back(f.cell_hi(i));
    val.push_back(std::max(f.value(i), tail_bound));
  }
  const double end = bp.empty() ? 0.0 : bp.back();
  if (tail_bound > 0.0 && count > end) {
    bp.push_back(count);
    val.push_back(tail_bound);
  }
  if (bp.empty()) {
    bp = {1.0};
    val = {0.0};
  }
  return DecreasingStep(StepFunction(std::move(bp), std::move(val)));
}

StarRanking coeff_rearrangement(const CoefficientTable& table) {
  StarRanking r;
  std::vector<double> mags = table.mags;
  r.star = rank_to_step(std::move(mags));
  r.tail_bound = table.tail_bound;
  r.count = static_cast<double>(2 * table.N + 1);
  r.windows = {{-table.N, table.N}};
  return r;
}

StarRanking windowed_rearrangement(const ModulatedStep& g,
                                   long long half_width) {
  if (half_width < 1)
    throw std::invalid_argument("windowed_rearrangement: need half_width >= 1");
  std::vector<long long> centers;
  for (const ModPiece& p : g.pieces()) centers.push_back(p.m);
  centers.push_back(0);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  std::vector<std::pair<long long, long long>> windows;
  for (long long c : centers) {
    const long long lo = c - half_width, hi = c + half_width;
    if (!windows.empty() && lo <= windows.back().second + 1)
      windows.back().second = std::max(windows.back().second, hi);
    else
      windows.emplace_back(lo, hi);
  }

  const auto views = piece_views(g);
  const kernels::Kernel k = kernels::select_kernel();
  std::vector<double> mags;
  double count = 0.0;
  for (const auto& [lo, hi] : windows) {
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    const std::size_t base = mags.size();
    mags.resize(base + len);
    parallel_chunks(len, [&](std::size_t b, std::size_t e) {
      kernels::coefficient_magnitudes(views, lo + static_cast<long long>(b),
                                      e - b, mags.data() + base + b, k);
    });
    count += static_cast<double>(len);
  }

  StarRanking r;
  r.star = rank_to_step(std::move(mags));
  // outside every window each piece is at distance > half_width from its
  // own frequency
  r.tail_bound = omitted_bound(g, static_cast<double>(half_width) + 1.0);
  r.count = count;
  r.windows = std::move(windows);
  return r;
}

// ---------------------------------------------------------------------------
// second-mean comparison
// ---------------------------------------------------------------------------

double jt_rhs_integral(const DecreasingStep& fstar, double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw std::invalid_argument("jt_rhs_integral: need finite z > 0");
  const StepFunction& f = fstar.fn();
  const double end = f.support_end();
  if (end <= 0.0) return 0.0;
  const double mass = f.cumulative(end);
  // F(1/t) = mass for t <= 1/end
  double total = mass * mass * std::min(z, 1.0 / end);
  if (z <= 1.0 / end) return total;
  // walk cells from the one touching `end` toward the origin; on the cell
  // (lo, hi) with value v: F(1/t) = (F(lo) - v·lo) + v/t for t in (1/hi, 1/lo)
  for (std::size_t ri = f.cells(); ri-- > 0;) {
    const double lo = f.cell_lo(ri), hi = f.cell_hi(ri), v = f.value(ri);
    const double ta = 1.0 / hi;
    const double tb = lo > 0.0 ? std::min(1.0 / lo, z) : z;
    if (!(tb > ta)) {
      if (ta >= z) break;
      continue;
    }
    const double A = f.cumulative(lo) - v * lo;
    const double B = v;
    total += A * A * (tb - ta) + 2.0 * A * B * std::log(tb / ta) +
             B * B * (1.0 / ta - 1.0 / tb);
    if (tb >= z) break;
  }
  return total;
}

JTReport jt_check(const ModulatedStep& f, const std::vector<double>& zs,
                  long long N) {
  if (zs.empty()) throw std::invalid_argument("jt_check: empty z grid");
  for (double z : zs)
    if (!(z > 0.0) || !std::isfinite(z))
      throw std::invalid_argument("jt_check: z grid must be finite positive");
  const double z_max = *std::max_element(zs.begin(), zs.end());
  const CoefficientTable table = coefficients(f, N);
  const StarRanking rank = coeff_rearrangement(table);
  if (z_max > rank.count)
    throw std::invalid_argument(
        "jt_check: z grid exceeds the ranked coefficient range (raise N)");

  JTReport rep;
  rep.zs = zs;
  rep.tail_bound = table.tail_bound;
  const double fss = rank.star.hardy_average(z_max);
  rep.precondition_ok = table.tail_bound < 0.01 * fss;
  if (!rep.precondition_ok)
    rep.note = "truncation bound " + num_str(table.tail_bound) +
               " is not below 1% of the mean coefficient level " +
               num_str(fss) + " at z = " + num_str(z_max);

  const DecreasingStep padded = rank.padded();
  const DecreasingStep fstar = rearrange(f.abs_step());
  const Weight one = Weight::one();
  for (double z : zs) {
    const double lhs = hardy_power_integral(padded, one, 2.0, 0.0, z);
    const double rhs = jt_rhs_integral(fstar, z);
    const double ratio = rhs > 0.0
                             ? lhs / rhs
                             : (lhs > 0.0 ? std::numeric_limits<double>::infinity()
                                          : 0.0);
    rep.ratios.push_back(ratio);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.arg_z = z;
    }
  }
  rep.pass = rep.precondition_ok && rep.max_ratio <= rep.constant;
  return rep;
}

// ---------------------------------------------------------------------------
// test functions
// ---------------------------------------------------------------------------

double averaged_omega(const AveragingOp& A, double z, double t) {
  if (!(z > 0.0) || !(t > 0.0))
    throw std::invalid_argument("averaged_omega: need z > 0 and t > 0");
  const double flat = 1.0 / (z * z);
  for (const auto& [a, b] : A.intervals()) {
    if (t < a || t >= b) continue;
    double mass;  // ∫_a^b min(z^{−2}, s^{−2}) ds
    if (b <= z)
      mass = (b - a) * flat;
    else if (a >= z)
      mass = 1.0 / a - 1.0 / b;
    else
      mass = (z - a) * flat + 1.0 / z - 1.0 / b;
    return mass / (b - a);
  }
  return t <= z ? flat : 1.0 / (t * t);
}

TestFunction testfun_basic(double z) {
  if (!(z >= 3.0) || !std::isfinite(z))
    throw std::invalid_argument("testfun_basic: requires z >= 3");
  TestFunction tf;
  tf.g = ModulatedStep({{0.0, 1.0 / z, 1.0, 0, 0.0}});
  tf.kind = "basic";
  tf.z = z;
  tf.bounds.push_back(
      {"profile floor 1/(3*pi*y + 9*pi*z), z = " + num_str(z),
       [z](double y) { return 1.0 / (3.0 * kPi * y + 9.0 * kPi * z); }, 0.0});
  return tf;
}

TestFunction testfun_dilated(long long k, double z, double eps) {
  if (k < 1) throw std::invalid_argument("testfun_dilated: need integer k >= 1");
  if (!(z >= 1.0) || !std::isfinite(z))
    throw std::invalid_argument(
        "testfun_dilated: translates overflow the circle (need z >= 1)");
  if (k > 1 && !(eps > 0.0))
    throw std::invalid_argument("testfun_dilated: need eps > 0 when k > 1");
  const double width = 1.0 / (static_cast<double>(k) * z);
  const long long M =
      k == 1 ? 0
             : checked_ceil(2.0 * static_cast<double>(k) / (kPi * eps),
                            "testfun_dilated");
  std::vector<ModPiece> pieces;
  for (long long j = 0; j < k; ++j) {
    double x0 = static_cast<double>(j) * width;
    double x1 = static_cast<double>(j + 1) * width;
    if (j == k - 1 && x1 > 1.0 && x1 < 1.0 + 1e-12) x1 = 1.0;
    pieces.push_back({x0, x1, 1.0, j * M, 0.0});
  }
  TestFunction tf;
  tf.g = ModulatedStep(std::move(pieces));
  tf.kind = "dilated";
  tf.z = z;
  tf.eps = k == 1 ? 0.0 : eps;
  const double kz = static_cast<double>(k) * z;
  if (kz >= 3.0) {
    const double kk = static_cast<double>(k);
    tf.bounds.push_back(
        {"dilated profile floor 1/(3*pi*y/k + 9*pi*k*z), k = " + num_str(kk),
         [kk, kz](double y) {
           return 1.0 / (3.0 * kPi * y / kk + 9.0 * kPi * kz);
         },
         tf.eps});
  }
  return tf;
}

TestFunction testfun_combined(double z, double r, double eps) {
  if (!(z >= 3.0) || !std::isfinite(z))
    throw std::invalid_argument("testfun_combined: requires z >= 3");
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("testfun_combined: requires r > 0");
  // the integer with r <= k < r + 1
  long long k = static_cast<long long>(std::ceil(r));
  if (k < 1) k = 1;
  TestFunction tf = testfun_dilated(k, z, eps);
  tf.kind = "combined";
  tf.bounds.push_back(
      {"combined profile floor 1/(3*pi*y/r + 9*pi*(r+1)*z), r = " + num_str(r),
       [r, z](double y) {
         return 1.0 / (3.0 * kPi * y / r + 9.0 * kPi * (r + 1.0) * z);
       },
       tf.eps});
  return tf;
}

TestFunction testfun_assembled(const std::vector<double>& lengths,
                               double eps) {
  if (lengths.empty())
    throw std::invalid_argument("testfun_assembled: need at least one length");
  const bool single = lengths.size() == 1;
  if (!single && !(eps > 0.0))
    throw std::invalid_argument("testfun_assembled: need eps > 0");
  double total = 0.0;
  for (double p : lengths) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("testfun_assembled: lengths must be > 0");
    total += p;
  }
  if (total > 1.0 + 1e-12)
    throw std::invalid_argument("testfun_assembled: lengths sum beyond 1");

  TestFunction tf;
  std::vector<ModPiece> pieces;
  double X = 0.0;
  long long M = 0;
  for (std::size_t j = 1; j <= lengths.size(); ++j) {
    if (j >= 2)
      M = checked_ceil(static_cast<double>(M) +
                           (std::pow(2.0, static_cast<double>(j)) +
                            std::pow(2.0, static_cast<double>(j) - 1.0)) /
                               (kPi * eps) +
                           1.0,
                       "testfun_assembled");
    const double x1 = X + lengths[j - 1];
    pieces.push_back({X, x1, 1.0, M, 0.0});
    const double zz = 1.0 / lengths[j - 1];
    if (zz >= 3.0)
      tf.bounds.push_back(
          {"piece " + std::to_string(j) + " profile floor, length " +
               num_str(lengths[j - 1]),
           [zz](double y) { return 1.0 / (3.0 * kPi * y + 9.0 * kPi * zz); },
           single ? 0.0 : eps});
    X = x1;
  }
  tf.g = ModulatedStep(std::move(pieces));
  tf.kind = "assembled";
  tf.z = 1.0 / X;
  tf.eps = single ? 0.0 : eps;
  return tf;
}

TestFunction testfun_full(double z, const AveragingOp& A, double eps) {
  if (!(z >= 1.0) || !std::isfinite(z))
    throw std::invalid_argument("testfun_full: requires z >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("testfun_full: need eps > 0");
  const double zp = std::max(z, 3.0);

  struct Part {
    ModulatedStep fn;
    double len = 0.0;
    std::vector<StarBound> bounds;
  };
  std::vector<Part> parts;

  {  // leading piece chi_{[0, 1/(4z'))}
    Part p;
    p.fn = ModulatedStep({{0.0, 1.0 / (4.0 * zp), 1.0, 0, 0.0}});
    p.len = 1.0 / (4.0 * zp);
    const double z4 = 4.0 * zp;
    p.bounds.push_back(
        {"leading profile floor 1/(3*pi*y + 36*pi*z')",
         [z4](double y) { return 1.0 / (3.0 * kPi * y + 9.0 * kPi * z4); },
         0.0});
    parts.push_back(std::move(p));
  }
  for (const auto& [a, b] : A.intervals()) {
    const bool contains = a < zp && zp < b;
    const bool tall = zp <= a && 2.0 * a <= b;
    if (!contains && !tall) continue;
    const double zz = contains ? 8.0 * zp / 3.0 : 16.0 * a / 3.0;
    const double r = contains ? std::sqrt(b / (8.0 * zp))
                              : std::sqrt(b / (16.0 * a));
    TestFunction inner = testfun_combined(zz, r, eps / 2.0);
    Part p;
    p.len = inner.g.pieces().back().x1;
    p.fn = std::move(inner.g);
    for (StarBound& sb : inner.bounds) {
      sb.label += contains ? " [interval containing z']" : " [interval above z']";
      p.bounds.push_back(std::move(sb));
    }
    parts.push_back(std::move(p));
  }

  double total = 0.0;
  for (const Part& p : parts) total += p.len;
  if (total > (1.0 / zp) * (1.0 + 1e-9))
    throw std::logic_error(
        "testfun_full: piece length budget exceeded (internal error)");

  // assemble: translate part j to X_j and modulate by M_j, spaced by the
  // separation radii plus the bandwidth already used inside each part
  std::vector<ModPiece> pieces;
  TestFunction tf;
  double X = 0.0;
  long long M = 0;
  for (std::size_t j = 1; j <= parts.size(); ++j) {
    Part& part = parts[j - 1];
    if (j >= 2)
      M = checked_ceil(
          static_cast<double>(M) +
              static_cast<double>(parts[j - 2].fn.max_abs_frequency()) +
              (std::pow(2.0, static_cast<double>(j)) +
               std::pow(2.0, static_cast<double>(j) - 1.0)) *
                  2.0 / (kPi * eps) +
              1.0,
          "testfun_full");
    const ModulatedStep shifted = translate_modulate(part.fn, X, M);
    for (const ModPiece& pc : shifted.pieces()) pieces.push_back(pc);
    for (StarBound& sb : part.bounds) {
      sb.eps += eps / 2.0;  // assembly slack
      tf.bounds.push_back(std::move(sb));
    }
    X += part.len;
  }
  tf.g = ModulatedStep(std::move(pieces));
  tf.kind = "full";
  tf.z = z;
  tf.z_effective = zp;
  tf.eps = eps;
  tf.averaging = A;
  tf.constant = z >= 3.0 ? 183.0 : 549.0;
  const double c = tf.constant;
  const double z0 = z;
  tf.bounds.push_back(
      {"averaged profile floor sqrt(A omega_z)/" + num_str(c),
       [A, z0, c](double y) {
         return std::sqrt(averaged_omega(A, z0, std::max(y, 1e-300))) / c;
       },
       eps});
  return tf;
}

std::vector<BoundCheck> check_star_bounds(const TestFunction& tf,
                                          const StarRanking& ranking,
                                          double y_max) {
  std::vector<BoundCheck> out;
  const long long top = static_cast<long long>(
      std::floor(std::min(y_max, ranking.count - 1.0)));
  for (const StarBound& sb : tf.bounds) {
    BoundCheck c;
    c.label = sb.label;
    c.worst_ratio = std::numeric_limits<double>::infinity();
    for (long long y = 0; y <= top; ++y) {
      const double claim = sb.value(static_cast<double>(y));
      if (!(claim > 0.0)) continue;
      ++c.checked;
      const double have = ranking.star(static_cast<double>(y) + 0.5) + sb.eps;
      if (have >= claim * (1.0 - 1e-12)) {
        ++c.verified;
        c.worst_ratio = std::min(c.worst_ratio, have / claim);
      } else if (claim <= 2.0 * ranking.tail_bound) {
        ++c.unverifiable;  // below the table's resolution
      } else {
        ++c.violations;
        c.worst_ratio = std::min(c.worst_ratio, have / claim);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// inequality verifier
// ---------------------------------------------------------------------------

std::string form_name(InequalityForm f) {
  switch (f) {
    case InequalityForm::GammaGamma:
      return "gamma-gamma";
    case InequalityForm::GammaLambda:
      return "gamma-lambda";
    case InequalityForm::LambdaLambda:
      return "lambda-lambda";
  }
  return "unknown";
}

namespace {

// Beyond the evaluated range two facts bound the unknown coefficients:
// every one is ≤ tail_bound, and the y-th largest is ≤ √(E/y) where
// E = ∫|g|² (the energy dominates any y magnitudes squared).

double lhs_lambda(const StarRanking& r, const Weight& u, double q, double E,
                  bool upper) {
  if (!upper) return weighted_p_norm(r.star.fn(), u, q);
  const double base = weighted_p_norm(r.padded().fn(), u, q);
  if (r.tail_bound <= 0.0) return base;
  const double flat = std::pow(r.tail_bound, q) * u.integral(r.count, kInf);
  const double bessel = std::pow(E, 0.5 * q) *
                        u.integral_powlog(-0.5 * q, 0.0, r.count, kInf);
  const double extra = std::min(flat, bessel);
  if (std::isinf(extra)) return kInf;
  return std::pow(std::pow(base, q) + extra, 1.0 / q);
}

double lhs_gamma(const StarRanking& r, const Weight& u, double q, double E,
                 bool upper) {
  if (!upper)
    return std::pow(hardy_power_integral(r.star, u, q, 0.0, kInf), 1.0 / q);
  const DecreasingStep pad = r.padded();
  if (r.tail_bound <= 0.0 || u.integral(r.count, kInf) == 0.0)
    return std::pow(hardy_power_integral(pad, u, q, 0.0, kInf), 1.0 / q);
  // for t ≥ count: (ĝ)**(t) ≤ (S + 2√(E·t))/t ≤ (S/√count + 2√E)/√t
  const double S = pad.fn().cumulative(r.count);
  const double C = S / std::sqrt(r.count) + 2.0 * std::sqrt(E);
  const double part1 = hardy_power_integral(pad, u, q, 0.0, r.count);
  const double part2 =
      std::pow(C, q) * u.integral_powlog(-0.5 * q, 0.0, r.count, kInf);
  if (std::isinf(part2)) return kInf;
  return std::pow(part1 + part2, 1.0 / q);
}

}  // namespace

VerifyReport verify_inequality(const Weight& u, const Weight& w, double p,
                               double q, InequalityForm form,
                               const std::vector<ModulatedStep>& random_suite,
                               const std::vector<TestFunction>& adversarial,
                               long long N, long long adversarial_half_width,
                               const GridSpec& grid) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q))
    throw std::invalid_argument("verify_inequality: need finite p, q > 0");
  VerifyReport rep;
  rep.form = form;
  rep.p = p;
  rep.q = q;
  const bool lhs_is_gamma = form != InequalityForm::LambdaLambda;
  const bool rhs_is_gamma = form == InequalityForm::GammaGamma;

  auto add_entry = [&](const std::string& label, const ModulatedStep& g,
                       const StarRanking& rank) {
    SuiteRatio e;
    e.label = label;
    const double E = g.l2_norm_sq();
    e.lhs_lower = lhs_is_gamma ? lhs_gamma(rank, u, q, E, false)
                               : lhs_lambda(rank, u, q, E, false);
    e.lhs_upper = lhs_is_gamma ? lhs_gamma(rank, u, q, E, true)
                               : lhs_lambda(rank, u, q, E, true);
    const DecreasingStep fstar = rearrange(g.abs_step());
    e.rhs = rhs_is_gamma
                ? std::pow(hardy_power_integral(fstar, w, p, 0.0, kInf), 1.0 / p)
                : weighted_p_norm(fstar.fn(), w, p);
    e.ratio_lower = e.rhs > 0.0 ? e.lhs_lower / e.rhs : 0.0;
    e.ratio_upper = e.rhs > 0.0 ? e.lhs_upper / e.rhs : 0.0;
    if (e.ratio_lower > rep.max_ratio_lower) {
      rep.max_ratio_lower = e.ratio_lower;
      rep.argmax = label;
    }
    rep.max_ratio_upper = std::max(rep.max_ratio_upper, e.ratio_upper);
    rep.entries.push_back(std::move(e));
  };

  for (std::size_t i = 0; i < random_suite.size(); ++i) {
    const StarRanking rank = coeff_rearrangement(coefficients(random_suite[i], N));
    add_entry("random[" + std::to_string(i) + "]", random_suite[i], rank);
  }
  for (std::size_t i = 0; i < adversarial.size(); ++i) {
    const TestFunction& tf = adversarial[i];
    const StarRanking rank =
        windowed_rearrangement(tf.g, adversarial_half_width);
    add_entry(tf.kind + "[z=" + num_str(tf.z) + "]", tf.g, rank);
  }

  if (form == InequalityForm::GammaGamma && q >= 2.0) {
    const ConditionReport cond =
        q == 2.0 ? c_xy(u, w, p, grid) : c_omega(u, w, p, q, grid);
    rep.ceiling_verdict = cond.verdict;
    if (q == 2.0) {
      rep.ceiling_kind = "8*C_xy";
      rep.ceiling = 8.0 * cond.value();
      rep.floor = (cond.lower > 0.0 ? cond.lower : cond.value()) / 549.0;
    } else {
      rep.ceiling_kind = "4*sqrt(C_omega)";
      rep.ceiling = 4.0 * std::sqrt(cond.upper);
      rep.floor = std::sqrt(cond.lower) / 549.0;
    }
    if (std::isfinite(rep.ceiling))
      rep.ceiling_respected = rep.max_ratio_upper <= rep.ceiling * (1.0 + 1e-6);
    if (rep.floor > 0.0 && std::isfinite(rep.floor))
      rep.floor_slack = rep.max_ratio_lower / rep.floor;
  } else {
    rep.note =
        "sandwich constants apply to the gamma-gamma form with q >= 2; "
        "ratios reported without a theoretical ceiling";
  }
  return rep;
}

}  // namespace lorentz
