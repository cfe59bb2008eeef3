#include "lorentz/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "kernels_detail.hpp"

namespace lorentz::kernels {

namespace detail {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

void magnitudes_scalar(const PieceView* pieces, std::size_t np, long long n0,
                       std::size_t count, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(n0) + static_cast<double>(i);
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const PieceView& p = pieces[j];
      const double d = n - p.m;
      if (d == 0.0) {
        const double c = p.amplitude * p.length;
        re += c * std::cos(p.phase);
        im += c * std::sin(p.phase);
      } else {
        const double s = p.amplitude * std::sin(kPi * d * p.length) / (kPi * d);
        const double a = p.phase - kPi * d * p.center2;
        re += s * std::cos(a);
        im += s * std::sin(a);
      }
    }
    out[i] = std::sqrt(re * re + im * im);
  }
}

// The phase angle a(n) = θ − π(n−m)(x0+x1) and the sinc-numerator angle
// b(n) = π(n−m)(x1−x0) both advance by constants as n → n+1, so e^{ia} and
// e^{ib} are carried by complex rotations. Rotator drift is O(count·eps);
// re-synchronizing from libm every kSyncStride steps keeps it ~1e-14.
void magnitudes_recurrence(const PieceView* pieces, std::size_t np,
                           long long n0, std::size_t count, double* out) {
  std::vector<double> are(np), aim(np), bre(np), bim(np);
  std::vector<double> rar(np), rai(np), rbr(np), rbi(np);
  for (std::size_t j = 0; j < np; ++j) {
    rar[j] = std::cos(kPi * pieces[j].center2);
    rai[j] = -std::sin(kPi * pieces[j].center2);  // e^{−iπ(x0+x1)}
    rbr[j] = std::cos(kPi * pieces[j].length);
    rbi[j] = std::sin(kPi * pieces[j].length);  // e^{+iπ(x1−x0)}
  }
  for (std::size_t block = 0; block < count; block += kSyncStride) {
    const std::size_t end = std::min(count, block + kSyncStride);
    const double nb = static_cast<double>(n0) + static_cast<double>(block);
    for (std::size_t j = 0; j < np; ++j) {
      const double d = nb - pieces[j].m;
      const double a = pieces[j].phase - kPi * d * pieces[j].center2;
      const double b = kPi * d * pieces[j].length;
      are[j] = std::cos(a);
      aim[j] = std::sin(a);
      bre[j] = std::cos(b);
      bim[j] = std::sin(b);
    }
    for (std::size_t i = block; i < end; ++i) {
      const double n = static_cast<double>(n0) + static_cast<double>(i);
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < np; ++j) {
        const PieceView& p = pieces[j];
        const double d = n - p.m;
        if (d == 0.0) {
          const double c = p.amplitude * p.length;
          re += c * std::cos(p.phase);
          im += c * std::sin(p.phase);
        } else {
          const double s = p.amplitude * bim[j] / (kPi * d);
          re += s * are[j];
          im += s * aim[j];
        }
        const double nar = are[j] * rar[j] - aim[j] * rai[j];
        aim[j] = are[j] * rai[j] + aim[j] * rar[j];
        are[j] = nar;
        const double nbr = bre[j] * rbr[j] - bim[j] * rbi[j];
        bim[j] = bre[j] * rbi[j] + bim[j] * rbr[j];
        bre[j] = nbr;
      }
      out[i] = std::sqrt(re * re + im * im);
    }
  }
}

}  // namespace detail

std::string kernel_name(Kernel k) {
  switch (k) {
    case Kernel::Scalar:
      return "scalar";
    case Kernel::Recurrence:
      return "recurrence";
    case Kernel::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool kernel_compiled(Kernel k) {
#if defined(LORENTZ_HAVE_AVX2)
  (void)k;
  return true;
#else
  return k != Kernel::Avx2;
#endif
}

bool kernel_usable(Kernel k) {
  if (!kernel_compiled(k)) return false;
  if (k == Kernel::Avx2) {
#if defined(LORENTZ_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
  }
  return true;
}

std::vector<Kernel> usable_kernels() {
  std::vector<Kernel> out;
  for (Kernel k : {Kernel::Scalar, Kernel::Recurrence, Kernel::Avx2})
    if (kernel_usable(k)) out.push_back(k);
  return out;
}

Kernel select_kernel() {
  const char* env = std::getenv("LORENTZ_KERNEL");
  std::string choice = env ? env : "auto";
  if (choice == "auto" || choice.empty())
    return kernel_usable(Kernel::Avx2) ? Kernel::Avx2 : Kernel::Recurrence;
  for (Kernel k : {Kernel::Scalar, Kernel::Recurrence, Kernel::Avx2}) {
    if (choice == kernel_name(k)) {
      if (!kernel_usable(k))
        throw std::invalid_argument("LORENTZ_KERNEL=" + choice +
                                    " is not usable on this machine");
      return k;
    }
  }
  throw std::invalid_argument("LORENTZ_KERNEL: unknown kernel '" + choice +
                              "' (expected scalar|recurrence|avx2|auto)");
}

void coefficient_magnitudes(const std::vector<PieceView>& pieces, long long n0,
                            std::size_t count, double* out, Kernel k) {
  constexpr double kMaxExact = 9007199254740992.0;  // 2^53
  const double lo = static_cast<double>(n0);
  const double hi = lo + static_cast<double>(count);
  if (std::abs(lo) >= kMaxExact || std::abs(hi) >= kMaxExact)
    throw std::invalid_argument(
        "coefficient_magnitudes: index range exceeds exact double integers");
  if (count == 0) return;
  switch (k) {
    case Kernel::Scalar:
      detail::magnitudes_scalar(pieces.data(), pieces.size(), n0, count, out);
      return;
    case Kernel::Recurrence:
      detail::magnitudes_recurrence(pieces.data(), pieces.size(), n0, count,
                                    out);
      return;
    case Kernel::Avx2:
#if defined(LORENTZ_HAVE_AVX2)
      if (kernel_usable(Kernel::Avx2)) {
        detail::magnitudes_avx2(pieces.data(), pieces.size(), n0, count, out);
        return;
      }
#endif
      throw std::invalid_argument("avx2 kernel not usable on this machine");
  }
  throw std::logic_error("coefficient_magnitudes: bad kernel");
}

void coefficient_magnitudes(const std::vector<PieceView>& pieces, long long n0,
                            std::size_t count, double* out) {
  coefficient_magnitudes(pieces, n0, count, out, select_kernel());
}

}  // namespace lorentz::kernels
