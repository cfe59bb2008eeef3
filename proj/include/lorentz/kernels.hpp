// Bulk evaluation of Fourier coefficient magnitudes |ĝ(n)| for modulated
// step functions, with interchangeable kernels:
//
//   scalar      — direct closed form, one sin/cos pair per (n, piece);
//                 the reference implementation.
//   recurrence  — the two angles involved advance by fixed increments as
//                 n increases, so the sin/cos pairs are carried by complex
//                 rotations and re-synchronized from libm every few hundred
//                 steps to kill drift.
//   avx2        — the same recurrence across four interleaved lanes using
//                 AVX2/FMA intrinsics (x86-64 builds only).
//
// All variants are equivalence-tested against the reference. Selection
// happens at runtime from CPU capabilities, with an explicit override via
// the environment variable LORENTZ_KERNEL (scalar | recurrence | avx2 |
// auto).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lorentz::kernels {

// One piece amp·e^{i(2πmx+θ)}·χ_{[x0,x1)} reduced to the combinations the
// closed form needs. m is integer-valued but stored as a double (exact for
// |m| < 2^53); callers guarantee that range.
struct PieceView {
  double length = 0.0;     // x1 - x0
  double center2 = 0.0;    // x0 + x1
  double amplitude = 0.0;  // >= 0
  double phase = 0.0;      // θ
  double m = 0.0;          // modulation frequency
};

enum class Kernel { Scalar, Recurrence, Avx2 };

std::string kernel_name(Kernel k);
bool kernel_compiled(Kernel k);       // built into this binary
bool kernel_usable(Kernel k);         // compiled and supported by this CPU
std::vector<Kernel> usable_kernels();

// Resolves LORENTZ_KERNEL (default "auto" = fastest usable). Throws
// std::invalid_argument for unknown names or unusable explicit choices.
Kernel select_kernel();

// out[i] = |ĝ(n0 + i)| for i in [0, count), where ĝ(n) sums over pieces
//   amp·e^{iθ}·e^{−πi(n−m)(x0+x1)}·sin(π(n−m)(x1−x0))/(π(n−m))   (n != m)
//   amp·e^{iθ}·(x1−x0)                                           (n == m).
// |n0| and |n0 + count| must stay below 2^53.
void coefficient_magnitudes(const std::vector<PieceView>& pieces, long long n0,
                            std::size_t count, double* out, Kernel k);

// Same, with the kernel chosen by select_kernel().
void coefficient_magnitudes(const std::vector<PieceView>& pieces, long long n0,
                            std::size_t count, double* out);

}  // namespace lorentz::kernels
