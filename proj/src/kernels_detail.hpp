// Internal declarations shared between the kernel dispatcher and the
// separately compiled AVX2 translation unit.

#pragma once

#include <cstddef>

#include "lorentz/kernels.hpp"

namespace lorentz::kernels::detail {

void magnitudes_scalar(const PieceView* pieces, std::size_t np, long long n0,
                       std::size_t count, double* out);
void magnitudes_recurrence(const PieceView* pieces, std::size_t np,
                           long long n0, std::size_t count, double* out);
#if defined(LORENTZ_HAVE_AVX2)
void magnitudes_avx2(const PieceView* pieces, std::size_t np, long long n0,
                     std::size_t count, double* out);
#endif

// Steps between exact re-synchronizations of the recurrence rotators.
inline constexpr std::size_t kSyncStride = 256;

}  // namespace lorentz::kernels::detail
