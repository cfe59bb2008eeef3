// AVX2/FMA variant of the coefficient-magnitude kernel: the scalar
// rotation recurrence carried across four interleaved lanes (n, n+1, n+2,
// n+3 advancing by 4), with libm re-synchronization at the same stride as
// the scalar recurrence. Compiled with -mavx2 -mfma in its own translation
// unit; only dispatched to when the CPU reports both features.

#if defined(LORENTZ_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kernels_detail.hpp"

namespace lorentz::kernels::detail {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct LaneState {
  __m256d are, aim, bre, bim;
};

// per-piece broadcast constants (grouped so containers never carry a bare
// __m256d template argument)
struct PieceConsts {
  __m256d rar, rai, rbr, rbi;  // four-step rotators e^{−i4πS}, e^{+i4πL}
  __m256d mj, amp_over_pi, const_re, const_im;
};

}  // namespace

void magnitudes_avx2(const PieceView* pieces, std::size_t np, long long n0,
                     std::size_t count, double* out) {
  const std::size_t quads = count / 4;
  if (quads == 0) {
    magnitudes_recurrence(pieces, np, n0, count, out);
    return;
  }

  std::vector<LaneState> st(np);
  std::vector<PieceConsts> pc(np);
  for (std::size_t j = 0; j < np; ++j) {
    const PieceView& p = pieces[j];
    pc[j].rar = _mm256_set1_pd(std::cos(4.0 * kPi * p.center2));
    pc[j].rai = _mm256_set1_pd(-std::sin(4.0 * kPi * p.center2));
    pc[j].rbr = _mm256_set1_pd(std::cos(4.0 * kPi * p.length));
    pc[j].rbi = _mm256_set1_pd(std::sin(4.0 * kPi * p.length));
    pc[j].mj = _mm256_set1_pd(p.m);
    pc[j].amp_over_pi = _mm256_set1_pd(p.amplitude / kPi);
    const double c = p.amplitude * p.length;
    pc[j].const_re = _mm256_set1_pd(c * std::cos(p.phase));
    pc[j].const_im = _mm256_set1_pd(c * std::sin(p.phase));
  }

  const __m256d lane_offsets = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d zero = _mm256_setzero_pd();

  const std::size_t sync_quads = kSyncStride / 4;
  for (std::size_t qb = 0; qb < quads; qb += sync_quads) {
    const std::size_t qe = std::min(quads, qb + sync_quads);
    const double nb = static_cast<double>(n0) + 4.0 * static_cast<double>(qb);
    for (std::size_t j = 0; j < np; ++j) {
      const PieceView& p = pieces[j];
      alignas(32) double va[4], vaim[4], vb[4], vbim[4];
      for (int lane = 0; lane < 4; ++lane) {
        const double d = (nb + lane) - p.m;
        const double a = p.phase - kPi * d * p.center2;
        const double b = kPi * d * p.length;
        va[lane] = std::cos(a);
        vaim[lane] = std::sin(a);
        vb[lane] = std::cos(b);
        vbim[lane] = std::sin(b);
      }
      st[j].are = _mm256_load_pd(va);
      st[j].aim = _mm256_load_pd(vaim);
      st[j].bre = _mm256_load_pd(vb);
      st[j].bim = _mm256_load_pd(vbim);
    }
    __m256d nvec = _mm256_add_pd(_mm256_set1_pd(nb), lane_offsets);
    for (std::size_t q = qb; q < qe; ++q) {
      __m256d re = zero, im = zero;
      for (std::size_t j = 0; j < np; ++j) {
        LaneState& s = st[j];
        const PieceConsts& c = pc[j];
        const __m256d d = _mm256_sub_pd(nvec, c.mj);
        const __m256d is_zero = _mm256_cmp_pd(d, zero, _CMP_EQ_OQ);
        const __m256d mag =
            _mm256_div_pd(_mm256_mul_pd(c.amp_over_pi, s.bim), d);
        __m256d cre = _mm256_mul_pd(mag, s.are);
        __m256d cim = _mm256_mul_pd(mag, s.aim);
        cre = _mm256_blendv_pd(cre, c.const_re, is_zero);
        cim = _mm256_blendv_pd(cim, c.const_im, is_zero);
        re = _mm256_add_pd(re, cre);
        im = _mm256_add_pd(im, cim);
        const __m256d nar =
            _mm256_fmsub_pd(s.are, c.rar, _mm256_mul_pd(s.aim, c.rai));
        s.aim = _mm256_fmadd_pd(s.are, c.rai, _mm256_mul_pd(s.aim, c.rar));
        s.are = nar;
        const __m256d nbr =
            _mm256_fmsub_pd(s.bre, c.rbr, _mm256_mul_pd(s.bim, c.rbi));
        s.bim = _mm256_fmadd_pd(s.bre, c.rbi, _mm256_mul_pd(s.bim, c.rbr));
        s.bre = nbr;
      }
      const __m256d norm2 = _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im));
      _mm256_storeu_pd(out + 4 * q, _mm256_sqrt_pd(norm2));
      nvec = _mm256_add_pd(nvec, four);
    }
  }

  const std::size_t done = 4 * quads;
  if (done < count)
    magnitudes_recurrence(pieces, np, n0 + static_cast<long long>(done),
                          count - done, out + done);
}

}  // namespace lorentz::kernels::detail

#endif  // LORENTZ_HAVE_AVX2
