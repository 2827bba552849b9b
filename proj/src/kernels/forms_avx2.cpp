#include <immintrin.h>

#include "gpcci/kernels/forms.hpp"

namespace gpcci::kernels::avx2 {

void occupation_forms(std::span<const std::uint64_t> masks, std::int64_t kappa0,
                      std::span<const std::int64_t> kappa, std::span<std::int64_t> out) {
  const std::size_t count = masks.size();
  const std::size_t width = kappa.size();
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t d = 0;
  for (; d + 4 <= count; d += 4) {
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks.data() + d));
    __m256i acc = _mm256_set1_epi64x(kappa0);
    for (std::size_t i = 0; i < width; ++i) {
      if (kappa[i] == 0) continue;
      const __m256i shift = _mm256_set1_epi64x(static_cast<long long>(i));
      const __m256i bit = _mm256_and_si256(_mm256_srlv_epi64(m, shift), one);
      // 0 - bit is all-ones where the orbital is occupied.
      const __m256i select = _mm256_sub_epi64(zero, bit);
      acc = _mm256_add_epi64(acc, _mm256_and_si256(select, _mm256_set1_epi64x(kappa[i])));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + d), acc);
  }
  if (d < count) {
    scalar::occupation_forms(masks.subspan(d), kappa0, kappa, out.subspan(d));
  }
}

void affine_forms(std::span<const double> coeffs, std::span<const double> offsets,
                  std::span<const double> n, std::span<double> out) {
  const std::size_t m = n.size();
  const std::size_t forms = offsets.size();
  std::size_t c = 0;
  // Four forms per register; each lane sums over i in the scalar order.
  for (; c + 4 <= forms; c += 4) {
    __m256d acc = _mm256_loadu_pd(offsets.data() + c);
    const double* r0 = coeffs.data() + c * m;
    const double* r1 = r0 + m;
    const double* r2 = r1 + m;
    const double* r3 = r2 + m;
    for (std::size_t i = 0; i < m; ++i) {
      const __m256d k = _mm256_set_pd(r3[i], r2[i], r1[i], r0[i]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(k, _mm256_set1_pd(n[i])));
    }
    _mm256_storeu_pd(out.data() + c, acc);
  }
  if (c < forms) {
    scalar::affine_forms(coeffs.subspan(c * m), offsets.subspan(c), n, out.subspan(c));
  }
}

}  // namespace gpcci::kernels::avx2
