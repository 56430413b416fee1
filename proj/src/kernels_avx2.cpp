// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only reached after a
// runtime CPUID check in kernels.cpp.

#ifdef NLBEAM_HAVE_AVX2

#include <immintrin.h>

#include "nlbeam/kernels.hpp"

namespace nlbeam::kernels::avx2 {

void axpy(double a, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
        y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
        _mm256_storeu_pd(y + i, y0);
        _mm256_storeu_pd(y + i + 4, y1);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
        _mm256_storeu_pd(y + i, y0);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);

    // Lane k holds sum over indices == k (mod 4); reduce in the same pairing
    // as the scalar reference: (s0+s1) + (s2+s3).
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);

    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return s + tail;
}

}  // namespace nlbeam::kernels::avx2

#endif  // NLBEAM_HAVE_AVX2
