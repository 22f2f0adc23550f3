// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "pathmine/kernels.hpp"

#include <immintrin.h>

namespace pathmine::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double sum(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
}

void divide(double* x, std::size_t n, double divisor) {
    const __m256d d = _mm256_set1_pd(divisor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_div_pd(_mm256_loadu_pd(x + i), d));
    for (; i < n; ++i) x[i] /= divisor;
}

void add(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) acc[i] += x[i];
}

}  // namespace

const KernelTable table{Isa::Avx2, squared_distance, sum, divide, add};

}  // namespace pathmine::kernels::avx2
