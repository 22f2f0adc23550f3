#include "pathmine/kernels.hpp"

#include <arm_neon.h>

namespace pathmine::kernels::neon {

namespace {

double squared_distance(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        acc0 = vfmaq_f64(acc0, d0, d0);
        acc1 = vfmaq_f64(acc1, d1, d1);
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double sum(const double* x, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
}

void divide(double* x, std::size_t n, double divisor) {
    const float64x2_t d = vdupq_n_f64(divisor);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vdivq_f64(vld1q_f64(x + i), d));
    for (; i < n; ++i) x[i] /= divisor;
}

void add(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(x + i)));
    for (; i < n; ++i) acc[i] += x[i];
}

}  // namespace

const KernelTable table{Isa::Neon, squared_distance, sum, divide, add};

}  // namespace pathmine::kernels::neon
