#include "pathmine/kernels.hpp"

namespace pathmine::kernels::scalar {

namespace {

double squared_distance(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

void divide(double* x, std::size_t n, double divisor) {
    for (std::size_t i = 0; i < n; ++i) x[i] /= divisor;
}

void add(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

}  // namespace

const KernelTable table{Isa::Scalar, squared_distance, sum, divide, add};

}  // namespace pathmine::kernels::scalar
