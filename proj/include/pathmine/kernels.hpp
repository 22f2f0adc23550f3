#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Dense double-precision kernels behind the clustering inner loops. Every
// instruction-set variant implements the same table; the scalar one is the
// reference the others are tested against.
namespace pathmine::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
    Isa isa;
    /// sum_i (a_i - b_i)^2
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    /// sum_i x_i
    double (*sum)(const double* x, std::size_t n);
    /// x_i /= divisor
    void (*divide)(double* x, std::size_t n, double divisor);
    /// acc_i += x_i
    void (*add)(double* acc, const double* x, std::size_t n);
};

namespace scalar {
extern const KernelTable table;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const KernelTable table;
}
#endif
#if defined(__aarch64__)
namespace neon {
extern const KernelTable table;
}
#endif

/// Variants compiled in and supported by this CPU; scalar always first.
std::vector<const KernelTable*> available();

/// The widest supported variant, chosen once. The environment variable
/// PATHMINE_KERNELS=scalar|avx2|neon pins a specific one when supported.
const KernelTable& active();

double squared_distance(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
void divide(std::span<double> x, double divisor);
void add(std::span<double> acc, std::span<const double> x);

}  // namespace pathmine::kernels
