#include "pathmine/kernels.hpp"

#include "pathmine/error.hpp"

#include <cstdlib>
#include <string>

namespace pathmine::kernels {

std::string_view to_string(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "scalar";
}

std::vector<const KernelTable*> available() {
    std::vector<const KernelTable*> out{&scalar::table};
#if defined(__x86_64__) || defined(_M_X64)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) out.push_back(&avx2::table);
#endif
#if defined(__aarch64__)
    out.push_back(&neon::table);
#endif
    return out;
}

namespace {

const KernelTable& select() {
    const auto tables = available();
    if (const char* pin = std::getenv("PATHMINE_KERNELS")) {
        for (const KernelTable* t : tables)
            if (to_string(t->isa) == pin) return *t;
        return scalar::table;
    }
    return *tables.back();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& chosen = select();
    return chosen;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    return active().squared_distance(a.data(), b.data(), a.size());
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

void divide(std::span<double> x, double divisor) { active().divide(x.data(), x.size(), divisor); }

void add(std::span<double> acc, std::span<const double> x) {
    if (acc.size() != x.size()) throw DimensionMismatch(acc.size(), x.size());
    active().add(acc.data(), x.data(), x.size());
}

}  // namespace pathmine::kernels
