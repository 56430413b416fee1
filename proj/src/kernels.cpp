#include "nlbeam/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace nlbeam::kernels {

namespace scalar {

void axpy(double a, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, size_t n) {
    // Four independent accumulators, mirroring the AVX2 lane structure so the
    // two variants stay within a few ulps of each other.
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return ((s0 + s1) + (s2 + s3)) + tail;
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(NLBEAM_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect_isa() {
    if (const char* env = std::getenv("NLBEAM_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
#ifdef NLBEAM_HAVE_AVX2
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::Avx2;
#endif
        if (std::strcmp(env, "auto") != 0) return Isa::Scalar;
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

const Isa g_isa = detect_isa();

}  // namespace

Isa active_isa() { return g_isa; }

std::string isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void axpy(double a, const double* x, double* y, size_t n) {
#ifdef NLBEAM_HAVE_AVX2
    if (g_isa == Isa::Avx2) { avx2::axpy(a, x, y, n); return; }
#endif
    scalar::axpy(a, x, y, n);
}

double dot(const double* x, const double* y, size_t n) {
#ifdef NLBEAM_HAVE_AVX2
    if (g_isa == Isa::Avx2) return avx2::dot(x, y, n);
#endif
    return scalar::dot(x, y, n);
}

void matvec(const double* A, size_t rows, size_t cols, const double* x, double* y) {
    for (size_t i = 0; i < rows; ++i) y[i] = dot(A + i * cols, x, cols);
}

void matvec_add(const double* A, size_t rows, size_t cols, const double* x, double* y) {
    for (size_t i = 0; i < rows; ++i) y[i] += dot(A + i * cols, x, cols);
}

}  // namespace nlbeam::kernels
