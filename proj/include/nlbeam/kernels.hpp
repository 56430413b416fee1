#pragma once

// Data-parallel inner-loop kernels.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// with AVX2+FMA, a vectorized variant. The active variant is picked once at
// startup from CPUID and can be forced with NLBEAM_SIMD=scalar|avx2 for
// equivalence testing. For a fixed build and ISA the kernels are
// deterministic: accumulation order depends only on the array length.

#include <cstddef>
#include <string>

namespace nlbeam::kernels {

enum class Isa { Scalar, Avx2 };

/// Variant selected at startup (CPUID + NLBEAM_SIMD override).
Isa active_isa();
std::string isa_name(Isa isa);

/// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, size_t n);

/// sum_i x[i] * y[i]
double dot(const double* x, const double* y, size_t n);

/// y = A * x, A row-major (rows x cols). Rows are independent dot products.
void matvec(const double* A, size_t rows, size_t cols, const double* x, double* y);

/// y += A * x
void matvec_add(const double* A, size_t rows, size_t cols, const double* x, double* y);

// Reference implementations, exposed for equivalence tests.
namespace scalar {
void axpy(double a, const double* x, double* y, size_t n);
double dot(const double* x, const double* y, size_t n);
}  // namespace scalar

#ifdef NLBEAM_HAVE_AVX2
namespace avx2 {
void axpy(double a, const double* x, double* y, size_t n);
double dot(const double* x, const double* y, size_t n);
}  // namespace avx2
#endif

}  // namespace nlbeam::kernels
