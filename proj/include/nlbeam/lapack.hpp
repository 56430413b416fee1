#pragma once

// Thin wrappers over the LAPACK routines used by the solvers (dense and
// banded LU). Matrices on our side are row-major; dense factorizations feed
// the buffer to LAPACK as the column-major transpose and solve with 'T'.

#include <vector>

#include "nlbeam/types.hpp"

namespace nlbeam::lapack {

/// Set the BLAS thread count (no-op if the backend ignores it).
void set_threads(int n);

/// LU factorization (partial pivoting) of a square row-major matrix, in place.
struct LuFactor {
    DenseMatrix a;          // factored storage
    std::vector<int> ipiv;

    /// Solve A x = b for nrhs right-hand sides stored contiguously
    /// (each of length n), in place.
    void solve(double* b, int nrhs = 1) const;

    /// Solve A^T x = b. With row-major RHS buffers this computes products of
    /// the form (B A^-1) without explicit transposes.
    void solve_transposed(double* b, int nrhs = 1) const;
};

LuFactor lu_factor(DenseMatrix a);

/// One-shot dense solve A x = b (b overwritten with x).
void solve_inplace(DenseMatrix a, std::vector<double>& b);

/// Banded LU (LAPACK band storage, column-major, with kl extra rows for fill).
struct BandFactor {
    int n = 0, kl = 0, ku = 0;
    std::vector<double> ab;  // (2*kl+ku+1) x n
    std::vector<int> ipiv;

    void solve(double* b, int nrhs = 1) const;
};

/// Factor a banded matrix given entries via a callback-filled band store.
/// `ab` must be laid out as LAPACK dgbtrf expects: ab[(2kl+ku) + i - j + j*ldab].
BandFactor band_factor(int n, int kl, int ku, std::vector<double> ab);

/// Helper for filling band storage: index of entry (i, j).
inline size_t band_index(int kl, int ku, int i, int j) {
    const int ldab = 2 * kl + ku + 1;
    return static_cast<size_t>(j) * ldab + (kl + ku + i - j);
}

}  // namespace nlbeam::lapack
