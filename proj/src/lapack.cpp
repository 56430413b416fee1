#include "nlbeam/lapack.hpp"

#include <string>

extern "C" {
void dgetrf_(const int* m, const int* n, double* a, const int* lda, int* ipiv, int* info);
void dgetrs_(const char* trans, const int* n, const int* nrhs, const double* a, const int* lda,
             const int* ipiv, double* b, const int* ldb, int* info);
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs,
             const double* ab, const int* ldab, const int* ipiv, double* b, const int* ldb,
             int* info);
void openblas_set_num_threads(int n);
}

namespace nlbeam::lapack {

void set_threads(int n) { openblas_set_num_threads(n); }

LuFactor lu_factor(DenseMatrix a) {
    if (a.rows != a.cols) throw DomainError("lu_factor: matrix must be square");
    LuFactor f;
    f.a = std::move(a);
    const int n = f.a.rows;
    f.ipiv.resize(n);
    int info = 0;
    // Row-major buffer interpreted column-major is A^T; solve() compensates.
    dgetrf_(&n, &n, f.a.data.data(), &n, f.ipiv.data(), &info);
    if (info != 0)
        throw SolverError("dgetrf failed, info=" + std::to_string(info) +
                          (info > 0 ? " (singular pivot)" : ""));
    return f;
}

void LuFactor::solve(double* b, int nrhs) const {
    const int n = a.rows;
    const char trans = 'T';
    int info = 0;
    dgetrs_(&trans, &n, &nrhs, a.data.data(), &n, ipiv.data(), b, &n, &info);
    if (info != 0) throw SolverError("dgetrs failed, info=" + std::to_string(info));
}

void LuFactor::solve_transposed(double* b, int nrhs) const {
    const int n = a.rows;
    const char trans = 'N';  // factored storage holds A^T
    int info = 0;
    dgetrs_(&trans, &n, &nrhs, a.data.data(), &n, ipiv.data(), b, &n, &info);
    if (info != 0) throw SolverError("dgetrs failed, info=" + std::to_string(info));
}

void solve_inplace(DenseMatrix a, std::vector<double>& b) {
    const int n = a.rows;
    if (static_cast<int>(b.size()) % n != 0)
        throw DomainError("solve_inplace: rhs size mismatch");
    const int nrhs = static_cast<int>(b.size()) / n;
    LuFactor f = lu_factor(std::move(a));
    f.solve(b.data(), nrhs);
}

BandFactor band_factor(int n, int kl, int ku, std::vector<double> ab) {
    BandFactor f;
    f.n = n;
    f.kl = kl;
    f.ku = ku;
    f.ab = std::move(ab);
    f.ipiv.resize(n);
    const int ldab = 2 * kl + ku + 1;
    if (f.ab.size() != static_cast<size_t>(ldab) * n)
        throw DomainError("band_factor: band storage size mismatch");
    int info = 0;
    dgbtrf_(&n, &n, &kl, &ku, f.ab.data(), &ldab, f.ipiv.data(), &info);
    if (info != 0) throw SolverError("dgbtrf failed, info=" + std::to_string(info));
    return f;
}

void BandFactor::solve(double* b, int nrhs) const {
    const char trans = 'N';
    const int ldab = 2 * kl + ku + 1;
    int info = 0;
    dgbtrs_(&trans, &n, &kl, &ku, &nrhs, ab.data(), &ldab, ipiv.data(), b, &n, &info);
    if (info != 0) throw SolverError("dgbtrs failed, info=" + std::to_string(info));
}

}  // namespace nlbeam::lapack
