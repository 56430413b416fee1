#pragma once

// Core value types shared by all nlbeam modules: grids, dense matrices,
// beam problem definitions and error types.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlbeam {

// ----------------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------------

/// Invalid argument / out-of-range input (maps to CLI exit code 2).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Solver failure, e.g. iterative non-convergence (maps to CLI exit code 3).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
    SolverError(const std::string& msg, std::vector<double> hist)
        : std::runtime_error(msg), history(std::move(hist)) {}

    /// Residual or iterate history at the time of failure.
    std::vector<double> history;
};

// ----------------------------------------------------------------------------
// Grid1D
// ----------------------------------------------------------------------------

/// Uniform 1D grid on [a, b] including both endpoints.
struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int n = 0;

    Grid1D() = default;
    Grid1D(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
        if (n < 3) throw DomainError("Grid1D: point count must be >= 3");
        if (!(b > a)) throw DomainError("Grid1D: b must exceed a");
    }

    double dx() const { return (b - a) / static_cast<double>(n - 1); }
    double node(int i) const { return a + dx() * static_cast<double>(i); }
};

// ----------------------------------------------------------------------------
// Dense matrix (row-major)
// ----------------------------------------------------------------------------

struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    double* row(int i) { return data.data() + static_cast<size_t>(i) * cols; }
    const double* row(int i) const { return data.data() + static_cast<size_t>(i) * cols; }

    void set_zero() { std::fill(data.begin(), data.end(), 0.0); }
};

/// Description of how a DenseOperator was built (constant order or a
/// distributed-order quadrature record).
struct OperatorMeta {
    std::string description;
    std::vector<double> quad_nodes;    // thickness positions (DO operators)
    std::vector<double> quad_weights;  // renormalized strength weights
    std::vector<double> quad_orders;   // order at each node
};

/// Discretized derivative operator along x as an n-by-n dense matrix.
/// Every row sums to zero (the derivative of a constant vanishes).
struct DenseOperator {
    DenseMatrix m;
    OperatorMeta meta;
};

// ----------------------------------------------------------------------------
// Quadrature rule
// ----------------------------------------------------------------------------

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const std::vector<double>& f) const {
        double s = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f[i];
        return s;
    }
};

// ----------------------------------------------------------------------------
// Beam problem definition (Table 1 / Eq. 30 data)
// ----------------------------------------------------------------------------

enum class BcFamily { ClampedClamped, ClampedFree, SimplySupported };

std::string to_string(BcFamily bc);
BcFamily bc_from_string(const std::string& s);

enum class ModulusMode { Young, PlaneStrain };

/// 2D axial modulus choice for the 1D model: standard Young's modulus or the
/// plane-strain constrained modulus E/(1-nu^2).
std::string to_string(ModulusMode m);

}  // namespace nlbeam
