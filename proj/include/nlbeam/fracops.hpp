#pragma once

// Discretization of constant-order Riesz-Caputo derivatives and
// distributed-order derivatives on uniform grids, as dense operator matrices.
//
// Scheme: L1 (product-trapezoidal quadrature of the Caputo integral with a
// piecewise-linear interpolant). On a uniform grid the interior coefficients
// depend only on i-j, so each matrix is triangular-Toeplitz up to boundary
// columns. At alpha = 1 the operators reduce exactly to the standard
// second-order finite-difference first-derivative matrix.

#include "nlbeam/distributions.hpp"
#include "nlbeam/types.hpp"

namespace nlbeam {

/// Standard first-derivative FD matrix: second-order central in the interior,
/// second-order one-sided at the two endpoints.
DenseMatrix fd_first_derivative(const Grid1D& grid);

/// Apply the first-derivative stencil without materializing the matrix.
void apply_fd_first(const Grid1D& grid, const double* f, double* out);

/// Second-derivative FD matrix, compact central interior, one-sided ends.
DenseMatrix fd_second_derivative(const Grid1D& grid);

/// Left Caputo derivative  c_a D_x^alpha, 0 < alpha <= 1.
DenseOperator caputo_left_matrix(const Grid1D& grid, double alpha);

/// Right Caputo derivative c_x D_b^alpha (equals -f' at alpha = 1).
DenseOperator caputo_right_matrix(const Grid1D& grid, double alpha);

/// Riesz-Caputo derivative 1/2 (left - right); equals f' exactly at alpha = 1.
DenseOperator riesz_caputo_matrix(const Grid1D& grid, double alpha);

/// Distributed-order derivative of Eq. form
///   D f = int_{-h/2-hc}^{h/2-hc} kappa(yt) RieszCaputo^{alpha(yt+hc)} f dyt,
/// kappa(yt) = yt^2 / I with I = h^3/12 + h hc^2, evaluated with an n_alpha
/// point Gauss rule. The kappa-weights are renormalized to sum exactly to 1
/// (discrete partition of unity).
DenseOperator do_operator_matrix(const Grid1D& grid, const OrderDistribution& dist,
                                 double h, double h_c, int n_alpha);

/// Matrix-free application of the Riesz-Caputo operator: O(n) setup
/// (coefficient tables), O(n^2) apply through contiguous dot products.
/// Used in the h_c / chi recovery loops where thousands of distinct orders
/// are applied to the same rotation profile.
class RieszCaputoApplier {
public:
    RieszCaputoApplier(const Grid1D& grid, double alpha);

    /// out = RieszCaputo^alpha f. Requires out != f.
    void apply(const double* f, double* out) const;
    void apply(const std::vector<double>& f, std::vector<double>& out) const;

    double alpha() const { return alpha_; }

private:
    int n_;
    double alpha_;
    double scale_ = 0.0;           // dx^-alpha / (2 Gamma(2-alpha)), alpha < 1
    double inv_2dx_ = 0.0;         // alpha == 1 path
    std::vector<double> c_;        // c_m = m^(1-a) - (m-1)^(1-a)
    std::vector<double> d_;        // d_m = c_{m+1} - c_m
    std::vector<double> drev_;     // d reversed, for contiguous left-sum dots
};

}  // namespace nlbeam
