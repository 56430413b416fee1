#pragma once

#include "nlbeam/distributions.hpp"
#include "nlbeam/types.hpp"

namespace nlbeam {

/// Geometry, mesh, material, load and boundary conditions for one beam run
/// (the Table 1 / Eq. 30 data).
struct BeamProblem {
    double L = 1.0;     // length (m)
    double h = 0.1;     // thickness (m)
    int nx = 451;       // mesh points along x
    int ny = 46;        // mesh points along y (2D model)
    int nalpha = 46;    // Gauss points for the DO thickness quadrature
    double mu = 2.5967e10;      // Lame mu (Pa)
    double lambda = 5.0973e10;  // Lame lambda (Pa)
    double q = 1e8;             // transverse load per unit length (N/m), unit width
    BcFamily bc = BcFamily::ClampedClamped;
    OrderDistribution dist = make_distribution("uniform", {{"alpha", 1.0}});

    void validate() const {
        if (!(L > 0.0)) throw DomainError("BeamProblem: L must be positive");
        if (!(h > 0.0)) throw DomainError("BeamProblem: h must be positive");
        if (nx < 3) throw DomainError("BeamProblem: nx must be >= 3");
        if (ny < 3) throw DomainError("BeamProblem: ny must be >= 3");
        if (nalpha < 1) throw DomainError("BeamProblem: nalpha must be >= 1");
        if (!(mu > 0.0)) throw DomainError("BeamProblem: mu must be positive");
        if (!(lambda > 0.0)) throw DomainError("BeamProblem: lambda must be positive");
    }

    Grid1D grid_x() const { return Grid1D(0.0, L, nx); }
    double dy() const { return h / static_cast<double>(ny - 1); }
    double y_node(int j) const { return -0.5 * h + dy() * static_cast<double>(j); }

    double young_modulus() const { return mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu); }
    double poisson() const { return lambda / (2.0 * (lambda + mu)); }
    /// Constrained modulus E/(1-nu^2); the flexural modulus of a unit-width
    /// plane-strain strip.
    double plane_strain_modulus() const {
        const double nu = poisson();
        return young_modulus() / (1.0 - nu * nu);
    }
    double axial_modulus(ModulusMode mode) const {
        return mode == ModulusMode::Young ? young_modulus() : plane_strain_modulus();
    }

    /// Second moment of area per unit width about the physical axis.
    double itilde(double h_c) const { return h * h * h / 12.0 + h * h_c * h_c; }
};

/// Benchmark Problems 1-4 of Eq. (30); id in {1,2,3,4}.
BeamProblem benchmark_problem(int id);

}  // namespace nlbeam
