#pragma once

// Nonlocal-order profiles alpha^b(y) across the beam thickness.
//
// Values are clamped to [ALPHA_FLOOR, 1]: alpha = 0 is outside the admissible
// order interval (0, 1], and the 'sine' family touches 0 at the bottom face.

#include <functional>
#include <map>
#include <string>

#include "nlbeam/types.hpp"

namespace nlbeam {

inline constexpr double ALPHA_FLOOR = 0.01;

enum class DistFamily { Uniform, Parabolic, Cosine, Ellipse, Sine, Cubic, Linear, Custom };

std::string to_string(DistFamily f);

struct OrderDistribution {
    DistFamily family = DistFamily::Uniform;
    std::string name;     // e.g. "uniform-0.5"
    bool symmetric = true;

    // Family parameters (profiles are functions of u = y/h). All asymmetric
    // families put the softer (lower alpha) material in the bottom half,
    // matching the sign pattern of the reported h_c values.
    //   uniform:   alpha(u) = p0
    //   linear:    alpha(u) = p0 + p1*u              (defaults 0.6, 0.6)
    //   sine:      alpha(u) = p0 + p1*sin(pi*u)      (defaults 0.5, 0.5)
    //   cubic:     alpha(u) = p0 + p1*u^3            (defaults 0.6, 2.4)
    //   parabolic: alpha(u) = p0 + p1*u^2            (defaults 0.3, 2.4)
    //   cosine:    alpha(u) = p0 + p1*cos(pi*u)      (defaults 0.54, 0.36)
    //   ellipse:   alpha(u) = p0 + p1*sqrt(1-(2u)^2) (defaults 0.55, 0.40)
    double p0 = 0.5;
    double p1 = 0.0;

    // Custom profile of u = y/h in [-1/2, 1/2]; result is still clamped.
    std::function<double(double)> custom;

    /// alpha^b(y) for |y| <= h/2, clamped to [ALPHA_FLOOR, 1].
    double eval(double y, double h) const;

    /// alpha in physical coordinates: alpha^b(y_tilde + h_c).
    double to_physical(double y_tilde, double h, double h_c) const;
};

/// Build a distribution from a family name ("uniform", "linear", ...,
/// or the Fig. 3 shorthands "uniform-0.5" / "uniform-0.8") plus optional
/// parameter overrides {"p0": ..., "p1": ..., "alpha": ...}.
OrderDistribution make_distribution(const std::string& family,
                                    const std::map<std::string, double>& overrides = {});

/// The eight profiles of Fig. 3, in Table 2 column order.
std::vector<std::string> table2_distributions();

}  // namespace nlbeam
