#include "nlbeam/quadrature.hpp"

#include <cmath>

namespace nlbeam {

QuadratureRule gauss_rule(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_rule: node count must be >= 1");
    if (!(b > a)) throw DomainError("gauss_rule: b must exceed a");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const int m = (n + 1) / 2;  // roots in [0, 1); the rest mirrored
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) {
                // one clean-up step after convergence
                p1 = 1.0;
                p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0);
                break;
            }
        }
        if (n % 2 == 1 && i == m - 1) z = 0.0;  // middle root is exact

        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        // z decreases with i; store ascending with exact +/- symmetry
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }

    // Affine map to [a, b]. xm is exactly 0 for symmetric intervals, which
    // keeps node pairs bitwise symmetric.
    const double xm = 0.5 * (a + b);
    const double xl = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = xm + xl * rule.nodes[i];
        rule.weights[i] *= xl;
    }
    return rule;
}

}  // namespace nlbeam
