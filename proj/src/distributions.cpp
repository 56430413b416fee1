#include "nlbeam/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nlbeam {

std::string to_string(DistFamily f) {
    switch (f) {
        case DistFamily::Uniform: return "uniform";
        case DistFamily::Parabolic: return "parabolic";
        case DistFamily::Cosine: return "cosine";
        case DistFamily::Ellipse: return "ellipse";
        case DistFamily::Sine: return "sine";
        case DistFamily::Cubic: return "cubic";
        case DistFamily::Linear: return "linear";
        case DistFamily::Custom: return "custom";
    }
    return "?";
}

double OrderDistribution::eval(double y, double h) const {
    if (!(h > 0.0)) throw DomainError("OrderDistribution::eval: h must be positive");
    // Allow a roundoff-sized overhang from quadrature nodes at the faces.
    if (std::abs(y) > 0.5 * h * (1.0 + 1e-12))
        throw DomainError("OrderDistribution::eval: |y| exceeds h/2");

    const double u = y / h;
    double a;
    switch (family) {
        case DistFamily::Uniform: a = p0; break;
        case DistFamily::Linear: a = p0 + p1 * u; break;
        case DistFamily::Sine: a = p0 + p1 * std::sin(M_PI * u); break;
        case DistFamily::Cubic: a = p0 + p1 * u * u * u; break;
        case DistFamily::Parabolic: a = p0 + p1 * u * u; break;
        case DistFamily::Cosine: a = p0 + p1 * std::cos(M_PI * u); break;
        case DistFamily::Ellipse: {
            const double s = 1.0 - 4.0 * u * u;
            a = p0 + p1 * std::sqrt(std::max(s, 0.0));
            break;
        }
        case DistFamily::Custom:
            if (!custom) throw DomainError("OrderDistribution::eval: custom profile not set");
            a = custom(u);
            break;
        default: throw DomainError("OrderDistribution::eval: unknown family");
    }
    if (!std::isfinite(a)) throw DomainError("OrderDistribution::eval: profile returned non-finite order");
    return std::clamp(a, ALPHA_FLOOR, 1.0);
}

double OrderDistribution::to_physical(double y_tilde, double h, double h_c) const {
    const double y = y_tilde + h_c;
    if (std::abs(y) > 0.5 * h * (1.0 + 1e-12))
        throw DomainError("OrderDistribution::to_physical: shifted coordinate out of range");
    return eval(std::clamp(y, -0.5 * h, 0.5 * h), h);
}

OrderDistribution make_distribution(const std::string& family,
                                    const std::map<std::string, double>& overrides) {
    OrderDistribution d;
    std::string fam = family;

    // Fig. 3 reference shorthands
    double uniform_alpha = 0.5;
    if (fam == "uniform-0.5") { fam = "uniform"; }
    else if (fam == "uniform-0.8") { fam = "uniform"; uniform_alpha = 0.8; }

    if (fam == "uniform") {
        d.family = DistFamily::Uniform;
        d.p0 = uniform_alpha;
        d.symmetric = true;
    } else if (fam == "linear") {
        d.family = DistFamily::Linear;
        d.p0 = 0.6; d.p1 = 0.6;
        d.symmetric = false;
    } else if (fam == "sine") {
        d.family = DistFamily::Sine;
        d.p0 = 0.5; d.p1 = 0.5;
        d.symmetric = false;
    } else if (fam == "cubic") {
        d.family = DistFamily::Cubic;
        d.p0 = 0.6; d.p1 = 2.4;
        d.symmetric = false;
    } else if (fam == "parabolic") {
        d.family = DistFamily::Parabolic;
        d.p0 = 0.3; d.p1 = 2.4;
        d.symmetric = true;
    } else if (fam == "cosine") {
        d.family = DistFamily::Cosine;
        d.p0 = 0.54; d.p1 = 0.36;
        d.symmetric = true;
    } else if (fam == "ellipse") {
        d.family = DistFamily::Ellipse;
        d.p0 = 0.55; d.p1 = 0.40;
        d.symmetric = true;
    } else {
        throw DomainError("make_distribution: unknown distribution family '" + family + "'");
    }

    for (const auto& [k, v] : overrides) {
        if (k == "p0") d.p0 = v;
        else if (k == "p1") d.p1 = v;
        else if (k == "alpha") {
            if (d.family != DistFamily::Uniform)
                throw DomainError("make_distribution: 'alpha' override only applies to the uniform family");
            d.p0 = v;
        } else {
            throw DomainError("make_distribution: unknown parameter '" + k + "'");
        }
    }

    if (d.family == DistFamily::Uniform) {
        if (!(d.p0 > 0.0 && d.p0 <= 1.0))
            throw DomainError("make_distribution: uniform order must lie in (0, 1]");
        char buf[32];
        std::snprintf(buf, sizeof(buf), "uniform-%g", d.p0);
        d.name = buf;
    } else {
        d.name = to_string(d.family);
    }
    return d;
}

std::vector<std::string> table2_distributions() {
    return {"uniform-0.5", "parabolic", "cosine", "ellipse",
            "sine", "cubic", "linear", "uniform-0.8"};
}

}  // namespace nlbeam
