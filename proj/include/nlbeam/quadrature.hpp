#pragma once

#include "nlbeam/types.hpp"

namespace nlbeam {

/// Gauss-Legendre nodes and weights mapped to [a, b].
/// Nodes come out exactly symmetric about the interval midpoint
/// (computed on the half interval and mirrored).
QuadratureRule gauss_rule(int n, double a, double b);

}  // namespace nlbeam
