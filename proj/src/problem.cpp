#include "nlbeam/problem.hpp"

namespace nlbeam {

std::string to_string(BcFamily bc) {
    switch (bc) {
        case BcFamily::ClampedClamped: return "clamped-clamped";
        case BcFamily::ClampedFree: return "clamped-free";
        case BcFamily::SimplySupported: return "simply-supported";
    }
    return "?";
}

BcFamily bc_from_string(const std::string& s) {
    if (s == "clamped-clamped" || s == "cc") return BcFamily::ClampedClamped;
    if (s == "clamped-free" || s == "cf" || s == "cantilever") return BcFamily::ClampedFree;
    if (s == "simply-supported" || s == "ss") return BcFamily::SimplySupported;
    throw DomainError("unknown boundary condition family '" + s + "'");
}

std::string to_string(ModulusMode m) {
    return m == ModulusMode::Young ? "young" : "plane-strain";
}

BeamProblem benchmark_problem(int id) {
    BeamProblem p;  // Table 1 constants are the defaults
    switch (id) {
        case 1: p.h = 0.05; p.nx = 901; p.q = 2e7; break;
        case 2: p.h = 0.10; p.nx = 451; p.q = 1e8; break;
        case 3: p.h = 0.15; p.nx = 301; p.q = 5e8; break;
        case 4: p.h = 0.20; p.nx = 226; p.q = 1e9; break;
        default: throw DomainError("benchmark_problem: id must be 1..4");
    }
    p.ny = 46;
    p.nalpha = 46;
    return p;
}

}  // namespace nlbeam
