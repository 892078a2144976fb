#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hrings/lattice.hpp"
#include "hrings/triangulation.hpp"

namespace hrings {

// Quadrilateral classes: opposite edge pairs of a tetrahedron share a shape
// parameter. quad 0 = {0,1}/{2,3}, quad 1 = {0,2}/{1,3}, quad 2 = {0,3}/{1,2}.
inline int quad_of_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 0) return b - 1;
    return quad_of_edge(0, 6 - a - b - 0);  // the opposite edge contains 0
}

// Around every vertex the three parameters follow the cross-ratio chain
// q1 = 1/(1-q2), q0 = 1/(1-q1), q2 = 1/(1-q0); equivalently z z' z'' = -1 and
// z'(1-z) = 1 for consecutive parameters. quad 2 is the primary variable.
inline int primary_quad() { return 2; }

struct ShapeAssignment {
    int tets = 0;
    std::vector<std::string> names;  // 3*tets parameter names, id = 3*tet+quad
    int param_id(int tet, int a, int b) const { return 3 * tet + quad_of_edge(a, b); }
};

ShapeAssignment shape_assignment(const Triangulation& ideal,
                                 const std::vector<ShapeLabel>& labels = {});

struct EdgeEquation {
    int orbit = 0;
    std::vector<long> exponents;  // over the 3n parameter ids; product = +1
};

struct GluingSystem {
    Triangulation ideal;
    ShapeAssignment sa;
    std::vector<EdgeEquation> equations;
    bool degenerate = false;     // some ideal edge class has a single preimage
    int degenerate_orbit = -1;

    std::string equation_str(const EdgeEquation& eq) const;
};

GluingSystem gluing_system(const Triangulation& ideal, const ShapeAssignment& sa);

// Monomial fragment of R_I: parameters and the sign, modulo the edge
// equations and the per-tetrahedron relations q0 q1 q2 = -1.
SignedAbelianGroup ri_skeleton(const GluingSystem& gs);

using cplx = std::complex<double>;

// Values of all 3n parameters from the primary (quad 2) values.
std::vector<cplx> derive_params(const GluingSystem& gs, const std::vector<cplx>& primary);

// Exact-formula evaluation of every edge equation and every per-tetrahedron
// relation at a full parameter assignment; returns the largest deviation.
double residual(const GluingSystem& gs, const std::vector<cplx>& params);

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 100;
    int retries = 30;
    std::uint64_t seed = 0;
};

struct SolvePoint {
    std::vector<cplx> params;  // all 3n
    double resid = 0.0;
    bool isolated = true;      // false when trailing variables were frozen
    int seed_index = 0;
};

// Newton iteration on the primary variables, one seed after another; seeds
// are evaluated concurrently and merged by seed index.
std::vector<SolvePoint> solve_numeric(const GluingSystem& gs, const SolveOptions& opts = {});

}  // namespace hrings
