#pragma once

// Test-only oracles, independent of the closed-form paths they check:
// finite-difference Weingarten maps, brute-force harmonic polynomial
// counting, exhaustive product-mode enumeration, a full-sphere mesh, and a
// bisection root finder.

#include <hemispec/fem.hpp>
#include <hemispec/models.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

struct WeingartenSample {
    double H;
    double normA2;
    std::vector<double> curvatures; // ascending
};

// Numeric shape operator of the explicit embedding at a chart point:
// metric and second fundamental form by central differences, eigenvalues
// of the generalized pair (A, g).
WeingartenSample weingarten(const hemispec::Model& m, const Eigen::VectorXd& chart_point);

// dim of degree-l harmonic polynomials in `vars` variables that are even
// (resp. odd) under flipping the last variable, by exact rank computation
// of the Laplacian on monomials.
struct HarmonicParityCount {
    std::int64_t even;
    std::int64_t odd;
};
HarmonicParityCount harmonic_parity_count(int vars, int l);

// All eigenvalue lines of S^1(r) x S^1_+(r), r = sqrt(1/2), below `bound`,
// by exhaustive (p, q) enumeration of the 2p^2 + 2q^2 modes.
std::vector<std::pair<double, std::int64_t>> clifford2_modes_below(double bound);

// Full round sphere mesh (octahedron subdivision, vertices reprojected).
hemispec::fem::Mesh mesh_full_sphere(int refine, double radius);

// Bisection root of f on [lo, hi]; f(lo) and f(hi) must bracket.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

} // namespace oracles
