#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Catalog of model free-boundary hypersurfaces of the upper hemisphere
// S^{n+1}_+ = S^{n+1} ∩ {x_{n+2} >= 0} and their exact scalar invariants.
//
// Conventions used throughout the library:
//   * H is the unnormalized trace of the shape operator, H = trace(S_nu),
//     with S_nu(X) = -(tangential part of d_X nu).
//   * For the product models the unit normal is oriented so that the
//     principal curvature carried by the first factor (multiplicity k)
//     is positive.  With that orientation H > 0 on an H-torus exactly
//     when r < sqrt(k/n); the same surface with r > sqrt(k/n) is the
//     (n-k, sqrt(1-r^2)) member of the catalog with the opposite normal.
//   * "Halved" factor: the product factor whose ambient block contains
//     the x_{n+2} axis, cut to x_{n+2} >= 0.  Default: Second.

namespace hemispec {

struct InvalidModel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OutOfChart : std::domain_error {
    using std::domain_error::domain_error;
};

enum class ModelKind { Equator, UmbilicalCap, MinimalCliffordHalf, HTorusHalf };

enum class HalvedFactor { First, Second };

const char* to_string(ModelKind kind);
const char* to_string(HalvedFactor h);

struct Model {
    ModelKind kind = ModelKind::Equator;
    int n = 2;                 // intrinsic dimension, n >= 2
    int k = 0;                 // first-factor sphere dimension (torus kinds)
    double r = 1.0;            // first-factor radius / cap radius
    HalvedFactor halved = HalvedFactor::Second;

    bool is_torus() const {
        return kind == ModelKind::MinimalCliffordHalf || kind == ModelKind::HTorusHalf;
    }
    bool operator==(const Model&) const = default;
};

// Validating factories.  UmbilicalCap with r == 1 normalizes to Equator.
Model make_equator(int n);
Model make_cap(int n, double r);
Model make_clifford_half(int n, int k, HalvedFactor halved = HalvedFactor::Second);
Model make_htorus_half(int n, int k, double r, HalvedFactor halved = HalvedFactor::Second);

// Throws InvalidModel if the fields violate the catalog constraints.
void validate(const Model& m);

// Human-readable tag, e.g. "HTorusHalf(n=3,k=2,r=0.6)".
std::string describe(const Model& m);

// Radii of the two product factors (torus kinds only).
std::pair<double, double> factor_radii(const Model& m);

struct PrincipalCurvature {
    double value = 0.0;
    int multiplicity = 0;
};

struct GeometricData {
    int n = 0;
    double H = 0.0;        // trace of the shape operator
    double normA2 = 0.0;   // |A|^2
    double normA0_2 = 0.0; // |Å|^2 = |A|^2 - H^2/n
    std::vector<PrincipalCurvature> principal_curvatures;
    double potential = 0.0; // Jacobi potential c = |A|^2 + n

    // trace(Å^3) for the stored curvatures; vanishes on umbilical models.
    double traceA0_cubed() const;
};

GeometricData geometric_data(const Model& m);

// --- explicit charts -------------------------------------------------------
//
// Every model carries one global chart built from hyperspherical angles.
// Torus kinds: params = (first-factor angles[k], second-factor angles[n-k]);
// Equator/UmbilicalCap: params = angles[n] of the cap sphere.  The final
// angle of the halved factor is restricted to [0, pi] so that x_{n+2} >= 0,
// with x_{n+2} = 0 exactly at {0, pi}.

int chart_dim(const Model& m);

struct EmbedResult {
    Eigen::VectorXd x;  // point on S^{n+1} in R^{n+2}
    Eigen::VectorXd nu; // unit normal of Sigma, tangent to S^{n+1}
};

// Throws OutOfChart for parameters outside the chart domain.
EmbedResult embed(const Model& m, const Eigen::VectorXd& chart_point);

// Analytic 2-jet of the embedding at a chart point: x, first and second
// chart derivatives.  Used by the identity-verification stencils.
struct ChartJet {
    Eigen::VectorXd x;                    // ambient point
    Eigen::MatrixXd dx;                   // (n+2) x n, columns d x / d u_i
    std::vector<Eigen::MatrixXd> d2x;     // n matrices, d2x[i] col j = d^2 x / du_i du_j
};

ChartJet chart_jet(const Model& m, const Eigen::VectorXd& chart_point);

// Seeded random sampling of chart points.  Interior points are kept away
// from hyperspherical coordinate singularities so finite-difference
// stencils stay well conditioned.
class ChartSampler {
 public:
    ChartSampler(const Model& m, std::uint64_t seed);
    Eigen::VectorXd interior_point();
    Eigen::VectorXd boundary_point();
    // Chart direction index that crosses the boundary (the halved factor's
    // final angle) and the sign pointing into the interior at `u`.
    int boundary_axis() const;
    double inward_sign(const Eigen::VectorXd& boundary_u) const;

 private:
    Model model_;
    std::uint64_t state_;
    double next_uniform(); // in [0,1)
};

// Curvature A(eta, eta) of the outward boundary conormal direction
// (the halved factor's principal curvature under the model orientation).
double boundary_normal_curvature(const Model& m);

struct IdentityReport; // defined in verify.hpp

// Samples boundary points and checks the free-boundary conditions: the
// outward conormal equals ±e_{n+2} and nu is tangent to the boundary
// sphere, both to 1e-10.  The conormal is computed by finite differences
// of the chart, not from closed-form frames.
IdentityReport free_boundary_check(const Model& m, int samples, std::uint64_t seed);

// Default model list exercised by the verification suites (n <= 4).
std::vector<Model> identity_suite_models();

// Full catalog sample across 2 <= n <= n_max (used by scans/reports).
std::vector<Model> catalog_models(int n_max);

} // namespace hemispec
