#pragma once

#include "hemispec/models.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Identity, inequality and eigenvalue-bound verification.  Everything here
// is a check of an equation: finite-difference stencils for the position /
// Gauss-map identities, algebraic residuals for the Simons equations, and
// closed-form bound comparisons for the first-eigenvalue estimates.

namespace hemispec {

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotTraceless : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotApplicable : std::logic_error {
    using std::logic_error::logic_error;
};

struct IdentityReport {
    std::string name;
    std::int64_t samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string notes;
};

IdentityReport make_identity_report(std::string name, std::int64_t samples,
                                    double max_residual, double tolerance,
                                    std::string notes = {});

// --- position and Gauss-map identities, checked by finite differences ------

// Interior identities for f = <x,a> and <nu,a>: the Laplace and Jacobi
// actions on position and Gauss-map components, plus the composed identity
// J(-Delta<x,a>) = (n|A|^2 - H^2)<x,a>.  Second-order central stencils with
// one Richardson level on the chart metric.
IdentityReport check_position_identities(const Model& m, int points, int directions,
                                         std::uint64_t seed);

// Boundary derivatives along the outward conormal eta (one-sided, second
// order):  grad_eta<x,a> = <eta,a>,  grad_eta<nu,a> = -A(eta,eta)<eta,a>
// (sign as induced by S_nu = -(d nu)^T), and the Neumann compatibility
// grad_eta<nu,e_i> = 0 for i <= n+1.
IdentityReport check_boundary_identities(const Model& m, int points, std::uint64_t seed);

// Algebraic Simons residuals from closed-form curvatures: |A|^2(n - |A|^2)
// for minimal models and (n(1+H^2/n^2) - |Å|^2)|Å|^2 + H tr(Å^3) for CMC
// models.  Both vanish on the catalog.
IdentityReport simons_residual(const Model& m);

// --- characteristic polynomial of the position/Gauss-map system -----------

struct CharPolyResult {
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
    double discriminant = 0.0;
};

// Roots of p(l) = l^2 - (|A|^2 + n) l + (n|A|^2 - H^2) by a cancellation-free
// quadratic formula, and the gamma_± mixing coefficients.  (1, gamma_±) is
// the eigenvector of [[|A|^2, H], [H, n]] for lambda_∓ — the pairing is
// crossed.  Throws DegenerateInput when |A|^2 = n and H = 0.
CharPolyResult char_poly(int n, double normA2, double H);

// --- inequalities ----------------------------------------------------------

// |sum a_i^3| <= ((n-2)/sqrt(n(n-1))) (sum a_i^2)^{3/2} for traceless
// tuples; reports slack and flags the equality case (n-1 equal entries).
IdentityReport alencar_inequality(const std::vector<double>& tuple);

// Randomized sweep: `samples` mean-centered Gaussian tuples per dimension
// 2..n_max plus the exact equality witnesses.
IdentityReport alencar_suite(int n_max, std::int64_t samples, std::uint64_t seed);

// One Fourier mode of a harmonic field on the flat chart
// (n-1 periodic coordinates, one axial coordinate y):
//   u = amplitude * exp(sign * |m| y) * prod_i cos(m_i theta_i + phase_i).
// Harmonic closure (axial exponent = |m|) makes Hess(u) traceless with
// totally symmetric third derivatives, the hypotheses of the sharpened
// Kato inequality.
struct HarmonicMode {
    std::vector<int> freq;    // size n-1
    std::vector<double> phase; // size n-1
    double amplitude = 1.0;
    int sign = +1;             // axial exponent sign
};

// Evaluates |grad|T|^2|^2 <= (4n/(n+2)) |T|^2 |grad T|^2 for
// T = Hess(u) - (Lap u / n) I on an n-dimensional flat-chart grid, with all
// derivatives taken analytically.  Reports the max ratio attained.
IdentityReport kato_inequality_check(const std::vector<HarmonicMode>& u, int n, int grid);

// Randomized sweep over `fields` harmonic fields for n in 2..n_max.
IdentityReport kato_suite(int n_max, int fields, int grid, std::uint64_t seed);

// --- the stability-gap polynomial P_H and its positive root ---------------

// P_H(x) = x^2 + ((n-2)H/sqrt(n(n-1))) x - n(1 + H^2/n^2).
// With `statement_variant` the linear coefficient uses sqrt(n-1) instead of
// sqrt(n(n-1)); that variant never vanishes on the k = n-1 torus family and
// is exposed only for comparison.
double p_H(int n, double H, double x, bool statement_variant = false);

// Unique positive root of P_H, by a cancellation-free quadratic formula.
double alpha_H(int n, double H, bool statement_variant = false);

// --- first-eigenvalue bounds -----------------------------------------------

struct BoundReport {
    double lambda1 = 0.0;
    double bound = 0.0;
    double slack = 0.0;     // bound - lambda1
    bool equality = false;  // |slack| < 1e-9
    Model family_params;
};

// Minimal models: lambda1 <= -2n with equality exactly on the half minimal
// Clifford torus.  For the Equator the report instead certifies
// lambda1 = -n (the totally geodesic case), with bound = -n.
BoundReport lambda1_bound_minimal(const Model& m);

// CMC models with H > 0 and |Å| > 0: lambda1 <= -2n(1+H^2/n^2)
// + H(n-2)/sqrt(n(n-1)) * |Å| (the integral ratio collapses to |Å| since
// |Å| is constant).  Throws NotApplicable for umbilical models; for those,
// lambda1 = -n(1+H^2/n^2) is available via umbilical_lambda1().
BoundReport lambda1_bound_cmc(const Model& m);
double umbilical_lambda1(const Model& m);

struct CmcBoundScanResult {
    std::vector<BoundReport> reports;   // H > 0 members only
    double min_slack = 0.0;
    bool equality_exactly_on_kn1 = true;
    double max_abs_ph_on_family = 0.0;  // max |P_H(|Å|)| over k = n-1
    double min_abs_ph_off_family = 0.0; // min |P_H(|Å|)| over k < n-1
};

// H-torus family scan: n in 2..n_max, all k, r grid with the given step.
// Grid points where the orientation gives H <= 0 fall outside the H > 0
// hypothesis of the bound and are skipped.
CmcBoundScanResult cmc_bound_scan(int n_max, double r_step);

// Dichotomy check: the minimal members of the catalog attain only
// |A|^2 in {0, n}; notes list the attained values.
IdentityReport dichotomy_scan(int n);

// --- suite runner ------------------------------------------------------------

struct SuiteEntry {
    std::string type;  // "identity" or "bound"
    IdentityReport identity; // valid when type == "identity"
    BoundReport bound;       // valid when type == "bound"
    bool ok = false;
};

// Runs the named suite ("identities", "boundary", "simons", "charpoly",
// "alencar", "kato", "ph", "bounds", "dichotomy", "freeboundary") or all
// of them for suite == "all".
std::vector<SuiteEntry> run_verify_suites(const std::string& suite, std::uint64_t seed,
                                          std::int64_t alencar_samples = 100000,
                                          int kato_fields = 100);

} // namespace hemispec
