#pragma once

#include "hemispec/models.hpp"

#include <cstdint>
#include <optional>
#include <vector>

// Closed-form spectral engine: exact Laplace and Jacobi spectra with
// multiplicities for the catalog models, and exact strong/weak Morse
// index counts by exhaustive mode enumeration.

namespace hemispec {

struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A factor-mode label: (l) for a single factor, (l, m) for a product.
using ModeLabel = std::vector<int>;

struct SpectralLine {
    double value = 0.0;
    std::int64_t multiplicity = 0;
    std::vector<ModeLabel> labels; // merged lines keep every contributing label
};

struct Spectrum {
    std::vector<SpectralLine> lines; // sorted ascending by value
    // Every eigenvalue < exact_below is present with exact multiplicity.
    double exact_below = 0.0;

    // Eigenvalue at `index` when lines are expanded by multiplicity.
    double value_at(std::int64_t index) const;
    std::int64_t total_multiplicity() const;
};

// dim H_l(S^m): harmonic polynomials of degree l on the m-sphere.
std::int64_t sphere_harmonic_dim(int m, int l);

// Neumann multiplicity on the half sphere: degree-l harmonics even under
// reflection in the last ambient coordinate.
std::int64_t hemisphere_harmonic_dim(int m, int l);

// Laplace spectrum of the round m-sphere of the given radius, degrees
// 0..lmax.  exact_below = first omitted eigenvalue.
Spectrum sphere_laplace_spectrum(int m, double radius, int lmax);

// Neumann Laplace spectrum of the half m-sphere of the given radius.
Spectrum hemisphere_laplace_spectrum(int m, double radius, int lmax);

// Same, parametrized by squared radius (used internally so that factor
// eigenvalues and Jacobi potentials are computed by identical arithmetic).
Spectrum sphere_laplace_spectrum_sq(int m, double radius_sq, int lmax);
Spectrum hemisphere_laplace_spectrum_sq(int m, double radius_sq, int lmax);

// All pairwise sums with multiplicity products; complete below
// min(a.exact_below, b.exact_below) since both inputs are nonnegative.
Spectrum product_spectrum(const Spectrum& a, const Spectrum& b);

// Jacobi spectrum of a model: the model's Laplace spectrum (hemisphere, or
// product with the halved factor taken with Neumann boundary) shifted by
// -potential.  `lmax` caps the per-factor degree; exact_below reports how
// far the result is certified complete.
Spectrum jacobi_spectrum(const Model& m, int lmax);

// Variant that picks lmax so that all eigenvalues below `threshold` are
// certified present.
Spectrum jacobi_spectrum_below(const Model& m, double threshold);

struct IndexReport {
    int strong_index = 0;
    int weak_index = 0;
    double lambda1 = 0.0;
    double lambda1_weak = 0.0;
    std::vector<SpectralLine> negative_lines;
    std::optional<int> paper_claim;
    bool discrepancy_flag = false;
};

// Exact count of negative Jacobi eigenvalues with multiplicity.  The
// enumeration walks factor degrees until the factor eigenvalue reaches the
// potential, so no degree cap is guessed.
IndexReport strong_index(const Model& m);

// Index over mean-zero variations: strong count minus the constant mode.
IndexReport weak_index(const Model& m);

// Radius window [sqrt(k/(n+2)), sqrt((k+2)/(n+2))] on which the weak index
// of the H-torus family stays exactly n+1.
std::pair<double, double> radius_window(int n, int k);

struct IndexScanRow {
    double r = 0.0;
    int strong = 0;
    int weak = 0;
    double lambda1 = 0.0;
    double lambda1_weak = 0.0;
};

struct IndexScanResult {
    std::vector<IndexScanRow> rows;
    // Empirical window where weak == n+1 (NaN if never attained).
    double window_lo = 0.0;
    double window_hi = 0.0;
    double analytic_lo = 0.0;
    double analytic_hi = 0.0;
    double max_endpoint_error = 0.0;
};

IndexScanResult index_scan(int n, int k, double r_lo, double r_hi, double step,
                           HalvedFactor halved = HalvedFactor::Second);

} // namespace hemispec
