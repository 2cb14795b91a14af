#include "hemispec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hemispec {

namespace {

std::int64_t binomial(int a, int b) {
    if (b < 0 || a < 0 || b > a) return 0;
    b = std::min(b, a - b);
    std::int64_t v = 1;
    for (int i = 1; i <= b; ++i) v = v * (a - b + i) / i;
    return v;
}

// Classification tolerance for "eigenvalue < 0" in index counts.  The
// catalog has exact zero modes whose floating-point images sit within a few
// ulps of zero; closed-form merging stays at 1e-12.
double zero_tol(double potential) { return 1e-9 * std::max(1.0, std::abs(potential)); }

struct RawLine {
    double value;
    std::int64_t multiplicity;
    std::vector<ModeLabel> labels;
};

std::vector<SpectralLine> merge_lines(std::vector<RawLine> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const RawLine& a, const RawLine& b) { return a.value < b.value; });
    std::vector<SpectralLine> out;
    for (auto& r : raw) {
        double tol = 1e-12 * std::max(1.0, std::abs(r.value));
        if (!out.empty() && std::abs(out.back().value - r.value) <= tol) {
            out.back().multiplicity += r.multiplicity;
            for (auto& l : r.labels) out.back().labels.push_back(std::move(l));
        } else {
            out.push_back({r.value, r.multiplicity, std::move(r.labels)});
        }
    }
    return out;
}

} // namespace

double Spectrum::value_at(std::int64_t index) const {
    std::int64_t seen = 0;
    for (const auto& line : lines) {
        seen += line.multiplicity;
        if (index < seen) return line.value;
    }
    throw std::out_of_range("spectrum index beyond enumerated lines");
}

std::int64_t Spectrum::total_multiplicity() const {
    std::int64_t s = 0;
    for (const auto& line : lines) s += line.multiplicity;
    return s;
}

std::int64_t sphere_harmonic_dim(int m, int l) {
    if (m < 1) throw InvalidDimension("sphere dimension must be >= 1");
    if (l < 0) return 0;
    if (l == 0) return 1;
    return binomial(m + l, m) - binomial(m + l - 2, m);
}

std::int64_t hemisphere_harmonic_dim(int m, int l) {
    if (m < 1) throw InvalidDimension("sphere dimension must be >= 1");
    if (l < 0) return 0;
    if (m == 1) return l >= 0 ? 1 : 0; // half circle: one cosine mode per degree
    std::int64_t s = 0;
    for (int j = l % 2; j <= l; j += 2) s += sphere_harmonic_dim(m - 1, j);
    return s;
}

Spectrum sphere_laplace_spectrum_sq(int m, double radius_sq, int lmax) {
    if (m < 1) throw InvalidDimension("sphere dimension must be >= 1");
    if (!(radius_sq > 0.0)) throw InvalidDimension("radius must be positive");
    if (lmax < 0) throw InvalidDimension("lmax must be >= 0");
    Spectrum s;
    for (int l = 0; l <= lmax; ++l) {
        double v = double(std::int64_t(l) * (l + m - 1)) / radius_sq;
        s.lines.push_back({v, sphere_harmonic_dim(m, l), {{l}}});
    }
    s.exact_below = double(std::int64_t(lmax + 1) * (lmax + m)) / radius_sq;
    return s;
}

Spectrum hemisphere_laplace_spectrum_sq(int m, double radius_sq, int lmax) {
    if (m < 1) throw InvalidDimension("sphere dimension must be >= 1");
    if (!(radius_sq > 0.0)) throw InvalidDimension("radius must be positive");
    if (lmax < 0) throw InvalidDimension("lmax must be >= 0");
    Spectrum s;
    for (int l = 0; l <= lmax; ++l) {
        double v = double(std::int64_t(l) * (l + m - 1)) / radius_sq;
        s.lines.push_back({v, hemisphere_harmonic_dim(m, l), {{l}}});
    }
    s.exact_below = double(std::int64_t(lmax + 1) * (lmax + m)) / radius_sq;
    return s;
}

Spectrum sphere_laplace_spectrum(int m, double radius, int lmax) {
    if (!(radius > 0.0)) throw InvalidDimension("radius must be positive");
    return sphere_laplace_spectrum_sq(m, radius * radius, lmax);
}

Spectrum hemisphere_laplace_spectrum(int m, double radius, int lmax) {
    if (!(radius > 0.0)) throw InvalidDimension("radius must be positive");
    return hemisphere_laplace_spectrum_sq(m, radius * radius, lmax);
}

Spectrum product_spectrum(const Spectrum& a, const Spectrum& b) {
    std::vector<RawLine> raw;
    raw.reserve(a.lines.size() * b.lines.size());
    for (const auto& la : a.lines) {
        for (const auto& lb : b.lines) {
            RawLine r;
            r.value = la.value + lb.value;
            r.multiplicity = la.multiplicity * lb.multiplicity;
            for (const auto& xa : la.labels) {
                for (const auto& xb : lb.labels) {
                    ModeLabel combined = xa;
                    combined.insert(combined.end(), xb.begin(), xb.end());
                    r.labels.push_back(std::move(combined));
                }
            }
            raw.push_back(std::move(r));
        }
    }
    Spectrum out;
    out.lines = merge_lines(std::move(raw));
    out.exact_below = std::min(a.exact_below, b.exact_below);
    return out;
}

namespace {

struct FactorSq {
    int dim;
    double radius_sq;
    bool halved;
};

// Model factor data in the order (first factor, second factor); caps and
// equators are single-factor with a halved chart.
std::vector<FactorSq> model_factors(const Model& m) {
    validate(m);
    if (!m.is_torus()) {
        double rsq = m.kind == ModelKind::Equator ? 1.0 : m.r * m.r;
        return {{m.n, rsq, true}};
    }
    double s, t;
    if (m.kind == ModelKind::MinimalCliffordHalf) {
        s = double(m.k) / m.n;
        t = double(m.n - m.k) / m.n;
    } else {
        s = m.r * m.r;
        t = 1.0 - s;
    }
    bool first_halved = m.halved == HalvedFactor::First;
    return {{m.k, s, first_halved}, {m.n - m.k, t, !first_halved}};
}

Spectrum factor_spectrum(const FactorSq& f, int lmax) {
    return f.halved ? hemisphere_laplace_spectrum_sq(f.dim, f.radius_sq, lmax)
                    : sphere_laplace_spectrum_sq(f.dim, f.radius_sq, lmax);
}

double factor_value(const FactorSq& f, int l) {
    return double(std::int64_t(l) * (l + f.dim - 1)) / f.radius_sq;
}

std::int64_t factor_mult(const FactorSq& f, int l) {
    return f.halved ? hemisphere_harmonic_dim(f.dim, l) : sphere_harmonic_dim(f.dim, l);
}

// All Laplace lines of the model with value < bound, merged and certified
// complete (factor spectra are nonnegative and strictly increasing in l).
std::vector<SpectralLine> laplace_lines_below(const Model& m, double bound) {
    auto factors = model_factors(m);
    std::vector<RawLine> raw;
    if (factors.size() == 1) {
        for (int l = 0; factor_value(factors[0], l) < bound; ++l) {
            raw.push_back({factor_value(factors[0], l), factor_mult(factors[0], l), {{l}}});
        }
    } else {
        for (int p = 0; factor_value(factors[0], p) < bound; ++p) {
            double a = factor_value(factors[0], p);
            for (int q = 0; a + factor_value(factors[1], q) < bound; ++q) {
                raw.push_back({a + factor_value(factors[1], q),
                               factor_mult(factors[0], p) * factor_mult(factors[1], q),
                               {{p, q}}});
            }
        }
    }
    return merge_lines(std::move(raw));
}

struct ClaimPair {
    std::optional<int> strong;
    std::optional<int> weak;
};

// Classically stated indices for the catalog models; filled into reports so
// every run documents agreement or disagreement.
ClaimPair paper_claims(const Model& m) {
    switch (m.kind) {
        case ModelKind::Equator: return {1, std::nullopt};
        case ModelKind::UmbilicalCap: return {1, 0};
        case ModelKind::MinimalCliffordHalf: return {m.n + 1, std::nullopt};
        case ModelKind::HTorusHalf: {
            auto [lo, hi] = radius_window(m.n, m.k);
            bool in_window = m.r >= lo - 1e-12 && m.r <= hi + 1e-12;
            return {std::nullopt, in_window ? std::optional<int>(m.n + 1) : std::nullopt};
        }
    }
    return {};
}

IndexReport build_index_report(const Model& m) {
    const double V = geometric_data(m).potential;
    const double ztol = zero_tol(V);
    auto lines = laplace_lines_below(m, 2.0 * V + 1.0);

    IndexReport rep;
    std::int64_t negative = 0;
    for (auto& line : lines) {
        double lambda = line.value - V;
        if (lambda < -ztol) {
            negative += line.multiplicity;
            rep.negative_lines.push_back({lambda, line.multiplicity, line.labels});
        }
    }
    rep.strong_index = static_cast<int>(negative);
    rep.weak_index = std::max(0, rep.strong_index - 1);
    rep.lambda1 = lines.front().value - V;

    // second eigenvalue counting multiplicity = first weak eigenvalue
    std::int64_t seen = 0;
    for (auto& line : lines) {
        seen += line.multiplicity;
        if (seen >= 2) {
            rep.lambda1_weak = line.value - V;
            break;
        }
    }
    return rep;
}

} // namespace

Spectrum jacobi_spectrum(const Model& m, int lmax) {
    if (lmax < 0) throw InvalidDimension("lmax must be >= 0");
    const double V = geometric_data(m).potential;
    auto factors = model_factors(m);
    Spectrum lap = factor_spectrum(factors[0], lmax);
    if (factors.size() == 2) lap = product_spectrum(lap, factor_spectrum(factors[1], lmax));
    Spectrum out;
    out.lines = std::move(lap.lines);
    for (auto& line : out.lines) line.value -= V;
    out.exact_below = lap.exact_below - V;
    return out;
}

Spectrum jacobi_spectrum_below(const Model& m, double threshold) {
    const double V = geometric_data(m).potential;
    auto factors = model_factors(m);
    int lmax = 0;
    for (const auto& f : factors) {
        int l = 0;
        while (factor_value(f, l) < threshold + V) ++l;
        lmax = std::max(lmax, l);
    }
    return jacobi_spectrum(m, lmax);
}

IndexReport strong_index(const Model& m) {
    IndexReport rep = build_index_report(m);
    rep.paper_claim = paper_claims(m).strong;
    rep.discrepancy_flag = rep.paper_claim && *rep.paper_claim != rep.strong_index;
    return rep;
}

IndexReport weak_index(const Model& m) {
    IndexReport rep = build_index_report(m);
    rep.paper_claim = paper_claims(m).weak;
    rep.discrepancy_flag = rep.paper_claim && *rep.paper_claim != rep.weak_index;
    return rep;
}

std::pair<double, double> radius_window(int n, int k) {
    if (n < 2 || k < 1 || k > n - 1) throw InvalidDimension("need n >= 2 and 1 <= k <= n-1");
    return {std::sqrt(double(k) / (n + 2)), std::sqrt(double(k + 2) / (n + 2))};
}

IndexScanResult index_scan(int n, int k, double r_lo, double r_hi, double step,
                           HalvedFactor halved) {
    if (!(step > 0.0) || !(r_lo < r_hi)) throw InvalidDimension("bad scan range");
    IndexScanResult res;
    std::tie(res.analytic_lo, res.analytic_hi) = radius_window(n, k);
    double nan = std::numeric_limits<double>::quiet_NaN();
    res.window_lo = nan;
    res.window_hi = nan;
    for (std::int64_t i = 0;; ++i) {
        double r = r_lo + double(i) * step;
        if (r > r_hi + 0.5 * step) break;
        if (!(r > 0.0 && r < 1.0)) continue;
        Model m = make_htorus_half(n, k, r, halved);
        IndexReport rep = build_index_report(m);
        res.rows.push_back({r, rep.strong_index, rep.weak_index, rep.lambda1, rep.lambda1_weak});
        if (rep.weak_index == n + 1) {
            if (std::isnan(res.window_lo)) res.window_lo = r;
            res.window_hi = r;
        }
    }
    if (std::isnan(res.window_lo)) {
        res.max_endpoint_error = std::numeric_limits<double>::infinity();
    } else {
        res.max_endpoint_error = std::max(std::abs(res.window_lo - res.analytic_lo),
                                          std::abs(res.window_hi - res.analytic_hi));
    }
    return res;
}

} // namespace hemispec
