#include "hemispec/models.hpp"

#include "hemispec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hemispec {

namespace {

constexpr double kPi = std::numbers::pi;

// splitmix64: tiny, platform-independent generator for the samplers.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// d-th derivative of sin/cos via the quarter-turn shift.
double sin_d(double t, int d) { return std::sin(t + 0.5 * kPi * d); }
double cos_d(double t, int d) { return std::cos(t + 0.5 * kPi * d); }

// Hyperspherical coordinates on S^m: omega_A = prod_{i<A} sin(t_i) * cos(t_A),
// with cos(t_A) dropped for A = m+1.  `d` holds per-angle derivative counts.
double coord_deriv(int m, const double* t, const int* d, int A /*1-based*/) {
    double v = 1.0;
    for (int i = 1; i <= m; ++i) {
        int cnt = d[i - 1];
        if (i < A) {
            v *= sin_d(t[i - 1], cnt);
        } else if (i == A && A <= m) {
            v *= cos_d(t[i - 1], cnt);
        } else if (cnt > 0) {
            return 0.0;
        }
    }
    return v;
}

Eigen::VectorXd sphere_point(int m, const double* t) {
    Eigen::VectorXd w(m + 1);
    std::vector<int> d(std::max(m, 1), 0);
    for (int A = 1; A <= m + 1; ++A) w[A - 1] = coord_deriv(m, t, d.data(), A);
    return w;
}

// Placement of the chart pieces into ambient coordinates.
struct Layout {
    // factor dims and radii; factor 1 carries multiplicity-k curvature.
    int dim1 = 0, dim2 = 0;
    double r1 = 0.0, r2 = 0.0;
    int offset1 = 0, offset2 = 0; // ambient offsets of the factor blocks
    bool cap = false;             // cap/equator layout (single factor + axis)
    int axis = 0;                 // ambient index of the cap axis coordinate
    double axis_height = 0.0;     // sqrt(1 - r^2) for caps
};

Layout layout_of(const Model& m) {
    Layout L;
    if (m.is_torus()) {
        auto [r1, r2] = factor_radii(m);
        L.dim1 = m.k;
        L.dim2 = m.n - m.k;
        L.r1 = r1;
        L.r2 = r2;
        if (m.halved == HalvedFactor::Second) {
            L.offset1 = 0;
            L.offset2 = L.dim1 + 1;
        } else {
            L.offset2 = 0;
            L.offset1 = L.dim2 + 1;
        }
    } else {
        L.cap = true;
        L.dim1 = m.n;
        L.r1 = m.r;
        L.offset1 = 0;
        L.axis = m.n;
        L.axis_height = std::sqrt(std::max(0.0, (1.0 - m.r) * (1.0 + m.r)));
    }
    return L;
}

void check_chart_domain(const Model& m, const Eigen::VectorXd& u) {
    const int n = m.n;
    if (u.size() != n) throw OutOfChart("chart point has wrong dimension");
    auto check_factor = [&](int offset, int dim, bool halved) {
        for (int i = 0; i < dim; ++i) {
            double t = u[offset + i];
            bool last = (i == dim - 1);
            double hi = last && !halved ? 2.0 * kPi : kPi;
            if (!(t >= 0.0 && t <= hi)) throw OutOfChart("chart angle out of range");
        }
    };
    if (m.is_torus()) {
        bool first_halved = m.halved == HalvedFactor::First;
        check_factor(0, m.k, first_halved);
        check_factor(m.k, n - m.k, !first_halved);
    } else {
        check_factor(0, n, true);
    }
}

} // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Equator: return "Equator";
        case ModelKind::UmbilicalCap: return "UmbilicalCap";
        case ModelKind::MinimalCliffordHalf: return "MinimalCliffordHalf";
        case ModelKind::HTorusHalf: return "HTorusHalf";
    }
    return "?";
}

const char* to_string(HalvedFactor h) {
    return h == HalvedFactor::First ? "First" : "Second";
}

void validate(const Model& m) {
    if (m.n < 2) throw InvalidModel("n must be >= 2");
    switch (m.kind) {
        case ModelKind::Equator:
            break;
        case ModelKind::UmbilicalCap:
            if (!(m.r > 0.0 && m.r <= 1.0)) throw InvalidModel("cap radius must lie in (0, 1]");
            if (m.r == 1.0) throw InvalidModel("cap with r = 1 must be normalized to Equator");
            break;
        case ModelKind::MinimalCliffordHalf:
            if (m.k < 1 || m.k > m.n - 1) throw InvalidModel("k must satisfy 1 <= k <= n-1");
            break;
        case ModelKind::HTorusHalf:
            if (m.k < 1 || m.k > m.n - 1) throw InvalidModel("k must satisfy 1 <= k <= n-1");
            if (!(m.r > 0.0 && m.r < 1.0)) throw InvalidModel("torus radius must lie in (0, 1)");
            break;
    }
}

Model make_equator(int n) {
    Model m{ModelKind::Equator, n, 0, 1.0, HalvedFactor::Second};
    validate(m);
    return m;
}

Model make_cap(int n, double r) {
    if (r == 1.0) return make_equator(n);
    Model m{ModelKind::UmbilicalCap, n, 0, r, HalvedFactor::Second};
    validate(m);
    return m;
}

Model make_clifford_half(int n, int k, HalvedFactor halved) {
    Model m{ModelKind::MinimalCliffordHalf, n, k, 0.0, halved};
    if (n >= 2 && k >= 1 && k <= n - 1) m.r = std::sqrt(double(k) / double(n));
    validate(m);
    return m;
}

Model make_htorus_half(int n, int k, double r, HalvedFactor halved) {
    Model m{ModelKind::HTorusHalf, n, k, r, halved};
    validate(m);
    return m;
}

std::string describe(const Model& m) {
    std::ostringstream os;
    os << to_string(m.kind) << "(n=" << m.n;
    if (m.is_torus()) os << ",k=" << m.k;
    if (m.kind == ModelKind::UmbilicalCap || m.kind == ModelKind::HTorusHalf) os << ",r=" << m.r;
    if (m.is_torus() && m.halved == HalvedFactor::First) os << ",halved=First";
    os << ")";
    return os.str();
}

std::pair<double, double> factor_radii(const Model& m) {
    if (!m.is_torus()) throw InvalidModel("factor_radii requires a torus model");
    if (m.kind == ModelKind::MinimalCliffordHalf) {
        return {std::sqrt(double(m.k) / m.n), std::sqrt(double(m.n - m.k) / m.n)};
    }
    return {m.r, std::sqrt(1.0 - m.r * m.r)};
}

double GeometricData::traceA0_cubed() const {
    double s = 0.0;
    for (const auto& pc : principal_curvatures) {
        double d = pc.value - H / n;
        s += pc.multiplicity * d * d * d;
    }
    return s;
}

GeometricData geometric_data(const Model& m) {
    validate(m);
    GeometricData g;
    g.n = m.n;
    const double n = m.n;
    switch (m.kind) {
        case ModelKind::Equator: {
            g.H = 0.0;
            g.normA2 = 0.0;
            g.normA0_2 = 0.0;
            g.principal_curvatures = {{0.0, m.n}};
            g.potential = n;
            break;
        }
        case ModelKind::UmbilicalCap: {
            double s = m.r * m.r;
            double kappa = std::sqrt(1.0 - s) / m.r;
            g.H = n * kappa;
            g.normA2 = n * (1.0 - s) / s;
            g.normA0_2 = 0.0;
            g.principal_curvatures = {{kappa, m.n}};
            g.potential = n / s;
            break;
        }
        case ModelKind::MinimalCliffordHalf: {
            double k = m.k, nk = m.n - m.k;
            g.H = 0.0;
            g.normA2 = n;
            g.normA0_2 = n;
            g.principal_curvatures = {{std::sqrt(nk / k), m.k}, {-std::sqrt(k / nk), m.n - m.k}};
            g.potential = 2.0 * n;
            break;
        }
        case ModelKind::HTorusHalf: {
            double s = m.r * m.r;
            double t = 1.0 - s;
            double k = m.k, nk = m.n - m.k;
            double kappa1 = std::sqrt(t) / m.r;
            double kappa2 = -m.r / std::sqrt(t);
            g.H = k * kappa1 + nk * kappa2;
            g.normA2 = k * t / s + nk * s / t;
            g.normA0_2 = g.normA2 - g.H * g.H / n;
            g.principal_curvatures = {{kappa1, m.k}, {kappa2, m.n - m.k}};
            g.potential = k / s + nk / t;
            break;
        }
    }
    return g;
}

int chart_dim(const Model& m) { return m.n; }

EmbedResult embed(const Model& m, const Eigen::VectorXd& u) {
    validate(m);
    check_chart_domain(m, u);
    const Layout L = layout_of(m);
    const int N = m.n + 2;
    EmbedResult out;
    out.x = Eigen::VectorXd::Zero(N);
    out.nu = Eigen::VectorXd::Zero(N);
    if (L.cap) {
        Eigen::VectorXd w = sphere_point(L.dim1, u.data());
        for (int A = 0; A <= L.dim1; ++A) {
            out.x[A == L.dim1 ? m.n + 1 : A] = L.r1 * w[A];
            out.nu[A == L.dim1 ? m.n + 1 : A] = -L.axis_height * w[A];
        }
        out.x[L.axis] = L.axis_height;
        out.nu[L.axis] = L.r1;
    } else {
        Eigen::VectorXd w1 = sphere_point(L.dim1, u.data());
        Eigen::VectorXd w2 = sphere_point(L.dim2, u.data() + L.dim1);
        for (int A = 0; A <= L.dim1; ++A) {
            out.x[L.offset1 + A] = L.r1 * w1[A];
            out.nu[L.offset1 + A] = -L.r2 * w1[A];
        }
        for (int A = 0; A <= L.dim2; ++A) {
            out.x[L.offset2 + A] = L.r2 * w2[A];
            out.nu[L.offset2 + A] = L.r1 * w2[A];
        }
    }
    return out;
}

ChartJet chart_jet(const Model& m, const Eigen::VectorXd& u) {
    validate(m);
    check_chart_domain(m, u);
    const Layout L = layout_of(m);
    const int n = m.n;
    const int N = n + 2;
    ChartJet jet;
    jet.x = Eigen::VectorXd::Zero(N);
    jet.dx = Eigen::MatrixXd::Zero(N, n);
    jet.d2x.assign(n, Eigen::MatrixXd::Zero(N, n));

    // fills the block of one factor: ambient rows offset..offset+dim, chart
    // columns at `param_offset`, scaled by `radius`.
    auto fill_factor = [&](int dim, double radius, int param_offset,
                           auto&& ambient_row) {
        const double* t = u.data() + param_offset;
        std::vector<int> d(std::max(dim, 1), 0);
        for (int A = 1; A <= dim + 1; ++A) {
            int row = ambient_row(A - 1);
            jet.x[row] = radius * coord_deriv(dim, t, d.data(), A);
            for (int i = 0; i < dim; ++i) {
                d[i] = 1;
                jet.dx(row, param_offset + i) = radius * coord_deriv(dim, t, d.data(), A);
                for (int j = i; j < dim; ++j) {
                    d[j] += 1;
                    double v = radius * coord_deriv(dim, t, d.data(), A);
                    jet.d2x[param_offset + i](row, param_offset + j) = v;
                    jet.d2x[param_offset + j](row, param_offset + i) = v;
                    d[j] -= 1;
                }
                d[i] = 0;
            }
        }
    };

    if (L.cap) {
        fill_factor(L.dim1, L.r1, 0, [&](int A) { return A == L.dim1 ? m.n + 1 : A; });
        jet.x[L.axis] = L.axis_height;
    } else {
        fill_factor(L.dim1, L.r1, 0, [&](int A) { return L.offset1 + A; });
        fill_factor(L.dim2, L.r2, L.dim1, [&](int A) { return L.offset2 + A; });
    }
    return jet;
}

ChartSampler::ChartSampler(const Model& m, std::uint64_t seed) : model_(m), state_(seed) {
    validate(m);
    // decorrelate nearby seeds
    for (int i = 0; i < 4; ++i) splitmix64(state_);
}

double ChartSampler::next_uniform() { return uniform01(state_); }

int ChartSampler::boundary_axis() const {
    if (!model_.is_torus()) return model_.n - 1;
    return model_.halved == HalvedFactor::First ? model_.k - 1 : model_.n - 1;
}

double ChartSampler::inward_sign(const Eigen::VectorXd& u) const {
    return u[boundary_axis()] < 0.5 * kPi ? 1.0 : -1.0;
}

namespace {
// Margin keeping samples away from chart singularities and the boundary,
// so second-order stencils stay accurate at 64-bit precision.
constexpr double kAngleMargin = 0.9;
} // namespace

Eigen::VectorXd ChartSampler::interior_point() {
    const int n = model_.n;
    Eigen::VectorXd u(n);
    auto fill = [&](int offset, int dim, bool halved) {
        for (int i = 0; i < dim; ++i) {
            bool last = (i == dim - 1);
            double lo = kAngleMargin, hi = kPi - kAngleMargin;
            if (last && !halved) {
                lo = 0.3;
                hi = 2.0 * kPi - 0.3;
            }
            u[offset + i] = lo + (hi - lo) * next_uniform();
        }
    };
    if (model_.is_torus()) {
        bool first_halved = model_.halved == HalvedFactor::First;
        fill(0, model_.k, first_halved);
        fill(model_.k, n - model_.k, !first_halved);
    } else {
        fill(0, n, true);
    }
    return u;
}

Eigen::VectorXd ChartSampler::boundary_point() {
    Eigen::VectorXd u = interior_point();
    u[boundary_axis()] = next_uniform() < 0.5 ? 0.0 : kPi;
    return u;
}

double boundary_normal_curvature(const Model& m) {
    GeometricData g = geometric_data(m);
    if (!m.is_torus()) return g.principal_curvatures[0].value;
    return m.halved == HalvedFactor::First ? g.principal_curvatures[0].value
                                           : g.principal_curvatures[1].value;
}

IdentityReport free_boundary_check(const Model& m, int samples, std::uint64_t seed) {
    if (samples < 1) throw InvalidModel("samples must be >= 1");
    ChartSampler sampler(m, seed);
    const int axis = sampler.boundary_axis();
    const int last = m.n + 1;
    double max_dev = 0.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd u = sampler.boundary_point();
        EmbedResult e = embed(m, u);
        max_dev = std::max(max_dev, std::abs(e.x[last]));
        max_dev = std::max(max_dev, std::abs(e.nu[last]));

        // numeric conormal from the chart tangent along the boundary axis
        double sgn = sampler.inward_sign(u);
        Eigen::VectorXd inward = sgn * chart_jet(m, u).dx.col(axis);
        Eigen::VectorXd eta = -inward.normalized();
        double sign = eta[last] >= 0.0 ? 1.0 : -1.0;
        Eigen::VectorXd dev = eta;
        dev[last] -= sign;
        max_dev = std::max(max_dev, dev.norm());
    }
    return make_identity_report("free_boundary:" + describe(m), samples, max_dev, 1e-10);
}

std::vector<Model> identity_suite_models() {
    return {
        make_equator(2),
        make_equator(3),
        make_equator(4),
        make_cap(2, 0.5),
        make_cap(3, 0.7),
        make_cap(4, 0.6),
        make_clifford_half(2, 1),
        make_clifford_half(2, 1, HalvedFactor::First),
        make_clifford_half(3, 1),
        make_clifford_half(4, 2),
        make_htorus_half(2, 1, 0.6),
        make_htorus_half(3, 2, 0.6),
        make_htorus_half(4, 2, 0.55),
        make_htorus_half(4, 3, 0.7),
    };
}

std::vector<Model> catalog_models(int n_max) {
    std::vector<Model> out;
    for (int n = 2; n <= n_max; ++n) {
        out.push_back(make_equator(n));
        out.push_back(make_cap(n, 0.5));
        out.push_back(make_cap(n, 0.8));
        for (int k = 1; k <= n - 1; ++k) {
            out.push_back(make_clifford_half(n, k));
            out.push_back(make_htorus_half(n, k, 0.6));
        }
    }
    return out;
}

} // namespace hemispec
