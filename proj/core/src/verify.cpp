#include "hemispec/verify.hpp"

#include "hemispec/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace hemispec {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// --- chart geometry ---------------------------------------------------------

struct ChartGeometry {
    Eigen::MatrixXd g;      // metric
    Eigen::MatrixXd g_inv;
    std::vector<Eigen::MatrixXd> gamma; // gamma[k](i,j) = Gamma^k_ij
};

ChartGeometry chart_geometry(const ChartJet& jet) {
    const int n = static_cast<int>(jet.dx.cols());
    ChartGeometry geo;
    geo.g = jet.dx.transpose() * jet.dx;
    geo.g_inv = geo.g.inverse();
    // dg[l](i,j) = d_l g_ij
    std::vector<Eigen::MatrixXd> dg(n);
    for (int l = 0; l < n; ++l) {
        dg[l] = jet.d2x[l].transpose() * jet.dx;
        dg[l] = (dg[l] + dg[l].transpose()).eval();
    }
    geo.gamma.assign(n, Eigen::MatrixXd::Zero(n, n));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l) {
                    s += geo.g_inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                }
                geo.gamma[k](i, j) = 0.5 * s;
            }
        }
    }
    return geo;
}

// Laplace-Beltrami of a vector-valued chart function by second-order central
// differences against analytic metric data, one Richardson level.
template <typename F>
Eigen::VectorXd fd_laplacian(const F& f, const Eigen::VectorXd& u, const ChartGeometry& geo,
                             double h0) {
    const int n = static_cast<int>(u.size());
    const Eigen::VectorXd f0 = f(u);
    const int N = static_cast<int>(f0.size());

    auto level = [&](double h) {
        Eigen::MatrixXd grad(N, n);
        std::vector<Eigen::VectorXd> plus(n), minus(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd up = u, um = u;
            up[i] += h;
            um[i] -= h;
            plus[i] = f(up);
            minus[i] = f(um);
            grad.col(i) = (plus[i] - minus[i]) / (2.0 * h);
        }
        Eigen::VectorXd lap = Eigen::VectorXd::Zero(N);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd hess_ii = (plus[i] + minus[i] - 2.0 * f0) / (h * h);
            Eigen::VectorXd corr = Eigen::VectorXd::Zero(N);
            for (int k = 0; k < n; ++k) corr += geo.gamma[k](i, i) * grad.col(k);
            lap += geo.g_inv(i, i) * (hess_ii - corr);
            for (int j = i + 1; j < n; ++j) {
                Eigen::VectorXd upp = u, umm = u, upm = u, ump = u;
                upp[i] += h; upp[j] += h;
                umm[i] -= h; umm[j] -= h;
                upm[i] += h; upm[j] -= h;
                ump[i] -= h; ump[j] += h;
                Eigen::VectorXd hess_ij = (f(upp) + f(umm) - f(upm) - f(ump)) / (4.0 * h * h);
                Eigen::VectorXd corr_ij = Eigen::VectorXd::Zero(N);
                for (int k = 0; k < n; ++k) corr_ij += geo.gamma[k](i, j) * grad.col(k);
                lap += 2.0 * geo.g_inv(i, j) * (hess_ij - corr_ij);
            }
        }
        return lap;
    };

    Eigen::VectorXd coarse = level(h0);
    Eigen::VectorXd fine = level(0.5 * h0);
    return (4.0 * fine - coarse) / 3.0;
}

// Analytic Laplace-Beltrami of the embedding itself (used as the inner
// operator of the composed identity so the outer stencil stays stable).
Eigen::VectorXd analytic_laplacian_x(const Model& m, const Eigen::VectorXd& u) {
    ChartJet jet = chart_jet(m, u);
    ChartGeometry geo = chart_geometry(jet);
    const int n = static_cast<int>(u.size());
    Eigen::VectorXd lap = Eigen::VectorXd::Zero(jet.x.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd corr = Eigen::VectorXd::Zero(jet.x.size());
            for (int k = 0; k < n; ++k) corr += geo.gamma[k](i, j) * jet.dx.col(k);
            lap += geo.g_inv(i, j) * (jet.d2x[i].col(j) - corr);
        }
    }
    return lap;
}

Eigen::VectorXd random_unit_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd a(dim);
    for (int i = 0; i < dim; ++i) a[i] = gauss(rng);
    return a.normalized();
}

} // namespace

IdentityReport make_identity_report(std::string name, std::int64_t samples,
                                    double max_residual, double tolerance, std::string notes) {
    IdentityReport r;
    r.name = std::move(name);
    r.samples = samples;
    r.max_residual = max_residual;
    r.tolerance = tolerance;
    r.pass = max_residual <= tolerance;
    r.notes = std::move(notes);
    return r;
}

IdentityReport check_position_identities(const Model& m, int points, int directions,
                                         std::uint64_t seed) {
    if (points < 1 || directions < 1) throw InvalidModel("points and directions must be >= 1");
    const GeometricData g = geometric_data(m);
    const double H = g.H, A2 = g.normA2, c = g.potential;
    const double n = m.n;
    const int N = m.n + 2;
    // step chosen so rounding in the second-difference stencils stays a
    // decade under the 1e-6 example tolerances after Richardson
    const double h = 2.5e-4;

    ChartSampler sampler(m, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    double max_res = 0.0;

    for (int p = 0; p < points; ++p) {
        Eigen::VectorXd u = sampler.interior_point();
        ChartJet jet = chart_jet(m, u);
        ChartGeometry geo = chart_geometry(jet);
        EmbedResult e = embed(m, u);

        Eigen::VectorXd lap_x =
            fd_laplacian([&](const Eigen::VectorXd& q) { return embed(m, q).x; }, u, geo, h);
        Eigen::VectorXd lap_nu =
            fd_laplacian([&](const Eigen::VectorXd& q) { return embed(m, q).nu; }, u, geo, h);
        // inner Laplacian analytic, outer stencil numerical
        Eigen::VectorXd inner = analytic_laplacian_x(m, u);
        Eigen::VectorXd lap_lap_x =
            fd_laplacian([&](const Eigen::VectorXd& q) { return analytic_laplacian_x(m, q); },
                         u, geo, h);

        for (int d = 0; d < directions; ++d) {
            Eigen::VectorXd a = random_unit_vector(N, rng);
            double fx = e.x.dot(a), fnu = e.nu.dot(a);
            double Dx = lap_x.dot(a), Dnu = lap_nu.dot(a);
            double Jx = Dx + c * fx, Jnu = Dnu + c * fnu;
            double rhs5 = (n * A2 - H * H) * fx;

            max_res = std::max(max_res, std::abs(Dx - (H * fnu - n * fx)));
            max_res = std::max(max_res, std::abs(Dnu + A2 * fnu - H * fx));
            max_res = std::max(max_res, std::abs(Jx - (A2 * fx + H * fnu)));
            max_res = std::max(max_res, std::abs(Jnu - (n * fnu + H * fx)));
            max_res = std::max(max_res, std::abs(n * Jx - H * Jnu - rhs5));
            // J(-Delta<x,a>) = (n|A|^2-H^2)<x,a>
            double J_of_neg_lap = -(lap_lap_x.dot(a) + c * inner.dot(a));
            max_res = std::max(max_res, std::abs(J_of_neg_lap - rhs5));
        }
    }
    return make_identity_report("position_identities:" + describe(m),
                                std::int64_t(points) * directions, max_res, 1e-5);
}

IdentityReport check_boundary_identities(const Model& m, int points, std::uint64_t seed) {
    if (points < 1) throw InvalidModel("points must be >= 1");
    const int N = m.n + 2;
    const double Aee = boundary_normal_curvature(m);
    const double h = 1e-5;

    ChartSampler sampler(m, seed);
    std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dull);
    const int axis = sampler.boundary_axis();
    double max_res = 0.0;

    for (int p = 0; p < points; ++p) {
        Eigen::VectorXd u = sampler.boundary_point();
        EmbedResult e = embed(m, u);
        ChartJet jet = chart_jet(m, u);
        double speed = jet.dx.col(axis).norm();
        double sgn = sampler.inward_sign(u);
        Eigen::VectorXd eta = (-sgn / speed) * jet.dx.col(axis);

        // outward derivative of a vector-valued function on the chart,
        // one-sided second order with one Richardson level
        auto outward_deriv = [&](auto&& f) {
            Eigen::VectorXd f0 = f(u);
            auto level = [&](double step) {
                Eigen::VectorXd u1 = u, u2 = u;
                u1[axis] += sgn * step;
                u2[axis] += 2.0 * sgn * step;
                return ((-3.0 * f0 + 4.0 * f(u1) - f(u2)) / (2.0 * step)).eval();
            };
            Eigen::VectorXd inward = (4.0 * level(0.5 * h) - level(h)) / 3.0;
            return (-inward / speed).eval();
        };

        Eigen::VectorXd dx_eta = outward_deriv([&](const Eigen::VectorXd& q) { return embed(m, q).x; });
        Eigen::VectorXd dnu_eta = outward_deriv([&](const Eigen::VectorXd& q) { return embed(m, q).nu; });

        for (int d = 0; d < 8; ++d) {
            Eigen::VectorXd a = random_unit_vector(N, rng);
            max_res = std::max(max_res, std::abs(dx_eta.dot(a) - eta.dot(a)));
            max_res = std::max(max_res, std::abs(dnu_eta.dot(a) + Aee * eta.dot(a)));
        }
        // Neumann compatibility for the coordinate directions e_1..e_{n+1}
        for (int i = 0; i < m.n + 1; ++i) {
            max_res = std::max(max_res, std::abs(dnu_eta[i] + Aee * eta[i]));
        }
    }
    return make_identity_report("boundary_identities:" + describe(m), points, max_res, 1e-5);
}

IdentityReport simons_residual(const Model& m) {
    const GeometricData g = geometric_data(m);
    const double n = m.n;
    double res;
    std::string note;
    if (g.H == 0.0) {
        res = std::abs(g.normA2 * (n - g.normA2));
        note = "minimal form |A|^2 (n - |A|^2)";
    } else {
        double nf = n + g.H * g.H / n;
        res = std::abs((nf - g.normA0_2) * g.normA0_2 + g.H * g.traceA0_cubed());
        note = "cmc form (n(1+H^2/n^2) - |B|^2)|B|^2 + H tr(B^3), B traceless";
    }
    return make_identity_report("simons_residual:" + describe(m), 1, res, 1e-10, note);
}

CharPolyResult char_poly(int n, double normA2, double H) {
    if (n < 2) throw InvalidDimension("n must be >= 2");
    double diff = normA2 - n;
    double disc = diff * diff + 4.0 * H * H;
    double scale = std::max({1.0, normA2, double(n)});
    if (disc <= 1e-28 * scale * scale) {
        throw DegenerateInput("repeated root: |A|^2 = n and H = 0");
    }
    CharPolyResult r;
    r.discriminant = disc;
    double s = normA2 + n;
    double root = std::sqrt(disc);
    r.lambda_plus = 0.5 * (s + root);            // larger root, no cancellation
    r.lambda_minus = (n * normA2 - H * H) / r.lambda_plus;
    auto gamma = [&](double lambda) { return (n - lambda + H) / (normA2 - lambda + H); };
    r.gamma_minus = gamma(r.lambda_minus);
    r.gamma_plus = gamma(r.lambda_plus);
    return r;
}

IdentityReport alencar_inequality(const std::vector<double>& tuple) {
    const int n = static_cast<int>(tuple.size());
    if (n < 2) throw NotTraceless("need at least two entries");
    double sum = 0.0, abs_sum = 0.0;
    for (double a : tuple) {
        sum += a;
        abs_sum += std::abs(a);
    }
    if (std::abs(sum) > 1e-12 * std::max(1.0, abs_sum)) {
        throw NotTraceless("entries must sum to zero");
    }
    double s2 = 0.0, s3 = 0.0;
    for (double a : tuple) {
        s2 += a * a;
        s3 += a * a * a;
    }
    double bound = (n - 2) / std::sqrt(double(n) * (n - 1)) * std::pow(s2, 1.5);
    double violation = std::max(0.0, std::abs(s3) - bound);
    bool equality = std::abs(std::abs(s3) - bound) <= 1e-12 * std::max(1.0, bound);
    return make_identity_report("alencar", 1, violation, 1e-12 * std::max(1.0, bound),
                                equality ? "equality" : "strict");
}

IdentityReport alencar_suite(int n_max, std::int64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double max_violation = 0.0; // normalized by (sum a^2)^{3/2}
    for (int n = 2; n <= n_max; ++n) {
        for (std::int64_t s = 0; s < samples; ++s) {
            std::vector<double> a(n);
            double mean = 0.0;
            for (double& v : a) {
                v = gauss(rng);
                mean += v;
            }
            mean /= n;
            double s2 = 0.0, s3 = 0.0;
            for (double& v : a) {
                v -= mean;
                s2 += v * v;
                s3 += v * v * v;
            }
            double scale = std::pow(s2, 1.5);
            double bound = (n - 2) / std::sqrt(double(n) * (n - 1)) * scale;
            max_violation = std::max(max_violation, (std::abs(s3) - bound) / std::max(1.0, scale));
        }
    }
    // equality witnesses: n-1 entries -1 and one entry n-1
    double max_witness_dev = 0.0;
    for (int n = 2; n <= n_max; ++n) {
        std::vector<double> a(n, -1.0);
        a[0] = n - 1.0;
        double s2 = 0.0, s3 = 0.0;
        for (double v : a) {
            s2 += v * v;
            s3 += v * v * v;
        }
        double bound = (n - 2) / std::sqrt(double(n) * (n - 1)) * std::pow(s2, 1.5);
        max_witness_dev = std::max(max_witness_dev, std::abs(std::abs(s3) - bound));
    }
    double worst = std::max(std::max(max_violation, 0.0), max_witness_dev);
    return make_identity_report("alencar_suite", samples * (n_max - 1), worst, 1e-12,
                                "witness deviation " + fmt(max_witness_dev));
}

namespace {

// order-3 analytic derivative tables of a sum of harmonic Fourier modes
struct FieldJet3 {
    Eigen::MatrixXd hess;                    // n x n
    std::vector<Eigen::MatrixXd> third;      // third[k](i,j) = u_,ijk
};

FieldJet3 field_jet(const std::vector<HarmonicMode>& modes, int n,
                    const Eigen::VectorXd& point) {
    FieldJet3 jet;
    jet.hess = Eigen::MatrixXd::Zero(n, n);
    jet.third.assign(n, Eigen::MatrixXd::Zero(n, n));
    for (const auto& mode : modes) {
        double kappa2 = 0.0;
        for (int f : mode.freq) kappa2 += double(f) * f;
        double kappa = std::sqrt(kappa2);
        // derivative of one mode for per-coordinate derivative counts
        auto deriv = [&](const std::vector<int>& d) {
            double v = mode.amplitude;
            for (int i = 0; i < n - 1; ++i) {
                double f = mode.freq[i];
                v *= std::pow(f, d[i]) *
                     std::cos(f * point[i] + mode.phase[i] + 0.5 * kPi * d[i]);
            }
            double s = mode.sign >= 0 ? 1.0 : -1.0;
            v *= std::pow(s * kappa, d[n - 1]) * std::exp(s * kappa * point[n - 1]);
            return v;
        };
        std::vector<int> d(n, 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                d[i] += 1;
                d[j] += 1;
                jet.hess(i, j) += deriv(d);
                for (int k = 0; k < n; ++k) {
                    d[k] += 1;
                    jet.third[k](i, j) += deriv(d);
                    d[k] -= 1;
                }
                d[i] -= 1;
                d[j] -= 1;
            }
        }
    }
    return jet;
}

} // namespace

IdentityReport kato_inequality_check(const std::vector<HarmonicMode>& u, int n, int grid) {
    if (n < 2) throw InvalidDimension("n must be >= 2");
    if (grid < 1) throw InvalidDimension("grid must be >= 1");
    for (const auto& mode : u) {
        if (static_cast<int>(mode.freq.size()) != n - 1 ||
            static_cast<int>(mode.phase.size()) != n - 1) {
            throw InvalidDimension("mode tables must have n-1 periodic frequencies");
        }
    }
    const double factor = 4.0 * n / (n + 2.0);
    const double y_max = kPi * std::sqrt(0.5); // axial extent of the chart
    double max_violation = 0.0;
    double max_ratio = 0.0;
    std::int64_t samples = 0;

    std::vector<int> idx(n, 0);
    while (true) {
        Eigen::VectorXd point(n);
        for (int i = 0; i < n - 1; ++i) point[i] = 2.0 * kPi * idx[i] / grid;
        point[n - 1] = y_max * idx[n - 1] / std::max(1, grid - 1);

        FieldJet3 jet = field_jet(u, n, point);
        double trace = jet.hess.trace();
        Eigen::MatrixXd T = jet.hess - (trace / n) * Eigen::MatrixXd::Identity(n, n);
        std::vector<double> trace3(n);
        for (int k = 0; k < n; ++k) trace3[k] = jet.third[k].trace();

        double T2 = T.squaredNorm();
        double gradT2 = 0.0, lhs = 0.0;
        for (int k = 0; k < n; ++k) {
            Eigen::MatrixXd dT = jet.third[k] - (trace3[k] / n) * Eigen::MatrixXd::Identity(n, n);
            gradT2 += dT.squaredNorm();
            double wk = 2.0 * (T.array() * dT.array()).sum();
            lhs += wk * wk;
        }
        double rhs = factor * T2 * gradT2;
        max_violation = std::max(max_violation, (lhs - rhs) / std::max(1.0, T2 * gradT2));
        if (T2 * gradT2 > 1e-14) max_ratio = std::max(max_ratio, lhs / (T2 * gradT2));
        ++samples;

        int c = n - 1;
        while (c >= 0 && ++idx[c] >= grid) idx[c--] = 0;
        if (c < 0) break;
    }
    return make_identity_report("kato", samples, std::max(0.0, max_violation), 1e-10,
                                "max ratio " + fmt(max_ratio) + " of bound " + fmt(factor));
}

IdentityReport kato_suite(int n_max, int fields, int grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> freq(-3, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double max_violation = 0.0;
    std::int64_t samples = 0;
    for (int f = 0; f < fields; ++f) {
        int n = 2 + f % (n_max - 1);
        int num_modes = 1 + f % 3;
        std::vector<HarmonicMode> u;
        for (int j = 0; j < num_modes; ++j) {
            HarmonicMode mode;
            mode.freq.resize(n - 1);
            mode.phase.resize(n - 1);
            bool all_zero = true;
            for (int i = 0; i < n - 1; ++i) {
                mode.freq[i] = freq(rng);
                all_zero = all_zero && mode.freq[i] == 0;
                mode.phase[i] = 2.0 * kPi * unit(rng);
            }
            if (all_zero) mode.freq[0] = 1;
            mode.amplitude = 0.5 + 1.5 * unit(rng);
            if (unit(rng) < 0.5) mode.amplitude = -mode.amplitude;
            mode.sign = unit(rng) < 0.5 ? -1 : +1;
            u.push_back(std::move(mode));
        }
        IdentityReport rep = kato_inequality_check(u, n, grid);
        max_violation = std::max(max_violation, rep.max_residual);
        samples += rep.samples;
    }
    return make_identity_report("kato_suite", samples, max_violation, 1e-10);
}

double p_H(int n, double H, double x, bool statement_variant) {
    if (n < 2) throw InvalidDimension("n must be >= 2");
    double denom = statement_variant ? std::sqrt(double(n) - 1.0)
                                     : std::sqrt(double(n) * (n - 1));
    double c1 = (n - 2) * H / denom;
    double c0 = n + H * H / n; // n (1 + H^2/n^2)
    return x * x + c1 * x - c0;
}

double alpha_H(int n, double H, bool statement_variant) {
    if (n < 2) throw InvalidDimension("n must be >= 2");
    if (H < 0.0) throw DegenerateInput("alpha_H requires H >= 0");
    double denom = statement_variant ? std::sqrt(double(n) - 1.0)
                                     : std::sqrt(double(n) * (n - 1));
    double c1 = (n - 2) * H / denom;
    double c0 = n + H * H / n;
    return 2.0 * c0 / (c1 + std::sqrt(c1 * c1 + 4.0 * c0));
}

BoundReport lambda1_bound_minimal(const Model& m) {
    BoundReport r;
    r.family_params = m;
    if (m.kind == ModelKind::MinimalCliffordHalf) {
        r.lambda1 = -geometric_data(m).potential; // -2n, constant mode
        r.bound = -2.0 * m.n;
    } else if (m.kind == ModelKind::Equator) {
        // totally geodesic case: lambda1 = -n, certified as an identity
        r.lambda1 = -geometric_data(m).potential;
        r.bound = -double(m.n);
    } else {
        throw NotApplicable("minimal bound applies to minimal models only");
    }
    r.slack = r.bound - r.lambda1;
    r.equality = std::abs(r.slack) < 1e-9;
    return r;
}

double umbilical_lambda1(const Model& m) {
    if (m.kind != ModelKind::Equator && m.kind != ModelKind::UmbilicalCap) {
        throw NotApplicable("umbilical lambda1 requires an umbilical model");
    }
    return -geometric_data(m).potential; // -n(1 + H^2/n^2) = -n/r^2
}

BoundReport lambda1_bound_cmc(const Model& m) {
    if (m.kind != ModelKind::HTorusHalf) {
        throw NotApplicable("cmc bound applies to H-torus models; umbilical models have "
                            "lambda1 = -n(1+H^2/n^2)");
    }
    GeometricData g = geometric_data(m);
    if (!(g.H > 0.0)) {
        throw NotApplicable("cmc bound requires H > 0 under the catalog orientation");
    }
    const double n = m.n;
    const double nf = n + g.H * g.H / n;
    const double a0 = std::sqrt(g.normA0_2);
    BoundReport r;
    r.family_params = m;
    r.lambda1 = -(g.normA0_2 + nf);
    r.bound = -2.0 * nf + (n - 2) * g.H / std::sqrt(n * (n - 1)) * a0;
    r.slack = r.bound - r.lambda1;
    r.equality = std::abs(r.slack) < 1e-9;
    return r;
}

CmcBoundScanResult cmc_bound_scan(int n_max, double r_step) {
    CmcBoundScanResult res;
    res.min_slack = std::numeric_limits<double>::infinity();
    res.min_abs_ph_off_family = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= n_max; ++n) {
        for (int k = 1; k <= n - 1; ++k) {
            for (int i = 1;; ++i) {
                double r = i * r_step;
                if (r >= 1.0 - 1e-12) break;
                Model m = make_htorus_half(n, k, r);
                GeometricData g = geometric_data(m);
                if (!(g.H > 1e-9)) continue; // outside the H > 0 hypothesis
                BoundReport rep = lambda1_bound_cmc(m);
                res.min_slack = std::min(res.min_slack, rep.slack);
                if (rep.equality != (k == n - 1)) res.equality_exactly_on_kn1 = false;
                double ph = std::abs(p_H(n, g.H, std::sqrt(g.normA0_2)));
                if (k == n - 1) {
                    res.max_abs_ph_on_family = std::max(res.max_abs_ph_on_family, ph);
                } else {
                    res.min_abs_ph_off_family = std::min(res.min_abs_ph_off_family, ph);
                }
                res.reports.push_back(std::move(rep));
            }
        }
    }
    return res;
}

IdentityReport dichotomy_scan(int n) {
    if (n < 2) throw InvalidDimension("n must be >= 2");
    std::vector<double> attained;
    attained.push_back(geometric_data(make_equator(n)).normA2);
    for (int k = 1; k <= n - 1; ++k) {
        attained.push_back(geometric_data(make_clifford_half(n, k)).normA2);
        attained.push_back(
            geometric_data(make_htorus_half(n, k, std::sqrt(double(k) / n))).normA2);
    }
    double max_res = 0.0;
    std::vector<double> distinct;
    for (double v : attained) {
        max_res = std::max(max_res, std::min(std::abs(v), std::abs(v - n)));
        bool seen = false;
        for (double d : distinct) seen = seen || std::abs(d - v) < 1e-9;
        if (!seen) distinct.push_back(v);
    }
    std::sort(distinct.begin(), distinct.end());
    std::string notes = "attained |A|^2:";
    for (double d : distinct) notes += " " + fmt(d);
    return make_identity_report("dichotomy:n=" + std::to_string(n),
                                static_cast<std::int64_t>(attained.size()), max_res, 1e-12,
                                notes);
}

namespace {

SuiteEntry identity_entry(IdentityReport r) {
    SuiteEntry e;
    e.type = "identity";
    e.ok = r.pass;
    e.identity = std::move(r);
    return e;
}

SuiteEntry bound_entry(BoundReport r) {
    SuiteEntry e;
    e.type = "bound";
    e.ok = r.slack >= -1e-9;
    e.bound = std::move(r);
    return e;
}

IdentityReport charpoly_random_suite(std::int64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double max_res = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        int n = 2 + int(unit(rng) * 7);
        double H = 5.0 * unit(rng);
        double A2 = H * H / n + 0.1 + 10.0 * unit(rng);
        if (std::abs(A2 - n) < 1e-3 && H < 1e-3) continue;
        CharPolyResult r = char_poly(n, A2, H);
        double scale = std::max(1.0, A2 + n);
        auto rel = [&](double v) { return std::abs(v) / (scale * scale); };
        // root residuals and Vieta identities
        max_res = std::max(max_res, rel(r.lambda_minus * r.lambda_minus -
                                        (A2 + n) * r.lambda_minus + n * A2 - H * H));
        max_res = std::max(max_res, rel(r.lambda_plus * r.lambda_plus -
                                        (A2 + n) * r.lambda_plus + n * A2 - H * H));
        max_res = std::max(max_res, std::abs(r.lambda_minus + r.lambda_plus - (A2 + n)) / scale);
        max_res = std::max(max_res,
                           std::abs(r.lambda_minus * r.lambda_plus - (n * A2 - H * H)) /
                               (scale * scale));
        // (1, gamma_±) diagonalizes [[A2, H], [H, n]] with the crossed pairing
        if (std::isfinite(r.gamma_plus) && std::isfinite(r.gamma_minus)) {
            Eigen::Matrix2d M;
            M << A2, H, H, n;
            Eigen::Vector2d vp(1.0, r.gamma_minus), vm(1.0, r.gamma_plus);
            max_res = std::max(max_res,
                               (M * vp - r.lambda_plus * vp).norm() / (scale * vp.norm()));
            max_res = std::max(max_res,
                               (M * vm - r.lambda_minus * vm).norm() / (scale * vm.norm()));
        }
    }
    return make_identity_report("charpoly_random", samples, max_res, 1e-12,
                                "roots, Vieta, eigenvector pairing (crossed)");
}

IdentityReport ph_suite() {
    double max_res = 0.0;
    // P_H(alpha_H) residual across an (n, H) grid, and the H = 0 closed form
    for (int n = 2; n <= 11; ++n) {
        for (int i = 0; i <= 9; ++i) {
            double H = 0.5 * i;
            double a = alpha_H(n, H);
            max_res = std::max(max_res, std::abs(p_H(n, H, a)));
        }
        max_res = std::max(max_res, std::abs(alpha_H(n, 0.0) - std::sqrt(double(n))) / 1e-2);
    }
    // strict decrease in H on [0, n-2]; the root turns around at H = n-2
    for (int n = 3; n <= 6; ++n) {
        double prev = alpha_H(n, 0.0);
        for (int i = 1; i <= 20; ++i) {
            double cur = alpha_H(n, (n - 2) * i / 20.0);
            if (cur >= prev) max_res = std::max(max_res, 1.0);
            prev = cur;
        }
    }
    // the statement-variant coefficient never vanishes on the k = n-1 family
    for (int n = 3; n <= 6; ++n) {
        GeometricData g = geometric_data(make_htorus_half(n, n - 1, 0.6));
        double v = std::abs(p_H(n, g.H, std::sqrt(g.normA0_2), true));
        if (v < 1e-3) max_res = std::max(max_res, 1.0);
    }
    return make_identity_report("ph_alpha", 100, max_res, 1e-12,
                                "P_H(alpha_H) residual; alpha(n,0) = sqrt(n); monotone in H");
}

} // namespace

std::vector<SuiteEntry> run_verify_suites(const std::string& suite, std::uint64_t seed,
                                          std::int64_t alencar_samples, int kato_fields) {
    std::vector<SuiteEntry> out;
    auto want = [&](const char* name) { return suite == "all" || suite == name; };

    if (want("identities")) {
        for (const Model& m : identity_suite_models()) {
            out.push_back(identity_entry(check_position_identities(m, 100, 10, seed)));
        }
    }
    if (want("boundary")) {
        for (const Model& m : identity_suite_models()) {
            out.push_back(identity_entry(check_boundary_identities(m, 100, seed)));
        }
    }
    if (want("freeboundary")) {
        for (const Model& m : identity_suite_models()) {
            out.push_back(identity_entry(free_boundary_check(m, 100, seed)));
        }
    }
    if (want("simons")) {
        for (const Model& m : catalog_models(6)) {
            out.push_back(identity_entry(simons_residual(m)));
        }
    }
    if (want("charpoly")) {
        out.push_back(identity_entry(charpoly_random_suite(10000, seed)));
    }
    if (want("alencar")) {
        out.push_back(identity_entry(alencar_suite(8, alencar_samples, seed)));
    }
    if (want("kato")) {
        out.push_back(identity_entry(kato_suite(4, kato_fields, 6, seed)));
    }
    if (want("ph")) {
        out.push_back(identity_entry(ph_suite()));
    }
    if (want("dichotomy")) {
        for (int n = 2; n <= 6; ++n) out.push_back(identity_entry(dichotomy_scan(n)));
    }
    if (want("bounds")) {
        for (int n = 2; n <= 6; ++n) {
            out.push_back(bound_entry(lambda1_bound_minimal(make_equator(n))));
            for (int k = 1; k <= n - 1; ++k) {
                out.push_back(bound_entry(lambda1_bound_minimal(make_clifford_half(n, k))));
            }
        }
        CmcBoundScanResult scan = cmc_bound_scan(6, 0.01);
        double slack_violation = std::max(0.0, -scan.min_slack);
        double family_violation = std::max(
            {slack_violation, scan.max_abs_ph_on_family,
             scan.equality_exactly_on_kn1 ? 0.0 : 1.0,
             scan.min_abs_ph_off_family > 1e-3 ? 0.0 : 1.0});
        out.push_back(identity_entry(make_identity_report(
            "bounds_cmc_scan", static_cast<std::int64_t>(scan.reports.size()),
            family_violation, 1e-9,
            "min slack " + fmt(scan.min_slack) + ", equality exactly on k=n-1: " +
                (scan.equality_exactly_on_kn1 ? "yes" : "no"))));
    }
    return out;
}

} // namespace hemispec
