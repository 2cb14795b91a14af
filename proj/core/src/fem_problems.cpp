#include "hemispec/fem.hpp"

#include "hemispec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hemispec::fem {

std::pair<Mesh, double> model_mesh(const Model& m, int refine) {
    validate(m);
    if (m.n != 2) throw InvalidModel("finite elements are provided for n = 2 models only");
    const double potential = geometric_data(m).potential;
    if (!m.is_torus()) {
        if (refine < 0 || refine > 8) throw InvalidModel("hemisphere refine must lie in 0..8");
        Mesh mesh = mesh_hemisphere(refine);
        if (m.kind == ModelKind::UmbilicalCap) mesh = scaled(mesh, m.r);
        return {std::move(mesh), potential};
    }
    if (refine < 0 || refine > 6) throw InvalidModel("torus refine must lie in 0..6");
    auto [r1, r2] = factor_radii(m);
    // the halved factor carries the Neumann interval of the chart
    double r_periodic = m.halved == HalvedFactor::Second ? r1 : r2;
    double r_neumann = m.halved == HalvedFactor::Second ? r2 : r1;
    int nx = 8 << refine, ny = 4 << refine;
    return {mesh_flat_half_torus(r_periodic, r_neumann, nx, ny), potential};
}

namespace {

int count_below(const std::vector<double>& values, double bound) {
    return static_cast<int>(
        std::count_if(values.begin(), values.end(), [&](double v) { return v < bound; }));
}

} // namespace

FemIndex fem_index(const Model& m, int refine) {
    auto [mesh, potential] = model_mesh(m, refine);
    AssembledSystem sys = assemble(mesh, potential);
    SpMat K = sys.jacobi_matrix();
    const double h = mesh.max_edge_length();

    SolveOptions opts;
    opts.shift = -potential - 1.0;
    opts.count = 10;

    // discretization error of the modes near zero: their Laplace value is
    // exactly the potential, and P1 eigenvalue error scales like h^2 mu^2
    const double eps_gap = std::max(1e-3, h * h * potential * potential / 10.0);

    EigenResult strong;
    for (;;) {
        strong = solve_lowest(K, sys.mass, opts);
        // need to have seen clearly positive spectrum to certify the count
        if (strong.eigenvalues.back() > 3.0 * eps_gap || opts.count >= sys.dof) break;
        opts.count = std::min(sys.dof, opts.count * 2);
    }
    for (double v : strong.eigenvalues) {
        if (v > -3.0 * eps_gap && v < -eps_gap) {
            std::ostringstream os;
            os << "eigenvalue " << v << " inside the ambiguous band (-3e, -e), e = " << eps_gap;
            throw GapTooSmall(os.str());
        }
    }

    SolveOptions weak_opts = opts;
    weak_opts.deflate = Eigen::VectorXd::Ones(sys.dof);
    EigenResult weak = solve_lowest(K, sys.mass, weak_opts);

    FemIndex out;
    out.num_negative = count_below(strong.eigenvalues, -eps_gap);
    out.num_negative_weak = count_below(weak.eigenvalues, -eps_gap);
    out.epsilon_gap = eps_gap;
    out.eigen = std::move(strong);
    return out;
}

std::vector<ConvergenceRow> convergence_study(const Model& m, const std::vector<int>& refinements) {
    // reference values: the first three distinct closed-form eigenvalues
    const double potential = geometric_data(m).potential;
    Spectrum exact = jacobi_spectrum_below(m, potential + 1.0);
    if (exact.lines.size() < 3) exact = jacobi_spectrum_below(m, 3.0 * potential + 10.0);
    const double ref1 = exact.lines[1].value;
    const double ref2 = exact.lines[2].value;
    const auto mult1 = exact.lines[1].multiplicity;

    std::vector<ConvergenceRow> rows;
    for (int refine : refinements) {
        auto [mesh, pot] = model_mesh(m, refine);
        AssembledSystem sys = assemble(mesh, pot);
        SolveOptions opts;
        opts.count = static_cast<int>(2 + mult1 + exact.lines[2].multiplicity);
        opts.shift = -pot - 1.0;
        EigenResult res = solve_lowest(sys.jacobi_matrix(), sys.mass, opts);

        ConvergenceRow row;
        row.refine = refine;
        row.dof = sys.dof;
        row.h = mesh.max_edge_length();
        row.lambda1 = res.eigenvalues[0];
        row.err_first = std::abs(res.eigenvalues[1] - ref1);
        row.err_second = std::abs(res.eigenvalues[1 + mult1] - ref2);
        if (!rows.empty()) {
            const auto& prev = rows.back();
            row.order = std::log(prev.err_first / row.err_first) / std::log(prev.h / row.h);
        }
        rows.push_back(row);
    }
    return rows;
}

double observed_order(const std::vector<ConvergenceRow>& rows) {
    // least-squares slope of log(err) against log(h)
    int n = static_cast<int>(rows.size());
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        double x = std::log(r.h), y = std::log(r.err_first);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace hemispec::fem
