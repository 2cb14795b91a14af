#include <hemispec/fem.hpp>
#include <hemispec/models.hpp>
#include <hemispec/spectra.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace hemispec;
using namespace hemispec::fem;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("hemisphere meshes") {
    Mesh m0 = mesh_hemisphere(0);
    CHECK(m0.num_vertices() == 5);
    CHECK(m0.num_cells() == 4);
    CHECK(m0.boundary_vertices.size() == 4);

    Mesh m3 = mesh_hemisphere(3);
    for (const auto& v : m3.vertices) CHECK(std::abs(v.norm() - 1.0) < 1e-15);

    Mesh m4 = mesh_hemisphere(4);
    CHECK(m4.total_area() == doctest::Approx(2.0 * kPi).epsilon(0.005));
    CHECK_THROWS(mesh_hemisphere(9));
}

TEST_CASE("flat half-torus chart meshes") {
    double r = std::sqrt(0.5);
    Mesh m = mesh_flat_half_torus(r, r, 8, 4);
    double w = 0.0, h = 0.0;
    for (const auto& v : m.vertices) {
        w = std::max(w, v.x());
        h = std::max(h, v.y());
    }
    CHECK(w == doctest::Approx(2.0 * kPi * r).epsilon(1e-14));
    CHECK(h == doctest::Approx(kPi * r).epsilon(1e-14));
    CHECK(m.periodic_pairs.size() == 5);
    // identification maps seam copies onto the first column, never onto slaves
    for (auto [slave, master] : m.periodic_pairs) {
        CHECK(slave != master);
        for (auto [s2, m2] : m.periodic_pairs) CHECK(master != s2);
    }
    CHECK_THROWS(mesh_flat_half_torus(r, r, 2, 4));

    SUBCASE("mass matrix integrates the chart area") {
        auto sys = assemble(m, 0.0);
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.dof);
        double area = ones.dot(sys.mass * ones);
        CHECK(area == doctest::Approx(2.0 * kPi * r * kPi * r).epsilon(1e-12));
    }
    SUBCASE("Laplace modes approach the closed-form values") {
        Mesh fine = mesh_flat_half_torus(r, r, 64, 32);
        auto sys = assemble(fine, 0.0);
        auto res = solve_lowest(sys.stiffness, sys.mass, 5);
        std::vector<double> expect = {0.0, 2.0, 2.0, 2.0, 4.0};
        for (int i = 1; i < 5; ++i) {
            CHECK(res.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(0.01));
        }
        CHECK(std::abs(res.eigenvalues[0]) < 1e-10);
    }
}

TEST_CASE("assembly") {
    Mesh mesh = mesh_hemisphere(4);
    auto sys = assemble(mesh, 2.0);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.dof);

    SUBCASE("constants span the stiffness kernel") {
        CHECK((sys.stiffness * ones).norm() < 1e-12 * sys.dof);
    }
    SUBCASE("constant Rayleigh quotient of the Jacobi form is -potential") {
        SpMat K = sys.jacobi_matrix();
        double rq = ones.dot(K * ones) / ones.dot(sys.mass * ones);
        CHECK(rq == doctest::Approx(-2.0).epsilon(1e-12));
    }
    SUBCASE("degenerate cells are rejected") {
        Mesh bad = mesh;
        bad.vertices[bad.cells[0][1]] = bad.vertices[bad.cells[0][0]];
        CHECK_THROWS_AS(assemble(bad, 0.0), DegenerateCell);
    }
    SUBCASE("constant Rayleigh quotient is -potential on every model mesh") {
        for (const Model& m : {make_equator(2), make_cap(2, 0.5), make_cap(2, 0.8),
                               make_clifford_half(2, 1), make_htorus_half(2, 1, 0.6)}) {
            CAPTURE(describe(m));
            auto [msh, pot] = model_mesh(m, 2);
            auto s = assemble(msh, pot);
            Eigen::VectorXd one = Eigen::VectorXd::Ones(s.dof);
            double rq = one.dot(s.jacobi_matrix() * one) / one.dot(s.mass * one);
            CHECK(std::abs(rq + pot) < 1e-12 * std::max(1.0, pot));
        }
    }
}

TEST_CASE("generalized eigensolver") {
    SUBCASE("identity problem") {
        Mesh mesh = mesh_rectangle(1.0, 1.0, 4, 4, false);
        auto sys = assemble(mesh, 0.0);
        auto res = solve_lowest(sys.mass, sys.mass, 3);
        for (double v : res.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("unit square Neumann Laplacian against the classical spectrum") {
        Mesh mesh = mesh_rectangle(1.0, 1.0, 64, 64, false);
        auto sys = assemble(mesh, 0.0);
        SolveOptions opts;
        opts.count = 4;
        opts.dense_cutoff = 1000; // exercise the shift-invert path
        opts.shift = -1.0;
        auto res = solve_lowest(sys.stiffness, sys.mass, opts);
        CHECK(std::abs(res.eigenvalues[0]) < 1e-9);
        CHECK(res.eigenvalues[1] == doctest::Approx(kPi * kPi).epsilon(0.01));
        CHECK(res.eigenvalues[2] == doctest::Approx(kPi * kPi).epsilon(0.01));
        CHECK(res.eigenvalues[3] == doctest::Approx(2.0 * kPi * kPi).epsilon(0.01));
        for (double r : res.residual_norms) CHECK(r <= 1e-8);
    }
    SUBCASE("dense and sparse paths agree") {
        Mesh mesh = mesh_flat_half_torus(0.6, 0.8, 16, 8);
        auto sys = assemble(mesh, 4.0);
        SpMat K = sys.jacobi_matrix();
        auto dense = solve_lowest(K, sys.mass, 6);
        SolveOptions opts;
        opts.count = 6;
        opts.dense_cutoff = 10;
        opts.shift = -5.0;
        auto sparse = solve_lowest(K, sys.mass, opts);
        for (int i = 0; i < 6; ++i) {
            CHECK(dense.eigenvalues[i] == doctest::Approx(sparse.eigenvalues[i]).epsilon(1e-9));
        }
        for (double r : dense.residual_norms) CHECK(r <= 1e-8);
        for (double r : sparse.residual_norms) CHECK(r <= 1e-8);
    }
    SUBCASE("singular mass is rejected") {
        SpMat K(3, 3), M(3, 3);
        K.setIdentity();
        M.setIdentity();
        M.coeffRef(2, 2) = 0.0;
        CHECK_THROWS_AS(solve_lowest(K, M, 2), MassNotSPD);
    }
}

TEST_CASE("hemisphere eigenvalues at refinement five") {
    auto [mesh, pot] = model_mesh(make_equator(2), 5);
    auto sys = assemble(mesh, pot);
    SolveOptions opts;
    opts.count = 4;
    opts.shift = -pot - 1.0;
    auto res = solve_lowest(sys.jacobi_matrix(), sys.mass, opts);
    CHECK(res.eigenvalues[0] == doctest::Approx(-2.0).epsilon(0.005));
    CHECK(std::abs(res.eigenvalues[1]) < 5e-3);
    CHECK(std::abs(res.eigenvalues[2]) < 5e-3);
}

TEST_CASE("gap-aware Morse index") {
    SUBCASE("equator") {
        FemIndex fi = fem_index(make_equator(2), 5);
        CHECK(fi.num_negative == 1);
        CHECK(fi.num_negative_weak == 0);
    }
    SUBCASE("umbilical cap r=0.7") {
        FemIndex fi = fem_index(make_cap(2, 0.7), 5);
        CHECK(fi.num_negative == 1);
        CHECK(fi.num_negative_weak == 0);
    }
    SUBCASE("half Clifford at 128x64 adjudicates the index") {
        FemIndex fi = fem_index(make_clifford_half(2, 1), 4);
        CHECK(fi.eigen.dof == 8320);
        CHECK(fi.num_negative == 4);
        CHECK(fi.num_negative_weak == 3);
        IndexReport engine = strong_index(make_clifford_half(2, 1));
        CHECK(engine.strong_index == fi.num_negative);
        CHECK(engine.paper_claim == 3);
    }
    SUBCASE("deflated count drops exactly the constant mode across models") {
        for (const Model& m : {make_equator(2), make_cap(2, 0.5), make_clifford_half(2, 1)}) {
            FemIndex fi = fem_index(m, 3);
            CHECK(fi.num_negative_weak == fi.num_negative - 1);
        }
    }
    SUBCASE("ambiguous spectral gap raises") {
        // at r = 0.47 the exact lines -1.28 and -0.68 sit inside the
        // coarse-mesh ambiguity band (-3 eps, -eps)
        CHECK_THROWS_AS(fem_index(make_htorus_half(2, 1, 0.47), 1), GapTooSmall);
    }
    SUBCASE("dimension guard") {
        CHECK_THROWS_AS(fem_index(make_equator(3), 4), InvalidModel);
        CHECK_THROWS_AS(model_mesh(make_equator(2), 9), InvalidModel);
    }
}

TEST_CASE("Galerkin monotonicity under nested flat refinement") {
    Model m = make_htorus_half(2, 1, 0.6);
    std::vector<double> prev;
    for (int refine : {0, 1, 2}) {
        auto [mesh, pot] = model_mesh(m, refine);
        auto sys = assemble(mesh, pot);
        SolveOptions opts;
        opts.count = 6;
        opts.shift = -pot - 1.0;
        auto res = solve_lowest(sys.jacobi_matrix(), sys.mass, opts);
        if (!prev.empty()) {
            for (int i = 0; i < 6; ++i) CHECK(res.eigenvalues[i] <= prev[i] + 1e-9);
        }
        prev = res.eigenvalues;
    }
}

TEST_CASE("convergence studies") {
    SUBCASE("hemisphere error ratios per refinement level") {
        auto rows = convergence_study(make_equator(2), {3, 4, 5});
        for (size_t i = 1; i < rows.size(); ++i) {
            double ratio = rows[i - 1].err_first / rows[i].err_first;
            CHECK(ratio > 3.0);
            CHECK(ratio < 5.0);
        }
        // the constant mode is reproduced exactly at every level
        for (const auto& row : rows) CHECK(std::abs(row.lambda1 + 2.0) < 1e-10);
    }
    SUBCASE("flat chart doubling shows second order") {
        auto rows = convergence_study(make_clifford_half(2, 1), {0, 1, 2, 3});
        CHECK(observed_order(rows) == doctest::Approx(2.0).epsilon(0.15));
    }
    SUBCASE("H-torus first eigenvalue is the constant-mode value") {
        auto rows = convergence_study(make_htorus_half(2, 1, 0.6), {1, 2});
        for (const auto& row : rows) {
            CHECK(row.lambda1 == doctest::Approx(-(1.0 / 0.36 + 1.0 / 0.64)).epsilon(1e-10));
        }
    }
}

TEST_CASE("OFF round trip") {
    SUBCASE("flat chart with periodic annotation") {
        Mesh m = mesh_flat_half_torus(0.6, 0.8, 8, 4);
        std::stringstream ss;
        write_off(ss, m);
        CHECK(ss.str().find("# periodic x ") != std::string::npos);
        Mesh back = read_off(ss);
        CHECK(back.num_vertices() == m.num_vertices());
        CHECK(back.num_cells() == m.num_cells());
        CHECK(back.metric_mode == MetricMode::FlatChart);
        CHECK(back.periodic_pairs.size() == m.periodic_pairs.size());
        CHECK(back.boundary_vertices.size() == m.boundary_vertices.size());
        CHECK(back.total_area() == doctest::Approx(m.total_area()).epsilon(1e-14));
    }
    SUBCASE("embedded hemisphere") {
        Mesh m = mesh_hemisphere(2);
        std::stringstream ss;
        write_off(ss, m);
        Mesh back = read_off(ss);
        CHECK(back.metric_mode == MetricMode::Embedded);
        CHECK(back.boundary_vertices.size() == m.boundary_vertices.size());
    }
    SUBCASE("matrix market export") {
        Mesh m = mesh_rectangle(1.0, 1.0, 2, 2, false);
        auto sys = assemble(m, 0.0);
        std::stringstream ss;
        write_matrix_market(ss, sys.stiffness);
        CHECK(ss.str().rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
    }
}
