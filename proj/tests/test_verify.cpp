#include <hemispec/models.hpp>
#include <hemispec/spectra.hpp>
#include <hemispec/verify.hpp>

#include <doctest.h>

#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace hemispec;

TEST_CASE("position and Gauss-map identities under finite differences") {
    SUBCASE("equator n=2: coordinates are degree-one eigenfunctions") {
        IdentityReport r = check_position_identities(make_equator(2), 50, 10, 42);
        CHECK(r.max_residual < 1e-6);
    }
    SUBCASE("minimal Clifford half n=2") {
        IdentityReport r = check_position_identities(make_clifford_half(2, 1), 50, 10, 42);
        CHECK(r.max_residual < 1e-6);
    }
    SUBCASE("H-torus n=3 k=2 r=0.6") {
        IdentityReport r = check_position_identities(make_htorus_half(3, 2, 0.6), 50, 10, 42);
        CHECK(r.max_residual < 1e-5);
    }
}

TEST_CASE("boundary derivatives along the conormal") {
    CHECK(check_boundary_identities(make_equator(2), 50, 42).max_residual < 1e-8);
    CHECK(check_boundary_identities(make_cap(2, 0.5), 50, 42).max_residual < 1e-6);
    CHECK(check_boundary_identities(make_htorus_half(2, 1, 0.7), 50, 42).max_residual < 1e-6);
}

TEST_CASE("Simons residuals vanish on the catalog") {
    CHECK(simons_residual(make_clifford_half(3, 1)).max_residual == 0.0);
    CHECK(simons_residual(make_equator(4)).max_residual == 0.0);
    CHECK(simons_residual(make_htorus_half(3, 2, 0.6)).max_residual < 1e-10);
    for (const Model& m : catalog_models(6)) {
        CAPTURE(describe(m));
        CHECK(simons_residual(m).max_residual < 1e-10);
    }
}

TEST_CASE("characteristic polynomial of the position/Gauss-map system") {
    SUBCASE("diagonal case") {
        CharPolyResult r = char_poly(2, 4.0, 0.0);
        CHECK(r.lambda_minus == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(r.lambda_plus == doctest::Approx(4.0).epsilon(1e-15));
    }
    SUBCASE("repeated root is rejected") {
        CHECK_THROWS_AS(char_poly(3, 3.0, 0.0), DegenerateInput);
    }
    SUBCASE("H-torus invariants match a dense eigensolver") {
        GeometricData g = geometric_data(make_htorus_half(2, 1, 0.6));
        CharPolyResult r = char_poly(2, g.normA2, g.H);
        Eigen::Matrix2d M;
        M << g.normA2, g.H, g.H, 2.0;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
        CHECK(r.lambda_minus == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
        CHECK(r.lambda_plus == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12));
    }
    SUBCASE("random sweep: roots, Vieta, discriminant") {
        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int s = 0; s < 10000; ++s) {
            int n = 2 + int(unit(rng) * 6);
            double H = 4.0 * unit(rng);
            double A2 = H * H / n + 0.1 + 8.0 * unit(rng);
            CharPolyResult r = char_poly(n, A2, H);
            double scale = std::max(1.0, (A2 + n) * (A2 + n));
            CHECK(std::abs(r.lambda_minus + r.lambda_plus - (A2 + n)) < 1e-12 * scale);
            CHECK(std::abs(r.lambda_minus * r.lambda_plus - (n * A2 - H * H)) < 1e-12 * scale);
            CHECK(r.discriminant == doctest::Approx((A2 - n) * (A2 - n) + 4 * H * H));
            CHECK(r.lambda_minus <= r.lambda_plus);
        }
    }
}

TEST_CASE("Alencar inequality for traceless tuples") {
    SUBCASE("n=2 tuple is the degenerate equality") {
        IdentityReport r = alencar_inequality({1.0, -1.0});
        CHECK(r.pass);
        CHECK(r.notes == "equality");
    }
    SUBCASE("stated equality tuple") {
        IdentityReport r = alencar_inequality({2.0, -1.0, -1.0});
        CHECK(r.pass);
        CHECK(r.notes == "equality");
    }
    SUBCASE("non-traceless input is rejected") {
        CHECK_THROWS_AS(alencar_inequality({1.0, 1.0}), NotTraceless);
    }
    SUBCASE("random sweep has no violations and exact witnesses") {
        IdentityReport r = alencar_suite(8, 20000, 42);
        CHECK(r.pass);
        CHECK(r.max_residual <= 1e-12);
    }
}

TEST_CASE("sharpened Kato inequality for Hessian fields") {
    SUBCASE("zero field") {
        std::vector<HarmonicMode> u;
        CHECK(kato_inequality_check(u, 2, 4).pass);
    }
    SUBCASE("single cosine mode attains the bound pointwise") {
        HarmonicMode mode;
        mode.freq = {1};
        mode.phase = {0.0};
        mode.amplitude = 1.0;
        mode.sign = +1;
        IdentityReport r = kato_inequality_check({mode}, 2, 8);
        CHECK(r.pass);
        // ratio 4n/(n+2) = 2 exactly on the equality family
        CHECK(r.notes.find("max ratio 2") != std::string::npos);
    }
    SUBCASE("random fields in dimensions 2..4") {
        IdentityReport r = kato_suite(4, 60, 5, 42);
        CHECK(r.pass);
    }
}

TEST_CASE("stability-gap polynomial and its positive root") {
    SUBCASE("H = 0 root is sqrt(n)") {
        for (int n = 2; n <= 9; ++n) {
            CHECK(std::abs(alpha_H(n, 0.0) - std::sqrt(double(n))) < 1e-14);
        }
    }
    SUBCASE("the root vanishes P_H on the k = n-1 torus family") {
        GeometricData g = geometric_data(make_htorus_half(3, 2, 0.6));
        CHECK(std::abs(p_H(3, g.H, std::sqrt(g.normA0_2))) < 1e-9);
        CHECK(alpha_H(3, g.H) == doctest::Approx(std::sqrt(g.normA0_2)).epsilon(1e-12));
    }
    SUBCASE("bisection oracle at n=4, H=1") {
        double root = oracles::bisect([&](double x) { return p_H(4, 1.0, x); }, 0.0, 10.0, 1e-13);
        CHECK(std::abs(alpha_H(4, 1.0) - root) < 1e-12);
    }
    SUBCASE("alpha_H decreases in H up to the turning point at H = n-2") {
        for (int n = 3; n <= 6; ++n) {
            double prev = alpha_H(n, 0.0);
            for (int i = 1; i <= 16; ++i) {
                double cur = alpha_H(n, (n - 2) * i / 16.0);
                CHECK(cur < prev);
                prev = cur;
            }
            // beyond it the root grows again (asymptotically like H/sqrt(n(n-1)))
            CHECK(alpha_H(n, 4.0 * (n - 2)) > alpha_H(n, double(n - 2)));
        }
    }
    SUBCASE("the statement-variant coefficient never passes the vanishing test") {
        for (int n = 3; n <= 6; ++n) {
            GeometricData g = geometric_data(make_htorus_half(n, n - 1, 0.6));
            CHECK(std::abs(p_H(n, g.H, std::sqrt(g.normA0_2), true)) > 1e-3);
        }
    }
}

TEST_CASE("first-eigenvalue bound, minimal case") {
    SUBCASE("Clifford halves attain -2n") {
        BoundReport r = lambda1_bound_minimal(make_clifford_half(3, 1));
        CHECK(r.lambda1 == -6.0);
        CHECK(r.bound == -6.0);
        CHECK(r.equality);
        CHECK(std::abs(r.slack) < 1e-12);
    }
    SUBCASE("equator reports the totally geodesic identity") {
        BoundReport r = lambda1_bound_minimal(make_equator(4));
        CHECK(r.lambda1 == -4.0);
        CHECK(r.bound == -4.0);
        // sanity: equators do not satisfy the -2n bound of the non-geodesic case
        CHECK(r.lambda1 > -8.0);
    }
    SUBCASE("CMC models are rejected") {
        CHECK_THROWS_AS(lambda1_bound_minimal(make_htorus_half(2, 1, 0.5)), NotApplicable);
    }
}

TEST_CASE("first-eigenvalue bound, CMC case") {
    SUBCASE("umbilical models report the exact first eigenvalue instead") {
        Model cap = make_cap(3, 0.5);
        CHECK_THROWS_AS(lambda1_bound_cmc(cap), NotApplicable);
        CHECK(umbilical_lambda1(cap) == -12.0); // -n/r^2 = -n(1+H^2/n^2)
    }
    SUBCASE("equality on the k = n-1 family") {
        BoundReport r = lambda1_bound_cmc(make_htorus_half(3, 2, 0.6));
        CHECK(r.equality);
        CHECK(std::abs(r.slack) < 1e-9);
    }
    SUBCASE("strict inequality off the k = n-1 family") {
        BoundReport r = lambda1_bound_cmc(make_htorus_half(3, 1, 0.4));
        CHECK(!r.equality);
        CHECK(r.slack > 1e-3);
    }
    SUBCASE("H <= 0 under the catalog orientation is outside the hypothesis") {
        // r > sqrt(k/n) flips the mean-curvature sign; the same surface is
        // covered by the (n-k, sqrt(1-r^2)) member with H > 0
        CHECK_THROWS_AS(lambda1_bound_cmc(make_htorus_half(3, 1, 0.6)), NotApplicable);
        BoundReport relabeled = lambda1_bound_cmc(make_htorus_half(3, 2, 0.8));
        CHECK(relabeled.equality);
    }
    SUBCASE("family scan: nonnegative slack, equality exactly at k = n-1") {
        CmcBoundScanResult scan = cmc_bound_scan(6, 0.01);
        CHECK(scan.min_slack >= -1e-9);
        CHECK(scan.equality_exactly_on_kn1);
        CHECK(scan.max_abs_ph_on_family < 1e-9);
        CHECK(scan.min_abs_ph_off_family > 1e-3);
    }
}

TEST_CASE("dichotomy of |A|^2 over the minimal members") {
    IdentityReport r2 = dichotomy_scan(2);
    CHECK(r2.pass);
    CHECK(r2.notes.find("0 2") != std::string::npos);
    IdentityReport r5 = dichotomy_scan(5);
    CHECK(r5.pass);
    CHECK(r5.notes.find("0 5") != std::string::npos);
    // |A|^2 tends to n along the H-torus family as r approaches sqrt(k/n)
    double target = std::sqrt(1.0 / 3.0);
    double prev_gap = 1e9;
    for (double d : {1e-2, 1e-4, 1e-6}) {
        double a2 = geometric_data(make_htorus_half(3, 1, target + d)).normA2;
        CHECK(std::abs(a2 - 3.0) < prev_gap);
        prev_gap = std::abs(a2 - 3.0);
    }
    CHECK(prev_gap < 1e-4);
}

TEST_CASE("suite runner aggregates pass/fail") {
    auto entries = run_verify_suites("alencar", 42, 5000, 10);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].ok);
    auto dich = run_verify_suites("dichotomy", 42);
    CHECK(dich.size() == 5);
    for (const auto& e : dich) CHECK(e.ok);
}
