#include "hemispec/fem.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hemispec::fem {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Eigen::VectorXd random_vector(int n, std::uint64_t seed) {
    std::uint64_t state = seed;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = 2.0 * (double(splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
    }
    return v;
}

void fill_residuals(const SpMat& K, const SpMat& M, const Eigen::MatrixXd& vectors,
                    const std::vector<double>& values, EigenResult& res) {
    res.residual_norms.clear();
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        Eigen::VectorXd v = vectors.col(i);
        Eigen::VectorXd mv = M * v;
        res.residual_norms.push_back((K * v - values[i] * mv).norm() / mv.norm());
    }
}

struct Deflation {
    bool active = false;
    Eigen::VectorXd w;   // M d
    double coeff = 0.0;  // beta / (d^T M d)
};

Deflation make_deflation(const SpMat& K, const SpMat& M, const Eigen::VectorXd& d) {
    Deflation defl;
    if (d.size() == 0) return defl;
    defl.active = true;
    defl.w = M * d;
    double s = d.dot(defl.w);
    double mu = d.dot(K * d) / s; // current eigenvalue of the deflated direction
    double beta = std::abs(mu) + 1.0;
    defl.coeff = beta / s;
    return defl;
}

EigenResult solve_dense(const SpMat& K, const SpMat& M, const SolveOptions& opts) {
    const int n = static_cast<int>(K.rows());
    Eigen::MatrixXd Kd = Eigen::MatrixXd(K);
    Eigen::MatrixXd Md = Eigen::MatrixXd(M);
    Deflation defl = make_deflation(K, M, opts.deflate);
    if (defl.active) Kd += defl.coeff * defl.w * defl.w.transpose();

    Eigen::LLT<Eigen::MatrixXd> llt(Md);
    if (llt.info() != Eigen::Success) throw MassNotSPD("mass matrix is not SPD");

    // C = L^-1 K L^-T, then standard symmetric eigendecomposition
    Eigen::MatrixXd Y = llt.matrixL().solve(Kd);
    Eigen::MatrixXd C = llt.matrixL().solve(Y.transpose()).transpose();
    C = 0.5 * (C + C.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed");

    const int count = std::min(opts.count, n);
    EigenResult res;
    res.dof = n;
    Eigen::MatrixXd vectors(n, count);
    for (int i = 0; i < count; ++i) {
        res.eigenvalues.push_back(es.eigenvalues()(i));
        vectors.col(i) = llt.matrixU().solve(es.eigenvectors().col(i));
    }
    if (defl.active) {
        // residuals are reported against the deflated operator
        res.residual_norms.clear();
        for (int i = 0; i < count; ++i) {
            Eigen::VectorXd v = vectors.col(i);
            Eigen::VectorXd mv = Md * v;
            res.residual_norms.push_back((Kd * v - res.eigenvalues[i] * mv).norm() / mv.norm());
        }
    } else {
        fill_residuals(K, M, vectors, res.eigenvalues, res);
    }
    res.num_negative = static_cast<int>(
        std::count_if(res.eigenvalues.begin(), res.eigenvalues.end(),
                      [](double v) { return v < 0.0; }));
    res.lambda1 = res.eigenvalues.empty() ? 0.0 : res.eigenvalues.front();
    return res;
}

// Crude lower bound for the smallest pencil eigenvalue, used only when the
// caller did not supply a shift: a few Lanczos steps on L^-1 K L^-T.
double estimate_lambda_min(const SpMat& K, const SpMat& M, std::uint64_t seed) {
    Eigen::SimplicialLLT<SpMat> mllt(M);
    if (mllt.info() != Eigen::Success) throw MassNotSPD("mass matrix is not SPD");
    const int n = static_cast<int>(K.rows());
    const int m = std::min(n, 30);
    Eigen::MatrixXd Q(n, m + 1);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd q = random_vector(n, seed);
    q /= q.norm();
    Q.col(0) = q;
    double prev_beta = 0.0;
    int steps = 0;
    for (int j = 0; j < m; ++j) {
        // w = L^-1 K L^-T q
        Eigen::VectorXd w = mllt.matrixL().solve(
            Eigen::VectorXd(K * mllt.matrixU().solve(Q.col(j))));
        alpha[j] = Q.col(j).dot(w);
        w -= alpha[j] * Q.col(j);
        if (j > 0) w -= prev_beta * Q.col(j - 1);
        for (int i = 0; i <= j; ++i) w -= Q.col(i).dot(w) * Q.col(i);
        ++steps;
        double b = w.norm();
        beta[j] = b;
        prev_beta = b;
        if (b < 1e-12) break;
        Q.col(j + 1) = w / b;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
    for (int j = 0; j < steps; ++j) {
        T(j, j) = alpha[j];
        if (j + 1 < steps) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    double lo = es.eigenvalues()(0);
    double spread = es.eigenvalues()(steps - 1) - lo;
    return lo - 0.05 * spread - 1.0;
}

EigenResult solve_shift_invert(const SpMat& K, const SpMat& M, const SolveOptions& opts,
                               double sigma) {
    const int n = static_cast<int>(K.rows());
    const int count = std::min(opts.count, n);
    Deflation defl = make_deflation(K, M, opts.deflate);

    SpMat A = K - sigma * M;
    Eigen::SimplicialLLT<SpMat> allt(A);
    if (allt.info() != Eigen::Success) {
        throw ConvergenceFailure("shifted operator not SPD; shift above the spectrum?");
    }
    // Sherman-Morrison wrapper for the rank-one deflation term
    Eigen::VectorXd z;
    double denom = 1.0;
    if (defl.active) {
        z = allt.solve(defl.w);
        denom = 1.0 + defl.coeff * defl.w.dot(z);
    }
    auto solve_shifted = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd x = allt.solve(y);
        if (defl.active) x -= (defl.coeff * defl.w.dot(x) / denom) * z;
        return x;
    };

    std::string diag;
    for (int m_iters = std::max(3 * count + 40, 80); m_iters <= std::max(8 * count + 320, 640);
         m_iters *= 2) {
        const int m = std::min(m_iters, n);
        Eigen::MatrixXd Q(n, m + 1);
        std::vector<Eigen::VectorXd> MQ; // cached M q_i for reorthogonalization
        Eigen::VectorXd alpha(m), beta(m);

        Eigen::VectorXd q = random_vector(n, opts.seed);
        Eigen::VectorXd mq = M * q;
        q /= std::sqrt(q.dot(mq));
        Q.col(0) = q;
        MQ.push_back(M * q);

        int steps = 0;
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd w = solve_shifted(MQ[j]);
            alpha[j] = w.dot(MQ[j]);
            // full reorthogonalization in the M-inner product
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= j; ++i) w -= MQ[i].dot(w) * Q.col(i);
            }
            Eigen::VectorXd mw = M * w;
            double b = std::sqrt(std::max(0.0, w.dot(mw)));
            beta[j] = b;
            ++steps;
            if (b < 1e-13) break;
            Q.col(j + 1) = w / b;
            MQ.push_back(mw / b);
        }

        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
        for (int j = 0; j < steps; ++j) {
            T(j, j) = alpha[j];
            if (j + 1 < steps) T(j, j + 1) = T(j + 1, j) = beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        if (es.info() != Eigen::Success) throw ConvergenceFailure("tridiagonal solve failed");
        if (steps < count) {
            diag = "Krylov space exhausted before enough Ritz pairs";
            continue;
        }

        // theta descending <-> lambda = sigma + 1/theta ascending
        std::vector<int> order(steps);
        for (int i = 0; i < steps; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });

        EigenResult res;
        res.dof = n;
        Eigen::MatrixXd vectors(n, count);
        bool usable = true;
        for (int i = 0; i < count; ++i) {
            double theta = es.eigenvalues()(order[i]);
            if (!(theta > 0.0)) {
                usable = false;
                break;
            }
            res.eigenvalues.push_back(sigma + 1.0 / theta);
            Eigen::VectorXd v = Q.leftCols(steps) * es.eigenvectors().col(order[i]);
            Eigen::VectorXd mv = M * v;
            vectors.col(i) = v / std::sqrt(v.dot(mv));
        }
        if (!usable) {
            diag = "nonpositive Ritz value of the inverted operator";
            continue;
        }

        // residuals against the (possibly deflated) pencil
        res.residual_norms.clear();
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
            Eigen::VectorXd v = vectors.col(i);
            Eigen::VectorXd mv = M * v;
            Eigen::VectorXd kv = K * v;
            if (defl.active) kv += defl.coeff * defl.w.dot(v) * defl.w;
            double r = (kv - res.eigenvalues[i] * mv).norm() / mv.norm();
            res.residual_norms.push_back(r);
            worst = std::max(worst, r);
        }
        if (worst > opts.residual_tol) {
            std::ostringstream os;
            os << "worst residual " << worst << " after " << steps << " iterations";
            diag = os.str();
            continue;
        }
        res.num_negative = static_cast<int>(
            std::count_if(res.eigenvalues.begin(), res.eigenvalues.end(),
                          [](double v) { return v < 0.0; }));
        res.lambda1 = res.eigenvalues.front();
        return res;
    }
    throw ConvergenceFailure("shift-invert Lanczos did not converge: " + diag);
}

} // namespace

EigenResult solve_lowest(const SpMat& K, const SpMat& M, int count) {
    SolveOptions opts;
    opts.count = count;
    opts.shift = std::numeric_limits<double>::quiet_NaN(); // estimate if needed
    return solve_lowest(K, M, opts);
}

EigenResult solve_lowest(const SpMat& K, const SpMat& M, const SolveOptions& opts) {
    if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows()) {
        throw std::invalid_argument("matrix dimensions disagree");
    }
    if (opts.count < 1) throw std::invalid_argument("count must be >= 1");
    if (K.rows() <= opts.dense_cutoff) return solve_dense(K, M, opts);
    double sigma = opts.shift;
    if (std::isnan(sigma)) sigma = estimate_lambda_min(K, M, opts.seed ^ 0x5851f42d4c957f2dull);
    return solve_shift_invert(K, M, opts, sigma);
}

} // namespace hemispec::fem
