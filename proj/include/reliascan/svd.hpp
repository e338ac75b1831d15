#ifndef RELIASCAN_SVD_HPP_
#define RELIASCAN_SVD_HPP_

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/Sparse>

#include "reliascan/errors.hpp"
#include "reliascan/term_doc_matrix.hpp"

namespace reliascan {

// Top-k singular triplets of the term-document matrix. Columns of
// term_factors/doc_factors are orthonormal; singular values are positive
// and non-increasing. k may come back smaller than requested when the
// matrix has lower numerical rank.
struct SVDResult {
    int k = 0;
    Eigen::MatrixXd term_factors;        // terms x k   (U_k)
    Eigen::VectorXd singular_values;     // k           (diag of Sigma_k)
    Eigen::MatrixXd doc_factors;         // docs  x k   (V_k)

    // Term loadings U_k * Sigma_k: the coordinates rotation operates on.
    Eigen::MatrixXd scaled_term_loadings() const {
        return term_factors * singular_values.asDiagonal();
    }
};

inline Eigen::SparseMatrix<double> to_eigen_sparse(const TermDocMatrix& m) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(m.entries.size());
    for (const auto& e : m.entries) triplets.emplace_back(e.row, e.col, e.value);
    Eigen::SparseMatrix<double> s(long(m.rows()), long(m.cols()));
    s.setFromTriplets(triplets.begin(), triplets.end());
    return s;
}

namespace svd_detail {

// Fix the sign of each triplet so the largest-magnitude term loading is
// positive; removes the inherent sign ambiguity from snapshots.
inline void fix_signs(Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    for (long j = 0; j < u.cols(); ++j) {
        long imax = 0;
        u.col(j).cwiseAbs().maxCoeff(&imax);
        if (u(imax, j) < 0) {
            u.col(j) = -u.col(j);
            v.col(j) = -v.col(j);
        }
    }
}

inline SVDResult pack_result(const Eigen::MatrixXd& u, const Eigen::VectorXd& sigma,
                             const Eigen::MatrixXd& v, int k) {
    // Drop numerically-zero directions so sigma stays strictly positive.
    double cutoff = sigma.size() ? sigma(0) * 1e-12 : 0.0;
    int kept = 0;
    while (kept < k && kept < sigma.size() && sigma(kept) > cutoff) ++kept;
    SVDResult r;
    r.k = kept;
    r.term_factors = u.leftCols(kept);
    r.singular_values = sigma.head(kept);
    r.doc_factors = v.leftCols(kept);
    fix_signs(r.term_factors, r.doc_factors);
    return r;
}

inline double max_triplet_residual(const Eigen::SparseMatrix<double>& a,
                                   const Eigen::MatrixXd& u, const Eigen::VectorXd& sigma,
                                   const Eigen::MatrixXd& v) {
    double worst = 0.0;
    for (long i = 0; i < sigma.size(); ++i) {
        double res = (a * v.col(i) - sigma(i) * u.col(i)).norm();
        worst = std::max(worst, res);
    }
    return worst;
}

}  // namespace svd_detail

// Truncated SVD with a hard residual contract: every returned triplet
// satisfies ||A v_i - sigma_i u_i|| <= tol * sigma_1. Small problems
// (min dimension <= 64) always go through an exact dense decomposition;
// larger ones use seeded randomized subspace iteration, so results are
// reproducible for a fixed seed.
inline SVDResult truncated_svd(const TermDocMatrix& a, int k, double tol = 1e-9,
                               std::uint64_t seed = 42) {
    const long rows = long(a.rows());
    const long cols = long(a.cols());
    const long min_dim = std::min(rows, cols);
    if (k < 1 || k > min_dim)
        throw Error(ErrorCode::k_too_large,
                    "k=" + std::to_string(k) + " for " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " matrix");
    if (a.nnz() == 0) throw Error(ErrorCode::zero_matrix, "matrix has no nonzeros");

    Eigen::SparseMatrix<double> s = to_eigen_sparse(a);

    if (min_dim <= 64) {
        Eigen::MatrixXd dense(s);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        return svd_detail::pack_result(svd.matrixU(), svd.singularValues(), svd.matrixV(), k);
    }

    const long oversample = std::min(min_dim - k, std::max<long>(8, k / 2));
    const long p = k + oversample;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd omega(cols, p);
    for (long j = 0; j < p; ++j)
        for (long i = 0; i < cols; ++i) omega(i, j) = gauss(rng);

    Eigen::MatrixXd q = (s * omega).householderQr().householderQ() *
                        Eigen::MatrixXd::Identity(rows, p);

    const int max_iters = 300;
    for (int iter = 1; iter <= max_iters; ++iter) {
        Eigen::MatrixXd w = (s.transpose() * q).householderQr().householderQ() *
                            Eigen::MatrixXd::Identity(cols, p);
        q = (s * w).householderQr().householderQ() * Eigen::MatrixXd::Identity(rows, p);

        if (iter % 2 == 0 || iter == max_iters) {
            Eigen::MatrixXd b = q.transpose() * s;  // p x cols
            Eigen::JacobiSVD<Eigen::MatrixXd> small(b, Eigen::ComputeThinU |
                                                           Eigen::ComputeThinV);
            Eigen::MatrixXd u = q * small.matrixU();
            Eigen::VectorXd sigma = small.singularValues();
            Eigen::MatrixXd v = small.matrixV();
            int kk = int(std::min<long>(k, sigma.size()));
            double worst = svd_detail::max_triplet_residual(
                s, u.leftCols(kk), sigma.head(kk), v.leftCols(kk));
            if (sigma(0) <= 0.0) throw Error(ErrorCode::zero_matrix, "numerically zero matrix");
            if (worst <= tol * sigma(0))
                return svd_detail::pack_result(u, sigma, v, k);
        }
    }
    throw Error(ErrorCode::no_convergence,
                "subspace iteration did not reach tol after " + std::to_string(max_iters) +
                    " sweeps");
}

// Spectral-norm reconstruction error ||A - U_k Sigma_k V_k^T||_2, i.e. the
// largest singular value of the residual.
inline double reconstruction_error(const TermDocMatrix& a, const SVDResult& svd) {
    const long rows = long(a.rows());
    const long cols = long(a.cols());
    if (svd.term_factors.rows() != rows || svd.doc_factors.rows() != cols)
        throw Error(ErrorCode::dimension_mismatch, "svd does not match matrix");

    Eigen::SparseMatrix<double> s = to_eigen_sparse(a);
    if (std::min(rows, cols) <= 64) {
        Eigen::MatrixXd residual = Eigen::MatrixXd(s) -
                                   svd.term_factors *
                                       svd.singular_values.asDiagonal() *
                                       svd.doc_factors.transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> r(residual);
        return r.singularValues().size() ? r.singularValues()(0) : 0.0;
    }

    // Power iteration on R^T R with the residual applied implicitly.
    auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd ax = s * x - svd.term_factors *
                                         (svd.singular_values.asDiagonal() *
                                          (svd.doc_factors.transpose() * x));
        return s.transpose() * ax - svd.doc_factors *
                                        (svd.singular_values.asDiagonal() *
                                         (svd.term_factors.transpose() * ax));
    };
    Eigen::VectorXd x = Eigen::VectorXd::Ones(cols).normalized();
    double lambda = 0.0;
    for (int i = 0; i < 500; ++i) {
        Eigen::VectorXd y = apply(x);
        double ny = y.norm();
        if (ny == 0.0) return 0.0;
        y /= ny;
        double next = ny;  // Rayleigh estimate of lambda_max(R^T R)
        if (i > 10 && std::abs(next - lambda) <= 1e-13 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
        x = y;
    }
    return std::sqrt(std::max(0.0, lambda));
}

}  // namespace reliascan

#endif  // RELIASCAN_SVD_HPP_
