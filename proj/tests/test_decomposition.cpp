#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "reliascan/svd.hpp"
#include "reliascan/varimax.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace reliascan;

namespace {

TermDocMatrix diagonal_matrix(const std::vector<double>& diag) {
    TermDocMatrix m;
    m.weighting = Weighting::count;
    for (size_t i = 0; i < diag.size(); ++i) {
        m.terms.push_back("t" + std::to_string(i));
        m.doc_ids.push_back("d" + std::to_string(i));
        if (diag[i] != 0.0) m.entries.push_back({int(i), int(i), diag[i]});
    }
    return m;
}

oracle::Matrix to_dense(const TermDocMatrix& m) {
    oracle::Matrix dense(m.rows(), std::vector<double>(m.cols(), 0.0));
    for (const auto& e : m.entries) dense[size_t(e.row)][size_t(e.col)] = e.value;
    return dense;
}

double orthonormality_defect(const Eigen::MatrixXd& q) {
    Eigen::MatrixXd g = q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols());
    return g.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("identity matrix has unit singular values") {
    auto svd = truncated_svd(diagonal_matrix({1, 1, 1}), 2);
    REQUIRE(svd.k == 2);
    CHECK_THAT(svd.singular_values(0), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(svd.singular_values(1), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("diagonal matrix: top-2 of diag(3,2,1)") {
    auto m = diagonal_matrix({3, 2, 1});
    auto svd = truncated_svd(m, 2);
    REQUIRE(svd.k == 2);
    CHECK_THAT(svd.singular_values(0), Catch::Matchers::WithinAbs(3.0, 1e-12));
    CHECK_THAT(svd.singular_values(1), Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THAT(reconstruction_error(m, svd), Catch::Matchers::WithinAbs(1.0, 1e-10));
}

TEST_CASE("full-rank decomposition reconstructs exactly") {
    auto m = diagonal_matrix({3, 2, 1});
    auto svd = truncated_svd(m, 3);
    CHECK(reconstruction_error(m, svd) <= 1e-8);
}

TEST_CASE("svd argument validation") {
    auto m = diagonal_matrix({3, 2, 1});
    CHECK_THROWS_AS(truncated_svd(m, 4), Error);
    CHECK_THROWS_AS(truncated_svd(m, 0), Error);
    CHECK_THROWS_AS(truncated_svd(diagonal_matrix({0, 0, 0}), 1), Error);
    auto svd = truncated_svd(m, 2);
    CHECK_THROWS_AS(reconstruction_error(diagonal_matrix({1, 1}), svd), Error);
}

TEST_CASE("random count matrices match the dense jacobi oracle") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = fixtures::random_count_matrix(12, 9, 0.35, rng);
        auto svd = truncated_svd(m, 4);
        auto ref = oracle::jacobi_svd(to_dense(m));
        REQUIRE(svd.k >= 1);
        for (int i = 0; i < svd.k; ++i)
            CHECK_THAT(svd.singular_values(i),
                       Catch::Matchers::WithinAbs(ref.singular_values[size_t(i)], 1e-8));
        CHECK(orthonormality_defect(svd.term_factors) < 1e-8);
        CHECK(orthonormality_defect(svd.doc_factors) < 1e-8);
    }
}

TEST_CASE("reconstruction error equals the oracle's next singular value") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 6; ++trial) {
        auto m = fixtures::random_count_matrix(10, 8, 0.4, rng);
        auto ref = oracle::jacobi_svd(to_dense(m));
        auto svd = truncated_svd(m, 3);
        REQUIRE(svd.k == 3);
        CHECK_THAT(reconstruction_error(m, svd),
                   Catch::Matchers::WithinAbs(ref.singular_values[3], 1e-6));
    }
}

TEST_CASE("iterative path agrees with the oracle beyond the dense cutoff") {
    std::mt19937_64 rng(303);
    auto m = fixtures::random_count_matrix(90, 70, 0.08, rng);  // min dim > 64
    auto svd = truncated_svd(m, 5, 1e-9, 77);
    auto ref = oracle::jacobi_svd(to_dense(m));
    REQUIRE(svd.k == 5);
    for (int i = 0; i < svd.k; ++i)
        CHECK_THAT(svd.singular_values(i),
                   Catch::Matchers::WithinAbs(ref.singular_values[size_t(i)], 1e-7));
    CHECK(orthonormality_defect(svd.term_factors) < 1e-8);
    CHECK(orthonormality_defect(svd.doc_factors) < 1e-8);

    SECTION("deterministic under a fixed seed") {
        auto again = truncated_svd(m, 5, 1e-9, 77);
        CHECK((svd.term_factors - again.term_factors).cwiseAbs().maxCoeff() == 0.0);
        CHECK((svd.doc_factors - again.doc_factors).cwiseAbs().maxCoeff() == 0.0);
        CHECK((svd.singular_values - again.singular_values).cwiseAbs().maxCoeff() == 0.0);
    }

    SECTION("triplet residuals meet the advertised tolerance") {
        auto s = to_eigen_sparse(m);
        for (int i = 0; i < svd.k; ++i) {
            double res = (s * svd.doc_factors.col(i) -
                          svd.singular_values(i) * svd.term_factors.col(i))
                             .norm();
            CHECK(res <= 1e-9 * svd.singular_values(0));
        }
    }
}

TEST_CASE("singular values are non-increasing and signs are fixed") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 8; ++trial) {
        auto m = fixtures::random_count_matrix(15, 11, 0.3, rng);
        auto svd = truncated_svd(m, 5);
        for (int i = 1; i < svd.k; ++i)
            CHECK(svd.singular_values(i) <= svd.singular_values(i - 1));
        for (int j = 0; j < svd.k; ++j) {
            long imax = 0;
            svd.term_factors.col(j).cwiseAbs().maxCoeff(&imax);
            CHECK(svd.term_factors(imax, j) > 0.0);
        }
    }
}

TEST_CASE("eckart-young: rank-k truncation beats random rank-k competitors") {
    std::mt19937_64 rng(505);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
        auto m = fixtures::random_count_matrix(9, 7, 0.5, rng);
        int k = 3;
        auto svd = truncated_svd(m, k);
        double err = reconstruction_error(m, svd);
        auto dense = to_dense(m);
        for (int competitor = 0; competitor < 25; ++competitor) {
            oracle::Matrix x(9, std::vector<double>(size_t(k)));
            oracle::Matrix y(7, std::vector<double>(size_t(k)));
            for (auto& row : x)
                for (auto& v : row) v = gauss(rng);
            for (auto& row : y)
                for (auto& v : row) v = gauss(rng);
            auto b = oracle::multiply(x, oracle::transpose(y));
            oracle::Matrix residual = dense;
            for (size_t i = 0; i < residual.size(); ++i)
                for (size_t j = 0; j < residual[i].size(); ++j) residual[i][j] -= b[i][j];
            CHECK(err <= oracle::spectral_norm(residual) + 1e-8);
        }
    }
}

TEST_CASE("varimax leaves already-simple loadings alone") {
    Eigen::MatrixXd simple(4, 2);
    simple << 2, 0, 0, 3, 1.5, 0, 0, 0.5;
    double before = varimax_criterion(simple);
    auto rc = varimax_rotate(simple);
    CHECK_THAT(varimax_criterion(rc.rotated_term_loadings),
               Catch::Matchers::WithinAbs(before, 1e-9));
    CHECK(orthonormality_defect(rc.rotation) < 1e-12);
}

TEST_CASE("varimax with one column returns the identity") {
    Eigen::MatrixXd l(3, 1);
    l << 1, 2, 3;
    auto rc = varimax_rotate(l);
    CHECK(rc.rotation.rows() == 1);
    CHECK(rc.rotation(0, 0) == 1.0);
    CHECK((rc.rotated_term_loadings - l).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("varimax two-column result matches the angle-grid search") {
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd l(6, 2);
        oracle::Matrix dense(6, std::vector<double>(2));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 2; ++j) {
                l(i, j) = u(rng);
                dense[size_t(i)][size_t(j)] = l(i, j);
            }
        auto rc = varimax_rotate(l);
        double achieved = varimax_criterion(rc.rotated_term_loadings);
        double best = oracle::varimax_grid_best(dense);
        CHECK(achieved >= best - 1e-3);
        CHECK(achieved <= best + 1e-3);
    }
}

TEST_CASE("varimax criterion is non-decreasing across sweeps") {
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd l(12, 4);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 4; ++j) l(i, j) = u(rng);
    auto rc = varimax_rotate(l);
    REQUIRE(!rc.criterion_history.empty());
    double before = varimax_criterion(l);
    CHECK(rc.criterion_history.front() >= before - 1e-12);
    for (size_t i = 1; i < rc.criterion_history.size(); ++i)
        CHECK(rc.criterion_history[i] >= rc.criterion_history[i - 1] - 1e-12);
}

TEST_CASE("rotation preserves the frobenius norm and the factorization") {
    std::mt19937_64 rng(808);
    auto m = fixtures::random_count_matrix(14, 10, 0.3, rng);
    auto svd = truncated_svd(m, 4);
    auto loadings = svd.scaled_term_loadings();
    auto rc = varimax_rotate(loadings);
    CHECK_THAT(rc.rotated_term_loadings.norm(),
               Catch::Matchers::WithinAbs(loadings.norm(), 1e-9));
    CHECK(orthonormality_defect(rc.rotation) < 1e-8);
    Eigen::MatrixXd recombined = rc.rotated_term_loadings *
                                 (svd.doc_factors * rc.rotation).transpose();
    Eigen::MatrixXd direct = loadings * svd.doc_factors.transpose();
    CHECK((recombined - direct).cwiseAbs().maxCoeff() < 1e-9);
}
