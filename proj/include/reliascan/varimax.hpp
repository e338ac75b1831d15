#ifndef RELIASCAN_VARIMAX_HPP_
#define RELIASCAN_VARIMAX_HPP_

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace reliascan {

// Orthogonal rotation of the concept space for interpretability.
struct RotatedConcepts {
    Eigen::MatrixXd rotation;               // k x k orthogonal
    Eigen::MatrixXd rotated_term_loadings;  // terms x k, = loadings * rotation
    std::vector<double> criterion_history;  // value after each sweep
};

// Varimax objective: sum over columns of the variance of squared loadings
// (population variance, Kaiser row normalization off).
inline double varimax_criterion(const Eigen::MatrixXd& loadings) {
    const double p = double(loadings.rows());
    double total = 0.0;
    for (long j = 0; j < loadings.cols(); ++j) {
        Eigen::ArrayXd sq = loadings.col(j).array().square();
        double mean = sq.mean();
        total += (sq - mean).square().sum() / p;
    }
    return total;
}

// Cyclic pairwise plane rotations (Kaiser's procedure). Each pair (a, b) is
// rotated by the angle that maximizes the criterion in that plane; sweeps
// repeat until the criterion gain drops below tol or max_iter is reached.
// k = 1 returns the identity.
inline RotatedConcepts varimax_rotate(const Eigen::MatrixXd& loadings, int max_iter = 100,
                                      double tol = 1e-10) {
    const long p = loadings.rows();
    const long k = loadings.cols();
    RotatedConcepts rc;
    rc.rotation = Eigen::MatrixXd::Identity(k, k);
    rc.rotated_term_loadings = loadings;
    if (k < 2 || p == 0) {
        rc.criterion_history.push_back(varimax_criterion(rc.rotated_term_loadings));
        return rc;
    }

    Eigen::MatrixXd& l = rc.rotated_term_loadings;
    double previous = varimax_criterion(l);
    for (int sweep = 0; sweep < max_iter; ++sweep) {
        for (long a = 0; a < k - 1; ++a) {
            for (long b = a + 1; b < k; ++b) {
                Eigen::ArrayXd x = l.col(a).array();
                Eigen::ArrayXd y = l.col(b).array();
                Eigen::ArrayXd u = x.square() - y.square();
                Eigen::ArrayXd v = 2.0 * x * y;
                double su = u.sum();
                double sv = v.sum();
                double c = (u.square() - v.square()).sum();
                double d = 2.0 * (u * v).sum();
                double num = d - 2.0 * su * sv / double(p);
                double den = c - (su * su - sv * sv) / double(p);
                if (num == 0.0 && den == 0.0) continue;
                double theta = 0.25 * std::atan2(num, den);
                if (std::abs(theta) < 1e-15) continue;
                double cs = std::cos(theta);
                double sn = std::sin(theta);
                Eigen::VectorXd la = l.col(a);
                Eigen::VectorXd lb = l.col(b);
                l.col(a) = cs * la + sn * lb;
                l.col(b) = -sn * la + cs * lb;
                Eigen::VectorXd ra = rc.rotation.col(a);
                Eigen::VectorXd rb = rc.rotation.col(b);
                rc.rotation.col(a) = cs * ra + sn * rb;
                rc.rotation.col(b) = -sn * ra + cs * rb;
            }
        }
        double current = varimax_criterion(l);
        rc.criterion_history.push_back(current);
        if (current - previous < tol) break;
        previous = current;
    }

    // Deterministic column signs: largest-magnitude loading positive.
    for (long j = 0; j < k; ++j) {
        long imax = 0;
        l.col(j).cwiseAbs().maxCoeff(&imax);
        if (l(imax, j) < 0) {
            l.col(j) = -l.col(j);
            rc.rotation.col(j) = -rc.rotation.col(j);
        }
    }
    return rc;
}

}  // namespace reliascan

#endif  // RELIASCAN_VARIMAX_HPP_
