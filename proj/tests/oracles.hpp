// Independent reference computations for the test suite. Everything here is
// deliberately written the slow, obvious way so it cannot share a bug with
// the library implementations.

#ifndef SMF_TEST_ORACLES_HPP
#define SMF_TEST_ORACLES_HPP

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// Truncated power series for exp(M); ample for the small matrices used here.
inline Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m, int terms = 30) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(m.rows(), m.cols());
    Eigen::MatrixXd term = sum;
    for (int k = 1; k <= terms; ++k) {
        term = (term * m) / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

/// Central-difference Jacobian of f at x.
inline Eigen::MatrixXd central_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
    double h = 1e-5) {
    const Eigen::Index n = x.size();
    const Eigen::Index m = f(x).size();
    Eigen::MatrixXd j(m, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd xp = x;
        Eigen::VectorXd xm = x;
        xp(i) += h;
        xm(i) -= h;
        j.col(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return j;
}

/// Exact coordinate-wise hull by enumerating all 2^m vertices. Usable for
/// m <= ~20.
inline void vertex_hull(const Eigen::VectorXd& center, const Eigen::MatrixXd& g,
                        Eigen::VectorXd* lower, Eigen::VectorXd* upper) {
    const Eigen::Index d = center.size();
    const Eigen::Index m = g.cols();
    lower->setConstant(d, std::numeric_limits<double>::infinity());
    upper->setConstant(d, -std::numeric_limits<double>::infinity());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Eigen::VectorXd x = center;
        for (Eigen::Index j = 0; j < m; ++j) {
            x += ((mask >> j) & 1U) ? g.col(j) : Eigen::VectorXd(-g.col(j));
        }
        *lower = lower->cwiseMin(x);
        *upper = upper->cwiseMax(x);
    }
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c,
                                     double scale) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
            m(i, j) = uniform(rng, -scale, scale);
        }
    }
    return m;
}

/// Greedy nearest matching between two complex spectra; returns the largest
/// pairing distance.
inline double spectrum_distance(std::vector<std::complex<double>> requested,
                                std::vector<std::complex<double>> achieved) {
    double worst = 0.0;
    for (const auto& want : requested) {
        size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < achieved.size(); ++i) {
            const double dist = std::abs(achieved[i] - want);
            if (dist < best_d) {
                best_d = dist;
                best = i;
            }
        }
        worst = std::max(worst, best_d);
        achieved.erase(achieved.begin() + static_cast<long>(best));
    }
    return worst;
}

}  // namespace oracle

#endif
