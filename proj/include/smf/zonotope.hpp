#ifndef SMF_ZONOTOPE_HPP
#define SMF_ZONOTOPE_HPP

#include <Eigen/Dense>
#include <random>

namespace smf {

struct IntervalBox {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
};

/**
 * @brief Centrally symmetric convex set {center + G*xi : xi in [-1,1]^m}.
 *
 * The generator matrix G is d x m; m = 0 encodes a singleton. Zero columns
 * are permitted.
 */
class Zonotope {
    public:
        Zonotope(Eigen::VectorXd center, Eigen::MatrixXd generators);
        explicit Zonotope(Eigen::VectorXd center);

        const Eigen::VectorXd& center() const { return center_; }
        const Eigen::MatrixXd& generators() const { return generators_; }
        Eigen::Index dim() const { return center_.size(); }
        Eigen::Index order() const { return generators_.cols(); }

    private:
        Eigen::VectorXd center_;
        Eigen::MatrixXd generators_;
};

// set arithmetic
Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b);
Zonotope linear_map(const Eigen::MatrixXd& l, const Zonotope& z);

/**
 * @brief Reduce the generator count to exactly s columns.
 *
 * Columns are ranked by descending Euclidean norm (stable, ties keep their
 * original order); the s - d largest are kept and the remainder is boxed
 * into a diagonal block whose entries are the row-wise absolute sums of the
 * dropped columns. Sets of order <= s are returned unchanged. The result
 * always contains the input set.
 */
Zonotope reduce_order(const Zonotope& z, Eigen::Index s);

double f_radius(const Zonotope& z);
Eigen::MatrixXd covariance(const Zonotope& z);
IntervalBox interval_hull(const Zonotope& z);

/**
 * @brief Exact membership test, realized as an inf-norm minimization LP.
 *
 * Solves min ||xi||_inf s.t. G*xi = x - center and reports true when the
 * optimum is <= 1 + tol. Residual components of x - center outside the
 * column span of G are accepted up to tol and rejected beyond it.
 */
bool contains(const Zonotope& z, const Eigen::VectorXd& x, double tol);

/// Uniform draw from [-1, 1), bit-stable across platforms.
double uniform_pm1(std::mt19937_64& rng);

/// Uniform draw from the generator hypercube pushed through G.
Eigen::VectorXd sample(const Zonotope& z, std::mt19937_64& rng);

}  // namespace smf

#endif
