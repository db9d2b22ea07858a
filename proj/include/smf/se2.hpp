#ifndef SMF_SE2_HPP
#define SMF_SE2_HPP

#include <Eigen/Dense>

namespace smf {

/// Algebra coordinates (sigma, u1, u2): heading rate and body-frame velocity.
struct TangentVector {
    double sigma = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;

    Eigen::Vector3d vec() const { return {sigma, u1, u2}; }
    static TangentVector from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
};

inline TangentVector operator*(double a, const TangentVector& t) {
    return {a * t.sigma, a * t.u1, a * t.u2};
}

/**
 * @brief Planar pose (theta, position), isomorphic to the homogeneous form
 * [[R(theta), position],[0, 1]].
 *
 * The heading is kept unwrapped: composition adds angles without reducing
 * them modulo 2*pi, so long trajectories accumulate theta continuously.
 */
struct Se2Element {
    double theta = 0.0;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();

    static Se2Element identity() { return {}; }
    Eigen::Matrix3d matrix() const;
};

Eigen::Matrix2d rotation(double theta);

// algebra embedding
Eigen::Matrix3d hat(const TangentVector& t);
TangentVector vee(const Eigen::Matrix3d& m);

Se2Element exp_map(const TangentVector& t);

/// Principal-branch inverse of exp_map; requires |theta| < pi.
TangentVector log_map(const Se2Element& g);

Se2Element compose(const Se2Element& a, const Se2Element& b);
Se2Element inverse(const Se2Element& g);

/// ad matrix: hat(a)*hat(b) - hat(b)*hat(a) == hat(-adjoint_ad(b)*a.vec()).
Eigen::Matrix3d adjoint_ad(const TangentVector& t);

/// One zero-noise step of the unicycle group dynamics, x * exp_map(delta*u).
Se2Element propagate(const Se2Element& x, const TangentVector& u, double delta);

/// Frobenius defect of f(x1*x2) against f(x1)*f(I)^-1*f(x2) for the
/// propagation map; zero (to rounding) because the control enters on the right.
double group_affine_residual(const Se2Element& x1, const Se2Element& x2,
                             const TangentVector& u, double delta);

}  // namespace smf

#endif
