#include "smf/se2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smf {

namespace {
constexpr double kSmallAngle = 1e-6;
constexpr double kStructureTol = 1e-12;
}  // namespace

Eigen::Matrix3d Se2Element::matrix() const {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m.topLeftCorner<2, 2>() = rotation(theta);
    m.topRightCorner<2, 1>() = position;
    return m;
}

Eigen::Matrix2d rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    return r;
}

Eigen::Matrix3d hat(const TangentVector& t) {
    Eigen::Matrix3d m;
    m << 0.0, -t.sigma, t.u1,
         t.sigma, 0.0, t.u2,
         0.0, 0.0, 0.0;
    return m;
}

TangentVector vee(const Eigen::Matrix3d& m) {
    const double tol = kStructureTol * std::max(1.0, m.cwiseAbs().maxCoeff());
    const bool structured =
        std::abs(m(0, 0)) <= tol && std::abs(m(1, 1)) <= tol &&
        std::abs(m(0, 1) + m(1, 0)) <= tol &&
        std::abs(m(2, 0)) <= tol && std::abs(m(2, 1)) <= tol && std::abs(m(2, 2)) <= tol;
    if (!structured) {
        throw std::invalid_argument("vee: matrix is not an se(2) algebra element.");
    }
    return {m(1, 0), m(0, 2), m(1, 2)};
}

Se2Element exp_map(const TangentVector& t) {
    const double s = t.sigma;
    double a;
    double b;
    if (std::abs(s) < kSmallAngle) {
        a = 1.0 - s * s / 6.0;
        b = 0.5 * s;
    } else {
        a = std::sin(s) / s;
        // half-angle form of (1 - cos s)/s; the literal difference cancels
        // catastrophically for small s
        const double half = std::sin(0.5 * s);
        b = 2.0 * half * half / s;
    }
    Eigen::Matrix2d v;
    v << a, -b, b, a;
    return {s, v * Eigen::Vector2d(t.u1, t.u2)};
}

TangentVector log_map(const Se2Element& g) {
    const double s = g.theta;
    if (!(std::abs(s) < std::numbers::pi)) {
        throw std::domain_error("log_map: |theta| must be below pi (principal branch).");
    }
    // closed-form inverse of the exp translation factor; the half-angle
    // cotangent avoids the 1 - cos cancellation
    const double a = std::abs(s) < kSmallAngle
                         ? 1.0 - s * s / 12.0
                         : 0.5 * s * std::cos(0.5 * s) / std::sin(0.5 * s);
    Eigen::Matrix2d v_inv;
    v_inv << a, 0.5 * s, -0.5 * s, a;
    const Eigen::Vector2d u = v_inv * g.position;
    return {s, u(0), u(1)};
}

Se2Element compose(const Se2Element& a, const Se2Element& b) {
    return {a.theta + b.theta, a.position + rotation(a.theta) * b.position};
}

Se2Element inverse(const Se2Element& g) {
    return {-g.theta, -(rotation(g.theta).transpose() * g.position)};
}

Eigen::Matrix3d adjoint_ad(const TangentVector& t) {
    Eigen::Matrix3d m;
    m << 0.0, 0.0, 0.0,
         t.u2, 0.0, -t.sigma,
         -t.u1, t.sigma, 0.0;
    return m;
}

Se2Element propagate(const Se2Element& x, const TangentVector& u, double delta) {
    return compose(x, exp_map(delta * u));
}

double group_affine_residual(const Se2Element& x1, const Se2Element& x2,
                             const TangentVector& u, double delta) {
    const Se2Element lhs = propagate(compose(x1, x2), u, delta);
    const Se2Element mid = inverse(propagate(Se2Element::identity(), u, delta));
    const Se2Element rhs = compose(compose(propagate(x1, u, delta), mid), propagate(x2, u, delta));
    return (lhs.matrix() - rhs.matrix()).norm();
}

}  // namespace smf
