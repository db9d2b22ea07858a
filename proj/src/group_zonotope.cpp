#include "smf/group_zonotope.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smf {

GroupZonotope::GroupZonotope(Se2Element c, Eigen::MatrixXd g, Side s)
    : center(std::move(c)), generator(std::move(g)), side(s) {
    if (generator.rows() != 3) {
        throw std::invalid_argument("GroupZonotope: generator must have three rows.");
    }
}

bool contains_state(const GroupZonotope& z, const Se2Element& x, double tol) {
    const Se2Element eta = z.side == Side::left ? compose(inverse(z.center), x)
                                                : compose(x, inverse(z.center));
    // Outside the principal branch the relative heading cannot be reached by
    // any algebra element of the sets built here (heading radius below pi).
    if (!(std::abs(eta.theta) < std::numbers::pi)) {
        return false;
    }
    const Zonotope error_set(Eigen::Vector3d::Zero(), z.generator);
    return contains(error_set, log_map(eta).vec(), tol);
}

StateBounds extract_bounds(const GroupZonotope& z) {
    if (z.side != Side::left) {
        throw std::invalid_argument("extract_bounds: only the left-invariant side is supported.");
    }
    StateBounds b;
    const double theta_radius = z.generator.row(0).cwiseAbs().sum();
    b.theta_lower = z.center.theta - theta_radius;
    b.theta_upper = z.center.theta + theta_radius;

    const Eigen::MatrixXd world_gen = rotation(z.center.theta) * z.generator.bottomRows(2);
    const Eigen::Vector2d radius = world_gen.cwiseAbs().rowwise().sum();
    b.position_lower = z.center.position - radius;
    b.position_upper = z.center.position + radius;
    return b;
}

Se2Element group_minkowski_member(const Se2Element& x, const Se2Element& y, Side side) {
    return side == Side::left ? compose(x, y) : compose(y, x);
}

}  // namespace smf
