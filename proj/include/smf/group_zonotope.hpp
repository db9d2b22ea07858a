#ifndef SMF_GROUP_ZONOTOPE_HPP
#define SMF_GROUP_ZONOTOPE_HPP

#include "smf/se2.hpp"
#include "smf/zonotope.hpp"

namespace smf {

/// Which side the algebra error multiplies on: left is X_hat * exp(eps^),
/// right is exp(eps^) * X_hat.
enum class Side { left, right };

/**
 * @brief Set of poses {center . exp(hat(eps)) : eps in <0, generator>} (left
 * side), or the mirrored right-side composition.
 *
 * The generator matrix is 3 x m over algebra coordinates (sigma, u1, u2).
 */
struct GroupZonotope {
    Se2Element center;
    Eigen::MatrixXd generator;
    Side side = Side::left;

    GroupZonotope(Se2Element c, Eigen::MatrixXd g, Side s);
};

/// Membership of the pullback error vee(log(relative pose)) in the algebra set.
bool contains_state(const GroupZonotope& z, const Se2Element& x, double tol);

struct StateBounds {
    double theta_lower = 0.0;
    double theta_upper = 0.0;
    Eigen::Vector2d position_lower = Eigen::Vector2d::Zero();
    Eigen::Vector2d position_upper = Eigen::Vector2d::Zero();
};

/**
 * @brief Heading interval and axis-aligned position box covering the set.
 *
 * The heading interval is exact (heading of center.exp(eps^) is theta_hat +
 * eps_1). The position box is the first-order pushforward: center position
 * plus the interval hull of R(theta_hat) applied to the position rows of the
 * generator. Left side only.
 */
StateBounds extract_bounds(const GroupZonotope& z);

/// Witness composition for the group Minkowski sum: x.y on the left side,
/// y.x on the right.
Se2Element group_minkowski_member(const Se2Element& x, const Se2Element& y, Side side);

}  // namespace smf

#endif
