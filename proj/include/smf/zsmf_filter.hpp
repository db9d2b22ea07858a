#ifndef SMF_ZSMF_FILTER_HPP
#define SMF_ZSMF_FILTER_HPP

#include "smf/gain.hpp"
#include "smf/system_model.hpp"
#include "smf/zonotope.hpp"

namespace smf {

/// Euclidean baseline state: zonotope over (theta, x1, x2).
struct ZsmfState {
    Zonotope estimate;
    long step = 0;
    Eigen::Index reduction_threshold = 30;
};

/// First-order model of the Euler dynamics at the current estimate.
struct EuclideanLinearization {
    Eigen::Matrix3d a;
    Eigen::Matrix3d d_wk;
    Eigen::Matrix<double, 2, 3> c;
};

EuclideanLinearization linearize_euclidean(const Eigen::Vector3d& x_hat, const TangentVector& u,
                                           const SystemModel& model);

/**
 * @brief One baseline update: center moves to euler_step(x,u,0) + L*(y - C x)
 * and the generator becomes [(a - L c) * reduced(H), d_wk * h_w, -L * d_v * h_v].
 *
 * The pole strategy re-places every step because a depends on the estimate.
 */
ZsmfState step_zsmf(const ZsmfState& state, const TangentVector& u, const Eigen::Vector2d& y,
                    const SystemModel& model, const GainStrategy& strategy);

}  // namespace smf

#endif
