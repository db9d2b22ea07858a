#ifndef SMF_INZSMF_FILTER_HPP
#define SMF_INZSMF_FILTER_HPP

#include "smf/gain.hpp"
#include "smf/group_zonotope.hpp"
#include "smf/system_model.hpp"

namespace smf {

/// Invariant filter state: pose estimate with algebra-valued uncertainty.
struct InzsmfState {
    GroupZonotope estimate;
    long step = 0;
    Eigen::Index reduction_threshold = 30;
};

/**
 * @brief Error-state matrices of the invariant recursion.
 *
 * On the left side a = I - delta*ad(u) depends only on the control, c is the
 * constant position-row selector, and the measurement noise reaches the error
 * through measurement_noise_map = R(theta_hat)^T * d_v. On the right side the
 * error is autonomous (a = I) and c depends on the estimated position.
 */
struct InvariantLinearization {
    Eigen::Matrix3d a;
    Eigen::Matrix<double, 2, 3> c;
    Eigen::Matrix3d process_noise_map;
    Eigen::Matrix2d measurement_noise_map;
};

/// Memo for the placed gain; the placement is recomputed only when the
/// (a, c, poles) key changes, which never happens under a constant control.
struct PoleGainCache {
    bool valid = false;
    Eigen::Matrix3d a;
    Eigen::Matrix<double, 2, 3> c;
    std::vector<std::complex<double>> poles;
    Eigen::Matrix<double, 3, 2> gain;
};

Se2Element predict(const InzsmfState& state, const TangentVector& u, const SystemModel& model);

/// Innovation at the current estimate. Standard: y - x_hat. Alternative:
/// R(theta_hat)^T (y - x_hat). The right side supports only standard.
Eigen::Vector2d innovation(const InzsmfState& state, const Eigen::Vector2d& y,
                           InnovationMode mode);

InvariantLinearization linearize(const Se2Element& center, const TangentVector& u,
                                 const SystemModel& model, Side side);

/**
 * @brief One measurement update: center moves to
 * propagate(center) . exp(L*z) (left side; mirrored on the right) and the
 * generator becomes [(a - L c) * reduced(H), d_w * h_w, -L * Rv * h_v].
 */
InzsmfState update(const InzsmfState& state, const TangentVector& u, const Eigen::Vector2d& y,
                   const SystemModel& model, const GainStrategy& strategy,
                   PoleGainCache* cache = nullptr);

}  // namespace smf

#endif
