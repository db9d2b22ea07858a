#ifndef SMF_SYSTEM_MODEL_HPP
#define SMF_SYSTEM_MODEL_HPP

#include "smf/se2.hpp"

#include <Eigen/Dense>

namespace smf {

/// Which innovation the invariant filter forms: standard is y - x_hat in the
/// world frame, alternative is the same residual rotated into the body frame.
/// Both drive identical center trajectories up to rounding.
enum class InnovationMode { standard, alternative };

/**
 * @brief Discrete-time noise model around the unicycle dynamics.
 *
 * Process noise enters the group recursion through d_w (algebra coordinates);
 * measurement noise enters the position measurement through d_v. h_w and h_v
 * are the noise-set generators and stay fixed across a run.
 */
struct SystemModel {
    double delta = 0.01;
    Eigen::Matrix3d d_w = Eigen::Matrix3d::Identity();
    Eigen::MatrixXd h_w;
    Eigen::Matrix2d d_v = Eigen::Matrix2d::Identity();
    Eigen::MatrixXd h_v;
    InnovationMode innovation_mode = InnovationMode::alternative;
};

/// Vehicle instance: d_w = delta * I (noise integrated over one period),
/// d_v = I, diagonal noise generators.
SystemModel make_vehicle_model(double delta, const Eigen::Vector3d& process_diag,
                               const Eigen::Vector2d& meas_diag, InnovationMode mode);

/**
 * @brief One explicit-Euler step of the noisy unicycle in Euclidean
 * coordinates (theta, x1, x2).
 *
 * u = (omega, nu, 0) is the control; w = (heading, longitudinal, transversal)
 * noise rates. Used both as the truth simulator and as the baseline filter's
 * prediction.
 */
Eigen::Vector3d euler_step(const Eigen::Vector3d& x, const TangentVector& u,
                           const Eigen::Vector3d& w, double delta);

}  // namespace smf

#endif
