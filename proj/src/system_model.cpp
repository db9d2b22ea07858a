#include "smf/system_model.hpp"

#include <cmath>

namespace smf {

SystemModel make_vehicle_model(double delta, const Eigen::Vector3d& process_diag,
                               const Eigen::Vector2d& meas_diag, InnovationMode mode) {
    SystemModel model;
    model.delta = delta;
    model.d_w = delta * Eigen::Matrix3d::Identity();
    model.h_w = process_diag.asDiagonal();
    model.d_v = Eigen::Matrix2d::Identity();
    model.h_v = meas_diag.asDiagonal();
    model.innovation_mode = mode;
    return model;
}

Eigen::Vector3d euler_step(const Eigen::Vector3d& x, const TangentVector& u,
                           const Eigen::Vector3d& w, double delta) {
    const double c = std::cos(x(0));
    const double s = std::sin(x(0));
    Eigen::Vector3d next;
    next(0) = x(0) + (u.sigma + w(0)) * delta;
    next(1) = x(1) + c * (u.u1 + w(1)) * delta - s * w(2) * delta;
    next(2) = x(2) + s * (u.u1 + w(1)) * delta + c * w(2) * delta;
    return next;
}

}  // namespace smf
