#include "smf/zsmf_filter.hpp"

#include <cmath>
#include <stdexcept>

namespace smf {

EuclideanLinearization linearize_euclidean(const Eigen::Vector3d& x_hat, const TangentVector& u,
                                           const SystemModel& model) {
    const double c = std::cos(x_hat(0));
    const double s = std::sin(x_hat(0));
    const double delta = model.delta;
    EuclideanLinearization lin;
    lin.a << 1.0, 0.0, 0.0,
             -s * u.u1 * delta, 1.0, 0.0,
             c * u.u1 * delta, 0.0, 1.0;
    lin.d_wk << delta, 0.0, 0.0,
                0.0, c * delta, -s * delta,
                0.0, s * delta, c * delta;
    lin.c << 0.0, 1.0, 0.0,
             0.0, 0.0, 1.0;
    return lin;
}

ZsmfState step_zsmf(const ZsmfState& state, const TangentVector& u, const Eigen::Vector2d& y,
                    const SystemModel& model, const GainStrategy& strategy) {
    if (state.estimate.dim() != 3) {
        throw std::invalid_argument("step_zsmf: state must be three-dimensional.");
    }
    const Eigen::Vector3d center = state.estimate.center();

    const Eigen::MatrixXd h_reduced =
        state.estimate.order() > state.reduction_threshold
            ? reduce_order(state.estimate, state.reduction_threshold).generators()
            : state.estimate.generators();

    const EuclideanLinearization lin = linearize_euclidean(center, u, model);
    Eigen::MatrixXd gain;
    if (const auto* pc = std::get_if<PoleConfiguration>(&strategy)) {
        gain = pole_placement_gain(lin.a, lin.c, pc->poles);
    } else {
        gain = f_radius_optimal_gain(lin.a, lin.c, h_reduced, model.d_v, model.h_v);
    }

    const Eigen::Vector2d z = y - center.tail<2>();
    const Eigen::Vector3d next_center =
        euler_step(center, u, Eigen::Vector3d::Zero(), model.delta) + gain * z;

    const Eigen::Index m = h_reduced.cols();
    const Eigen::Index n_w = model.h_w.cols();
    const Eigen::Index n_v = model.h_v.cols();
    Eigen::MatrixXd h_next(3, m + n_w + n_v);
    h_next.leftCols(m) = (lin.a - gain * lin.c) * h_reduced;
    h_next.middleCols(m, n_w) = lin.d_wk * model.h_w;
    h_next.rightCols(n_v) = -gain * (model.d_v * model.h_v);

    return {Zonotope(next_center, std::move(h_next)), state.step + 1, state.reduction_threshold};
}

}  // namespace smf
