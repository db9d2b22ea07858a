#include "smf/inzsmf_filter.hpp"

#include <stdexcept>

namespace smf {

namespace {

Eigen::Matrix<double, 3, 2> resolve_gain(const InvariantLinearization& lin,
                                         const Eigen::MatrixXd& h_reduced,
                                         const Eigen::MatrixXd& h_v,
                                         const GainStrategy& strategy, PoleGainCache* cache) {
    if (const auto* pc = std::get_if<PoleConfiguration>(&strategy)) {
        if (cache != nullptr && cache->valid && cache->a == lin.a && cache->c == lin.c &&
            cache->poles == pc->poles) {
            return cache->gain;
        }
        const Eigen::Matrix<double, 3, 2> gain = pole_placement_gain(lin.a, lin.c, pc->poles);
        if (cache != nullptr) {
            *cache = {true, lin.a, lin.c, pc->poles, gain};
        }
        return gain;
    }
    return f_radius_optimal_gain(lin.a, lin.c, h_reduced, lin.measurement_noise_map, h_v);
}

}  // namespace

Se2Element predict(const InzsmfState& state, const TangentVector& u, const SystemModel& model) {
    return propagate(state.estimate.center, u, model.delta);
}

Eigen::Vector2d innovation(const InzsmfState& state, const Eigen::Vector2d& y,
                           InnovationMode mode) {
    const Eigen::Vector2d residual = y - state.estimate.center.position;
    if (mode == InnovationMode::standard) {
        return residual;
    }
    if (state.estimate.side == Side::right) {
        throw std::invalid_argument(
            "innovation: the alternative innovation is defined for the left side only.");
    }
    return rotation(state.estimate.center.theta).transpose() * residual;
}

InvariantLinearization linearize(const Se2Element& center, const TangentVector& u,
                                 const SystemModel& model, Side side) {
    InvariantLinearization lin;
    if (side == Side::left) {
        lin.a = Eigen::Matrix3d::Identity() - model.delta * adjoint_ad(u);
        lin.c << 0.0, 1.0, 0.0,
                 0.0, 0.0, 1.0;
        lin.measurement_noise_map = rotation(center.theta).transpose() * model.d_v;
    } else {
        // right error is autonomous for a right-multiplied control; the
        // position measurement couples to it through the estimated position
        lin.a = Eigen::Matrix3d::Identity();
        lin.c << -center.position(1), 1.0, 0.0,
                 center.position(0), 0.0, 1.0;
        lin.measurement_noise_map = model.d_v;
    }
    lin.process_noise_map = model.d_w;
    return lin;
}

InzsmfState update(const InzsmfState& state, const TangentVector& u, const Eigen::Vector2d& y,
                   const SystemModel& model, const GainStrategy& strategy, PoleGainCache* cache) {
    const Side side = state.estimate.side;
    if (side == Side::right && model.innovation_mode == InnovationMode::alternative) {
        throw std::invalid_argument(
            "update: the alternative innovation is defined for the left side only.");
    }
    const Se2Element& center = state.estimate.center;

    const Eigen::MatrixXd h_reduced =
        state.estimate.generator.cols() > state.reduction_threshold
            ? reduce_order(Zonotope(Eigen::Vector3d::Zero(), state.estimate.generator),
                           state.reduction_threshold)
                  .generators()
            : state.estimate.generator;

    const InvariantLinearization lin = linearize(center, u, model, side);
    const Eigen::Matrix<double, 3, 2> gain =
        resolve_gain(lin, h_reduced, model.h_v, strategy, cache);

    const Eigen::Vector2d residual = y - center.position;
    Eigen::Vector3d correction;
    if (side == Side::left) {
        const Eigen::Matrix2d rt = rotation(center.theta).transpose();
        if (model.innovation_mode == InnovationMode::alternative) {
            correction = gain * (rt * residual);
        } else {
            correction = (gain * rt) * residual;
        }
    } else {
        correction = gain * residual;
    }

    const Se2Element predicted = propagate(center, u, model.delta);
    const Se2Element corrected = exp_map(TangentVector::from(correction));
    const Se2Element next_center = side == Side::left ? compose(predicted, corrected)
                                                      : compose(corrected, predicted);

    const Eigen::Index m = h_reduced.cols();
    const Eigen::Index n_w = model.h_w.cols();
    const Eigen::Index n_v = model.h_v.cols();
    Eigen::MatrixXd h_next(3, m + n_w + n_v);
    h_next.leftCols(m) = (lin.a - gain * lin.c) * h_reduced;
    h_next.middleCols(m, n_w) = lin.process_noise_map * model.h_w;
    h_next.rightCols(n_v) = -gain * (lin.measurement_noise_map * model.h_v);

    return {GroupZonotope(next_center, std::move(h_next), side), state.step + 1,
            state.reduction_threshold};
}

}  // namespace smf
