#include "smf/harness.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace smf {

namespace {

MetricsReport compute_metrics(const std::vector<StepRecord>& records, long settle) {
    MetricsReport m;
    if (records.empty()) {
        return m;
    }
    double se_theta = 0.0;
    double se_x = 0.0;
    double width_theta = 0.0;
    double area_x = 0.0;
    double time_sum = 0.0;
    long contained = 0;
    long settled_total = 0;
    long settled_contained = 0;
    for (const auto& rec : records) {
        const double dth = wrap_angle(rec.truth(0) - rec.estimate(0));
        se_theta += dth * dth;
        se_x += (rec.truth.tail<2>() - rec.estimate.tail<2>()).squaredNorm();
        width_theta += rec.theta_upper - rec.theta_lower;
        area_x += (rec.x_upper(0) - rec.x_lower(0)) * (rec.x_upper(1) - rec.x_lower(1));
        time_sum += rec.step_seconds;
        contained += rec.contained ? 1 : 0;
        if (rec.step > settle) {
            ++settled_total;
            settled_contained += rec.contained ? 1 : 0;
        }
    }
    const double n = static_cast<double>(records.size());
    m.rmse_theta = std::sqrt(se_theta / n);
    m.rmse_x = std::sqrt(se_x / n);
    m.aar_theta = width_theta / n;
    m.aar_x = area_x / n;
    m.art_seconds = time_sum / n;
    m.containment_rate = static_cast<double>(contained) / n;
    m.containment_rate_settled =
        settled_total > 0 ? static_cast<double>(settled_contained) / settled_total : 0.0;
    return m;
}

MetricsReport average_metrics(const std::vector<RunResult>& runs) {
    MetricsReport m;
    if (runs.empty()) {
        return m;
    }
    for (const auto& run : runs) {
        m.rmse_theta += run.metrics.rmse_theta;
        m.rmse_x += run.metrics.rmse_x;
        m.aar_theta += run.metrics.aar_theta;
        m.aar_x += run.metrics.aar_x;
        m.art_seconds += run.metrics.art_seconds;
        m.containment_rate += run.metrics.containment_rate;
        m.containment_rate_settled += run.metrics.containment_rate_settled;
    }
    const double n = static_cast<double>(runs.size());
    m.rmse_theta /= n;
    m.rmse_x /= n;
    m.aar_theta /= n;
    m.aar_x /= n;
    m.art_seconds /= n;
    m.containment_rate /= n;
    m.containment_rate_settled /= n;
    return m;
}

// One repetition of the side-by-side protocol: both filters see the same
// truth and the same measurement bytes.
std::pair<RunResult, RunResult> compare_repetition(const ExperimentConfig& config, int rep) {
    std::mt19937_64 rng(derive_seed(config.seed, rep));
    const Truth truth = simulate_truth(config, rng);
    ExperimentConfig zsmf_config = config;
    zsmf_config.filter = FilterKind::zsmf;
    ExperimentConfig inzsmf_config = config;
    inzsmf_config.filter = FilterKind::inzsmf;
    return {run_filter(zsmf_config, truth), run_filter(inzsmf_config, truth)};
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (!(config.delta > 0.0)) {
        throw std::invalid_argument("delta: sampling period must be positive.");
    }
    if (config.steps < 1) {
        throw std::invalid_argument("steps: need at least one step.");
    }
    if (config.repetitions < 1) {
        throw std::invalid_argument("reps: need at least one repetition.");
    }
    if (config.settle_steps < 0) {
        throw std::invalid_argument("settle: settling step count cannot be negative.");
    }
    if (config.reduction_threshold <= 3) {
        throw std::invalid_argument("reduction-order: must exceed the error dimension (3).");
    }
    if (!(config.h0_diag.array() >= 0.0).all()) {
        throw std::invalid_argument("h0: initial generator diagonal must be nonnegative.");
    }
    if (!(config.process_noise.array() >= 0.0).all()) {
        throw std::invalid_argument("process-noise: generator diagonal must be nonnegative.");
    }
    if (!(config.measurement_noise.array() >= 0.0).all()) {
        throw std::invalid_argument("measurement-noise: generator diagonal must be nonnegative.");
    }
    if (const auto* pc = std::get_if<PoleConfiguration>(&config.strategy)) {
        validate(*pc, 3);
    }
    if (config.filter == FilterKind::inzsmf && config.side == Side::right &&
        config.innovation == InnovationMode::alternative) {
        throw std::invalid_argument("innovation: the right side supports only standard.");
    }
}

SystemModel model_from(const ExperimentConfig& config) {
    return make_vehicle_model(config.delta, config.process_noise, config.measurement_noise,
                              config.innovation);
}

TangentVector control_from(const ExperimentConfig& config) {
    return {config.omega, config.speed, 0.0};
}

std::uint64_t derive_seed(std::uint64_t base, int repetition) {
    std::uint64_t x = base + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(repetition + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

Truth simulate_truth(const ExperimentConfig& config, std::mt19937_64& rng) {
    const Zonotope process_set(Eigen::Vector3d::Zero(),
                               Eigen::MatrixXd(config.process_noise.asDiagonal()));
    const Zonotope measurement_set(Eigen::Vector2d::Zero(),
                                   Eigen::MatrixXd(config.measurement_noise.asDiagonal()));
    const TangentVector u = control_from(config);

    Truth truth;
    truth.states.reserve(static_cast<size_t>(config.steps) + 1);
    truth.measurements.reserve(static_cast<size_t>(config.steps));
    Eigen::Vector3d x;
    x << config.true_theta0, config.true_x0;
    truth.states.push_back(x);
    for (long k = 0; k < config.steps; ++k) {
        const Eigen::Vector3d w = sample(process_set, rng);
        const Eigen::Vector2d v = sample(measurement_set, rng);
        truth.measurements.push_back(x.tail<2>() + v);
        x = euler_step(x, u, w, config.delta);
        truth.states.push_back(x);
    }
    return truth;
}

RunResult run_filter(const ExperimentConfig& config, const Truth& truth) {
    if (truth.states.size() != static_cast<size_t>(config.steps) + 1 ||
        truth.measurements.size() != static_cast<size_t>(config.steps)) {
        throw std::invalid_argument("run_filter: truth length does not match the configured steps.");
    }
    const SystemModel model = model_from(config);
    const TangentVector u = control_from(config);
    constexpr double kContainTol = 1e-6;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    RunResult out;
    out.records.reserve(static_cast<size_t>(config.steps));
    using clock = std::chrono::steady_clock;

    if (config.filter == FilterKind::inzsmf) {
        InzsmfState state{
            GroupZonotope({config.est_theta0, config.est_x0},
                          Eigen::MatrixXd(config.h0_diag.asDiagonal()), config.side),
            0, config.reduction_threshold};
        PoleGainCache cache;
        for (long k = 0; k < config.steps; ++k) {
            const auto t0 = clock::now();
            state = update(state, u, truth.measurements[static_cast<size_t>(k)], model,
                           config.strategy, &cache);
            const auto t1 = clock::now();

            StepRecord rec;
            rec.step = k + 1;
            rec.truth = truth.states[static_cast<size_t>(k) + 1];
            rec.estimate << state.estimate.center.theta, state.estimate.center.position;
            if (config.side == Side::left) {
                const StateBounds b = extract_bounds(state.estimate);
                rec.theta_lower = b.theta_lower;
                rec.theta_upper = b.theta_upper;
                rec.x_lower = b.position_lower;
                rec.x_upper = b.position_upper;
            } else {
                rec.theta_lower = rec.theta_upper = nan;
                rec.x_lower.setConstant(nan);
                rec.x_upper.setConstant(nan);
            }
            const Se2Element true_pose{rec.truth(0), rec.truth.tail<2>()};
            rec.contained = contains_state(state.estimate, true_pose, kContainTol);
            rec.step_seconds = std::chrono::duration<double>(t1 - t0).count();
            out.records.push_back(std::move(rec));
        }
    } else {
        Eigen::Vector3d init;
        init << config.est_theta0, config.est_x0;
        ZsmfState state{Zonotope(init, Eigen::MatrixXd(config.h0_diag.asDiagonal())), 0,
                        config.reduction_threshold};
        for (long k = 0; k < config.steps; ++k) {
            const auto t0 = clock::now();
            state = step_zsmf(state, u, truth.measurements[static_cast<size_t>(k)], model,
                              config.strategy);
            const auto t1 = clock::now();

            StepRecord rec;
            rec.step = k + 1;
            rec.truth = truth.states[static_cast<size_t>(k) + 1];
            rec.estimate = state.estimate.center();
            const IntervalBox hull = interval_hull(state.estimate);
            rec.theta_lower = hull.lower(0);
            rec.theta_upper = hull.upper(0);
            rec.x_lower = hull.lower.tail<2>();
            rec.x_upper = hull.upper.tail<2>();
            rec.contained = contains(state.estimate, rec.truth, kContainTol);
            rec.step_seconds = std::chrono::duration<double>(t1 - t0).count();
            out.records.push_back(std::move(rec));
        }
    }
    out.metrics = compute_metrics(out.records, config.settle_steps);
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate(config);
    ExperimentResult out;
    out.runs.resize(static_cast<size_t>(config.repetitions));
    for (int rep = 0; rep < config.repetitions; ++rep) {
        std::mt19937_64 rng(derive_seed(config.seed, rep));
        const Truth truth = simulate_truth(config, rng);
        out.runs[static_cast<size_t>(rep)] = run_filter(config, truth);
    }
    out.metrics = average_metrics(out.runs);
    return out;
}

ComparisonResult run_comparison(const ExperimentConfig& config) {
    validate(config);
    ComparisonResult out;
    out.zsmf.runs.resize(static_cast<size_t>(config.repetitions));
    out.inzsmf.runs.resize(static_cast<size_t>(config.repetitions));
    for (int rep = 0; rep < config.repetitions; ++rep) {
        auto pair = compare_repetition(config, rep);
        out.zsmf.runs[static_cast<size_t>(rep)] = std::move(pair.first);
        out.inzsmf.runs[static_cast<size_t>(rep)] = std::move(pair.second);
    }
    out.zsmf.metrics = average_metrics(out.zsmf.runs);
    out.inzsmf.metrics = average_metrics(out.inzsmf.runs);
    return out;
}

std::vector<ComparisonResult> run_matrix(const std::vector<MatrixRow>& rows, bool parallel) {
    for (const auto& row : rows) {
        validate(row.config);
    }
    struct Task {
        int row;
        int rep;
    };
    std::vector<Task> tasks;
    for (size_t r = 0; r < rows.size(); ++r) {
        for (int rep = 0; rep < rows[r].config.repetitions; ++rep) {
            tasks.push_back({static_cast<int>(r), rep});
        }
    }
    std::vector<ComparisonResult> results(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        results[r].zsmf.runs.resize(static_cast<size_t>(rows[r].config.repetitions));
        results[r].inzsmf.runs.resize(static_cast<size_t>(rows[r].config.repetitions));
    }
    std::vector<std::string> errors(tasks.size());

    const auto n_tasks = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long t = 0; t < n_tasks; ++t) {
        const Task task = tasks[static_cast<size_t>(t)];
        try {
            auto pair = compare_repetition(rows[static_cast<size_t>(task.row)].config, task.rep);
            auto& slot = results[static_cast<size_t>(task.row)];
            slot.zsmf.runs[static_cast<size_t>(task.rep)] = std::move(pair.first);
            slot.inzsmf.runs[static_cast<size_t>(task.rep)] = std::move(pair.second);
        } catch (const std::exception& e) {
            errors[static_cast<size_t>(t)] = e.what();
        }
    }
    for (const auto& err : errors) {
        if (!err.empty()) {
            throw std::runtime_error("run_matrix: " + err);
        }
    }
    for (auto& result : results) {
        result.zsmf.metrics = average_metrics(result.zsmf.runs);
        result.inzsmf.metrics = average_metrics(result.inzsmf.runs);
    }
    return results;
}

}  // namespace smf
