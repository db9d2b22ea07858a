#ifndef SMF_HARNESS_HPP
#define SMF_HARNESS_HPP

#include "smf/inzsmf_filter.hpp"
#include "smf/metrics.hpp"
#include "smf/zsmf_filter.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace smf {

enum class FilterKind { zsmf, inzsmf };

/// Everything a repetition needs: circular-trajectory truth, noise shape,
/// filter choice, and run bookkeeping. Defaults reproduce the benchmark
/// scenario (radius speed/omega = 20 m, one lap every ~15.7 s).
struct ExperimentConfig {
    double true_theta0 = 1.5707963267948966;
    Eigen::Vector2d true_x0 = Eigen::Vector2d::Zero();
    double est_theta0 = 1.5707963267948966;
    Eigen::Vector2d est_x0 = Eigen::Vector2d::Zero();

    double omega = 0.4;
    double speed = 8.0;
    double delta = 0.01;

    Eigen::Vector3d process_noise = Eigen::Vector3d(0.1, 0.1, 0.1);
    Eigen::Vector2d measurement_noise = Eigen::Vector2d(1.0, 1.0);

    FilterKind filter = FilterKind::inzsmf;
    GainStrategy strategy = FRadiusOptimal{};
    Side side = Side::left;
    InnovationMode innovation = InnovationMode::alternative;
    Eigen::Vector3d h0_diag = Eigen::Vector3d(1.7, 5.2, 5.2);
    Eigen::Index reduction_threshold = 30;

    long steps = 2000;
    int repetitions = 5;
    long settle_steps = 200;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& config);

SystemModel model_from(const ExperimentConfig& config);
TangentVector control_from(const ExperimentConfig& config);

struct Truth {
    std::vector<Eigen::Vector3d> states;        // steps + 1 poses, Euler recursion
    std::vector<Eigen::Vector2d> measurements;  // measurement k observes pose k
};

/// Noise draws are uniform over the generator hypercubes, one process draw
/// then one measurement draw per step.
Truth simulate_truth(const ExperimentConfig& config, std::mt19937_64& rng);

struct StepRecord {
    long step = 0;
    Eigen::Vector3d truth = Eigen::Vector3d::Zero();
    Eigen::Vector3d estimate = Eigen::Vector3d::Zero();
    double theta_lower = 0.0;
    double theta_upper = 0.0;
    Eigen::Vector2d x_lower = Eigen::Vector2d::Zero();
    Eigen::Vector2d x_upper = Eigen::Vector2d::Zero();
    bool contained = false;
    double step_seconds = 0.0;
};

struct RunResult {
    std::vector<StepRecord> records;
    MetricsReport metrics;
};

/// One filter pass over a fixed truth; the only nondeterministic output is
/// the per-step timing.
RunResult run_filter(const ExperimentConfig& config, const Truth& truth);

struct ExperimentResult {
    MetricsReport metrics;  // averaged across repetitions
    std::vector<RunResult> runs;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

struct ComparisonResult {
    ExperimentResult zsmf;
    ExperimentResult inzsmf;
};

/// Both filters consume byte-identical truths and measurements per repetition.
ComparisonResult run_comparison(const ExperimentConfig& config);

struct MatrixRow {
    std::string name;
    ExperimentConfig config;
};

/// Comparison over every row; repetitions and rows are independent tasks, run
/// either serially or under OpenMP with results written to fixed slots, so
/// both modes produce identical numbers (timing fields aside).
std::vector<ComparisonResult> run_matrix(const std::vector<MatrixRow>& rows, bool parallel);

std::uint64_t derive_seed(std::uint64_t base, int repetition);

}  // namespace smf

#endif
