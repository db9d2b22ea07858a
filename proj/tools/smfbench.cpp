// Benchmark driver for the set-membership filters. Subcommands:
//   run      one filter, CSV trajectory per repetition plus a metric summary
//   compare  baseline and invariant filter on shared noise, improvement table
//   matrix   the eight-start comparison sweep, optionally in parallel
//   selftest fast invariant probes, one PASS/FAIL line each

#include "smf/presets.hpp"
#include "smf/report.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

struct CliOptions {
    std::string filter = "inzsmf";
    std::string gain = "fradius";
    std::string side = "left";
    std::string innovation = "alternative";
    long steps = 2000;
    int reps = 5;
    std::uint64_t seed = 0;
    std::string out = "out";
    std::vector<double> poles;
    std::vector<double> h0;
    long reduction_order = 30;
    std::string preset;
    long settle = 200;
    int threads = 0;
    double delta = 0.01;
    double speed = 8.0;
    double omega = 0.4;
    bool serial = false;
};

struct OptionHandles {
    CLI::Option* gain = nullptr;
    CLI::Option* poles = nullptr;
    CLI::Option* filter = nullptr;
    CLI::Option* side = nullptr;
    CLI::Option* innovation = nullptr;
};

OptionHandles add_common_options(CLI::App* sub, CliOptions* o) {
    OptionHandles h;
    h.filter = sub->add_option("--filter", o->filter, "Filter to run")
                   ->check(CLI::IsMember({"zsmf", "inzsmf"}))
                   ->capture_default_str();
    h.gain = sub->add_option("--gain", o->gain, "Observer gain strategy")
                 ->check(CLI::IsMember({"poles", "fradius"}))
                 ->capture_default_str();
    h.side = sub->add_option("--side", o->side, "Group error side (invariant filter)")
                 ->check(CLI::IsMember({"left", "right"}))
                 ->capture_default_str();
    h.innovation =
        sub->add_option("--innovation", o->innovation, "Innovation frame (invariant filter)")
            ->check(CLI::IsMember({"standard", "alternative"}))
            ->capture_default_str();
    h.poles = sub->add_option("--poles", o->poles,
                              "Real discrete-time poles for --gain poles (default 0.95 0.98 0.98)")
                  ->expected(3)
                  ->delimiter(',');
    sub->add_option("--steps", o->steps, "Steps per repetition")
        ->check(CLI::PositiveNumber)
        ->envname("SMFBENCH_STEPS")
        ->capture_default_str();
    sub->add_option("--reps", o->reps, "Independent repetitions")
        ->check(CLI::PositiveNumber)
        ->envname("SMFBENCH_REPS")
        ->capture_default_str();
    sub->add_option("--seed", o->seed, "Base RNG seed")
        ->envname("SMFBENCH_SEED")
        ->capture_default_str();
    sub->add_option("--out", o->out, "Output directory")
        ->envname("SMFBENCH_OUT")
        ->capture_default_str();
    sub->add_option("--h0", o->h0, "Initial generator diagonal (three values)")
        ->expected(3)
        ->delimiter(',');
    sub->add_option("--reduction-order", o->reduction_order, "Generator budget before reduction")
        ->capture_default_str();
    sub->add_option("--preset", o->preset,
                    "Named scenario: table1-row1..table1-row8 or table2");
    sub->add_option("--settle", o->settle, "Steps excluded from the settled containment rate")
        ->capture_default_str();
    sub->add_option("--threads", o->threads, "OpenMP thread cap (0 = library default)")
        ->envname("SMFBENCH_THREADS")
        ->capture_default_str();
    sub->add_option("--delta", o->delta, "Integration step [s]")->capture_default_str();
    sub->add_option("--speed", o->speed, "Forward speed [m/s]")->capture_default_str();
    sub->add_option("--omega", o->omega, "Turn rate [rad/s]")->capture_default_str();
    return h;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
#else
    (void)threads;
#endif
}

smf::ExperimentConfig build_config(const CliOptions& o, const OptionHandles& h) {
    smf::ExperimentConfig cfg = smf::benchmark_defaults();
    cfg.delta = o.delta;
    cfg.speed = o.speed;
    cfg.omega = o.omega;
    cfg.steps = o.steps;
    cfg.repetitions = o.reps;
    cfg.settle_steps = o.settle;
    cfg.seed = o.seed;
    cfg.reduction_threshold = o.reduction_order;
    if (!o.h0.empty()) {
        cfg.h0_diag = Eigen::Vector3d(o.h0[0], o.h0[1], o.h0[2]);
    }
    if (!o.preset.empty() && !smf::apply_preset(&cfg, o.preset)) {
        throw std::invalid_argument("preset: unknown name '" + o.preset + "'.");
    }
    if (h.filter->count() > 0 || o.preset.empty()) {
        cfg.filter = o.filter == "zsmf" ? smf::FilterKind::zsmf : smf::FilterKind::inzsmf;
    }
    const bool gain_given = h.gain->count() > 0 || h.poles->count() > 0;
    if (gain_given || o.preset.empty()) {
        if (o.gain == "poles" || h.poles->count() > 0) {
            std::vector<double> p = o.poles.empty() ? std::vector<double>{0.95, 0.98, 0.98}
                                                    : o.poles;
            smf::PoleConfiguration pc;
            for (double v : p) {
                pc.poles.emplace_back(v, 0.0);
            }
            cfg.strategy = pc;
        } else {
            cfg.strategy = smf::FRadiusOptimal{};
        }
    }
    cfg.side = o.side == "right" ? smf::Side::right : smf::Side::left;
    cfg.innovation = o.innovation == "standard" ? smf::InnovationMode::standard
                                                : smf::InnovationMode::alternative;
    smf::validate(cfg);
    return cfg;
}

std::string join_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) {
            s += ' ';
        }
        s += argv[i];
    }
    return s;
}

std::filesystem::path prepare_out(const std::string& dir) {
    std::filesystem::path p(dir);
    std::filesystem::create_directories(p);
    return p;
}

int cmd_run(const CliOptions& o, const smf::ExperimentConfig& cfg, const std::string& command) {
    apply_threads(o.threads);
    const auto out = prepare_out(o.out);
    const smf::ExperimentResult res = smf::run_experiment(cfg);
    for (size_t k = 0; k < res.runs.size(); ++k) {
        smf::write_run_csv((out / ("run_rep" + std::to_string(k + 1) + ".csv")).string(),
                           res.runs[k]);
    }
    smf::write_metrics_csv((out / "metrics.csv").string(), cfg, res.metrics);
    smf::write_metadata_json((out / "metadata.json").string(), cfg, command);
    std::cout << "filter " << smf::to_string(cfg.filter) << " gain "
              << smf::gain_label(cfg.strategy) << "\n"
              << "rmse_theta " << res.metrics.rmse_theta << "  rmse_x " << res.metrics.rmse_x
              << "\n"
              << "aar_theta " << res.metrics.aar_theta << "  aar_x " << res.metrics.aar_x << "\n"
              << "art_ms " << res.metrics.art_seconds * 1e3 << "  containment "
              << res.metrics.containment_rate << " (settled "
              << res.metrics.containment_rate_settled << ")\n"
              << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_compare(const CliOptions& o, const smf::ExperimentConfig& cfg,
                const std::string& command) {
    apply_threads(o.threads);
    const auto out = prepare_out(o.out);
    const smf::ComparisonResult res = smf::run_comparison(cfg);
    for (size_t k = 0; k < res.zsmf.runs.size(); ++k) {
        const std::string suffix = "_rep" + std::to_string(k + 1) + ".csv";
        smf::write_run_csv((out / ("zsmf" + suffix)).string(), res.zsmf.runs[k]);
        smf::write_run_csv((out / ("inzsmf" + suffix)).string(), res.inzsmf.runs[k]);
    }
    const std::string name = o.preset.empty() ? "custom" : o.preset;
    smf::write_comparison_csv((out / "compare_metrics.csv").string(), {name}, {&res}, {&cfg});
    smf::write_metadata_json((out / "metadata.json").string(), cfg, command);
    const smf::MetricsReport& b = res.zsmf.metrics;
    const smf::MetricsReport& c = res.inzsmf.metrics;
    std::cout << "row " << name << " gain " << smf::gain_label(cfg.strategy) << "\n"
              << "rmse_theta  zsmf " << b.rmse_theta << "  inzsmf " << c.rmse_theta
              << "  improvement " << smf::improvement_percent(b.rmse_theta, c.rmse_theta)
              << "%\n"
              << "rmse_x      zsmf " << b.rmse_x << "  inzsmf " << c.rmse_x << "  improvement "
              << smf::improvement_percent(b.rmse_x, c.rmse_x) << "%\n"
              << "aar_theta   zsmf " << b.aar_theta << "  inzsmf " << c.aar_theta
              << "  improvement " << smf::improvement_percent(b.aar_theta, c.aar_theta) << "%\n"
              << "aar_x       zsmf " << b.aar_x << "  inzsmf " << c.aar_x << "  improvement "
              << smf::improvement_percent(b.aar_x, c.aar_x) << "%\n"
              << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_matrix(const CliOptions& o, const smf::ExperimentConfig& cfg,
               const std::string& command) {
    apply_threads(o.threads);
    const auto out = prepare_out(o.out);
    const std::vector<smf::MatrixRow> rows = smf::benchmark_matrix(cfg);
    const std::vector<smf::ComparisonResult> results = smf::run_matrix(rows, !o.serial);
    std::vector<std::string> names;
    std::vector<const smf::ComparisonResult*> row_ptrs;
    std::vector<const smf::ExperimentConfig*> cfg_ptrs;
    for (size_t i = 0; i < rows.size(); ++i) {
        names.push_back(rows[i].name);
        row_ptrs.push_back(&results[i]);
        cfg_ptrs.push_back(&rows[i].config);
    }
    smf::write_comparison_csv((out / "matrix_metrics.csv").string(), names, row_ptrs, cfg_ptrs);
    smf::write_metadata_json((out / "metadata.json").string(), cfg, command);
    for (size_t i = 0; i < rows.size(); ++i) {
        const smf::MetricsReport& b = results[i].zsmf.metrics;
        const smf::MetricsReport& c = results[i].inzsmf.metrics;
        std::cout << names[i] << "  rmse_theta " << b.rmse_theta << " -> " << c.rmse_theta
                  << "  rmse_x " << b.rmse_x << " -> " << c.rmse_x << "\n";
    }
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

bool report(bool ok, const std::string& name, const std::string& detail = "") {
    if (ok) {
        std::cout << "PASS " << name << "\n";
    } else {
        std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
    }
    return ok;
}

int cmd_selftest(const CliOptions& o) {
    apply_threads(o.threads);
    bool all = true;
    std::mt19937_64 rng(12345);

    {
        Eigen::Matrix<double, 2, Eigen::Dynamic> g(2, 3);
        g << 1.0, 0.0, 0.2, 0.0, 1.0, 0.3;
        smf::Zonotope z(Eigen::Vector2d(0.5, -0.25), g);
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            ok = smf::contains(z, smf::sample(z, rng), 1e-9);
        }
        all &= report(ok, "zonotope sampled points are members");
    }
    {
        Eigen::Matrix<double, 3, Eigen::Dynamic> g(3, 12);
        for (int j = 0; j < 12; ++j) {
            for (int i = 0; i < 3; ++i) {
                g(i, j) = smf::uniform_pm1(rng);
            }
        }
        smf::Zonotope z(Eigen::Vector3d(1.0, 2.0, 3.0), g);
        smf::Zonotope r = smf::reduce_order(z, 6);
        bool ok = r.order() == 6;
        for (int i = 0; i < 200 && ok; ++i) {
            ok = smf::contains(r, smf::sample(z, rng), 1e-9);
        }
        all &= report(ok, "order reduction keeps every enclosed point");
    }
    {
        bool ok = true;
        for (int i = 0; i < 100 && ok; ++i) {
            smf::TangentVector u{smf::uniform_pm1(rng) * 3.0, smf::uniform_pm1(rng) * 5.0,
                                 smf::uniform_pm1(rng) * 5.0};
            smf::TangentVector v = smf::log_map(smf::exp_map(u));
            ok = (v.vec() - u.vec()).norm() <= 1e-10 * std::max(1.0, u.vec().norm());
        }
        all &= report(ok, "exp/log round trip");
    }
    {
        smf::TangentVector u{0.4, 8.0, 0.0};
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            smf::Se2Element a{smf::uniform_pm1(rng) * 3.0,
                              Eigen::Vector2d(smf::uniform_pm1(rng) * 10.0,
                                              smf::uniform_pm1(rng) * 10.0)};
            smf::Se2Element b{smf::uniform_pm1(rng) * 3.0,
                              Eigen::Vector2d(smf::uniform_pm1(rng) * 10.0,
                                              smf::uniform_pm1(rng) * 10.0)};
            worst = std::max(worst, smf::group_affine_residual(a, b, u, 0.01));
        }
        all &= report(worst <= 1e-12, "group-affine propagation residual",
                      "worst " + smf::format_full(worst));
    }
    {
        Eigen::Matrix3d a;
        a << 1, 0, 0, 0, 1, 0.004, 0.08, -0.004, 1;
        Eigen::Matrix<double, 2, 3> c;
        c << 0, 1, 0, 0, 0, 1;
        std::vector<std::complex<double>> poles = {{0.95, 0.0}, {0.98, 0.0}, {0.98, 0.0}};
        Eigen::MatrixXd l = smf::pole_placement_gain(a, c, poles);
        Eigen::MatrixXd closed = a - l * c;
        Eigen::VectorXcd eig = closed.eigenvalues();
        std::vector<double> got;
        for (int i = 0; i < 3; ++i) {
            got.push_back(eig(i).real());
        }
        std::sort(got.begin(), got.end());
        const bool ok = std::abs(got[0] - 0.95) < 1e-8 && std::abs(got[1] - 0.98) < 1e-8 &&
                        std::abs(got[2] - 0.98) < 1e-8 &&
                        eig.imag().cwiseAbs().maxCoeff() < 1e-8;
        all &= report(ok, "pole placement hits requested spectrum");
    }
    {
        Eigen::MatrixXd h = Eigen::MatrixXd::NullaryExpr(
            3, 15, [&rng](Eigen::Index, Eigen::Index) { return smf::uniform_pm1(rng); });
        Eigen::Matrix3d a;
        a << 1, 0, 0, 0, 1, 0.004, 0.08, -0.004, 1;
        Eigen::Matrix<double, 2, 3> c;
        c << 0, 1, 0, 0, 0, 1;
        Eigen::Matrix2d d_v = Eigen::Matrix2d::Identity();
        Eigen::Matrix2d h_v = Eigen::Matrix2d::Identity();
        Eigen::MatrixXd l = smf::f_radius_optimal_gain(a, c, h, d_v, h_v);
        Eigen::Matrix3d p = h * h.transpose();
        Eigen::Matrix2d qv = d_v * h_v * h_v.transpose() * d_v.transpose();
        Eigen::MatrixXd grad = -2.0 * a * p * c.transpose() +
                               2.0 * l * (c * p * c.transpose() + qv);
        all &= report(grad.norm() <= 1e-10, "F-radius gain is stationary",
                      "gradient norm " + smf::format_full(grad.norm()));
    }
    {
        smf::ExperimentConfig cfg = smf::benchmark_defaults();
        cfg.steps = 100;
        cfg.repetitions = 1;
        cfg.settle_steps = 10;
        std::mt19937_64 truth_rng(smf::derive_seed(cfg.seed, 0));
        const smf::Truth truth = smf::simulate_truth(cfg, truth_rng);
        smf::ExperimentConfig alt = cfg;
        alt.innovation = smf::InnovationMode::standard;
        const smf::RunResult ra = smf::run_filter(cfg, truth);
        const smf::RunResult rb = smf::run_filter(alt, truth);
        double worst = 0.0;
        for (size_t i = 0; i < ra.records.size(); ++i) {
            worst = std::max(worst,
                             (ra.records[i].estimate - rb.records[i].estimate).cwiseAbs().maxCoeff());
        }
        all &= report(worst <= 1e-9, "innovation frames agree on the estimate",
                      "worst " + smf::format_full(worst));
    }
    std::cout << (all ? "selftest passed" : "selftest FAILED") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Set-membership filter benchmark for planar vehicles"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    CliOptions opt;
    int exit_code = 0;
    const std::string command = join_command(argc, argv);

    CLI::App* run = app.add_subcommand("run", "Run one filter and log its trajectory");
    OptionHandles run_h = add_common_options(run, &opt);
    run->callback([&]() { exit_code = cmd_run(opt, build_config(opt, run_h), command); });

    CLI::App* compare =
        app.add_subcommand("compare", "Run both filters on shared noise realizations");
    OptionHandles cmp_h = add_common_options(compare, &opt);
    compare->callback(
        [&]() { exit_code = cmd_compare(opt, build_config(opt, cmp_h), command); });

    CLI::App* matrix = app.add_subcommand("matrix", "Sweep the eight benchmark starts");
    OptionHandles mat_h = add_common_options(matrix, &opt);
    matrix->add_flag("--serial", opt.serial, "Disable the parallel sweep");
    matrix->callback([&]() { exit_code = cmd_matrix(opt, build_config(opt, mat_h), command); });

    CLI::App* selftest = app.add_subcommand("selftest", "Fast invariant probes");
    selftest->add_option("--threads", opt.threads, "OpenMP thread cap")
        ->envname("SMFBENCH_THREADS");
    selftest->callback([&]() { exit_code = cmd_selftest(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "smfbench: error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
