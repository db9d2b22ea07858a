#include "smf/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace smf {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("report: cannot open '" + path + "' for writing.");
    }
    return out;
}

void append_metric_fields(std::string* line, const MetricsReport& m) {
    *line += format_full(m.rmse_theta) + "," + format_full(m.rmse_x) + "," +
             format_full(m.aar_theta) + "," + format_full(m.aar_x) + "," +
             format_full(m.art_seconds) + "," + format_full(m.containment_rate) + "," +
             format_full(m.containment_rate_settled);
}

constexpr const char* kMetricHeader =
    "rmse_theta,rmse_x,aar_theta,aar_x,art_seconds,containment_rate,containment_rate_settled";

}  // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_string(FilterKind kind) {
    return kind == FilterKind::zsmf ? "zsmf" : "inzsmf";
}

std::string to_string(Side side) {
    return side == Side::left ? "left" : "right";
}

std::string to_string(InnovationMode mode) {
    return mode == InnovationMode::standard ? "standard" : "alternative";
}

std::string gain_label(const GainStrategy& strategy) {
    return std::holds_alternative<PoleConfiguration>(strategy) ? "poles" : "fradius";
}

void write_run_csv(const std::string& path, const RunResult& run) {
    std::ofstream out = open_or_throw(path);
    out << "step,true_theta,true_x1,true_x2,est_theta,est_x1,est_x2,"
           "theta_lower,theta_upper,x1_lower,x1_upper,x2_lower,x2_upper,"
           "contained,step_seconds\n";
    for (const auto& rec : run.records) {
        std::string line = std::to_string(rec.step);
        line += "," + format_full(rec.truth(0)) + "," + format_full(rec.truth(1)) + "," +
                format_full(rec.truth(2));
        line += "," + format_full(rec.estimate(0)) + "," + format_full(rec.estimate(1)) + "," +
                format_full(rec.estimate(2));
        line += "," + format_full(rec.theta_lower) + "," + format_full(rec.theta_upper);
        line += "," + format_full(rec.x_lower(0)) + "," + format_full(rec.x_upper(0));
        line += "," + format_full(rec.x_lower(1)) + "," + format_full(rec.x_upper(1));
        line += rec.contained ? ",1" : ",0";
        line += "," + format_full(rec.step_seconds);
        out << line << "\n";
    }
}

void write_metrics_csv(const std::string& path, const ExperimentConfig& config,
                       const MetricsReport& metrics) {
    std::ofstream out = open_or_throw(path);
    out << "filter,gain," << kMetricHeader << "\n";
    std::string line = to_string(config.filter) + "," + gain_label(config.strategy) + ",";
    append_metric_fields(&line, metrics);
    out << line << "\n";
}

void write_comparison_csv(const std::string& path, const std::vector<std::string>& names,
                          const std::vector<const ComparisonResult*>& rows,
                          const std::vector<const ExperimentConfig*>& configs) {
    if (rows.size() != names.size() || rows.size() != configs.size()) {
        throw std::invalid_argument("write_comparison_csv: name/row/config counts differ.");
    }
    std::ofstream out = open_or_throw(path);
    out << "row,gain,filter," << kMetricHeader
        << ",improvement_rmse_theta,improvement_rmse_x,improvement_aar_theta,improvement_aar_x\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const MetricsReport& base = rows[i]->zsmf.metrics;
        const MetricsReport& inv = rows[i]->inzsmf.metrics;
        const std::string gain = gain_label(configs[i]->strategy);

        std::string line = names[i] + "," + gain + ",zsmf,";
        append_metric_fields(&line, base);
        line += ",,,,";
        out << line << "\n";

        line = names[i] + "," + gain + ",inzsmf,";
        append_metric_fields(&line, inv);
        line += "," + format_full(improvement_percent(base.rmse_theta, inv.rmse_theta));
        line += "," + format_full(improvement_percent(base.rmse_x, inv.rmse_x));
        line += "," + format_full(improvement_percent(base.aar_theta, inv.aar_theta));
        line += "," + format_full(improvement_percent(base.aar_x, inv.aar_x));
        out << line << "\n";
    }
}

void write_metadata_json(const std::string& path, const ExperimentConfig& config,
                         const std::string& command) {
    nlohmann::json j;
    j["command"] = command;
    j["seed"] = config.seed;
    j["seed_policy"] = "per-repetition seeds derived from the base seed by a splitmix64 mix";
    j["steps"] = config.steps;
    j["repetitions"] = config.repetitions;
    j["settle_steps"] = config.settle_steps;
    j["delta"] = config.delta;
    j["omega"] = config.omega;
    j["speed"] = config.speed;
    j["true_init"] = {{"theta", config.true_theta0},
                      {"x", {config.true_x0(0), config.true_x0(1)}}};
    j["estimate_init"] = {{"theta", config.est_theta0},
                          {"x", {config.est_x0(0), config.est_x0(1)}}};
    j["h0_diag"] = {config.h0_diag(0), config.h0_diag(1), config.h0_diag(2)};
    j["process_noise_diag"] = {config.process_noise(0), config.process_noise(1),
                               config.process_noise(2)};
    j["measurement_noise_diag"] = {config.measurement_noise(0), config.measurement_noise(1)};
    j["reduction_threshold"] = config.reduction_threshold;
    j["filter"] = to_string(config.filter);
    j["side"] = to_string(config.side);
    j["innovation"] = to_string(config.innovation);
    if (const auto* pc = std::get_if<PoleConfiguration>(&config.strategy)) {
        nlohmann::json poles = nlohmann::json::array();
        for (const auto& p : pc->poles) {
            poles.push_back({p.real(), p.imag()});
        }
        j["gain"] = {{"kind", "poles"}, {"poles", poles}};
    } else {
        j["gain"] = {{"kind", "fradius"}};
    }
    j["noise_model"] =
        "uniform i.i.d. draws over the noise-generator hypercubes; one process draw then one "
        "measurement draw per step";
    j["gain_policy"] =
        "invariant filter caches the placed gain per (a, c, poles) key; the baseline re-places "
        "every step; the F-radius gain is recomputed from the reduced generator every step";

    std::ofstream out = open_or_throw(path);
    out << j.dump(2) << "\n";
}

}  // namespace smf
