#include "smf/presets.hpp"

#include <array>
#include <numbers>

namespace smf {

namespace {

struct InitRow {
    const char* name;
    double theta;
    double x1;
    double x2;
};

constexpr double kPi = std::numbers::pi;

constexpr std::array<InitRow, 8> kTable1Rows = {{
    {"table1-row1", kPi / 2.0, 0.0, 0.0},
    {"table1-row2", kPi / 4.0, 0.0, 0.0},
    {"table1-row3", 0.0, 0.0, 0.0},
    {"table1-row4", kPi / 2.0, 5.0, 5.0},
    {"table1-row5", kPi / 4.0, 5.0, 5.0},
    {"table1-row6", 0.0, 5.0, 5.0},
    {"table1-row7", 0.0, 5.0, -5.0},
    {"table1-row8", 0.0, -5.0, 5.0},
}};

}  // namespace

ExperimentConfig benchmark_defaults() {
    return ExperimentConfig{};
}

bool apply_preset(ExperimentConfig* config, const std::string& name) {
    for (const auto& row : kTable1Rows) {
        if (name == row.name) {
            config->est_theta0 = row.theta;
            config->est_x0 = Eigen::Vector2d(row.x1, row.x2);
            return true;
        }
    }
    if (name == "table2") {
        config->est_theta0 = 0.0;
        config->est_x0 = Eigen::Vector2d(5.0, -5.0);
        config->strategy = PoleConfiguration{{{0.95, 0.0}, {0.98, 0.0}, {0.98, 0.0}}};
        return true;
    }
    return false;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& row : kTable1Rows) {
        names.emplace_back(row.name);
    }
    names.emplace_back("table2");
    return names;
}

std::vector<MatrixRow> benchmark_matrix(const ExperimentConfig& base) {
    std::vector<MatrixRow> rows;
    for (const auto& row : kTable1Rows) {
        ExperimentConfig config = base;
        config.est_theta0 = row.theta;
        config.est_x0 = Eigen::Vector2d(row.x1, row.x2);
        rows.push_back({row.name, std::move(config)});
    }
    return rows;
}

}  // namespace smf
