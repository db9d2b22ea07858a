#ifndef SMF_REPORT_HPP
#define SMF_REPORT_HPP

#include "smf/harness.hpp"

#include <string>
#include <vector>

namespace smf {

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_full(double v);

std::string to_string(FilterKind kind);
std::string to_string(Side side);
std::string to_string(InnovationMode mode);
std::string gain_label(const GainStrategy& strategy);

/// Per-step trajectory log. All numeric fields are written with full
/// precision; only step_seconds varies between identically seeded runs.
void write_run_csv(const std::string& path, const RunResult& run);

/// Single-filter metric summary, one data row.
void write_metrics_csv(const std::string& path, const ExperimentConfig& config,
                       const MetricsReport& metrics);

/// Side-by-side rows with baseline-vs-invariant improvement columns.
void write_comparison_csv(const std::string& path, const std::vector<std::string>& names,
                          const std::vector<const ComparisonResult*>& rows,
                          const std::vector<const ExperimentConfig*>& configs);

/// Reproducibility sidecar: seed policy, noise model, gain policy, shapes.
void write_metadata_json(const std::string& path, const ExperimentConfig& config,
                         const std::string& command);

}  // namespace smf

#endif
