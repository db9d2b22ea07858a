#ifndef SMF_PRESETS_HPP
#define SMF_PRESETS_HPP

#include "smf/harness.hpp"

#include <string>
#include <vector>

namespace smf {

/// Benchmark scenario defaults (circular trajectory, shared noise shape).
ExperimentConfig benchmark_defaults();

/// Apply a named preset ("table1-row1".."table1-row8" set the initial
/// estimate; "table2" sets the worst-case start plus the pole strategy).
/// Returns false for unknown names.
bool apply_preset(ExperimentConfig* config, const std::string& name);

std::vector<std::string> preset_names();

/// The eight initial-estimate rows as matrix rows sharing everything else
/// with the base configuration.
std::vector<MatrixRow> benchmark_matrix(const ExperimentConfig& base);

}  // namespace smf

#endif
