#pragma once

#include <string>

#include "nsopt/harness.hpp"

namespace nsopt {

struct LoadedExperiment {
  ExperimentConfig config;
  /// the config with every default filled in, echoed for reproducibility
  std::string resolved_json;
};

/// Builds an experiment from its JSON description. See README for the
/// schema; unknown keys are rejected so typos fail loudly.
LoadedExperiment load_experiment_json_text(const std::string& text);
LoadedExperiment load_experiment_json_file(const std::string& path);

}  // namespace nsopt
