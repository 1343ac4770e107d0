#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace issprobe {

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::size_t pairs = 256;
  std::size_t state_items = 64;
  std::size_t input_items = 64;
  std::size_t mixed_items = 32;
  double r_local = 0.1;

  friend bool operator==(const SamplerConfig&, const SamplerConfig&) = default;
};

struct OutputConfig {
  std::string report;
  std::string csv;
  std::string terms;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// Experiment description shared by every subcommand. Stored as JSON with
/// `schema_version`; unknown keys are rejected.
struct ExperimentConfig {
  static constexpr int kSchemaVersion = 1;

  std::string system = "scalar_linear:a=0.5,d=1";
  std::string policy = "default";
  std::string reward = "linear:v=1,C=1";
  std::string reward_class = "linear:d=1,C=1";
  std::vector<std::string> schedules{"constant:0.8"};
  std::vector<double> x{1.0};
  std::vector<double> u;
  std::vector<double> dx;
  std::vector<double> du;
  std::size_t start_time = 0;
  std::size_t horizon = 30;
  double eps = 1e-9;
  double alpha = 1.0;
  std::vector<double> rho_grid{0.25, 0.5, 1.0, 2.0};
  double c1_cap = 1e6;
  std::vector<double> tau{1e-1, 1e-2, 1e-3};
  std::vector<std::size_t> reverse_times{1, 2, 3, 4, 5, 6, 7, 8};
  SamplerConfig sampler;
  OutputConfig outputs;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ConfigError naming the field and, when known, the line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string emit_config(const ExperimentConfig& config);

/// FNV-1a of the emitted config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace issprobe
