#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rydgate/error_budget.hpp"
#include "rydgate/optimizer.hpp"

namespace rydgate {

enum class Mode { Simulate, Optimize, Sweep, Budget };
enum class FigureId { Fig2d, Fig3, Fig4, Fig5a, Fig5b, Fig5c };

std::string_view to_string(Mode mode);
std::string_view to_string(FigureId figure);
Mode parse_mode(std::string_view text);
FigureId parse_figure(std::string_view text);

/// Everything a run needs. Physical inputs keep SI units here; the text
/// format carries the unit in each key name.
struct ExperimentConfig {
  Mode mode = Mode::Simulate;
  std::uint64_t seed = 1;

  SystemConfig system;
  std::optional<Real> blockade;  ///< V / hbar Omega0, overrides the value derived from C6 and R

  PulseShape pulse;
  Objective objective = Objective::MinDurationFeasible;
  Real threshold = 1e-6;
  Real phase_tolerance = 1e-5;
  Real tau_resolution = 1e-3;
  Real tau_lower = 0.0;
  int restarts = 5;
  long max_evaluations = 600;
  std::vector<std::string> fixed;
  std::vector<std::pair<std::string, std::pair<Real, Real>>> bounds;
  int dcrab_superiterations = 0;

  std::string sweep_variable;
  std::vector<Real> sweep_grid;

  std::vector<Real> temperatures{0.0};  ///< K
  bool budget_full = true;
  std::vector<Real> fig5a_grid;         ///< decay rates, 1/s
  std::vector<Real> fig5b_grid;         ///< omega_z / 2 pi, Hz
  std::vector<Real> fig5c_grid;         ///< omega_x / 2 pi, Hz
  std::vector<Real> fig5_temperatures{0.0};

  std::vector<FigureId> figures;

  SimulationOptions simulation;
  MechanismOptions mechanism;

  Real effective_blockade() const;
  OptimizationProblem problem() const;
  MechanismOptions mechanism_options() const;  ///< carries `simulation` along
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, repeated
/// keys, malformed numbers and keys that do not apply to the pulse family
/// throw ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Applies `key=value` overrides on top of an existing text config.
ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides);

/// Canonical `key = value` lines for every setting, in a fixed order. Parsing
/// the result gives back an equivalent config.
std::string resolved_config(const ExperimentConfig& config);

/// The resolved config as `# `-prefixed lines under a version line, for the
/// top of every output file.
std::string output_header(const ExperimentConfig& config);

/// Recovers the config from an output file's header block.
ExperimentConfig parse_output_header(std::string_view text);

std::string_view version();

}  // namespace rydgate
