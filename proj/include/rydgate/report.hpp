#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "rydgate/config.hpp"
#include "rydgate/error_budget.hpp"
#include "rydgate/optimizer.hpp"

namespace rydgate {

using Cell = std::variant<Real, long long, std::string>;

struct Table {
  std::string name;  ///< file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// `header` (already `#`-prefixed) then a column line and one line per row.
std::string to_csv(const Table& table, const std::string& header);
/// {"metadata": {resolved config}, "columns": [...], "rows": [[...]]}.
std::string to_json(const Table& table, const ExperimentConfig& config);

/// Writes <dir>/<name>.csv and, when `json` is set, <dir>/<name>.json.
/// Returns the paths written.
std::vector<std::filesystem::path> write_table(const Table& table, const ExperimentConfig& config,
                                               const std::filesystem::path& dir, bool json);

Table gate_table(const GateResult& gate);
Table optimization_table(const OptimizationResult& result);
Table trace_table(const OptimizationResult& result);
Table sweep_table(const std::string& variable, const std::vector<SweepPoint>& points);
Table budget_table(const ErrorBudget& budget);

/// Plot-ready data for one figure. fig2d, fig3 and fig4 take optimizer
/// sweeps over blockade, width and kappa; fig5a, fig5b and fig5c take decay,
/// recoil and vdW mechanism sweeps. Throws std::invalid_argument on an empty
/// set or a set that does not match the figure.
Table figure_table(FigureId figure, const std::string& variable, const std::vector<SweepPoint>& points);
Table figure_table(FigureId figure, Mechanism mechanism, const std::vector<MechanismSweepPoint>& points);

}  // namespace rydgate
