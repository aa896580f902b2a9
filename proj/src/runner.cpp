#include "rydgate/runner.hpp"

#include <algorithm>
#include <ostream>

#include "rydgate/errors.hpp"
#include "rydgate/report.hpp"

namespace rydgate {

namespace {

void emit(RunOutcome& out, const Table& t, const ExperimentConfig& c, const std::filesystem::path& dir, bool json) {
  for (auto& p : write_table(t, c, dir, json)) out.files.push_back(std::move(p));
}

bool wants(const ExperimentConfig& c, FigureId f) {
  return std::find(c.figures.begin(), c.figures.end(), f) != c.figures.end();
}

RunOutcome simulate_mode(const ExperimentConfig& c, const std::filesystem::path& dir, bool json, std::ostream& log) {
  RunOutcome out;
  GateModel model;
  model.blockade = c.effective_blockade();
  PulseEvaluation e;
  e.gate = simulate_gate(assemble_hamiltonian(build_space(), model, c.pulse), c.simulation);
  e.bell_infidelity = std::max<Real>(0.0, 1.0 - bell_fidelity_from_amplitudes(e.gate.amplitude));
  e.max_leakage = e.gate.max_leakage();
  e.phase_error = e.gate.phase_condition_error();
  e.mean_rydberg_time = e.gate.mean_rydberg_time;
  Table summary{"summary",
                {"V_over_Omega0", "bell_infidelity", "max_leakage", "phase_error", "T_r_mean", "T_rr",
                 "T_rr_perturbative", "bandwidth"},
                {}};
  summary.add({c.effective_blockade(), e.bell_infidelity, e.max_leakage, e.phase_error, e.mean_rydberg_time,
               e.gate.double_rydberg_time, perturbative_trr(e.gate.rydberg_time[3], c.effective_blockade()),
               bandwidth_estimate(c.pulse)});
  emit(out, gate_table(e.gate), c, dir, json);
  emit(out, summary, c, dir, json);
  log << "bell infidelity " << e.bell_infidelity << ", phase error " << e.phase_error << ", mean Rydberg time "
      << e.mean_rydberg_time << "\n";
  return out;
}

RunOutcome optimize_mode(const ExperimentConfig& c, const std::filesystem::path& dir, bool json, std::ostream& log) {
  RunOutcome out;
  const OptimizationProblem p = c.problem();
  const OptimizationResult r = c.pulse.family() == PulseFamily::DCRAB
                                   ? dcrab_optimize(p, c.dcrab_superiterations, c.seed)
                                   : direct_search(p, c.seed);
  emit(out, optimization_table(r), c, dir, json);
  if (!r.trace.empty()) emit(out, trace_table(r), c, dir, json);
  if (!r.superiteration_best.empty()) {
    Table s{"superiterations", {"superiteration", "best_objective"}, {}};
    for (std::size_t i = 0; i < r.superiteration_best.size(); ++i) {
      s.add({static_cast<long long>(i), r.superiteration_best[i]});
    }
    emit(out, s, c, dir, json);
  }
  log << (r.feasible ? "feasible" : "infeasible") << ": tau " << r.tau() << ", mean Rydberg time "
      << r.mean_rydberg_time() << ", infidelity " << r.infidelity() << "\n";
  if (!r.feasible) out.exit_code = kExitInfeasible;
  return out;
}

RunOutcome sweep_mode(const ExperimentConfig& c, const std::filesystem::path& dir, bool json, std::ostream& log) {
  RunOutcome out;
  const auto points = sweep(c.problem(), c.sweep_variable, c.sweep_grid, c.seed);
  emit(out, sweep_table(c.sweep_variable, points), c, dir, json);
  for (FigureId f : c.figures) {
    try {
      emit(out, figure_table(f, c.sweep_variable, points), c, dir, json);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  int infeasible = 0;
  for (const auto& p : points) infeasible += p.result.feasible ? 0 : 1;
  log << points.size() << " sweep points, " << infeasible << " flagged infeasible\n";
  return out;
}

RunOutcome budget_mode(const ExperimentConfig& c, const std::filesystem::path& dir, bool json, std::ostream& log) {
  RunOutcome out;
  const ErrorBudget b = full_budget(c.system, c.pulse, c.temperatures, c.budget_full, c.mechanism_options());
  emit(out, budget_table(b), c, dir, json);
  for (std::size_t k = 0; k < b.temperatures.size(); ++k) {
    log << "T = " << b.temperatures[k] * 1e6 << " uK: summed Bell infidelity " << b.summed_bell[k] << "\n";
  }
  if (b.has_full) log << "full model Bell infidelity " << b.full_bell << "\n";

  const struct {
    FigureId figure;
    Mechanism mechanism;
    const std::vector<Real>* grid;
  } panels[] = {{FigureId::Fig5a, Mechanism::Decay, &c.fig5a_grid},
                {FigureId::Fig5b, Mechanism::Recoil, &c.fig5b_grid},
                {FigureId::Fig5c, Mechanism::Vdw, &c.fig5c_grid}};
  for (const auto& panel : panels) {
    if (!wants(c, panel.figure)) continue;
    if (panel.grid->empty()) {
      throw ConfigError(std::string(to_string(panel.figure)) + " requested with an empty grid");
    }
    const auto points =
        mechanism_sweep(panel.mechanism, c.system, c.pulse, *panel.grid, c.fig5_temperatures, c.mechanism_options());
    emit(out, figure_table(panel.figure, panel.mechanism, points), c, dir, json);
    log << to_string(panel.figure) << ": " << points.size() << " points\n";
  }
  return out;
}

}  // namespace

RunOutcome run(const ExperimentConfig& config, const std::filesystem::path& out_dir, bool json, std::ostream& log) {
  try {
    switch (config.mode) {
      case Mode::Simulate:
        return simulate_mode(config, out_dir, json, log);
      case Mode::Optimize:
        return optimize_mode(config, out_dir, json, log);
      case Mode::Sweep:
        return sweep_mode(config, out_dir, json, log);
      case Mode::Budget:
        return budget_mode(config, out_dir, json, log);
    }
  } catch (const ConvergenceError& e) {
    log << "numerical failure: " << e.what() << "\n";
    return {kExitConvergence, {}};
  } catch (const InfeasibleError& e) {
    log << "infeasible: " << e.what() << "\n";
    return {kExitInfeasible, {}};
  }
  return {kExitConfig, {}};
}

}  // namespace rydgate
