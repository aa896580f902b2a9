#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rydgate/gate_metrics.hpp"
#include "rydgate/pulses.hpp"

namespace rydgate {

enum class Objective { MinDurationFeasible, MinBellInfidelity, MinRydbergTime };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view text);

/// Gate quality of a pulse in the idealized three-level model (no motion,
/// no decay).
struct PulseEvaluation {
  Real infidelity = 1.0;        ///< Bell infidelity + max leakage
  Real bell_infidelity = 1.0;
  Real max_leakage = 1.0;
  Real phase_error = 0.0;       ///< phi11 - phi01 - phi10 - pi, wrapped
  Real mean_rydberg_time = 0.0; ///< only when observables were requested
  GateResult gate;
};

/// Runs the four computational inputs through the idealized Hamiltonian.
PulseEvaluation evaluate_pulse(const PulseShape& pulse, Real blockade, bool observables = false);

/// Names of the tunable parameters of a pulse, in vector order: "tau",
/// "delta0", then the family's own ("phase"; "height", "base"; "amplitude",
/// "width"; "amplitude", "width", "kappa"; "c0", "c1", ... for dCRAB).
std::vector<std::string> parameter_names(const PulseShape& pulse);
std::vector<Real> get_parameters(const PulseShape& pulse);
void set_parameters(PulseShape& pulse, const std::vector<Real>& values);
Real get_parameter(const PulseShape& pulse, std::string_view name);
void set_parameter(PulseShape& pulse, std::string_view name, Real value);

/// Default search interval for a parameter name.
std::pair<Real, Real> default_bounds(std::string_view name);

struct OptimizationProblem {
  Objective objective = Objective::MinDurationFeasible;
  PulseShape initial;                                   ///< family and starting point
  Real blockade = 21.1;                                 ///< V / hbar Omega0
  std::vector<std::string> fixed;                       ///< parameters held at their initial value
  std::vector<std::pair<std::string, std::pair<Real, Real>>> bounds;  ///< overrides of default_bounds
  Real threshold = 1e-6;                                ///< feasibility bound on the infidelity
  Real phase_tolerance = 1e-5;                          ///< required |phase_error| for feasibility
  Real tau_resolution = 1e-3;
  Real tau_lower = 0.0;                                 ///< bisection floor; 0 picks 0.9 tau_anchor
  int restarts = 5;
  long max_evaluations = 600;                           ///< per simplex run
};

struct TracePoint {
  long evaluation = 0;
  Real objective = 0.0;
  std::vector<Real> parameters;
};

struct OptimizationResult {
  PulseShape pulse;
  std::vector<std::string> names;
  std::vector<Real> parameters;
  PulseEvaluation evaluation;
  bool feasible = false;
  long evaluations = 0;
  std::vector<TracePoint> trace;           ///< one row per improvement of the running best, per search goal
  std::vector<Real> superiteration_best;   ///< dCRAB only

  Real tau() const { return pulse.tau; }
  Real infidelity() const { return evaluation.infidelity; }
  Real mean_rydberg_time() const { return evaluation.mean_rydberg_time; }
};

/// Simplex search with seeded restarts. MinDurationFeasible bisects tau
/// between tau_lower and a feasible anchor; an unreachable anchor returns
/// the best point with feasible = false.
OptimizationResult direct_search(const OptimizationProblem& problem, std::uint64_t seed);

/// Randomized cosine-basis search on top of problem.initial (DCRAB family).
/// Each super-iteration draws four fresh frequencies in (0, f_max], keeps
/// the new pulse only if it improves on the running best.
OptimizationResult dcrab_optimize(const OptimizationProblem& problem, int n_superiterations, std::uint64_t seed);

struct SweepPoint {
  Real value = 0.0;
  OptimizationResult result;
};

/// Re-optimizes at every grid value of `variable` (a pulse parameter name or
/// "blockade"), warm-starting from the previous point. Width sweeps rescale
/// the amplitude so the detuning area carries over.
std::vector<SweepPoint> sweep(const OptimizationProblem& problem, std::string_view variable,
                              const std::vector<Real>& grid, std::uint64_t seed);

bool is_feasible(const PulseEvaluation& e, const OptimizationProblem& problem);

}  // namespace rydgate
