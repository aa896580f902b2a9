#include "rydgate/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rydgate/errors.hpp"
#include "rydgate/nelder_mead.hpp"

namespace rydgate {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

// Penalty slope of the Rydberg-time objective per e-fold of constraint violation.
constexpr Real kRydbergPenalty = 10.0;

// Anchor search grows tau by this factor at most this many times.
constexpr Real kAnchorGrowth = 1.02;
constexpr int kAnchorSteps = 15;

// Restarts are skipped when the first local run ends this far above threshold.
constexpr Real kHopeless = 30.0;

// dCRAB components added per super-iteration.
constexpr int kDcrabComponents = 4;

Real default_step(std::string_view name) {
  if (name == "tau") return 0.05;
  if (name == "height" || name == "base") return 0.1;
  if (name == "kappa") return 0.02;
  return 0.05;
}

bool is_component(std::string_view name, int& index) {
  if (name.size() < 2 || name[0] != 'c') return false;
  index = 0;
  for (char ch : name.substr(1)) {
    if (ch < '0' || ch > '9') return false;
    index = index * 10 + (ch - '0');
  }
  return true;
}

enum class Goal { Merit, Infidelity, RydbergTime };

struct Candidate {
  std::vector<Real> params;
  PulseEvaluation eval;
  Real value = kInf;
};

class Search {
 public:
  Search(const OptimizationProblem& problem, std::uint64_t seed)
      : problem_(problem), names_(parameter_names(problem.initial)), rng_(seed) {
    if (problem.threshold <= 0.0) throw std::invalid_argument("feasibility threshold must be positive");
    for (const auto& name : names_) {
      auto b = default_bounds(name);
      for (const auto& [n, override_bounds] : problem.bounds) {
        if (n == name) b = override_bounds;
      }
      if (!std::isfinite(b.first) || !std::isfinite(b.second) || b.first >= b.second) {
        throw std::invalid_argument("invalid bounds for parameter " + name);
      }
      lower_.push_back(b.first);
      upper_.push_back(b.second);
      step_.push_back(default_step(name));
      fixed_.push_back(std::find(problem.fixed.begin(), problem.fixed.end(), name) != problem.fixed.end());
    }
    for (const auto& f : problem.fixed) {
      if (std::find(names_.begin(), names_.end(), f) == names_.end() && f != "blockade") {
        throw std::invalid_argument("unknown fixed parameter " + f);
      }
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  bool fixed(int i) const { return fixed_[i]; }
  Real upper(int i) const { return upper_[i]; }
  long evaluations() const { return evaluations_; }
  std::vector<TracePoint>& trace() { return trace_; }
  std::mt19937_64& rng() { return rng_; }

  void reset_names(const PulseShape& pulse) {
    names_ = parameter_names(pulse);
    while (lower_.size() < names_.size()) {
      const auto b = default_bounds(names_[lower_.size()]);
      lower_.push_back(b.first);
      upper_.push_back(b.second);
      step_.push_back(default_step(names_[step_.size()]));
      fixed_.push_back(false);
    }
  }

  PulseShape pulse_for(const std::vector<Real>& params) const {
    PulseShape p = problem_.initial;
    if (p.family() == PulseFamily::DCRAB) p.detail = pattern_.detail;
    set_parameters(p, params);
    return p;
  }

  void set_pattern(const PulseShape& pattern) { pattern_ = pattern; }

  Real merit(const PulseEvaluation& e) const {
    const Real r = e.phase_error / problem_.phase_tolerance;
    return e.infidelity + problem_.threshold * r * r;
  }

  PulseEvaluation evaluate(const std::vector<Real>& params, bool observables) {
    ++evaluations_;
    return evaluate_pulse(pulse_for(params), blockade_, observables);
  }

  Real goal_value(Goal goal, const PulseEvaluation& e) const {
    switch (goal) {
      case Goal::Merit:
        return merit(e);
      case Goal::Infidelity:
        return e.infidelity;
      case Goal::RydbergTime: {
        const Real m = merit(e);
        const Real violation = m > problem_.threshold ? std::log(m / problem_.threshold) : 0.0;
        return e.mean_rydberg_time + kRydbergPenalty * violation;
      }
    }
    return kInf;
  }

  // Local simplex run over the `free` indices of `start`.
  Candidate local(const std::vector<Real>& start, const std::vector<int>& free, Goal goal, Real target, Real scale) {
    const bool observables = goal == Goal::RydbergTime;
    Candidate best;
    auto full_from = [&](const RVector& x, Real& penalty) {
      std::vector<Real> params = start;
      penalty = 0.0;
      for (std::size_t k = 0; k < free.size(); ++k) {
        const int i = free[k];
        const Real v = std::clamp(x(k), lower_[i], upper_[i]);
        penalty += std::abs(x(k) - v);
        params[i] = v;
      }
      return params;
    };
    auto f = [&](const RVector& x) {
      Real penalty = 0.0;
      std::vector<Real> params = full_from(x, penalty);
      PulseEvaluation e = evaluate(params, observables);
      Real value = goal_value(goal, e);
      if (penalty > 0.0) value += 1.0 + penalty;
      if (value < best.value) best = Candidate{params, e, value};
      Real& record = trace_best_[static_cast<int>(goal)];
      if (value < record) {
        record = value;
        trace_.push_back(TracePoint{evaluations_, value, params});
      }
      return value;
    };
    if (free.empty()) {
      f(RVector(0));
      return best;
    }
    RVector x0(free.size()), step(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
      x0(k) = start[free[k]];
      step(k) = step_[free[k]] * scale;
    }
    NelderMeadOptions opts;
    opts.max_evaluations = problem_.max_evaluations;
    opts.f_tolerance = 1e-16;
    opts.x_tolerance = 1e-10;
    opts.f_target = target;
    nelder_mead(f, x0, step, opts);
    return best;
  }

  // A local run followed by one restart from the best point with a shrunken
  // simplex, which is what actually converges NM on these landscapes.
  Candidate refine(const std::vector<Real>& start, const std::vector<int>& free, Goal goal, Real target) {
    Candidate c = local(start, free, goal, target, 1.0);
    if (c.value <= target) return c;
    Candidate d = local(c.params, free, goal, target, 0.02);
    return d.value < c.value ? d : c;
  }

  // refine() from `start`, then from `restarts` seeded perturbations of the
  // running best. Stops early once `stop` holds for the best candidate.
  Candidate multistart(const std::vector<Real>& start, const std::vector<int>& free, Goal goal, Real target,
                       int restarts, const std::function<bool(const Candidate&)>& stop) {
    Candidate best = refine(start, free, goal, target);
    if (goal == Goal::Merit && best.value > kHopeless * problem_.threshold) return best;
    std::normal_distribution<Real> normal(0.0, 1.0);
    for (int r = 0; r < restarts && !stop(best); ++r) {
      std::vector<Real> s = best.params;
      for (int i : free) s[i] = std::clamp(s[i] + 2.0 * step_[i] * normal(rng_), lower_[i], upper_[i]);
      Candidate c = refine(s, free, goal, target);
      if (c.value < best.value) best = c;
    }
    return best;
  }

  std::vector<int> free_indices(bool include_tau) const {
    std::vector<int> free;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (fixed_[i]) continue;
      if (!include_tau && names_[i] == "tau") continue;
      free.push_back(static_cast<int>(i));
    }
    return free;
  }

  void set_blockade(Real v) { blockade_ = v; }

  OptimizationResult finish(const Candidate& c, bool feasible) {
    OptimizationResult r;
    r.pulse = pulse_for(c.params);
    r.names = names_;
    r.parameters = c.params;
    r.evaluation = evaluate_pulse(r.pulse, blockade_, true);
    ++evaluations_;
    r.feasible = feasible && is_feasible(r.evaluation, problem_);
    r.evaluations = evaluations_;
    r.trace = trace_;
    return r;
  }

  const OptimizationProblem& problem() const { return problem_; }

 private:
  const OptimizationProblem& problem_;
  std::vector<std::string> names_;
  std::vector<Real> lower_, upper_, step_;
  std::vector<bool> fixed_;
  std::mt19937_64 rng_;
  long evaluations_ = 0;
  std::vector<TracePoint> trace_;
  std::array<Real, 3> trace_best_{kInf, kInf, kInf};  ///< per goal
  Real blockade_ = 0.0;
  PulseShape pattern_;
};

// Shortest feasible tau reachable from `anchor` (already feasible) by
// bisection down to `lower`.
Candidate bisect_duration(Search& s, Candidate anchor, Real lower, const std::vector<int>& free, int restarts) {
  const auto& p = s.problem();
  auto feasible = [&](const Candidate& c) { return is_feasible(c.eval, p); };
  Real lo = lower, hi = anchor.params[0];
  Candidate best = anchor;
  while (hi - lo > p.tau_resolution) {
    const Real mid = 0.5 * (lo + hi);
    std::vector<Real> start = best.params;
    start[0] = mid;
    Candidate c = s.multistart(start, free, Goal::Merit, 0.5 * p.threshold, restarts, feasible);
    if (feasible(c)) {
      hi = mid;
      best = c;
    } else {
      lo = mid;
    }
  }
  return best;
}

// Polishes the infidelity at the final tau from every restart and keeps the
// feasible solution with the smallest mean Rydberg time.
Candidate polish_at_duration(Search& s, const Candidate& c, const std::vector<int>& free, int restarts) {
  const auto& p = s.problem();
  std::vector<Candidate> pool{c};
  pool.push_back(s.refine(c.params, free, Goal::Merit, -kInf));
  std::normal_distribution<Real> normal(0.0, 1.0);
  for (int r = 0; r < restarts; ++r) {
    std::vector<Real> start = c.params;
    for (int i : free) start[i] += 0.5 * default_step(s.names()[i]) * normal(s.rng());
    pool.push_back(s.refine(start, free, Goal::Merit, -kInf));
  }
  Candidate best;
  Real best_time = kInf;
  for (auto& cand : pool) {
    if (!is_feasible(cand.eval, p)) continue;
    const PulseEvaluation e = s.evaluate(cand.params, true);
    if (e.mean_rydberg_time < best_time - 1e-9 ||
        (std::abs(e.mean_rydberg_time - best_time) <= 1e-9 && s.merit(e) < best.value)) {
      best_time = e.mean_rydberg_time;
      best = Candidate{cand.params, e, s.merit(e)};
    }
  }
  return best_time < kInf ? best : c;
}

struct AnchorResult {
  Candidate candidate;
  bool feasible = false;
};

AnchorResult find_anchor(Search& s, std::vector<Real> start, const std::vector<int>& free, int restarts) {
  const auto& p = s.problem();
  auto feasible = [&](const Candidate& c) { return is_feasible(c.eval, p); };
  Candidate best;
  for (int k = 0; k <= kAnchorSteps; ++k) {
    Candidate c = s.multistart(start, free, Goal::Merit, 0.5 * p.threshold, restarts, feasible);
    if (c.value < best.value || feasible(c)) best = c;
    if (feasible(c)) return {c, true};
    if (k == 0) {
      // Fixed-duration solutions can sit in a window narrower than one growth step.
      const auto with_tau = s.free_indices(true);
      if (with_tau.size() > free.size()) {
        Candidate t = s.multistart(c.params, with_tau, Goal::Merit, 0.5 * p.threshold, restarts, feasible);
        if (feasible(t)) return {t, true};
        if (t.value < c.value) c = t;
        if (c.value < best.value) best = c;
      }
    }
    start = c.params;
    start[0] = std::min(start[0] * kAnchorGrowth, s.upper(0));
  }
  return {best, false};
}

OptimizationResult run_direct(Search& s, const OptimizationProblem& p) {
  const std::vector<Real> start = get_parameters(p.initial);
  const bool tau_free = !s.fixed(0);
  auto feasible = [&](const Candidate& c) { return is_feasible(c.eval, p); };

  switch (p.objective) {
    case Objective::MinBellInfidelity: {
      Candidate c = s.multistart(start, s.free_indices(tau_free), Goal::Infidelity, -kInf, p.restarts,
                                 [](const Candidate&) { return false; });
      return s.finish(c, true);
    }
    case Objective::MinDurationFeasible: {
      const auto free = s.free_indices(false);
      AnchorResult anchor = find_anchor(s, start, free, p.restarts);
      if (!anchor.feasible) return s.finish(anchor.candidate, false);
      if (!tau_free) return s.finish(polish_at_duration(s, anchor.candidate, free, 0), true);
      const Real lower = p.tau_lower > 0.0 ? p.tau_lower : 0.9 * anchor.candidate.params[0];
      Candidate best = bisect_duration(s, anchor.candidate, lower, free, p.restarts);
      return s.finish(polish_at_duration(s, best, free, p.restarts), true);
    }
    case Objective::MinRydbergTime: {
      const auto free = s.free_indices(tau_free);
      AnchorResult anchor = find_anchor(s, start, s.free_indices(false), p.restarts);
      if (!anchor.feasible) return s.finish(anchor.candidate, false);
      Candidate best{anchor.candidate.params, s.evaluate(anchor.candidate.params, true), kInf};
      best.value = s.goal_value(Goal::RydbergTime, best.eval);
      Candidate c = s.multistart(best.params, free, Goal::RydbergTime, -kInf, p.restarts,
                                 [](const Candidate&) { return false; });
      if (c.value < best.value && feasible(c)) best = c;
      // Tighten the infidelity at the chosen duration.
      Candidate polished = s.refine(best.params, s.free_indices(false), Goal::Merit, -kInf);
      if (feasible(polished)) {
        const PulseEvaluation e = s.evaluate(polished.params, true);
        if (e.mean_rydberg_time <= best.eval.mean_rydberg_time + 1e-4) best = Candidate{polished.params, e, 0.0};
      }
      return s.finish(best, feasible(best));
    }
  }
  throw std::logic_error("unhandled objective");
}

}  // namespace

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::MinDurationFeasible:
      return "min_duration";
    case Objective::MinBellInfidelity:
      return "min_infidelity";
    case Objective::MinRydbergTime:
      return "min_rydberg_time";
  }
  return "?";
}

Objective parse_objective(std::string_view text) {
  for (auto o : {Objective::MinDurationFeasible, Objective::MinBellInfidelity, Objective::MinRydbergTime}) {
    if (to_string(o) == text) return o;
  }
  throw std::invalid_argument("unknown objective: " + std::string(text));
}

PulseEvaluation evaluate_pulse(const PulseShape& pulse, Real blockade, bool observables) {
  static const HilbertSpace space = build_space();
  GateModel model;
  model.blockade = blockade;
  const EffectiveHamiltonian h = assemble_hamiltonian(space, model, pulse);
  SimulationOptions opts;
  opts.integrator.record_observables = observables;
  PulseEvaluation e;
  try {
    e.gate = simulate_gate(h, opts);
  } catch (const ConvergenceError&) {
    return e;
  }
  e.bell_infidelity = std::max<Real>(0.0, 1.0 - bell_fidelity_from_amplitudes(e.gate.amplitude));
  e.max_leakage = e.gate.max_leakage();
  e.phase_error = e.gate.phase_condition_error();
  e.infidelity = e.bell_infidelity + e.max_leakage;
  e.mean_rydberg_time = e.gate.mean_rydberg_time;
  return e;
}

std::vector<std::string> parameter_names(const PulseShape& pulse) {
  std::vector<std::string> names{"tau", "delta0"};
  switch (pulse.family()) {
    case PulseFamily::DeltaJump:
      names.push_back("phase");
      break;
    case PulseFamily::Triangle:
      names.insert(names.end(), {"height", "base"});
      break;
    case PulseFamily::Gaussian:
      names.insert(names.end(), {"amplitude", "width"});
      break;
    case PulseFamily::GaussianRamped:
      names.insert(names.end(), {"amplitude", "width", "kappa"});
      break;
    case PulseFamily::DCRAB: {
      names.insert(names.end(), {"amplitude", "width"});
      const auto& b = std::get<DCRABBasis>(pulse.detail);
      for (int k = 0; k < b.n_components(); ++k) names.push_back("c" + std::to_string(k));
      break;
    }
  }
  return names;
}

Real get_parameter(const PulseShape& pulse, std::string_view name) {
  if (name == "tau") return pulse.tau;
  if (name == "delta0") return pulse.delta0;
  int k = 0;
  if (const auto* d = std::get_if<DeltaJumpShape>(&pulse.detail)) {
    if (name == "phase") return d->phase;
  } else if (const auto* t = std::get_if<TriangleShape>(&pulse.detail)) {
    if (name == "height") return t->height;
    if (name == "base") return t->base;
  } else if (const auto* g = std::get_if<GaussianShape>(&pulse.detail)) {
    if (name == "amplitude") return g->amplitude;
    if (name == "width") return g->width;
  } else if (const auto* r = std::get_if<GaussianRampedShape>(&pulse.detail)) {
    if (name == "amplitude") return r->amplitude;
    if (name == "width") return r->width;
    if (name == "kappa") return r->kappa;
  } else if (const auto* c = std::get_if<DCRABBasis>(&pulse.detail)) {
    if (name == "amplitude") return c->seed.amplitude;
    if (name == "width") return c->seed.width;
    if (is_component(name, k) && k < c->n_components()) return c->amplitudes[k];
  }
  throw std::invalid_argument("pulse family " + std::string(to_string(pulse.family())) + " has no parameter " +
                              std::string(name));
}

void set_parameter(PulseShape& pulse, std::string_view name, Real value) {
  if (name == "tau") {
    pulse.tau = value;
    return;
  }
  if (name == "delta0") {
    pulse.delta0 = value;
    return;
  }
  int k = 0;
  Real* slot = nullptr;
  if (auto* d = std::get_if<DeltaJumpShape>(&pulse.detail)) {
    if (name == "phase") slot = &d->phase;
  } else if (auto* t = std::get_if<TriangleShape>(&pulse.detail)) {
    if (name == "height") slot = &t->height;
    if (name == "base") slot = &t->base;
  } else if (auto* g = std::get_if<GaussianShape>(&pulse.detail)) {
    if (name == "amplitude") slot = &g->amplitude;
    if (name == "width") slot = &g->width;
  } else if (auto* r = std::get_if<GaussianRampedShape>(&pulse.detail)) {
    if (name == "amplitude") slot = &r->amplitude;
    if (name == "width") slot = &r->width;
    if (name == "kappa") slot = &r->kappa;
  } else if (auto* c = std::get_if<DCRABBasis>(&pulse.detail)) {
    if (name == "amplitude") slot = &c->seed.amplitude;
    if (name == "width") slot = &c->seed.width;
    if (is_component(name, k) && k < c->n_components()) slot = &c->amplitudes[k];
  }
  if (slot == nullptr) {
    throw std::invalid_argument("pulse family " + std::string(to_string(pulse.family())) + " has no parameter " +
                                std::string(name));
  }
  *slot = value;
}

std::vector<Real> get_parameters(const PulseShape& pulse) {
  std::vector<Real> v;
  for (const auto& n : parameter_names(pulse)) v.push_back(get_parameter(pulse, n));
  return v;
}

void set_parameters(PulseShape& pulse, const std::vector<Real>& values) {
  const auto names = parameter_names(pulse);
  if (values.size() != names.size()) throw std::invalid_argument("parameter vector has the wrong length");
  for (std::size_t i = 0; i < names.size(); ++i) set_parameter(pulse, names[i], values[i]);
}

std::pair<Real, Real> default_bounds(std::string_view name) {
  if (name == "tau") return {0.5, 30.0};
  if (name == "delta0") return {-20.0, 20.0};
  if (name == "phase") return {-2.0 * kPi, 4.0 * kPi};
  if (name == "height" || name == "amplitude") return {-50.0, 50.0};
  if (name == "base" || name == "width") return {0.01, 15.0};
  if (name == "kappa") return {1e-3, 2.0};
  return {-10.0, 10.0};
}

bool is_feasible(const PulseEvaluation& e, const OptimizationProblem& problem) {
  return e.infidelity <= problem.threshold && std::abs(e.phase_error) <= problem.phase_tolerance;
}

OptimizationResult direct_search(const OptimizationProblem& problem, std::uint64_t seed) {
  if (parameter_names(problem.initial).size() > 12) throw std::invalid_argument("direct search takes at most 12 variables");
  Search s(problem, seed);
  s.set_blockade(problem.blockade);
  s.set_pattern(problem.initial);
  return run_direct(s, problem);
}

OptimizationResult dcrab_optimize(const OptimizationProblem& problem, int n_superiterations, std::uint64_t seed) {
  if (problem.initial.family() != PulseFamily::DCRAB) throw std::invalid_argument("dcrab_optimize needs a dcrab pulse");
  if (n_superiterations < 0) throw std::invalid_argument("super-iteration count must be non-negative");

  Search s(problem, seed);
  s.set_blockade(problem.blockade);
  s.set_pattern(problem.initial);
  const bool tau_free = std::find(problem.fixed.begin(), problem.fixed.end(), "tau") == problem.fixed.end();

  // Score to minimize; infeasible pulses rank behind every feasible one.
  auto score = [&](const Candidate& c) {
    switch (problem.objective) {
      case Objective::MinDurationFeasible:
        return is_feasible(c.eval, problem) ? c.params[0] : 1e3 + c.eval.infidelity;
      case Objective::MinBellInfidelity:
        return c.eval.infidelity;
      case Objective::MinRydbergTime:
        return s.goal_value(Goal::RydbergTime, c.eval);
    }
    return kInf;
  };

  PulseShape best_pulse = problem.initial;
  std::vector<Real> params = get_parameters(best_pulse);
  Candidate best{params, s.evaluate(params, true), 0.0};
  best.value = score(best);
  std::vector<Real> history{best.value};

  std::uniform_real_distribution<Real> uniform(0.0, 1.0);
  for (int it = 0; it < n_superiterations; ++it) {
    PulseShape trial = best_pulse;
    auto& basis = std::get<DCRABBasis>(trial.detail);
    const int first_new = basis.n_components();
    for (int k = 0; k < kDcrabComponents; ++k) {
      basis.frequencies.push_back(basis.max_frequency * (1.0 - uniform(s.rng())));
      basis.amplitudes.push_back(0.0);
    }
    s.set_pattern(trial);
    s.reset_names(trial);
    std::vector<int> free{1};
    for (int k = first_new; k < basis.n_components(); ++k) free.push_back(2 + 2 + k);
    std::vector<Real> start = get_parameters(trial);

    Candidate found;
    auto feasible = [&](const Candidate& c) { return is_feasible(c.eval, problem); };
    switch (problem.objective) {
      case Objective::MinDurationFeasible: {
        Candidate at_tau = s.multistart(start, free, Goal::Merit, 0.5 * problem.threshold, 0, feasible);
        if (!feasible(at_tau) || !tau_free) {
          found = at_tau;
          break;
        }
        const Real lower = problem.tau_lower > 0.0 ? problem.tau_lower : 0.97 * at_tau.params[0];
        found = bisect_duration(s, at_tau, lower, free, 0);
        break;
      }
      case Objective::MinBellInfidelity: {
        if (tau_free) free.insert(free.begin(), 0);
        found = s.multistart(start, free, Goal::Infidelity, -kInf, 0, [](const Candidate&) { return false; });
        break;
      }
      case Objective::MinRydbergTime: {
        if (tau_free) free.insert(free.begin(), 0);
        found = s.multistart(start, free, Goal::RydbergTime, -kInf, 0, [](const Candidate&) { return false; });
        break;
      }
    }
    found.eval = s.evaluate(found.params, true);
    found.value = score(found);
    if (found.value < best.value) {
      set_parameters(trial, found.params);
      best_pulse = trial;
      best = found;
    }
    history.push_back(best.value);
  }

  OptimizationResult r;
  r.pulse = best_pulse;
  r.names = parameter_names(best_pulse);
  r.parameters = get_parameters(best_pulse);
  r.evaluation = best.eval;
  r.feasible = is_feasible(best.eval, problem);
  r.evaluations = s.evaluations();
  r.trace = s.trace();
  r.superiteration_best = history;
  return r;
}

std::vector<SweepPoint> sweep(const OptimizationProblem& problem, std::string_view variable,
                              const std::vector<Real>& grid, std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  const bool is_blockade = variable == "blockade";
  if (!is_blockade) get_parameter(problem.initial, variable);

  std::vector<SweepPoint> out;
  OptimizationProblem p = problem;
  if (!is_blockade && std::find(p.fixed.begin(), p.fixed.end(), variable) == p.fixed.end()) {
    p.fixed.emplace_back(variable);
  }
  // A Gaussian keeps its detuning area when the width moves, so narrow
  // peaks start near the phase they have to imprint.
  const auto names = parameter_names(problem.initial);
  const bool keep_area =
      variable == "width" && std::find(names.begin(), names.end(), "amplitude") != names.end();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (is_blockade) {
      p.blockade = grid[i];
    } else {
      const Real before = get_parameter(p.initial, variable);
      set_parameter(p.initial, variable, grid[i]);
      if (keep_area && grid[i] > 0.0) {
        set_parameter(p.initial, "amplitude", get_parameter(p.initial, "amplitude") * before / grid[i]);
      }
    }
    SweepPoint pt{grid[i], direct_search(p, seed + i)};
    p.initial = pt.result.pulse;
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace rydgate
