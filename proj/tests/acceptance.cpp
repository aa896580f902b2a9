// Acceptance report: one PASS/FAIL line per criterion with its measured
// values underneath, copied to the file named by the first argument. Exit status is non-zero when a criterion fails that is
// not listed as a known limitation.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "property_checks.hpp"
#include "rydgate/error_budget.hpp"
#include "rydgate/gate_metrics.hpp"
#include "rydgate/optimizer.hpp"

using namespace rydgate;

namespace {

constexpr Real kBlockade = 21.1;  // V / hbar Omega0 for the strontium setup

std::FILE* report_copy = nullptr;

// Writes to stdout and to the optional report file.
void out(const char* f, ...) {
  std::va_list args;
  va_start(args, f);
  std::va_list copy;
  va_copy(copy, args);
  std::vprintf(f, args);
  if (report_copy) std::vfprintf(report_copy, f, copy);
  va_end(copy);
  va_end(args);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Criterion {
 public:
  Criterion(int id, std::string title, std::string known_limitation = {})
      : id_(id), title_(std::move(title)), known_(std::move(known_limitation)), start_(clock::now()) {}

  // |measured - target| <= tolerance
  void near(const std::string& what, Real measured, Real target, Real tolerance, const char* f = "%.5g") {
    const bool ok = std::isfinite(measured) && std::abs(measured - target) <= tolerance;
    add(what + " = " + fmt(f, measured) + " (target " + fmt(f, target) + " +- " + fmt(f, tolerance) + ")", ok);
  }
  void below(const std::string& what, Real measured, Real bound, const char* f = "%.3g") {
    add(what + " = " + fmt(f, measured) + " (< " + fmt(f, bound) + ")", std::isfinite(measured) && measured < bound);
  }
  void add(const std::string& text, bool ok) { items_.push_back({text, ok}); }
  void note(const std::string& text) { notes_.push_back(text); }

  bool passed() const {
    for (const auto& i : items_) {
      if (!i.ok) return false;
    }
    return !items_.empty();
  }
  bool unexpected_failure() const { return !passed() && known_.empty(); }

  void print() const {
    const double seconds = std::chrono::duration<double>(clock::now() - start_).count();
    std::string status = passed() ? "PASS" : (known_.empty() ? "FAIL" : "FAIL (known limitation: " + known_ + ")");
    out("CRITERION %d %s: %s [%.0f s]\n", id_, title_.c_str(), status.c_str(), seconds);
    for (const auto& i : items_) out("    [%s] %s\n", i.ok ? "ok" : "FAIL", i.text.c_str());
    for (const auto& n : notes_) out("    note: %s\n", n.c_str());
    std::fflush(stdout);
    if (report_copy) std::fflush(report_copy);
  }

 private:
  using clock = std::chrono::steady_clock;
  struct Item {
    std::string text;
    bool ok;
  };
  int id_;
  std::string title_, known_;
  std::vector<Item> items_;
  std::vector<std::string> notes_;
  clock::time_point start_;
};

PulseShape pulse(Real tau, Real delta0, PulseDetail detail) {
  PulseShape p;
  p.tau = tau;
  p.delta0 = delta0;
  p.detail = std::move(detail);
  return p;
}

OptimizationProblem problem(Objective objective, Real threshold, PulseShape start) {
  OptimizationProblem p;
  p.objective = objective;
  p.threshold = threshold;
  p.blockade = kBlockade;
  p.initial = std::move(start);
  return p;
}

// Pulses found by the reproduction run, shared by later criteria.
struct Reproduced {
  OptimizationResult gaussian, triangle, ramped, jump;
};

Real mean_tr(const OptimizationResult& r) { return r.mean_rydberg_time(); }

std::string describe(const OptimizationResult& r) {
  std::string s = r.feasible ? "feasible" : "infeasible";
  s += ", tau " + fmt("%.5f", r.tau()) + ", T_r " + fmt("%.4f", mean_tr(r)) + ", infidelity " +
       fmt("%.3g", r.infidelity()) + ", phase error " + fmt("%.2g", r.evaluation.phase_error) + ";";
  for (std::size_t i = 0; i < r.names.size(); ++i) s += " " + r.names[i] + "=" + fmt("%.6g", r.parameters[i]);
  return s;
}

// ---------------------------------------------------------------------------

Criterion pulse_reproduction(Reproduced& out) {
  Criterion c(1, "pulse optimization reproduction",
              "at eps_F = 1e-6 the reported Gaussian basin floors near 8e-6; the feasible optimum moves to width ~0.5");

  // Feasibility bound 1e-6: best Gaussian from the reported basin and from
  // the narrow-width basin, judged against the same targets.
  OptimizationResult strict;
  for (const auto& start : {pulse(7.69, 1.2, GaussianShape{-1.85, 1.7}), pulse(7.71, 0.43, GaussianShape{-1.96, 0.5})}) {
    auto r = direct_search(problem(Objective::MinRydbergTime, 1e-6, start), 1);
    c.note("eps_F = 1e-6 from width " + fmt("%.2g", get_parameter(start, "width")) + ": " + describe(r));
    const bool better = r.feasible ? (!strict.feasible || mean_tr(r) < mean_tr(strict))
                                   : (!strict.feasible && r.infidelity() < strict.infidelity());
    if (strict.names.empty() || better) strict = r;
  }
  c.add("Gaussian at eps_F = 1e-6 feasible", strict.feasible);
  c.near("Gaussian at eps_F = 1e-6: tau", strict.tau(), 7.69, 0.02);
  c.near("Gaussian at eps_F = 1e-6: T_r", mean_tr(strict), 3.86, 0.02);
  c.near("Gaussian at eps_F = 1e-6: width", get_parameter(strict.pulse, "width"), 1.7, 0.1);

  // Reproduction of the reported durations and Rydberg times at eps_F = 1e-5.
  const auto t0 = std::chrono::steady_clock::now();
  out.gaussian = direct_search(
      problem(Objective::MinRydbergTime, 1e-5, pulse(7.69, 1.2, GaussianShape{-1.85, 1.7})), 1);
  out.triangle = direct_search(
      problem(Objective::MinRydbergTime, 1e-5, pulse(7.69, 0.8, TriangleShape{-1.65, 5.85})), 1);
  auto ramp = problem(Objective::MinRydbergTime, 1e-5, pulse(7.75, 1.2, GaussianRampedShape{-1.85, 1.69, 0.31}));
  ramp.fixed = {"kappa"};
  out.ramped = direct_search(ramp, 1);
  // Two parameters cannot meet three conditions at fixed tau; the jump
  // protocol is the minimal-infidelity point with tau free.
  out.jump = direct_search(problem(Objective::MinBellInfidelity, 1e-5, pulse(8.6, 0.377, DeltaJumpShape{3.902})), 1);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  c.note("Gaussian:  " + describe(out.gaussian));
  c.note("Triangle:  " + describe(out.triangle));
  c.note("ramped:    " + describe(out.ramped));
  c.note("DeltaJump: " + describe(out.jump));
  c.near("DeltaJump tau", out.jump.tau(), 8.53, 0.02);
  c.near("DeltaJump T_r", mean_tr(out.jump), 4.31, 0.02);
  c.near("Triangle tau", out.triangle.tau(), 7.69, 0.02);
  c.near("Triangle T_r", mean_tr(out.triangle), 3.86, 0.02);
  c.near("Gaussian tau", out.gaussian.tau(), 7.69, 0.02);
  c.near("Gaussian T_r", mean_tr(out.gaussian), 3.86, 0.02);
  c.near("Gaussian width", get_parameter(out.gaussian.pulse, "width"), 1.7, 0.1);
  c.near("ramped (kappa 0.31) T_r", mean_tr(out.ramped), 3.87, 0.02);
  c.near("T_r reduction of the Gaussian against DeltaJump", 1.0 - mean_tr(out.gaussian) / mean_tr(out.jump), 0.10,
         0.02, "%.4f");
  c.add("all eps_F = 1e-5 searches feasible except DeltaJump",
        out.gaussian.feasible && out.triangle.feasible && out.ramped.feasible);
  c.below("reproduction runtime [s]", seconds, 600.0, "%.0f");
  return c;
}

Criterion phase_gate(const Reproduced& r) {
  Criterion c(2, "phase-gate correctness of accepted pulses",
              "leakage floor 6e-6..7e-6 of the reproduced pulses exceeds 1e-6");
  for (const auto* p : {&r.gaussian, &r.triangle, &r.ramped, &r.jump}) {
    const std::string name = std::string(to_string(p->pulse.family()));
    if (!p->feasible) {
      c.note(name + " not accepted (infeasible), skipped");
      continue;
    }
    c.below(name + " |phase condition error|", std::abs(p->evaluation.phase_error), 1e-5);
    c.below(name + " max leakage", p->evaluation.max_leakage, 1e-6);
    c.note(name + " leakage below its eps_F = 1e-5: " + (p->evaluation.max_leakage < 1e-5 ? "yes" : "no"));
  }
  return c;
}

Criterion double_rydberg(const Reproduced& r) {
  Criterion c(3, "double-Rydberg time");
  const GateResult& g = r.gaussian.evaluation.gate;
  c.near("T_rr (Gaussian)", g.double_rydberg_time, 0.0045, 0.0005);
  const Real estimate = perturbative_trr(g.rydberg_time[3], kBlockade);
  c.below("|perturbative / numeric - 1|", std::abs(estimate / g.double_rydberg_time - 1.0), 0.25);
  c.note("perturbative estimate " + fmt("%.5f", estimate));
  return c;
}

Criterion sweeps(const Reproduced& r, OptimizationResult& slow_ramp) {
  Criterion c(4, "sweep behaviour");

  // Width sweep towards a delta peak: the area carries over between points.
  auto width = problem(Objective::MinBellInfidelity, 1e-5, r.gaussian.pulse);
  width.bounds = {{"amplitude", {-300.0, 300.0}}};
  const std::vector<Real> widths{1.7, 1.2, 0.8, 0.5, 0.3, 0.2, 0.1, 0.05, 0.02};
  const auto w = sweep(width, "width", widths, 3);
  std::string row;
  for (const auto& p : w) row += " " + fmt("%.3g", p.value) + ":" + fmt("%.4f", mean_tr(p.result));
  c.note("width sweep T_r:" + row);
  c.below("|T_r(w = " + fmt("%.3g", widths.back()) + ") / T_r(DeltaJump) - 1|",
          std::abs(mean_tr(w.back().result) / mean_tr(r.jump) - 1.0), 0.01);

  // Rise-time sweep.
  auto kappa = problem(Objective::MinRydbergTime, 1e-5, r.ramped.pulse);
  const std::vector<Real> kappas{0.31, 0.5, 0.75, 1.0, 1.2566};
  const auto k = sweep(kappa, "kappa", kappas, 5);
  row.clear();
  bool monotone = true;
  for (std::size_t i = 0; i < k.size(); ++i) {
    row += " " + fmt("%.3g", k[i].value) + ":" + fmt("%.4f", mean_tr(k[i].result));
    if (i && mean_tr(k[i].result) < mean_tr(k[i - 1].result) - 2e-3) monotone = false;
  }
  c.note("kappa sweep T_r:" + row);
  c.add("T_r non-decreasing in kappa (2e-3 noise allowance)", monotone);
  const Real growth = mean_tr(k.back().result) / mean_tr(k.front().result) - 1.0;
  c.add("growth from kappa 0.31 to 1.26 is mild: " + fmt("%.2f%%", 100.0 * growth), growth > 0.0 && growth < 0.1);
  slow_ramp = k.back().result;

  // Interaction sweep, strong to weak.
  auto blockade = problem(Objective::MinRydbergTime, 1e-5, r.gaussian.pulse);
  const std::vector<Real> vs{200.0, 100.0, 50.0, 21.1, 15.0, 10.0, 7.0, 5.0};
  const auto v = sweep(blockade, "blockade", vs, 7);
  row.clear();
  for (const auto& p : v) {
    row += " " + fmt("%.3g", p.value) + ":" + fmt("%.4f", mean_tr(p.result)) + (p.result.feasible ? "" : "*");
  }
  c.note("blockade sweep T_r (* = infeasible at eps_F = 1e-5):" + row);
  const Real plateau = mean_tr(v.front().result);
  bool approach = true;
  Real previous_gap = 0.0;
  for (std::size_t i = 0; i < v.size() && v[i].value >= 10.0; ++i) {
    const Real gap = std::abs(mean_tr(v[i].result) - plateau);
    if (gap + 2e-3 < previous_gap) approach = false;
    previous_gap = gap;
  }
  c.add("for V > 10 T_r approaches the strong-blockade value monotonically (2e-3 noise allowance)", approach);
  bool strong_feasible = true;
  for (const auto& p : v) {
    if (p.value >= 10.0 && !p.result.feasible) strong_feasible = false;
  }
  c.add("every point with V >= 10 feasible at eps_F = 1e-5", strong_feasible);
  int weak_infeasible = 0;
  for (const auto& p : v) {
    if (p.value < 10.0 && !p.result.feasible) ++weak_infeasible;
  }
  c.note(std::to_string(weak_infeasible) + " of the points below V = 10 flagged infeasible");

  // The stated 1e-6 bound is only reachable at strong interaction.
  auto strict = problem(Objective::MinRydbergTime, 1e-6, r.gaussian.pulse);
  strict.restarts = 1;
  const auto s = sweep(strict, "blockade", {100.0, 50.0, 21.1, 7.0}, 11);
  row.clear();
  for (const auto& p : s) row += " " + fmt("%.3g", p.value) + ":" + (p.result.feasible ? "feasible" : "infeasible");
  c.note("eps_F = 1e-6:" + row);
  c.add("V = 7 flagged infeasible at eps_F = 1e-6", !s.back().result.feasible);
  return c;
}

SystemConfig strontium() { return SystemConfig{}; }

Criterion budget(const Reproduced& r) {
  Criterion c(5, "error budget");
  const auto t0 = std::chrono::steady_clock::now();
  const ErrorBudget b = full_budget(strontium(), r.ramped.pulse, {0.0, 1.5e-6}, true);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Real pct = 100.0;
  const auto& decay = b.entry(Mechanism::Decay, 0.0);
  c.near("decay Bell [%]", pct * decay.numeric_bell, 0.092, 0.003, "%.4f");
  c.near("decay avg [%]", pct * decay.numeric_avg, 0.074, 0.003, "%.4f");
  c.near("recoil Bell at 0 uK [%]", pct * b.entry(Mechanism::Recoil, 0.0).numeric_bell, 0.008, 0.002, "%.4f");
  c.near("recoil Bell at 1.5 uK [%]", pct * b.entry(Mechanism::Recoil, 1.5e-6).numeric_bell, 0.011, 0.002, "%.4f");
  c.near("vdW Bell at 0 uK [%]", pct * b.entry(Mechanism::Vdw, 0.0).numeric_bell, 0.001, 0.0005, "%.5f");
  c.near("summed Bell at 0 uK [%]", pct * b.summed_bell[0], 0.101, 0.003, "%.4f");
  c.near("summed Bell at 1.5 uK [%]", pct * b.summed_bell[1], 0.105, 0.003, "%.4f");
  c.note("full simulation at 0 uK: Bell " + fmt("%.4f%%", pct * b.full_bell) + ", avg " + fmt("%.4f%%", pct * b.full_avg));
  c.near("|full - summed| Bell [%]", pct * std::abs(b.full_bell - b.summed_bell[0]), 0.0, 0.003, "%.5f");
  for (const auto& e : b.entries) {
    c.note(std::string(to_string(e.mechanism)) + " at " + fmt("%.1f", e.temperature * 1e6) + " uK: numeric " +
           fmt("%.5f%%", pct * e.numeric_bell) + ", analytic " + fmt("%.5f%%", pct * e.analytic_bell) +
           (e.converged ? "" : " (unconverged)"));
  }
  c.below("budget runtime [s]", seconds, 3600.0, "%.0f");
  return c;
}

Criterion analytic_agreement(const Reproduced& r) {
  Criterion c(6, "analytic-numeric agreement curves");
  const SystemConfig base = strontium();
  MechanismOptions o;
  // Points whose thermal ladder alone would exceed 14 levels are flagged
  // unconverged instead of propagated, as in the reference figure.
  o.max_fock = 14;

  const auto decay = mechanism_sweep(Mechanism::Decay, base, r.ramped.pulse, {0.0, 2e4, 4e4, 6e4, 8e4}, {0.0}, o);
  Real worst = 0.0;
  for (const auto& p : decay) {
    if (p.value == 0.0) {
      c.below("decay at gamma = 0", std::abs(p.numeric_bell), 1e-12);
      continue;
    }
    worst = std::max(worst, std::abs(p.numeric_bell / p.analytic_bell - 1.0));
  }
  c.below("decay: max relative deviation from the analytic line", worst, 0.02, "%.4f");

  const auto recoil =
      mechanism_sweep(Mechanism::Recoil, base, r.ramped.pulse, {20e3, 50e3, 100e3, 200e3}, {0.0, 1.5e-6, 3e-6}, o);
  worst = 0.0;
  int used = 0, skipped = 0;
  std::string row;
  for (const auto& p : recoil) {
    row += " (" + fmt("%.0f", p.value * 1e-3) + " kHz, " + fmt("%.1f", p.temperature * 1e6) + " uK): ";
    if (!p.converged) {
      ++skipped;
      row += "unconverged;";
      continue;
    }
    ++used;
    const Real dev = std::abs(p.numeric_bell / p.analytic_bell - 1.0);
    worst = std::max(worst, dev);
    row += fmt("%.3e", p.numeric_bell) + " vs " + fmt("%.3e", p.analytic_bell) + ";";
  }
  c.note("recoil" + row);
  c.below("recoil: max relative deviation over " + std::to_string(used) + " converged points (" +
              std::to_string(skipped) + " flagged)",
          worst, 0.10, "%.4f");
  bool monotone = true;
  for (std::size_t i = 0; i < recoil.size(); ++i) {
    for (std::size_t j = 0; j < recoil.size(); ++j) {
      const auto &a = recoil[i], &b = recoil[j];
      if (!a.converged || !b.converged) continue;
      const bool up_freq = a.temperature == b.temperature && b.value > a.value;
      const bool up_temp = a.value == b.value && b.temperature > a.temperature;
      if ((up_freq || up_temp) && b.numeric_bell < a.numeric_bell) monotone = false;
    }
  }
  c.add("recoil increases with trap frequency and temperature", monotone);

  const auto vdw = mechanism_sweep(Mechanism::Vdw, base, r.ramped.pulse, {5e3, 10e3, 20e3, 50e3, 100e3, 200e3}, {0.0}, o);
  worst = 0.0;
  row.clear();
  bool decreasing = true;
  for (std::size_t i = 0; i < vdw.size(); ++i) {
    const auto& p = vdw[i];
    row += " " + fmt("%.0f", p.value * 1e-3) + " kHz: " + fmt("%.3e", p.numeric_bell) + " vs " +
           fmt("%.3e", p.analytic_bell) + (p.converged ? ";" : " (unconverged);");
    if (p.value >= 20e3 && p.converged) worst = std::max(worst, std::abs(p.numeric_bell / p.analytic_bell - 1.0));
    if (i && p.numeric_bell > vdw[i - 1].numeric_bell) decreasing = false;
  }
  c.note("vdW" + row);
  c.below("vdW: max relative deviation for trap_x >= 20 kHz", worst, 0.25, "%.4f");
  c.add("vdW numeric exceeds analytic at 5 kHz", vdw.front().converged && vdw.front().numeric_bell > vdw.front().analytic_bell);
  c.add("vdW decreases with trap frequency", decreasing);
  return c;
}

Criterion scaling(const Reproduced& r, const OptimizationResult& slow_ramp) {
  Criterion c(7, "40 MHz scaling scenario");
  SystemConfig fast = strontium();
  fast.omega0_over_2pi = 40e6;
  fast.distance = 2.38e-6;
  const Real kappa = 5e-9 * fast.omega0();
  auto p = problem(Objective::MinRydbergTime, 1e-5, slow_ramp.pulse);
  p.blockade = to_dimensionless(fast).blockade;
  p.fixed = {"kappa"};
  set_parameter(p.initial, "kappa", kappa);
  const auto opt = direct_search(p, 13);
  c.note("pulse at V = " + fmt("%.3f", p.blockade) + ", kappa = " + fmt("%.4f", kappa) + ": " + describe(opt));
  c.add("pulse feasible at eps_F = 1e-5", opt.feasible);
  c.near("T_r increase over the kappa 0.31 pulse [%]", 100.0 * (mean_tr(opt) / mean_tr(r.ramped) - 1.0), 4.0, 2.0,
         "%.2f");
  const MechanismResult full = mechanism_simulation(Mechanism::Full, fast, opt.pulse, 0.0);
  c.near("full-model Bell infidelity [%]", 100.0 * full.bell_infidelity, 0.027, 0.004, "%.4f");
  c.note("full-model average infidelity " + fmt("%.4f%%", 100.0 * full.avg_infidelity));
  return c;
}

Criterion property_suite() {
  Criterion c(8, "property suites");
  for (const auto& p : properties::fast_checks()) {
    c.add(p.name + ": " + fmt("%.3g", p.value) + " (tolerance " + fmt("%.3g", p.tolerance) + ")" +
              (p.detail.empty() ? "" : ", " + p.detail),
          p.pass);
  }
  const auto d = properties::dcrab_no_further_reduction(1e-5, 3);
  c.add(d.check.name + ": " + d.check.detail, d.check.pass);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) report_copy = std::fopen(argv[1], "w");
  out("acceptance report (V / hbar Omega0 = %.1f)\n", kBlockade);
  std::vector<Criterion> done;
  auto run = [&](Criterion c) {
    c.print();
    done.push_back(std::move(c));
  };
  Reproduced r;
  OptimizationResult slow_ramp;
  run(pulse_reproduction(r));
  run(phase_gate(r));
  run(double_rydberg(r));
  run(sweeps(r, slow_ramp));
  run(budget(r));
  run(analytic_agreement(r));
  run(scaling(r, slow_ramp));
  run(property_suite());

  int passed = 0, known = 0, unexpected = 0;
  for (const auto& c : done) {
    if (c.passed()) {
      ++passed;
    } else if (c.unexpected_failure()) {
      ++unexpected;
    } else {
      ++known;
    }
  }
  out("SUMMARY: %d passed, %d failed as known limitations, %d failed unexpectedly\n", passed, known, unexpected);
  if (report_copy) std::fclose(report_copy);
  return unexpected ? 1 : 0;
}
