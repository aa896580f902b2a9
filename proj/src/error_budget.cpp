#include "rydgate/error_budget.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rydgate/errors.hpp"

namespace rydgate {

using namespace constants;

namespace {

int axis_index(Axis a) { return static_cast<int>(a); }

std::vector<MotionalAxis> ladders(Axis axis, int fock) {
  return {MotionalAxis{axis, 0, fock}, MotionalAxis{axis, 1, fock}};
}

struct MechanismSetup {
  std::vector<MotionalAxis> axes;
  ModelFlags flags;
  int vdw_order = 6;
};

MechanismSetup setup_for(Mechanism m, const MechanismOptions& o, int grow) {
  MechanismSetup s;
  s.vdw_order = o.vdw_order;
  switch (m) {
    case Mechanism::Ideal:
      break;
    case Mechanism::Decay:
      s.flags.decay = true;
      break;
    case Mechanism::Recoil:
      s.axes = ladders(Axis::z, o.z_fock + grow);
      s.flags.recoil = s.flags.trap = true;
      break;
    case Mechanism::Vdw:
      s.axes = ladders(Axis::x, o.x_fock + grow);
      s.flags.vdw_position = s.flags.trap = true;
      break;
    case Mechanism::Full:
      s.axes = ladders(Axis::z, o.z_fock + grow);
      for (const auto& a : ladders(Axis::x, o.full_x_fock + grow)) s.axes.push_back(a);
      s.flags = ModelFlags{true, true, true, true};
      break;
  }
  return s;
}

// Smallest ladder whose per-axis Boltzmann tail keeps the joint missing weight below `tail`.
int thermal_ladder(Real q, int n_axes, Real tail) {
  if (q <= 0.0) return 1;
  return static_cast<int>(std::ceil(std::log(tail / n_axes) / std::log(q)));
}

FidelityReport run_model(const SystemConfig& config, const PulseShape& pulse, Real temperature,
                         const MechanismSetup& setup, const SimulationOptions& sim) {
  const HilbertSpace space = build_space(setup.axes);
  GateModel model = gate_model(config, setup.flags);
  model.vdw_order = setup.vdw_order;
  std::vector<Real> boltzmann;
  for (const auto& a : space.axes()) boltzmann.push_back(boltzmann_factor(config.trap_frequency(a.axis), temperature));
  return gate_fidelities(assemble_hamiltonian(space, model, pulse), boltzmann, sim);
}

}  // namespace

Real SystemConfig::omega0() const { return 2.0 * kPi * omega0_over_2pi; }
Real SystemConfig::trap_frequency(Axis a) const { return 2.0 * kPi * trap_over_2pi[axis_index(a)]; }
Real SystemConfig::decay_rate() const { return std::isinf(lifetime) ? 0.0 : 1.0 / lifetime; }
Real SystemConfig::wavenumber() const { return 2.0 * kPi / wavelength; }
Real SystemConfig::interaction() const {
  return -2.0 * kPi * c6_over_h / std::pow(distance, 6);
}
Real SystemConfig::recoil_rate() const {
  const Real k = wavenumber();
  return kHbar * k * k / (2.0 * mass);
}
Real SystemConfig::oscillator_length(Axis a) const { return std::sqrt(kHbar / (mass * trap_frequency(a))); }
Real SystemConfig::lamb_dicke(Axis a) const { return wavenumber() * std::sqrt(kHbar / (2.0 * mass * trap_frequency(a))); }

void SystemConfig::validate() const {
  auto positive = [](Real v, const char* what) {
    if (!(v > 0.0) || std::isnan(v)) throw ConfigError(std::string(what) + " must be positive");
  };
  positive(omega0_over_2pi, "Rabi frequency");
  for (Real f : trap_over_2pi) positive(f, "trap frequency");
  positive(lifetime, "Rydberg lifetime");
  positive(wavelength, "wavelength");
  positive(distance, "interatomic distance");
  positive(mass, "mass");
  if (temperature < 0.0) throw ConfigError("temperature must be non-negative");
  if (c6_over_h == 0.0 || std::isnan(c6_over_h)) throw ConfigError("C6 must be non-zero");
}

DimensionlessSystem to_dimensionless(const SystemConfig& c) {
  c.validate();
  DimensionlessSystem d;
  d.omega0 = c.omega0();
  d.blockade = c.interaction() / d.omega0;
  d.decay_rate = c.decay_rate() / d.omega0;
  for (Axis a : {Axis::x, Axis::y, Axis::z}) d.trap_frequency[axis_index(a)] = c.trap_frequency(a) / d.omega0;
  d.recoil_frequency = c.recoil_rate() / d.omega0;
  d.x_length_over_distance = c.oscillator_length(Axis::x) / c.distance;
  d.thermal_energy = kBoltzmann * c.temperature / (kHbar * d.omega0);
  d.mass = c.mass;
  return d;
}

SystemConfig from_dimensionless(const DimensionlessSystem& d) {
  SystemConfig c;
  c.mass = d.mass;
  c.omega0_over_2pi = d.omega0 / (2.0 * kPi);
  for (int i = 0; i < 3; ++i) c.trap_over_2pi[i] = d.trap_frequency[i] * d.omega0 / (2.0 * kPi);
  c.lifetime = d.decay_rate > 0.0 ? 1.0 / (d.decay_rate * d.omega0) : std::numeric_limits<Real>::infinity();
  const Real k = std::sqrt(2.0 * d.mass * d.recoil_frequency * d.omega0 / kHbar);
  c.wavelength = 2.0 * kPi / k;
  const Real omega_x = d.trap_frequency[0] * d.omega0;
  c.distance = std::sqrt(kHbar / (d.mass * omega_x)) / d.x_length_over_distance;
  c.c6_over_h = -d.blockade * d.omega0 * std::pow(c.distance, 6) / (2.0 * kPi);
  c.temperature = d.thermal_energy * kHbar * d.omega0 / kBoltzmann;
  return c;
}

GateModel gate_model(const SystemConfig& config, const ModelFlags& flags) {
  const DimensionlessSystem d = to_dimensionless(config);
  GateModel m;
  m.blockade = d.blockade;
  m.decay_rate = flags.decay ? d.decay_rate : 0.0;
  m.trap_frequency = d.trap_frequency;
  m.lamb_dicke = config.lamb_dicke(Axis::z);
  m.x_length_over_distance = d.x_length_over_distance;
  m.flags = flags;
  return m;
}

Real thermal_coth(Real omega, Real temperature) {
  if (temperature <= 0.0) return 1.0;
  const Real q = boltzmann_factor(omega, temperature);
  return (1.0 + q) / (1.0 - q);
}

Real boltzmann_factor(Real omega, Real temperature) {
  if (temperature <= 0.0) return 0.0;
  return std::exp(-kHbar * omega / (kBoltzmann * temperature));
}

Real ground_state_occupation(Real omega, Real temperature) { return 1.0 - boltzmann_factor(omega, temperature); }

Real analytic_decay_infidelity(Real mean_rydberg_time, Real decay_rate) { return 0.75 * mean_rydberg_time * decay_rate; }

Real analytic_recoil_infidelity(const SystemConfig& c, Real mean_rydberg_time) {
  const Real wz = c.trap_frequency(Axis::z);
  return 15.0 / 32.0 * c.recoil_rate() * wz * mean_rydberg_time * mean_rydberg_time * thermal_coth(wz, c.temperature);
}

bool recoil_sidebands_resolved(const SystemConfig& c, Real mean_rydberg_time) {
  return c.trap_frequency(Axis::z) * mean_rydberg_time > 0.5;
}

Real analytic_vdw_infidelity(const SystemConfig& c, Real double_rydberg_time) {
  const Real wx = c.trap_frequency(Axis::x);
  const Real phase = double_rydberg_time * c.interaction();
  return 27.0 / 4.0 * phase * phase * kHbar / (c.mass * wx) / (c.distance * c.distance) *
         thermal_coth(wx, c.temperature);
}

Real recoil_phase_shift(const SystemConfig& c) { return c.recoil_rate() / (2.0 * kPi); }

Complex coherent_overlap(const SystemConfig& c, Real mean_rydberg_time) {
  const Real rec = c.recoil_rate();
  const Real wz = c.trap_frequency(Axis::z);
  return std::exp(Complex(-0.5 * rec * wz * mean_rydberg_time * mean_rydberg_time, -rec * mean_rydberg_time));
}

std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Ideal:
      return "ideal";
    case Mechanism::Decay:
      return "decay";
    case Mechanism::Recoil:
      return "recoil";
    case Mechanism::Vdw:
      return "vdw";
    case Mechanism::Full:
      return "full";
  }
  return "?";
}

MechanismResult mechanism_simulation(Mechanism mechanism, const SystemConfig& config, const PulseShape& pulse,
                                     Real temperature, const MechanismOptions& options) {
  if (temperature < 0.0) throw std::invalid_argument("temperature must be non-negative");
  PulseShape shifted = pulse;
  const bool recoil = mechanism == Mechanism::Recoil || mechanism == Mechanism::Full;
  if (recoil && options.absorb_recoil_shift) shifted.delta0 += config.recoil_rate() / config.omega0();

  const FidelityReport ideal = run_model(config, pulse, 0.0, setup_for(Mechanism::Ideal, options, 0), options.simulation);

  MechanismResult r;
  r.mechanism = mechanism;
  r.temperature = temperature;

  MechanismOptions sized = options;
  const Real thermal_tail = options.simulation.thermal_tail;
  const int z_need = thermal_ladder(boltzmann_factor(config.trap_frequency(Axis::z), temperature), 4, thermal_tail);
  const int x_need = thermal_ladder(boltzmann_factor(config.trap_frequency(Axis::x), temperature), 4, thermal_tail);
  sized.z_fock = std::max(options.z_fock, z_need);
  sized.x_fock = std::max(options.x_fock, x_need);
  sized.full_x_fock = std::max(options.full_x_fock, x_need);
  const bool too_large = (mechanism == Mechanism::Recoil && sized.z_fock > options.max_fock) ||
                         (mechanism == Mechanism::Vdw && sized.x_fock > options.max_fock) ||
                         (mechanism == Mechanism::Full &&
                          (sized.z_fock > options.max_fock || sized.full_x_fock > options.max_fock));
  if (too_large) {
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    r.converged = false;
    r.bell_infidelity = r.avg_infidelity = r.raw_bell_infidelity = r.raw_avg_infidelity = nan;
    r.probe_bell_infidelity = nan;
    return r;
  }

  auto fill = [&](const FidelityReport& rep) {
    r.report = rep;
    r.raw_bell_infidelity = 1.0 - rep.bell_fidelity;
    r.raw_avg_infidelity = 1.0 - rep.avg_gate_fidelity;
    r.bell_infidelity = r.raw_bell_infidelity - (1.0 - ideal.bell_fidelity);
    r.avg_infidelity = r.raw_avg_infidelity - (1.0 - ideal.avg_gate_fidelity);
  };
  fill(run_model(config, shifted, temperature, setup_for(mechanism, sized, 0), options.simulation));
  r.probe_bell_infidelity = r.bell_infidelity;

  const bool has_ladders = mechanism == Mechanism::Recoil || mechanism == Mechanism::Vdw || mechanism == Mechanism::Full;
  if (!options.probe || !has_ladders) return r;

  const int base = mechanism == Mechanism::Vdw ? sized.x_fock : sized.z_fock;
  r.converged = false;
  for (int grow = 0; base + grow + options.probe_increment <= options.max_fock; grow += options.probe_increment) {
    FidelityReport grown;
    try {
      grown = run_model(config, shifted, temperature, setup_for(mechanism, sized, grow + options.probe_increment),
                        options.simulation);
    } catch (const ConvergenceError&) {
      break;
    }
    const Real previous = r.bell_infidelity;
    fill(grown);
    r.fock_growth = grow + options.probe_increment;
    r.probe_bell_infidelity = previous;
    const Real scale = std::max(std::abs(r.bell_infidelity), 1e-9);
    if (std::abs(r.bell_infidelity - previous) <= options.probe_tolerance * scale) {
      r.converged = true;
      break;
    }
  }
  return r;
}

std::vector<MechanismSweepPoint> mechanism_sweep(Mechanism mechanism, const SystemConfig& config,
                                                 const PulseShape& pulse, const std::vector<Real>& grid,
                                                 const std::vector<Real>& temperatures,
                                                 const MechanismOptions& options) {
  if (grid.empty()) throw std::invalid_argument("empty sweep grid");
  if (mechanism != Mechanism::Decay && mechanism != Mechanism::Recoil && mechanism != Mechanism::Vdw) {
    throw std::invalid_argument("only decay, recoil and vdw can be swept");
  }
  const GateResult ideal = simulate_gate(assemble_hamiltonian(build_space(), gate_model(config, {}), pulse));
  const Real tr = ideal.mean_rydberg_time / config.omega0();
  const Real trr = ideal.double_rydberg_time / config.omega0();
  const std::vector<Real> temps = mechanism == Mechanism::Decay ? std::vector<Real>{0.0} : temperatures;
  if (temps.empty()) throw std::invalid_argument("no temperatures requested");

  std::vector<MechanismSweepPoint> out;
  for (Real t : temps) {
    for (Real v : grid) {
      SystemConfig at = config;
      at.temperature = t;
      MechanismSweepPoint p;
      p.value = v;
      p.temperature = t;
      switch (mechanism) {
        case Mechanism::Decay:
          at.lifetime = v > 0.0 ? 1.0 / v : std::numeric_limits<Real>::infinity();
          p.analytic_bell = analytic_decay_infidelity(tr, v);
          break;
        case Mechanism::Recoil:
          at.trap_over_2pi[axis_index(Axis::z)] = v;
          p.analytic_bell = analytic_recoil_infidelity(at, tr);
          break;
        default:
          at.trap_over_2pi[axis_index(Axis::x)] = v;
          p.analytic_bell = analytic_vdw_infidelity(at, trr);
          break;
      }
      const MechanismResult r = mechanism_simulation(mechanism, at, pulse, t, options);
      p.numeric_bell = r.bell_infidelity;
      p.converged = r.converged;
      out.push_back(p);
    }
  }
  return out;
}

const BudgetEntry& ErrorBudget::entry(Mechanism m, Real temperature) const {
  for (const auto& e : entries) {
    if (e.mechanism == m && e.temperature == temperature) return e;
  }
  throw std::out_of_range("no budget entry for " + std::string(to_string(m)));
}

ErrorBudget full_budget(const SystemConfig& config, const PulseShape& pulse, const std::vector<Real>& temperatures,
                        bool run_full, const MechanismOptions& options) {
  if (temperatures.empty()) throw std::invalid_argument("no temperatures requested");
  ErrorBudget b;
  b.temperatures = temperatures;

  const HilbertSpace ideal_space = build_space();
  const GateResult ideal = simulate_gate(assemble_hamiltonian(ideal_space, gate_model(config, {}), pulse));
  b.mean_rydberg_time = ideal.mean_rydberg_time;
  b.double_rydberg_time = ideal.double_rydberg_time;
  const Real tr = ideal.mean_rydberg_time / config.omega0();
  const Real trr = ideal.double_rydberg_time / config.omega0();

  for (Real t : temperatures) {
    SystemConfig at = config;
    at.temperature = t;
    Real sum_bell = 0.0, sum_avg = 0.0;
    for (Mechanism m : {Mechanism::Decay, Mechanism::Recoil, Mechanism::Vdw}) {
      const MechanismResult r = mechanism_simulation(m, at, pulse, t, options);
      BudgetEntry e;
      e.mechanism = m;
      e.temperature = t;
      e.numeric_bell = r.bell_infidelity;
      e.numeric_avg = r.avg_infidelity;
      e.converged = r.converged;
      switch (m) {
        case Mechanism::Decay:
          e.analytic_bell = analytic_decay_infidelity(tr, at.decay_rate());
          break;
        case Mechanism::Recoil:
          e.analytic_bell = analytic_recoil_infidelity(at, tr);
          break;
        default:
          e.analytic_bell = analytic_vdw_infidelity(at, trr);
          break;
      }
      sum_bell += e.numeric_bell;
      sum_avg += e.numeric_avg;
      b.entries.push_back(e);
    }
    b.summed_bell.push_back(sum_bell);
    b.summed_avg.push_back(sum_avg);
  }

  if (run_full) {
    MechanismOptions o = options;
    o.probe = false;
    const MechanismResult r = mechanism_simulation(Mechanism::Full, config, pulse, 0.0, o);
    b.has_full = true;
    b.full_bell = r.bell_infidelity;
    b.full_avg = r.avg_infidelity;
  }
  return b;
}

}  // namespace rydgate
