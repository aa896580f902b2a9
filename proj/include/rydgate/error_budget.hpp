#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "rydgate/gate_metrics.hpp"
#include "rydgate/hamiltonian.hpp"
#include "rydgate/pulses.hpp"

namespace rydgate {

namespace constants {
inline constexpr Real kHbar = 1.054571817e-34;     // J s
inline constexpr Real kPlanck = 6.62607015e-34;    // J s
inline constexpr Real kBoltzmann = 1.380649e-23;   // J / K
inline constexpr Real kAtomicMass = 1.66053906660e-27;  // kg
inline constexpr Real kStrontium88Mass = 87.9056122571 * kAtomicMass;
}  // namespace constants

/// Physical parameters in SI units. Defaults are the strontium-88 setup:
/// 10 MHz Rabi frequency, 100/100/50 kHz traps, 50 us Rydberg lifetime,
/// 323 nm single-photon excitation, C6/h = -154 GHz um^6 at R = 3 um.
struct SystemConfig {
  Real omega0_over_2pi = 10e6;                          ///< Hz
  std::array<Real, 3> trap_over_2pi{100e3, 100e3, 50e3};  ///< Hz, axes x, y, z
  Real lifetime = 50e-6;                                ///< s; infinity disables decay
  Real wavelength = 323e-9;                             ///< m
  Real c6_over_h = -154e9 * 1e-36;                      ///< Hz m^6
  Real distance = 3e-6;                                 ///< m
  Real mass = constants::kStrontium88Mass;              ///< kg
  Real temperature = 0.0;                               ///< K

  Real omega0() const;                  ///< rad/s
  Real trap_frequency(Axis a) const;    ///< rad/s
  Real decay_rate() const;              ///< 1/s
  Real wavenumber() const;              ///< 1/m
  Real interaction() const;             ///< V / hbar in rad/s, V = -C6 / R^6
  Real recoil_rate() const;             ///< hbar k^2 / 2m in rad/s
  Real oscillator_length(Axis a) const; ///< sqrt(hbar / m omega)
  Real lamb_dicke(Axis a) const;        ///< k sqrt(hbar / 2 m omega)

  /// Throws ConfigError unless every frequency, length and mass is positive.
  void validate() const;
};

/// The same system in units hbar = Omega0 = 1, plus the scale needed to go back.
struct DimensionlessSystem {
  Real omega0 = 1.0;                    ///< rad/s
  Real blockade = 0.0;                  ///< V / hbar Omega0
  Real decay_rate = 0.0;                ///< gamma / Omega0
  std::array<Real, 3> trap_frequency{}; ///< omega / Omega0
  Real recoil_frequency = 0.0;          ///< hbar k^2 / 2m / Omega0
  Real x_length_over_distance = 0.0;    ///< a_x / R
  Real thermal_energy = 0.0;            ///< k_B T / hbar Omega0
  Real mass = constants::kStrontium88Mass;
};

DimensionlessSystem to_dimensionless(const SystemConfig& config);
SystemConfig from_dimensionless(const DimensionlessSystem& system);

/// Couplings for the requested effects; flags not set leave their terms out.
GateModel gate_model(const SystemConfig& config, const ModelFlags& flags);

/// coth(hbar omega / 2 k_B T) = 2 <n> + 1; exactly 1 at T = 0.
Real thermal_coth(Real omega, Real temperature);
/// exp(-hbar omega / k_B T); 0 at T = 0.
Real boltzmann_factor(Real omega, Real temperature);
/// 1 - exp(-hbar omega / k_B T).
Real ground_state_occupation(Real omega, Real temperature);

/// 3/4 T_r gamma (T_r in seconds).
Real analytic_decay_infidelity(Real mean_rydberg_time, Real decay_rate);
/// 15/32 (hbar k^2 / 2m) omega_z T_r^2 coth(hbar omega_z / 2 k_B T), at config.temperature.
Real analytic_recoil_infidelity(const SystemConfig& config, Real mean_rydberg_time);
/// True when omega_z T_r > 0.5, where the recoil estimate is unreliable.
bool recoil_sidebands_resolved(const SystemConfig& config, Real mean_rydberg_time);
/// 27/4 (T_rr V / hbar)^2 (hbar / m omega_x) / R^2 coth(hbar omega_x / 2 k_B T).
Real analytic_vdw_infidelity(const SystemConfig& config, Real double_rydberg_time);
/// Recoil energy shift hbar k^2 / 2m expressed in Hz.
Real recoil_phase_shift(const SystemConfig& config);
/// exp(-i (hbar k^2/2m) T_r - (1/2)(hbar k^2/2m) omega_z T_r^2); the first
/// term is the recoil energy shift, kept as a phase.
Complex coherent_overlap(const SystemConfig& config, Real mean_rydberg_time);

enum class Mechanism { Ideal, Decay, Recoil, Vdw, Full };
std::string_view to_string(Mechanism m);

struct MechanismOptions {
  int z_fock = 10;              ///< ladder size for the recoil axis
  int x_fock = 10;              ///< ladder size for the interatomic axis
  int full_x_fock = 3;          ///< x ladder size in the all-effects run
  int probe_increment = 2;      ///< convergence probe grows each ladder by this much
  Real probe_tolerance = 0.05;  ///< relative change allowed under the probe
  int max_fock = 20;            ///< ladders grow by probe_increment up to this size
  int vdw_order = 6;            ///< Taylor order of the interaction in the relative x offset
  bool probe = true;
  bool absorb_recoil_shift = true;
  SimulationOptions simulation{};
};

struct MechanismResult {
  Mechanism mechanism = Mechanism::Ideal;
  Real temperature = 0.0;
  Real bell_infidelity = 0.0;  ///< relative to the same pulse in the idealized model
  Real avg_infidelity = 0.0;
  Real raw_bell_infidelity = 0.0;
  Real raw_avg_infidelity = 0.0;
  bool converged = true;
  Real probe_bell_infidelity = 0.0;  ///< same quantity with probe_increment fewer levels
  int fock_growth = 0;  ///< levels added to every ladder before the probe agreed
  FidelityReport report;
};

/// Bell and average infidelity of `pulse` (dimensionless) with only the
/// mechanism's effects switched on, minus the idealized-model infidelity of
/// the same pulse. Recoil and vdW runs carry per-atom ladders along z and x;
/// the full run carries both. Ladders grow until a probe with
/// probe_increment more levels agrees; the larger run is reported. Ladders
/// start large enough to hold the thermal tail. When that alone exceeds
/// max_fock nothing is propagated and the result is flagged unconverged
/// with NaN infidelities.
MechanismResult mechanism_simulation(Mechanism mechanism, const SystemConfig& config, const PulseShape& pulse,
                                     Real temperature, const MechanismOptions& options = {});

struct BudgetEntry {
  Mechanism mechanism = Mechanism::Ideal;
  Real temperature = 0.0;
  Real analytic_bell = 0.0;
  Real numeric_bell = 0.0;
  Real numeric_avg = 0.0;
  bool converged = true;
};

struct ErrorBudget {
  std::vector<Real> temperatures;
  std::vector<BudgetEntry> entries;          ///< decay, recoil, vdW per temperature
  std::vector<Real> summed_bell, summed_avg; ///< per temperature
  bool has_full = false;
  Real full_bell = 0.0, full_avg = 0.0;      ///< all effects, T = 0
  Real mean_rydberg_time = 0.0;              ///< of the pulse, 1/Omega0
  Real double_rydberg_time = 0.0;

  const BudgetEntry& entry(Mechanism m, Real temperature) const;
};

/// One point of a single-mechanism sweep. `value` is the swept quantity in SI:
/// decay rate in 1/s for decay, trap frequency omega/2pi in Hz along z for
/// recoil and along x for vdW.
struct MechanismSweepPoint {
  Real value = 0.0;
  Real temperature = 0.0;
  Real numeric_bell = 0.0;
  Real analytic_bell = 0.0;
  bool converged = true;
};

/// Numeric and analytic Bell infidelity of one mechanism over `grid` at every
/// temperature (decay ignores temperature and runs once per grid value).
std::vector<MechanismSweepPoint> mechanism_sweep(Mechanism mechanism, const SystemConfig& config,
                                                 const PulseShape& pulse, const std::vector<Real>& grid,
                                                 const std::vector<Real>& temperatures,
                                                 const MechanismOptions& options = {});

ErrorBudget full_budget(const SystemConfig& config, const PulseShape& pulse, const std::vector<Real>& temperatures,
                        bool run_full = true, const MechanismOptions& options = {});

}  // namespace rydgate
