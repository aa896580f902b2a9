#pragma once

#include <array>
#include <string>
#include <vector>

#include "rydgate/hamiltonian.hpp"
#include "rydgate/integrator.hpp"
#include "rydgate/pulses.hpp"

namespace rydgate {

/// Computational basis states in the order |00>, |01>, |10>, |11>; the
/// first digit is atom 0.
inline constexpr std::array<std::array<int, 2>, 4> kComputational{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

struct GateResult {
  std::array<Complex, 4> amplitude{};       ///< <alpha, motional ref | psi_alpha(tau)>
  Real phi01 = 0.0, phi10 = 0.0, phi11 = 0.0;
  std::array<Real, 4> rydberg_time{};       ///< T_r^alpha
  Real mean_rydberg_time = 0.0;             ///< (T_r^01 + T_r^10 + T_r^11) / 3
  Real double_rydberg_time = 0.0;           ///< T_rr for |11>
  std::array<Real, 4> surviving_norm{};
  std::array<Real, 4> leakage{};

  /// phi11 - phi01 - phi10 - pi wrapped to (-pi, pi].
  Real phase_condition_error() const;
  Real max_leakage() const;
};

struct RydbergTimes {
  std::vector<Real> single;  ///< integral of <n_0 + n_1> per column
  std::vector<Real> pair;    ///< integral of <n_0 n_1> per column
};

/// Composite Simpson quadrature of the trajectory's observables.
RydbergTimes rydberg_times(const Trajectory& trajectory);

/// Second-order estimate T_rr ~ (hbar Omega0 / sqrt(2) V)^2 T_r^11.
Real perturbative_trr(Real rydberg_time_11, Real blockade);

struct PhaseExtraction {
  std::array<Complex, 4> amplitude{};
  Real phi01 = 0.0, phi10 = 0.0, phi11 = 0.0;
  std::array<Real, 4> surviving_norm{};
  std::array<Real, 4> leakage{};
};

/// `final_states` holds one column per computational input (order as
/// kComputational); `motional_ref` is the motional state the inputs started
/// in. Phases are relative to the |00> amplitude. Throws ConvergenceError if
/// a returning amplitude is below 1e-6.
PhaseExtraction extract_phases(const HilbertSpace& space, const CMatrix& final_states, const CVector& motional_ref);

/// |alpha> (x) motional product state with the given Fock occupations.
CVector product_state(const HilbertSpace& space, int level0, int level1, const std::vector<int>& fock);

struct SimulationOptions {
  IntegratorOptions integrator{};
  Real thermal_tail = 1e-6;
};

/// Propagates the four computational states with every ladder in |0>. Rydberg
/// times are filled only when the integrator records observables.
GateResult simulate_gate(const EffectiveHamiltonian& hamiltonian, const SimulationOptions& options = {});

/// Motional initial states and Boltzmann weights, heaviest first, truncated
/// once the cumulative weight exceeds 1 - tail. `boltzmann` holds
/// exp(-hbar omega / k_B T) per ladder (0 at T = 0).
struct ThermalEnsemble {
  std::vector<std::vector<int>> fock;
  std::vector<Real> weight;
  Real missing_weight = 0.0;
  bool converged = true;
};
ThermalEnsemble thermal_ensemble(const HilbertSpace& space, const std::vector<Real>& boltzmann, Real tail = 1e-6);

struct FidelityReport {
  Real bell_fidelity = 0.0;
  Real avg_gate_fidelity = 0.0;
  Real temperature = 0.0;   ///< K, informational
  std::string mechanism;
  bool thermal_converged = true;
  Real missing_weight = 0.0;
  GateResult gate;          ///< ground-state gate run used for the phase corrections
};

/// Bell-state fidelity of U1 U U2 |00> (x) rho_motion against (|00> + |11>)/sqrt(2)
/// after tracing out motion; lost norm counts as error.
FidelityReport bell_fidelity(const EffectiveHamiltonian& hamiltonian, const std::vector<Real>& boltzmann,
                             const SimulationOptions& options = {});

/// Average gate fidelity against CZ after single-qubit phase corrections,
/// from the process map on the computational subspace.
FidelityReport avg_gate_fidelity(const EffectiveHamiltonian& hamiltonian, const std::vector<Real>& boltzmann,
                                 const SimulationOptions& options = {});

/// Both metrics from one set of propagations.
FidelityReport gate_fidelities(const EffectiveHamiltonian& hamiltonian, const std::vector<Real>& boltzmann,
                               const SimulationOptions& options = {});

/// Bell fidelity of the idealized model straight from returning amplitudes
/// (a_00 included), with the phase corrections taken from those amplitudes.
Real bell_fidelity_from_amplitudes(const std::array<Complex, 4>& amplitude);

/// Row vector <B| U1 on the computational subspace for the given corrections.
std::array<Complex, 4> bell_readout(Real phi01, Real phi10);

/// Nielsen's average fidelity of a 4 x 4 x 4 x 4 map against `target`,
/// applied literally (no trace-preservation correction). `map(b, bp, a, ap)`
/// is <b| E(|a><ap|) |bp>.
using ProcessMap = std::array<Complex, 256>;
inline Complex& process_entry(ProcessMap& m, int b, int bp, int a, int ap) { return m[((b * 4 + bp) * 4 + a) * 4 + ap]; }
inline Complex process_entry(const ProcessMap& m, int b, int bp, int a, int ap) {
  return m[((b * 4 + bp) * 4 + a) * 4 + ap];
}
Real nielsen_average_fidelity(const ProcessMap& map, const Eigen::Matrix4cd& target);

}  // namespace rydgate
