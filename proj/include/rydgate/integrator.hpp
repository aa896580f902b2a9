#pragma once

#include <vector>

#include "rydgate/hamiltonian.hpp"
#include "rydgate/types.hpp"

namespace rydgate {

struct IntegratorOptions {
  Real rtol = 1e-10;
  Real atol = 1e-12;
  Real initial_step = 1e-2;
  Real min_step = 1e-10;
  long max_steps = 5'000'000;
  int dense_intervals = 2000;   ///< observables sampled on dense_intervals + 1 points
  bool record_observables = true;
  bool store_states = false;    ///< keep the full state at every dense point (small systems only)
};

/// Result of propagating a block of state vectors (one per column).
struct Trajectory {
  std::vector<Real> times;
  // Rows index dense-grid times, columns index input states.
  RMatrix rydberg0, rydberg1, double_rydberg;
  std::vector<CMatrix> states;
  CMatrix final_state;
  long steps = 0;
  long rejected = 0;
  Real error_estimate = 0.0;    ///< sum of accepted local error estimates (max-norm)
};

/// Integrates i d psi/dt = H(t) psi over [t0, t1] with an embedded
/// Dormand-Prince 5(4) pair. The pulse's phase jumps split the interval and
/// are applied exactly. Throws ConvergenceError on step-size underflow.
Trajectory integrate(const EffectiveHamiltonian& hamiltonian, const CMatrix& psi0, Real t0, Real t1,
                     const IntegratorOptions& options = {});

/// Gate propagation over [0, tau] of the Hamiltonian's pulse.
inline Trajectory integrate(const EffectiveHamiltonian& hamiltonian, const CMatrix& psi0,
                            const IntegratorOptions& options = {}) {
  return integrate(hamiltonian, psi0, 0.0, hamiltonian.pulse().tau, options);
}

/// Multiplies every basis amplitude by e^{i theta} per atom in |r>.
CMatrix apply_phase_jump(const HilbertSpace& space, const CMatrix& psi, Real theta);

}  // namespace rydgate
