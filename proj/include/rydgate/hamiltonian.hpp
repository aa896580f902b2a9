#pragma once

#include <array>
#include <vector>

#include "rydgate/hilbert_space.hpp"
#include "rydgate/pulses.hpp"
#include "rydgate/types.hpp"

namespace rydgate {

struct ModelFlags {
  bool recoil = false;
  bool trap = false;
  bool vdw_position = false;
  bool decay = false;
};

/// Dimensionless couplings (hbar = Omega0 = 1).
struct GateModel {
  Real blockade = 21.1;                    ///< V / hbar Omega0, V = -C6 / R^6
  Real decay_rate = 0.0;                   ///< gamma / Omega0
  Real lamb_dicke = 0.0;                   ///< k sqrt(hbar / 2 m omega_z)
  std::array<Real, 3> trap_frequency{};    ///< omega_{x,y,z} / Omega0
  Real x_length_over_distance = 0.0;       ///< sqrt(hbar / m omega_x) / R
  int vdw_order = 6;                       ///< Taylor order of |R + x1 - x2|^-6 in (x1 - x2)/R
  int displacement_pad = 8;
  ModelFlags flags{};
};

/// H(t) = H_static + Omega(t) H_drive + Delta(t) H_detuning, stored on one
/// shared sparsity pattern so evaluation at t is a single axpy over values.
///
/// H_static holds the trap, the (possibly position dependent) interaction and
/// the non-Hermitian decay term; H_drive the 1 <-> r couplings with their
/// recoil factors; H_detuning = -(n_0 + n_1).
class EffectiveHamiltonian {
 public:
  using Pattern = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  EffectiveHamiltonian(HilbertSpace space, GateModel model, PulseShape pulse);

  const HilbertSpace& space() const { return space_; }
  const GateModel& model() const { return model_; }
  const PulseShape& pulse() const { return pulse_; }
  int dim() const { return space_.total_dim(); }

  Real omega(Real t) const { return eval_omega(pulse_, t); }
  Real delta(Real t) const { return eval_delta(pulse_, t); }

  /// out = H(t) psi. `values` is caller-owned scratch of size nonzeros().
  void apply(Real t, const StateBlock& psi, StateBlock& out, std::vector<Complex>& values) const;

  CSparse matrix_at(Real t) const;
  Eigen::Index nonzeros() const { return pattern_.nonZeros(); }

  /// Embedded Rydberg projectors n_0, n_1 and their product (diagonal).
  const std::array<RVector, 3>& rydberg_diagonals() const { return rydberg_diag_; }

 private:
  void fill(Real t, std::vector<Complex>& values) const;

  HilbertSpace space_;
  GateModel model_;
  PulseShape pulse_;
  Pattern pattern_;
  std::vector<Complex> static_values_, drive_values_, detuning_values_;
  std::array<RVector, 3> rydberg_diag_;
};

/// Validates flag/space compatibility and builds H(t).
EffectiveHamiltonian assemble_hamiltonian(const HilbertSpace& space, const GateModel& model, const PulseShape& pulse);

/// Binomial-series coefficients of (1 + u)^-6 up to `order`.
std::vector<Real> inverse_sixth_power_series(int order);

}  // namespace rydgate
