#include "rydgate/hamiltonian.hpp"

#include <stdexcept>

#include "rydgate/operators.hpp"

namespace rydgate {

namespace {

using Pattern = EffectiveHamiltonian::Pattern;

std::vector<Complex> values_on(const Pattern& pattern, const CSparse& m) {
  const Pattern aligned(m);
  std::vector<Complex> out(pattern.nonZeros(), Complex(0.0));
  for (Eigen::Index row = 0; row < pattern.outerSize(); ++row) {
    Pattern::InnerIterator p(pattern, row);
    Pattern::InnerIterator q(aligned, row);
    for (; p; ++p) {
      while (q && q.col() < p.col()) ++q;
      if (q && q.col() == p.col()) out[static_cast<std::size_t>(p.value().real())] = q.value();
    }
  }
  return out;
}

}  // namespace

std::vector<Real> inverse_sixth_power_series(int order) {
  // (1 + u)^-6 = sum_k C(-6, k) u^k, C(-6, k) = (-1)^k C(k + 5, 5)
  std::vector<Real> c(order + 1);
  Real coeff = 1.0;
  for (int k = 0; k <= order; ++k) {
    c[k] = coeff;
    coeff *= -(6.0 + k) / (k + 1.0);
  }
  return c;
}

EffectiveHamiltonian::EffectiveHamiltonian(HilbertSpace space, GateModel model, PulseShape pulse)
    : space_(std::move(space)), model_(std::move(model)), pulse_(std::move(pulse)) {
  const auto& axes = space_.axes();
  const auto& flags = model_.flags;
  const int n_axes = static_cast<int>(axes.size());

  // Drive: (1/2) sum_i sigma+_i e^{i k z_i} + h.c.
  CSparse drive(dim(), dim());
  for (int atom = 0; atom < kAtoms; ++atom) {
    std::vector<CMatrix> kick(n_axes);
    if (flags.recoil) {
      const int a = *space_.find_axis(atom, Axis::z);
      kick[a] = displacement_matrix(model_.lamb_dicke, axes[a].fock_dim, model_.displacement_pad);
    }
    const CSparse up = embed(space_, sigma_plus(atom).cast<Complex>(), kick);
    const CSparse down = up.adjoint();
    drive += 0.5 * (up + down);
  }

  CSparse detuning(dim(), dim());
  for (int atom = 0; atom < kAtoms; ++atom) detuning -= embed(space_, rydberg_projector(atom).cast<Complex>());

  const RMatrix pair = rydberg_projector(0) * rydberg_projector(1);
  CSparse interaction;
  if (flags.vdw_position) {
    const int a0 = *space_.find_axis(0, Axis::x);
    const int a1 = *space_.find_axis(1, Axis::x);
    const Real ell = model_.x_length_over_distance;
    const CSparse u = ell * (embed_motional(space_, a0, position<Complex>(axes[a0].fock_dim)) -
                             embed_motional(space_, a1, position<Complex>(axes[a1].fock_dim)));
    const auto coeffs = inverse_sixth_power_series(model_.vdw_order);
    CSparse power(dim(), dim());
    power.setIdentity();
    CSparse series = coeffs[0] * power;
    for (int k = 1; k <= model_.vdw_order; ++k) {
      power = (power * u).pruned();
      series += coeffs[k] * power;
    }
    interaction = model_.blockade * (embed(space_, pair.cast<Complex>()) * series).pruned();
  } else {
    interaction = model_.blockade * embed(space_, pair.cast<Complex>());
  }

  CSparse stat = interaction;
  if (flags.trap) {
    for (int a = 0; a < n_axes; ++a) {
      const Real w = model_.trap_frequency[static_cast<int>(axes[a].axis)];
      stat += w * embed_motional(space_, a, number<Complex>(axes[a].fock_dim));
    }
  }
  if (flags.decay) {
    for (int atom = 0; atom < kAtoms; ++atom) {
      stat += (-0.5 * kI * model_.decay_rate) * embed(space_, rydberg_projector(atom).cast<Complex>());
    }
  }

  // Union pattern: value slot k stores its own index so that values_on can
  // align each part against it.
  CSparse uni = drive.cwiseAbs().cast<Complex>() + detuning.cwiseAbs().cast<Complex>() +
                stat.cwiseAbs().cast<Complex>();
  pattern_ = Pattern(uni);
  pattern_.makeCompressed();
  for (Eigen::Index k = 0; k < pattern_.nonZeros(); ++k) pattern_.valuePtr()[k] = Complex(static_cast<Real>(k));
  static_values_ = values_on(pattern_, stat);
  drive_values_ = values_on(pattern_, drive);
  detuning_values_ = values_on(pattern_, detuning);

  const int m = space_.motional_dim();
  for (auto& d : rydberg_diag_) d.resize(dim());
  for (int i = 0; i < kInternalDim; ++i) {
    const int l0 = i / kLevels;
    const int l1 = i % kLevels;
    rydberg_diag_[0].segment(i * m, m).setConstant(l0 == kRydberg ? 1.0 : 0.0);
    rydberg_diag_[1].segment(i * m, m).setConstant(l1 == kRydberg ? 1.0 : 0.0);
    rydberg_diag_[2].segment(i * m, m).setConstant(l0 == kRydberg && l1 == kRydberg ? 1.0 : 0.0);
  }
}

void EffectiveHamiltonian::fill(Real t, std::vector<Complex>& values) const {
  const Real om = omega(t);
  const Real de = delta(t);
  values.resize(static_values_.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = static_values_[k] + om * drive_values_[k] + de * detuning_values_[k];
  }
}

void EffectiveHamiltonian::apply(Real t, const StateBlock& psi, StateBlock& out, std::vector<Complex>& values) const {
  fill(t, values);
  const Eigen::Map<const Pattern> h(pattern_.rows(), pattern_.cols(), pattern_.nonZeros(), pattern_.outerIndexPtr(),
                                    pattern_.innerIndexPtr(), values.data());
  out.noalias() = h * psi;
}

CSparse EffectiveHamiltonian::matrix_at(Real t) const {
  std::vector<Complex> values;
  fill(t, values);
  Pattern h = pattern_;
  std::copy(values.begin(), values.end(), h.valuePtr());
  return CSparse(h);
}

EffectiveHamiltonian assemble_hamiltonian(const HilbertSpace& space, const GateModel& model, const PulseShape& pulse) {
  const auto& f = model.flags;
  if (f.recoil && (!space.find_axis(0, Axis::z) || !space.find_axis(1, Axis::z))) {
    throw std::invalid_argument("recoil requires a z ladder on both atoms");
  }
  if (f.vdw_position && (!space.find_axis(0, Axis::x) || !space.find_axis(1, Axis::x))) {
    throw std::invalid_argument("position-dependent interaction requires an x ladder on both atoms");
  }
  if (f.trap && !space.has_motion()) throw std::invalid_argument("trap requires at least one motional ladder");
  if (f.vdw_position && model.vdw_order < 0) throw std::invalid_argument("vdw_order must be non-negative");
  if (f.decay && model.decay_rate < 0.0) throw std::invalid_argument("decay rate must be non-negative");
  if (pulse.tau <= 0.0) throw std::invalid_argument("gate duration must be positive");
  return EffectiveHamiltonian(space, model, pulse);
}

}  // namespace rydgate
