#include "rydgate/gate_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "rydgate/errors.hpp"

namespace rydgate {

namespace {

Real wrap_phase(Real x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

// Motional block of internal state `b` in column `col`.
CVector block(const HilbertSpace& space, const CMatrix& psi, int col, int b) {
  const int m = space.motional_dim();
  const int internal = HilbertSpace::internal_index(kComputational[b][0], kComputational[b][1]);
  return psi.col(col).segment(internal * m, m);
}

CVector motional_ground(const HilbertSpace& space) {
  CVector v = CVector::Zero(space.motional_dim());
  v(0) = 1.0;
  return v;
}

std::array<Complex, 4> phase_corrections(Real phi01, Real phi10) {
  return {Complex(1.0), std::polar(1.0, -phi01), std::polar(1.0, -phi10), std::polar(1.0, -(phi01 + phi10))};
}

Real simpson(const RMatrix& samples, int col, Real h) {
  const Eigen::Index n = samples.rows() - 1;
  if (n < 1) return 0.0;
  if (n % 2 != 0) {
    Real s = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) s += 0.5 * (samples(k, col) + samples(k + 1, col));
    return s * h;
  }
  Real s = samples(0, col) + samples(n, col);
  for (Eigen::Index k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * samples(k, col);
  return s * h / 3.0;
}

Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd p;
  switch (k) {
    case 0:
      p << 1, 0, 0, 1;
      break;
    case 1:
      p << 0, 1, 1, 0;
      break;
    case 2:
      p << 0, -kI, kI, 0;
      break;
    default:
      p << 1, 0, 0, -1;
      break;
  }
  return p;
}

IntegratorOptions without_observables(IntegratorOptions o) {
  o.record_observables = false;
  o.store_states = false;
  return o;
}

}  // namespace

Real GateResult::phase_condition_error() const { return wrap_phase(phi11 - phi01 - phi10 - kPi); }

Real GateResult::max_leakage() const { return *std::max_element(leakage.begin(), leakage.end()); }

RydbergTimes rydberg_times(const Trajectory& trajectory) {
  if (trajectory.times.size() < 2) throw std::invalid_argument("trajectory carries no dense observables");
  const Real h = (trajectory.times.back() - trajectory.times.front()) / (trajectory.times.size() - 1);
  RydbergTimes out;
  const Eigen::Index cols = trajectory.rydberg0.cols();
  for (Eigen::Index c = 0; c < cols; ++c) {
    out.single.push_back(simpson(trajectory.rydberg0, c, h) + simpson(trajectory.rydberg1, c, h));
    out.pair.push_back(simpson(trajectory.double_rydberg, c, h));
  }
  return out;
}

Real perturbative_trr(Real rydberg_time_11, Real blockade) {
  if (std::isinf(blockade)) return 0.0;
  const Real ratio = 1.0 / (std::sqrt(2.0) * blockade);
  return ratio * ratio * rydberg_time_11;
}

CVector product_state(const HilbertSpace& space, int level0, int level1, const std::vector<int>& fock) {
  CVector psi = CVector::Zero(space.total_dim());
  psi(space.index(level0, level1, fock)) = 1.0;
  return psi;
}

PhaseExtraction extract_phases(const HilbertSpace& space, const CMatrix& final_states, const CVector& motional_ref) {
  if (final_states.cols() != 4) throw std::invalid_argument("expected one final state per computational input");
  PhaseExtraction out;
  for (int a = 0; a < 4; ++a) {
    const CVector chi = block(space, final_states, a, a);
    out.amplitude[a] = motional_ref.dot(chi);
    out.surviving_norm[a] = final_states.col(a).squaredNorm();
    out.leakage[a] = out.surviving_norm[a] > 0.0 ? std::max(0.0, 1.0 - chi.squaredNorm() / out.surviving_norm[a]) : 1.0;
    if (std::abs(out.amplitude[a]) < 1e-6) {
      throw ConvergenceError("returning amplitude vanishes; gate phase undefined");
    }
  }
  const Real ref = std::arg(out.amplitude[0]);
  out.phi01 = wrap_phase(std::arg(out.amplitude[1]) - ref);
  out.phi10 = wrap_phase(std::arg(out.amplitude[2]) - ref);
  out.phi11 = wrap_phase(std::arg(out.amplitude[3]) - ref);
  return out;
}

GateResult simulate_gate(const EffectiveHamiltonian& hamiltonian, const SimulationOptions& options) {
  const auto& space = hamiltonian.space();
  const std::vector<int> ground(space.axes().size(), 0);
  CMatrix psi0(space.total_dim(), 4);
  for (int a = 0; a < 4; ++a) psi0.col(a) = product_state(space, kComputational[a][0], kComputational[a][1], ground);

  const Trajectory traj = integrate(hamiltonian, psi0, options.integrator);
  const PhaseExtraction ph = extract_phases(space, traj.final_state, motional_ground(space));

  GateResult r;
  r.amplitude = ph.amplitude;
  r.phi01 = ph.phi01;
  r.phi10 = ph.phi10;
  r.phi11 = ph.phi11;
  r.surviving_norm = ph.surviving_norm;
  r.leakage = ph.leakage;
  if (options.integrator.record_observables) {
    const RydbergTimes times = rydberg_times(traj);
    for (int a = 0; a < 4; ++a) r.rydberg_time[a] = times.single[a];
    r.mean_rydberg_time = (r.rydberg_time[1] + r.rydberg_time[2] + r.rydberg_time[3]) / 3.0;
    r.double_rydberg_time = times.pair[3];
  }
  return r;
}

ThermalEnsemble thermal_ensemble(const HilbertSpace& space, const std::vector<Real>& boltzmann, Real tail) {
  const auto& axes = space.axes();
  if (!boltzmann.empty() && boltzmann.size() != axes.size()) {
    throw std::invalid_argument("one Boltzmann factor per ladder expected");
  }
  for (Real q : boltzmann) {
    if (q < 0.0 || q >= 1.0) throw std::invalid_argument("Boltzmann factor must lie in [0, 1)");
  }
  const int m = space.motional_dim();
  std::vector<std::pair<Real, int>> ranked;
  ranked.reserve(m);
  for (int idx = 0; idx < m; ++idx) {
    const auto mi = space.multi_index(idx);
    Real w = 1.0;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const Real q = boltzmann.empty() ? 0.0 : boltzmann[a];
      w *= (1.0 - q) * std::pow(q, mi.fock[a]);
    }
    if (w > 0.0) ranked.emplace_back(w, idx);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

  ThermalEnsemble out;
  Real total = 0.0;
  for (const auto& [w, idx] : ranked) {
    out.fock.push_back(space.multi_index(idx).fock);
    out.weight.push_back(w);
    total += w;
    if (total >= 1.0 - tail) break;
  }
  out.missing_weight = std::max(0.0, 1.0 - total);
  out.converged = out.missing_weight <= tail;
  return out;
}

std::array<Complex, 4> bell_readout(Real phi01, Real phi10) {
  // <B| H_2 = (<00| + <01| + <10| - <11|) / 2, then the phase corrections.
  const auto p = phase_corrections(phi01, phi10);
  return {0.5 * p[0], 0.5 * p[1], 0.5 * p[2], -0.5 * p[3]};
}

Real bell_fidelity_from_amplitudes(const std::array<Complex, 4>& a) {
  const Real ref = std::arg(a[0]);
  const auto r = bell_readout(std::arg(a[1]) - ref, std::arg(a[2]) - ref);
  Complex overlap = 0.0;
  for (int b = 0; b < 4; ++b) overlap += r[b] * 0.5 * a[b];
  return std::norm(overlap);
}

Real nielsen_average_fidelity(const ProcessMap& map, const Eigen::Matrix4cd& target) {
  constexpr int d = 4;
  Complex sum = 0.0;
  for (int j = 0; j < 16; ++j) {
    const Eigen::Matrix4cd uj = Eigen::kroneckerProduct(pauli(j / 4), pauli(j % 4));
    Eigen::Matrix4cd image = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < d; ++a) {
      for (int ap = 0; ap < d; ++ap) {
        if (uj(a, ap) == Complex(0.0)) continue;
        for (int b = 0; b < d; ++b) {
          for (int bp = 0; bp < d; ++bp) image(b, bp) += uj(a, ap) * process_entry(map, b, bp, a, ap);
        }
      }
    }
    sum += (target * uj.adjoint() * target.adjoint() * image).trace();
  }
  return (sum.real() + d * d) / (d * d * (d + 1.0));
}

namespace {

struct ThermalRun {
  GateResult gate;
  ThermalEnsemble ensemble;
};

ThermalRun prepare(const EffectiveHamiltonian& h, const std::vector<Real>& boltzmann, const SimulationOptions& options) {
  ThermalRun run{simulate_gate(h, options), thermal_ensemble(h.space(), boltzmann, options.thermal_tail)};
  if (!run.ensemble.converged) {
    throw ConvergenceError("thermal sum unconverged: weight tail " + std::to_string(run.ensemble.missing_weight) +
                           " exceeds cutoff; enlarge the Fock ladders");
  }
  return run;
}

FidelityReport make_report(const ThermalRun& run) {
  FidelityReport rep;
  rep.gate = run.gate;
  rep.thermal_converged = run.ensemble.converged;
  rep.missing_weight = run.ensemble.missing_weight;
  return rep;
}

}  // namespace

FidelityReport bell_fidelity(const EffectiveHamiltonian& hamiltonian, const std::vector<Real>& boltzmann,
                             const SimulationOptions& options) {
  const auto& space = hamiltonian.space();
  const ThermalRun run = prepare(hamiltonian, boltzmann, options);
  const auto readout = bell_readout(run.gate.phi01, run.gate.phi10);
  const auto& ens = run.ensemble;

  CMatrix psi0 = CMatrix::Zero(space.total_dim(), static_cast<Eigen::Index>(ens.weight.size()));
  for (std::size_t n = 0; n < ens.weight.size(); ++n) {
    for (int a = 0; a < 4; ++a) {
      psi0.col(n) += 0.5 * product_state(space, kComputational[a][0], kComputational[a][1], ens.fock[n]);
    }
  }
  const Trajectory traj = integrate(hamiltonian, psi0, without_observables(options.integrator));

  FidelityReport rep = make_report(run);
  Real fidelity = 0.0;
  for (std::size_t n = 0; n < ens.weight.size(); ++n) {
    CVector v = CVector::Zero(space.motional_dim());
    for (int b = 0; b < 4; ++b) v += readout[b] * block(space, traj.final_state, static_cast<int>(n), b);
    fidelity += ens.weight[n] * v.squaredNorm();
  }
  rep.bell_fidelity = fidelity;
  rep.avg_gate_fidelity = std::numeric_limits<Real>::quiet_NaN();
  return rep;
}

FidelityReport gate_fidelities(const EffectiveHamiltonian& hamiltonian, const std::vector<Real>& boltzmann,
                               const SimulationOptions& options) {
  const auto& space = hamiltonian.space();
  const ThermalRun run = prepare(hamiltonian, boltzmann, options);
  const auto& ens = run.ensemble;
  const auto readout = bell_readout(run.gate.phi01, run.gate.phi10);
  const auto corr = phase_corrections(run.gate.phi01, run.gate.phi10);

  const auto n_states = static_cast<Eigen::Index>(ens.weight.size());
  CMatrix psi0(space.total_dim(), 4 * n_states);
  for (Eigen::Index n = 0; n < n_states; ++n) {
    for (int a = 0; a < 4; ++a) {
      psi0.col(4 * n + a) = product_state(space, kComputational[a][0], kComputational[a][1], ens.fock[n]);
    }
  }
  const Trajectory traj = integrate(hamiltonian, psi0, without_observables(options.integrator));

  ProcessMap map{};
  Real bell = 0.0;
  const int m = space.motional_dim();
  for (Eigen::Index n = 0; n < n_states; ++n) {
    // chi(:, 4 b + a) = <b| psi_a>, phase-corrected.
    CMatrix chi(m, 16);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) chi.col(4 * b + a) = corr[b] * block(space, traj.final_state, static_cast<int>(4 * n + a), b);
    }
    const CMatrix gram = chi.adjoint() * chi;  // gram(i, j) = <chi_i | chi_j>
    const Real w = ens.weight[n];
    for (int b = 0; b < 4; ++b)
      for (int bp = 0; bp < 4; ++bp)
        for (int a = 0; a < 4; ++a)
          for (int ap = 0; ap < 4; ++ap) process_entry(map, b, bp, a, ap) += w * gram(4 * bp + ap, 4 * b + a);

    // The Bell input is the equal superposition of the four columns.
    CVector v = CVector::Zero(m);
    for (int b = 0; b < 4; ++b) {
      for (int a = 0; a < 4; ++a) v += (readout[b] / corr[b]) * 0.5 * chi.col(4 * b + a);
    }
    bell += w * v.squaredNorm();
  }

  FidelityReport rep = make_report(run);
  rep.bell_fidelity = bell;
  Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
  cz(3, 3) = -1.0;
  rep.avg_gate_fidelity = nielsen_average_fidelity(map, cz);
  return rep;
}

FidelityReport avg_gate_fidelity(const EffectiveHamiltonian& hamiltonian, const std::vector<Real>& boltzmann,
                                 const SimulationOptions& options) {
  return gate_fidelities(hamiltonian, boltzmann, options);
}

}  // namespace rydgate
