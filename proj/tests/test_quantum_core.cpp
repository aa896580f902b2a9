#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

#include "rydgate/errors.hpp"
#include "rydgate/hamiltonian.hpp"
#include "rydgate/hilbert_space.hpp"
#include "rydgate/integrator.hpp"
#include "rydgate/operators.hpp"

using namespace rydgate;

namespace {

// exp(i eta (a + a^dag)) on a large ladder from the eigenbasis of the position operator.
CMatrix displacement_by_eigenbasis(Real eta, int n) {
  const RMatrix x = position<Real>(n);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(x);
  const CMatrix v = es.eigenvectors().cast<Complex>();
  CVector phase(n);
  for (int k = 0; k < n; ++k) phase(k) = std::exp(kI * eta * std::sqrt(2.0) * es.eigenvalues()(k));
  return v * phase.asDiagonal() * v.adjoint();
}

PulseShape flat_pulse(Real tau, Real delta0 = 0.0) {
  PulseShape p;
  p.tau = tau;
  p.delta0 = delta0;
  p.detail = GaussianShape{0.0, 1.0};
  return p;
}

CMatrix basis_column(const HilbertSpace& s, int l0, int l1) {
  CMatrix psi = CMatrix::Zero(s.total_dim(), 1);
  std::vector<int> fock(s.axes().size(), 0);
  psi(s.index(l0, l1, fock), 0) = 1.0;
  return psi;
}

}  // namespace

TEST_CASE("space dimensions") {
  CHECK(build_space().total_dim() == 9);
  CHECK(build_space({{Axis::z, 0, 10}, {Axis::z, 1, 10}}).total_dim() == 900);
  CHECK(build_space({{Axis::x, 0, 4}, {Axis::x, 1, 4}}).total_dim() == 144);
}

TEST_CASE("space rejects bad ladders") {
  CHECK_THROWS(build_space({{Axis::z, 0, 0}}));
  CHECK_THROWS(build_space({{Axis::z, 0, 3}, {Axis::z, 0, 4}}));
}

TEST_CASE("index and multi-index are inverse") {
  const HilbertSpace s = build_space({{Axis::z, 0, 3}, {Axis::x, 1, 4}, {Axis::z, 1, 2}});
  for (int i = 0; i < s.total_dim(); ++i) CHECK(s.index(s.multi_index(i)) == i);
}

TEST_CASE("two-atom operators") {
  for (int atom = 0; atom < 2; ++atom) {
    CHECK((sigma_plus(atom) - sigma_minus(atom).transpose()).norm() == 0.0);
    const RMatrix n = rydberg_projector(atom);
    CHECK((n * n - n).norm() == 0.0);
    CHECK((n - n.transpose()).norm() == 0.0);
  }
}

TEST_CASE("ladder commutator is one below the cutoff") {
  const int n = 8;
  const RMatrix a = lowering(n);
  const RMatrix c = a * a.transpose() - a.transpose() * a;
  for (int k = 0; k < n - 1; ++k) CHECK(c(k, k) == doctest::Approx(1.0));
  CHECK(c(n - 1, n - 1) == doctest::Approx(-(n - 1)));
}

TEST_CASE("displacement with zero kick is the identity") {
  const CMatrix d = displacement_matrix(0.0, 10);
  CHECK((d - CMatrix::Identity(10, 10)).norm() == 0.0);
}

TEST_CASE("displacement matches the eigenbasis exponential") {
  const Real eta = 0.66;
  const int n = 10;
  const CMatrix big = displacement_by_eigenbasis(eta, 80);
  const CMatrix d = displacement_matrix(eta, n);
  CHECK((d - big.topLeftCorner(n, n)).cwiseAbs().maxCoeff() < 1e-8);
  for (int m = 0; m < 14; ++m) {
    for (int k = 0; k < 14; ++k) CHECK(std::abs(displacement_element(eta, m, k) - big(m, k)) < 1e-10);
  }
}

TEST_CASE("recoil kick on the ground state is a coherent state") {
  const Real eta = 0.66;
  const CMatrix d = displacement_matrix(eta, 12);
  const Complex alpha = kI * eta;
  Real factorial = 1.0;
  for (int k = 0; k < 12; ++k) {
    if (k > 0) factorial *= k;
    const Complex expected = std::exp(-0.5 * eta * eta) * std::pow(alpha, k) / std::sqrt(factorial);
    CHECK(std::abs(d(k, 0) - expected) < 1e-10);
  }
  CHECK(std::abs(d(0, 0) - std::exp(-0.5 * eta * eta)) < 1e-12);
}

TEST_CASE("padded ladder keeps displacement leakage small") {
  const Real eta = 0.66;
  const int n_phys = 10, pad = 8;
  const CMatrix big = displacement_by_eigenbasis(eta, 80);
  for (int n = 0; n <= n_phys; ++n) {
    const Real kept = big.col(n).head(n_phys + pad).squaredNorm();
    CHECK(std::abs(displacement_leakage(eta, n, n_phys + pad) - (1.0 - kept)) < 1e-9);
    CHECK(displacement_leakage(eta, n, n_phys + pad + 2) <= displacement_leakage(eta, n, n_phys + pad) + 1e-15);
  }
  // thermal populations sit in the lowest levels
  for (int n = 0; n <= 4; ++n) CHECK(displacement_leakage(eta, n, n_phys + pad) < 1e-8);
}

TEST_CASE("idealized Hamiltonian matches the explicit matrix") {
  const HilbertSpace s = build_space();
  GateModel m;
  m.blockade = 21.1;
  const Real delta = 0.3;
  const EffectiveHamiltonian h = assemble_hamiltonian(s, m, flat_pulse(5.0, delta));
  const CMatrix got = CMatrix(h.matrix_at(1.0));
  CMatrix expected = CMatrix::Zero(9, 9);
  for (int l0 = 0; l0 < 3; ++l0) {
    for (int l1 = 0; l1 < 3; ++l1) {
      const int i = 3 * l0 + l1;
      const int nr = (l0 == 2) + (l1 == 2);
      expected(i, i) = -delta * nr + (nr == 2 ? m.blockade : 0.0);
      if (l0 == 1) expected(3 * 2 + l1, i) = expected(i, 3 * 2 + l1) = 0.5;
      if (l1 == 1) expected(3 * l0 + 2, i) = expected(i, 3 * l0 + 2) = 0.5;
    }
  }
  CHECK((got - expected).norm() < 1e-14);
}

TEST_CASE("decay adds -i gamma/2 per Rydberg excitation") {
  const HilbertSpace s = build_space();
  GateModel m;
  m.decay_rate = 0.01;
  m.flags.decay = true;
  PulseShape p = flat_pulse(5.0);
  p.omega_scale = 0.0;
  const CMatrix h = CMatrix(assemble_hamiltonian(s, m, p).matrix_at(1.0));
  for (int l0 = 0; l0 < 3; ++l0) {
    for (int l1 = 0; l1 < 3; ++l1) {
      const int nr = (l0 == 2) + (l1 == 2);
      CHECK(h(3 * l0 + l1, 3 * l0 + l1).imag() == doctest::Approx(-0.5 * m.decay_rate * nr));
    }
  }
}

TEST_CASE("first-order position dependence of the interaction") {
  const int n = 4;
  const HilbertSpace s = build_space({{Axis::x, 0, n}, {Axis::x, 1, n}});
  GateModel m;
  m.blockade = 20.0;
  m.x_length_over_distance = 0.01;
  m.vdw_order = 1;
  m.flags.vdw_position = true;
  PulseShape p = flat_pulse(5.0);
  p.omega_scale = 0.0;
  const CMatrix h = CMatrix(assemble_hamiltonian(s, m, p).matrix_at(0.5));
  // V (1 + 6 (x2 - x1)/R) on |rr>; x in oscillator lengths.
  const RMatrix x = position<Real>(n);
  const RMatrix id = RMatrix::Identity(n, n);
  const RMatrix x1 = Eigen::kroneckerProduct(x, id), x2 = Eigen::kroneckerProduct(id, x);
  const RMatrix expected = m.blockade * (RMatrix::Identity(n * n, n * n) + 6.0 * m.x_length_over_distance * (x2 - x1));
  const int rr = s.index(2, 2, std::vector<int>{0, 0});
  CHECK((h.block(rr, rr, n * n, n * n).real() - expected).norm() < 1e-12);
  CHECK(h.block(rr, rr, n * n, n * n).imag().norm() == 0.0);
}

TEST_CASE("Hamiltonian is Hermitian without decay") {
  const HilbertSpace s = build_space({{Axis::z, 0, 4}, {Axis::z, 1, 4}, {Axis::x, 0, 3}, {Axis::x, 1, 3}});
  GateModel m;
  m.lamb_dicke = 0.66;
  m.trap_frequency = {0.01, 0.01, 0.005};
  m.x_length_over_distance = 0.011;
  m.flags = {true, true, true, false};
  PulseShape p;
  p.tau = 7.7;
  p.delta0 = 1.2;
  p.detail = GaussianRampedShape{-1.85, 1.7, 0.31};
  const EffectiveHamiltonian h = assemble_hamiltonian(s, m, p);
  for (Real t : {0.0, 0.4, 2.0, 3.85, 7.1}) {
    const CMatrix a = CMatrix(h.matrix_at(t));
    CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("zero recoil is bit-identical to the plain drive") {
  const HilbertSpace s = build_space({{Axis::z, 0, 5}, {Axis::z, 1, 5}});
  GateModel plain;
  plain.trap_frequency = {0.01, 0.01, 0.005};
  plain.flags.trap = true;
  GateModel kicked = plain;
  kicked.flags.recoil = true;
  kicked.lamb_dicke = 0.0;
  PulseShape p = flat_pulse(7.0, 0.5);
  const auto a = assemble_hamiltonian(s, plain, p);
  const auto b = assemble_hamiltonian(s, kicked, p);
  CMatrix psi = CMatrix::Zero(s.total_dim(), 2);
  psi(s.index(1, 1, std::vector<int>{0, 0}), 0) = 1.0;
  psi(s.index(0, 1, std::vector<int>{1, 0}), 1) = 1.0;
  const Trajectory ta = integrate(a, psi);
  const Trajectory tb = integrate(b, psi);
  CHECK((ta.final_state - tb.final_state).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("flags without ladders are rejected") {
  GateModel m;
  m.flags.recoil = true;
  CHECK_THROWS(assemble_hamiltonian(build_space(), m, flat_pulse(1.0)));
  m.flags = {};
  m.flags.vdw_position = true;
  CHECK_THROWS(assemble_hamiltonian(build_space({{Axis::z, 0, 3}, {Axis::z, 1, 3}}), m, flat_pulse(1.0)));
}

TEST_CASE("single atom follows the Rabi formula") {
  const HilbertSpace s = build_space();
  GateModel m;
  const auto h = assemble_hamiltonian(s, m, flat_pulse(10.0));
  const Trajectory t = integrate(h, basis_column(s, 1, 0));
  for (std::size_t k = 0; k < t.times.size(); k += 97) {
    CHECK(t.rydberg0(k, 0) == doctest::Approx(std::pow(std::sin(0.5 * t.times[k]), 2)).epsilon(1e-8));
  }
}

TEST_CASE("|00> is untouched by any pulse") {
  const HilbertSpace s = build_space();
  GateModel m;
  PulseShape p;
  p.tau = 7.7;
  p.delta0 = 1.2;
  p.detail = GaussianShape{-1.85, 1.7};
  const Trajectory t = integrate(assemble_hamiltonian(s, m, p), basis_column(s, 0, 0));
  CHECK(std::abs(t.final_state(0, 0) - Complex(1.0)) < 1e-14);
}

TEST_CASE("blockade enhances the Rabi frequency by sqrt 2") {
  const HilbertSpace s = build_space();
  GateModel m;
  m.blockade = 1000.0;
  const Real period = 2.0 * kPi / std::sqrt(2.0);
  const Trajectory t = integrate(assemble_hamiltonian(s, m, flat_pulse(period)), basis_column(s, 1, 1));
  const Complex back = t.final_state(s.index(1, 1, std::vector<int>{}), 0);
  CHECK(std::norm(back) == doctest::Approx(1.0).epsilon(1e-5));
  // Half a period: fully in the symmetric single-excitation state.
  const Trajectory half = integrate(assemble_hamiltonian(s, m, flat_pulse(0.5 * period)), basis_column(s, 1, 1));
  CHECK(std::norm(half.final_state(s.index(1, 1, std::vector<int>{}), 0)) < 1e-5);
}

TEST_CASE("phase jump multiplies per Rydberg atom") {
  const HilbertSpace s = build_space();
  CMatrix psi = CMatrix::Ones(9, 1);
  CHECK((apply_phase_jump(s, psi, 0.0) - psi).norm() == 0.0);
  CHECK((apply_phase_jump(s, psi, 2.0 * kPi) - psi).norm() < 1e-14);
  const CMatrix out = apply_phase_jump(s, psi, 0.3);
  CHECK(std::abs(out(s.index(2, 2, std::vector<int>{}), 0) - std::exp(kI * 0.6)) < 1e-15);
  CHECK(std::abs(out(s.index(2, 1, std::vector<int>{}), 0) - std::exp(kI * 0.3)) < 1e-15);
  CHECK(std::abs(out(s.index(1, 1, std::vector<int>{}), 0) - 1.0) < 1e-15);
}

TEST_CASE("norm is conserved without decay") {
  const HilbertSpace s = build_space({{Axis::z, 0, 6}, {Axis::z, 1, 6}});
  GateModel m;
  m.lamb_dicke = 0.66;
  m.trap_frequency = {0.01, 0.01, 0.005};
  m.flags.recoil = m.flags.trap = true;
  PulseShape p;
  p.tau = 8.53;
  p.delta0 = 0.377;
  p.detail = DeltaJumpShape{3.9};
  CMatrix psi = CMatrix::Zero(s.total_dim(), 3);
  psi(s.index(0, 1, std::vector<int>{0, 0}), 0) = 1.0;
  psi(s.index(1, 1, std::vector<int>{0, 0}), 1) = 1.0;
  psi(s.index(1, 1, std::vector<int>{2, 1}), 2) = 1.0;
  const Trajectory t = integrate(assemble_hamiltonian(s, m, p), psi);
  for (int c = 0; c < 3; ++c) CHECK(std::abs(t.final_state.col(c).squaredNorm() - 1.0) < 1e-8);
}

TEST_CASE("halving the tolerance moves the result by less than the error estimate") {
  const HilbertSpace s = build_space();
  GateModel m;
  PulseShape p;
  p.tau = 7.7;
  p.delta0 = 1.2;
  p.detail = GaussianShape{-1.85, 1.7};
  const auto h = assemble_hamiltonian(s, m, p);
  IntegratorOptions loose;
  loose.rtol = 1e-7;
  loose.atol = 1e-9;
  IntegratorOptions tight = loose;
  tight.rtol *= 0.5;
  tight.atol *= 0.5;
  const CMatrix psi = basis_column(s, 1, 1);
  const Trajectory a = integrate(h, psi, loose);
  const Trajectory b = integrate(h, psi, tight);
  CHECK((a.final_state - b.final_state).cwiseAbs().maxCoeff() <= a.error_estimate);
}

TEST_CASE("unresolvable pulses signal step-size underflow") {
  const HilbertSpace s = build_space();
  GateModel m;
  PulseShape p;
  p.tau = 5.0;
  p.detail = GaussianShape{1e9, 1.0};
  IntegratorOptions o;
  o.min_step = 1e-6;
  CHECK_THROWS_AS(integrate(assemble_hamiltonian(s, m, p), basis_column(s, 1, 1), o), ConvergenceError);
}
