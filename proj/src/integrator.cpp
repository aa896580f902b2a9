#include "rydgate/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rydgate/errors.hpp"

namespace rydgate {

namespace {

// Dormand-Prince 5(4) tableau with Hairer's continuous extension.
constexpr Real c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr Real a21 = 1.0 / 5;
constexpr Real a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr Real a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr Real a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr Real a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
               a65 = -5103.0 / 18656;
constexpr Real a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr Real e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
               e7 = -1.0 / 40;
constexpr Real d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
               d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
               d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

class Stepper {
 public:
  Stepper(const EffectiveHamiltonian& h, Eigen::Index rows, Eigen::Index cols) : h_(h) {
    for (auto* m : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &tmp, &y1, &err}) m->resize(rows, cols);
  }

  // f(t, y) = -i H(t) y
  void rhs(Real t, const StateBlock& y, StateBlock& out) {
    h_.apply(t, y, out, values_);
    out *= -kI;
  }

  // Attempts a step from (t, y) with k1 = f(t, y) already set. Fills y1,
  // err and k7 = f(t + h, y1).
  void attempt(Real t, const StateBlock& y, Real h) {
    tmp = y + (h * a21) * k1;
    rhs(t + c2 * h, tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, tmp, k6);
    y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs(t + h, y1, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  }

  // Coefficients of the continuous extension for the last accepted step.
  void prepare_dense(const StateBlock& y0, Real h) {
    r1 = y0;
    r2 = y1 - y0;
    r3 = h * k1 - r2;
    r4 = r2 - h * k7 - r3;
    r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
  }

  void dense(Real theta, StateBlock& out) const {
    const Real u = 1.0 - theta;
    out = r1 + theta * (r2 + u * (r3 + theta * (r4 + u * r5)));
  }

  StateBlock k1, k2, k3, k4, k5, k6, k7, tmp, y1, err;
  StateBlock r1, r2, r3, r4, r5;

 private:
  const EffectiveHamiltonian& h_;
  std::vector<Complex> values_;
};

void record(const EffectiveHamiltonian& h, const StateBlock& y, int row, Trajectory& out, bool store) {
  const auto& diag = h.rydberg_diagonals();
  const RMatrix pop = y.cwiseAbs2();
  out.rydberg0.row(row) = diag[0].transpose() * pop;
  out.rydberg1.row(row) = diag[1].transpose() * pop;
  out.double_rydberg.row(row) = diag[2].transpose() * pop;
  if (store) out.states[row] = y;
}

template <typename M>
M phase_jumped(const HilbertSpace& space, const M& psi, Real theta) {
  M out = psi;
  const int m = space.motional_dim();
  const Complex one = std::polar(1.0, theta);
  const Complex two = std::polar(1.0, 2.0 * theta);
  for (int i = 0; i < kInternalDim; ++i) {
    const int excited = (i / kLevels == kRydberg) + (i % kLevels == kRydberg);
    if (excited == 0) continue;
    out.middleRows(i * m, m) *= (excited == 1 ? one : two);
  }
  return out;
}

}  // namespace

CMatrix apply_phase_jump(const HilbertSpace& space, const CMatrix& psi, Real theta) {
  return phase_jumped(space, psi, theta);
}

Trajectory integrate(const EffectiveHamiltonian& hamiltonian, const CMatrix& psi0, Real t0, Real t1,
                     const IntegratorOptions& options) {
  if (!(options.rtol > 0.0) || !(options.atol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (psi0.rows() != hamiltonian.dim()) throw std::invalid_argument("state dimension does not match Hamiltonian");
  if (!(t1 >= t0)) throw std::invalid_argument("integration interval is reversed");

  Trajectory out;
  const int n_grid = options.record_observables ? options.dense_intervals + 1 : 0;
  const Eigen::Index cols = psi0.cols();
  if (n_grid > 0) {
    out.times.resize(n_grid);
    for (int g = 0; g < n_grid; ++g) out.times[g] = t0 + (t1 - t0) * g / options.dense_intervals;
    out.times.back() = t1;
    out.rydberg0.resize(n_grid, cols);
    out.rydberg1.resize(n_grid, cols);
    out.double_rydberg.resize(n_grid, cols);
    if (options.store_states) out.states.resize(n_grid);
  }

  // Segment boundaries: the interval split at interior phase jumps.
  std::vector<PhaseJump> jumps;
  for (const auto& j : hamiltonian.pulse().jump_points()) {
    if (j.time > t0 && j.time < t1) jumps.push_back(j);
  }
  std::sort(jumps.begin(), jumps.end(), [](const auto& a, const auto& b) { return a.time < b.time; });

  Stepper st(hamiltonian, psi0.rows(), cols);
  StateBlock y = psi0;
  StateBlock dense_state;
  int next_grid = 0;
  auto emit_until = [&](Real t_end, bool inclusive, auto&& state_at) {
    while (next_grid < n_grid &&
           (out.times[next_grid] < t_end || (inclusive && out.times[next_grid] <= t_end))) {
      state_at(out.times[next_grid], dense_state);
      record(hamiltonian, dense_state, next_grid, out, options.store_states);
      ++next_grid;
    }
  };

  Real h = options.initial_step;
  Real t = t0;
  for (std::size_t seg = 0; seg <= jumps.size(); ++seg) {
    const Real t_end = seg < jumps.size() ? jumps[seg].time : t1;
    const bool last = seg == jumps.size();
    st.rhs(t, y, st.k1);
    while (t < t_end) {
      if (++out.steps > options.max_steps) throw ConvergenceError("integrator exceeded the step budget");
      Real step = h;
      bool final_step = false;
      if (t + step >= t_end || t_end - (t + step) < 1e-12 * std::max(1.0, std::abs(t_end))) {
        step = t_end - t;
        final_step = true;
      }
      st.attempt(t, y, step);
      // Hairer's scaled RMS norm.
      const RMatrix scale = (options.atol + options.rtol * y.cwiseAbs().cwiseMax(st.y1.cwiseAbs()).array()).matrix();
      const Real err = std::sqrt((st.err.cwiseAbs().array() / scale.array()).square().mean());
      if (err <= 1.0) {
        if (n_grid > 0) {
          st.prepare_dense(y, step);
          const Real t_start = t;
          emit_until(final_step ? t_end : t + step, final_step && last,
                     [&](Real tg, StateBlock& s) { st.dense((tg - t_start) / step, s); });
        }
        out.error_estimate += st.err.cwiseAbs().maxCoeff();
        t = final_step ? t_end : t + step;
        y.swap(st.y1);
        st.k1.swap(st.k7);
        const Real fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h = final_step ? std::max(h, step * fac) : step * fac;
      } else {
        ++out.rejected;
        h = step * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (h < options.min_step) {
          throw ConvergenceError("step size underflow at t = " + std::to_string(t) +
                                 " (unresolved structure in the pulse?)");
        }
      }
    }
    if (!last) {
      // Grid points sitting exactly on the jump see the pre-jump state;
      // populations are unaffected either way.
      y = phase_jumped(hamiltonian.space(), y, jumps[seg].phase);
    }
  }
  if (n_grid > 0) emit_until(t1, true, [&](Real, StateBlock& s) { s = y; });
  out.final_state = y;
  return out;
}

}  // namespace rydgate
