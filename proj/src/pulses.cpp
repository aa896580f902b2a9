#include "rydgate/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

namespace rydgate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Real gaussian(Real amplitude, Real width, Real s) { return amplitude * std::exp(-s * s / (2.0 * width * width)); }

}  // namespace

std::string_view to_string(PulseFamily family) {
  switch (family) {
    case PulseFamily::DeltaJump:
      return "delta_jump";
    case PulseFamily::Triangle:
      return "triangle";
    case PulseFamily::Gaussian:
      return "gaussian";
    case PulseFamily::GaussianRamped:
      return "gaussian_ramped";
    case PulseFamily::DCRAB:
      return "dcrab";
  }
  return "?";
}

PulseFamily parse_family(std::string_view text) {
  for (auto f : {PulseFamily::DeltaJump, PulseFamily::Triangle, PulseFamily::Gaussian, PulseFamily::GaussianRamped,
                 PulseFamily::DCRAB}) {
    if (to_string(f) == text) return f;
  }
  throw std::invalid_argument("unknown pulse family '" + std::string(text) + "'");
}

PulseFamily PulseShape::family() const { return static_cast<PulseFamily>(detail.index()); }

std::vector<PhaseJump> PulseShape::jump_points() const {
  if (const auto* d = std::get_if<DeltaJumpShape>(&detail)) return {{0.5 * tau, d->phase}};
  return {};
}

Real eval_omega(const PulseShape& p, Real t) {
  if (t < 0.0 || t > p.tau) return 0.0;
  if (const auto* g = std::get_if<GaussianRampedShape>(&p.detail)) {
    return p.omega_scale * std::tanh(t / g->kappa) * std::tanh((p.tau - t) / g->kappa);
  }
  return p.omega_scale;
}

Real eval_delta(const PulseShape& p, Real t) {
  const Real s = t - 0.5 * p.tau;
  return p.delta0 + std::visit(overloaded{
                                   [](const DeltaJumpShape&) { return 0.0; },
                                   [s](const TriangleShape& tr) {
                                     const Real half = 0.5 * tr.base;
                                     if (half <= 0.0) return 0.0;
                                     return tr.height * std::max(0.0, 1.0 - std::abs(s) / half);
                                   },
                                   [s](const GaussianShape& g) { return gaussian(g.amplitude, g.width, s); },
                                   [s](const GaussianRampedShape& g) { return gaussian(g.amplitude, g.width, s); },
                                   [s](const DCRABBasis& b) {
                                     Real v = b.seed.amplitude != 0.0 ? gaussian(b.seed.amplitude, b.seed.width, s) : 0.0;
                                     for (int j = 0; j < b.n_components(); ++j) {
                                       v += b.amplitudes[j] * std::cos(2.0 * kPi * b.frequencies[j] * s);
                                     }
                                     return v;
                                   },
                               },
                               p.detail);
}

Real bandwidth_estimate(const PulseShape& p) {
  if (p.family() == PulseFamily::DeltaJump) return kUnboundedBandwidth;

  // Sample on [0, tau] and zero-pad to a window of 16 tau for frequency resolution.
  constexpr int kSamples = 4096;
  constexpr int kPadding = 16;
  const int n = kSamples * kPadding;
  const Real dt = p.tau / kSamples;
  std::vector<Real> signal(n, 0.0);
  for (int k = 0; k < kSamples; ++k) signal[k] = eval_delta(p, (k + 0.5) * dt) - p.delta0;

  Eigen::FFT<Real> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, signal);

  const int half = n / 2;
  std::vector<Real> power(half + 1);
  Real total = 0.0;
  for (int k = 0; k <= half; ++k) {
    power[k] = std::norm(spectrum[k]) * ((k == 0 || k == half) ? 1.0 : 2.0);
    total += power[k];
  }
  if (total == 0.0) return 0.0;
  Real cumulative = 0.0;
  const Real df = 1.0 / (n * dt);
  for (int k = 0; k <= half; ++k) {
    cumulative += power[k];
    if (cumulative >= 0.99 * total) return k * df;
  }
  return half * df;
}

}  // namespace rydgate
