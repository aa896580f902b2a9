#pragma once

#include <limits>
#include <string_view>
#include <variant>
#include <vector>

#include "rydgate/types.hpp"

namespace rydgate {

// All pulse quantities are dimensionless: time in 1/Omega0, Rabi frequency
// and detuning in units of Omega0.

enum class PulseFamily { DeltaJump, Triangle, Gaussian, GaussianRamped, DCRAB };

std::string_view to_string(PulseFamily family);
PulseFamily parse_family(std::string_view text);

struct PhaseJump {
  Real time = 0.0;
  Real phase = 0.0;
};

/// Constant Omega; the detuning delta-peak at tau/2 is carried as an
/// instantaneous laser-phase jump.
struct DeltaJumpShape {
  Real phase = 0.0;
};

/// Isosceles triangle of height h and full base b centred at tau/2.
struct TriangleShape {
  Real height = 0.0;
  Real base = 0.0;
};

struct GaussianShape {
  Real amplitude = 0.0;
  Real width = 1.0;
};

/// Gaussian detuning under a tanh(t/kappa) tanh((tau-t)/kappa) Rabi envelope.
struct GaussianRampedShape {
  Real amplitude = 0.0;
  Real width = 1.0;
  Real kappa = 0.1;
};

/// Randomised truncated cosine basis about tau/2, on top of an optional
/// Gaussian seed. Frequencies are in cycles per unit time.
struct DCRABBasis {
  GaussianShape seed{};
  std::vector<Real> frequencies;
  std::vector<Real> amplitudes;
  Real max_frequency = 3.0 / (2.0 * kPi);

  int n_components() const { return static_cast<int>(frequencies.size()); }
};

using PulseDetail = std::variant<DeltaJumpShape, TriangleShape, GaussianShape, GaussianRampedShape, DCRABBasis>;

struct PulseShape {
  Real tau = 1.0;
  Real delta0 = 0.0;
  Real omega_scale = 1.0;  ///< peak Rabi frequency, in [0, 1]
  PulseDetail detail = GaussianShape{};

  PulseFamily family() const;
  std::vector<PhaseJump> jump_points() const;
};

Real eval_omega(const PulseShape& p, Real t);
Real eval_delta(const PulseShape& p, Real t);

/// 99%-energy bandwidth of Delta(t) - Delta0, in cycles per unit time.
/// Infinite for DeltaJump.
Real bandwidth_estimate(const PulseShape& p);

inline constexpr Real kUnboundedBandwidth = std::numeric_limits<Real>::infinity();

}  // namespace rydgate
