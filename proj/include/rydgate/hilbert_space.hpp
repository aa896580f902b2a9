#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rydgate {

enum class Axis { x, y, z };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

// Internal levels of one atom, in basis order.
enum Level : int { kZero = 0, kOne = 1, kRydberg = 2 };

inline constexpr int kAtoms = 2;
inline constexpr int kLevels = 3;
inline constexpr int kInternalDim = kLevels * kLevels;

struct MotionalAxis {
  Axis axis = Axis::z;
  int atom = 0;
  int fock_dim = 1;
};

/// Two three-level atoms, optionally tensored with truncated Fock ladders.
///
/// Basis ordering: the internal index 3*level(atom 0) + level(atom 1) is the
/// slowest index, followed by the motional ladders in declaration order (the
/// last ladder varies fastest). This matches Eigen's kroneckerProduct(A, B)
/// convention with A the slow factor.
class HilbertSpace {
 public:
  struct MultiIndex {
    std::array<int, kAtoms> levels{};
    std::vector<int> fock;
  };

  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<MotionalAxis> axes);

  int total_dim() const { return kInternalDim * motional_dim_; }
  int motional_dim() const { return motional_dim_; }
  const std::vector<MotionalAxis>& axes() const { return axes_; }
  bool has_motion() const { return !axes_.empty(); }

  /// Position of the ladder for (atom, axis) in axes(), if present.
  std::optional<int> find_axis(int atom, Axis axis) const;

  static int internal_index(int level0, int level1) { return kLevels * level0 + level1; }

  int index(int level0, int level1, std::span<const int> fock) const;
  int index(const MultiIndex& m) const { return index(m.levels[0], m.levels[1], m.fock); }
  MultiIndex multi_index(int idx) const;

  int motional_index(std::span<const int> fock) const;

 private:
  std::vector<MotionalAxis> axes_;
  std::vector<int> strides_;
  int motional_dim_ = 1;
};

/// Validates the axis list: fock_dim >= 1, at most one ladder per (atom, axis).
HilbertSpace build_space(std::vector<MotionalAxis> axes = {});

}  // namespace rydgate
