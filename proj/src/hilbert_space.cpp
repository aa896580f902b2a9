#include "rydgate/hilbert_space.hpp"

#include <stdexcept>
#include <string>

namespace rydgate {

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

Axis parse_axis(std::string_view text) {
  if (text == "x") return Axis::x;
  if (text == "y") return Axis::y;
  if (text == "z") return Axis::z;
  throw std::invalid_argument("unknown axis '" + std::string(text) + "'");
}

HilbertSpace::HilbertSpace(std::vector<MotionalAxis> axes) : axes_(std::move(axes)) {
  strides_.assign(axes_.size(), 1);
  motional_dim_ = 1;
  for (int a = static_cast<int>(axes_.size()) - 1; a >= 0; --a) {
    strides_[a] = motional_dim_;
    motional_dim_ *= axes_[a].fock_dim;
  }
}

std::optional<int> HilbertSpace::find_axis(int atom, Axis axis) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (axes_[a].atom == atom && axes_[a].axis == axis) return static_cast<int>(a);
  }
  return std::nullopt;
}

int HilbertSpace::motional_index(std::span<const int> fock) const {
  if (fock.size() != axes_.size()) throw std::invalid_argument("fock index has wrong rank");
  int m = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (fock[a] < 0 || fock[a] >= axes_[a].fock_dim) throw std::out_of_range("fock index out of range");
    m += fock[a] * strides_[a];
  }
  return m;
}

int HilbertSpace::index(int level0, int level1, std::span<const int> fock) const {
  if (level0 < 0 || level0 >= kLevels || level1 < 0 || level1 >= kLevels) {
    throw std::out_of_range("internal level out of range");
  }
  return internal_index(level0, level1) * motional_dim_ + motional_index(fock);
}

HilbertSpace::MultiIndex HilbertSpace::multi_index(int idx) const {
  if (idx < 0 || idx >= total_dim()) throw std::out_of_range("basis index out of range");
  MultiIndex m;
  const int internal = idx / motional_dim_;
  int rest = idx % motional_dim_;
  m.levels = {internal / kLevels, internal % kLevels};
  m.fock.resize(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    m.fock[a] = rest / strides_[a];
    rest %= strides_[a];
  }
  return m;
}

HilbertSpace build_space(std::vector<MotionalAxis> axes) {
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (axes[a].fock_dim < 1) throw std::invalid_argument("fock_dim must be at least 1");
    if (axes[a].atom < 0 || axes[a].atom >= kAtoms) throw std::invalid_argument("atom index must be 0 or 1");
    for (std::size_t b = 0; b < a; ++b) {
      if (axes[a].atom == axes[b].atom && axes[a].axis == axes[b].axis) {
        throw std::invalid_argument("duplicate Fock ladder for atom " + std::to_string(axes[a].atom) +
                                    " along " + std::string(to_string(axes[a].axis)));
      }
    }
  }
  return HilbertSpace(std::move(axes));
}

}  // namespace rydgate
