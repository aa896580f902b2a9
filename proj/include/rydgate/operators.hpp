#pragma once

#include <cmath>
#include <vector>

#include "rydgate/hilbert_space.hpp"
#include "rydgate/types.hpp"

namespace rydgate {

// Single-mode operators on a Fock ladder truncated to n levels. Position and
// momentum are in units of the oscillator length sqrt(hbar/m omega) and
// hbar/length respectively, so x = (a + a^dag)/sqrt(2).

template <typename Scalar = Real>
Matrix<Scalar> lowering(int n) {
  Matrix<Scalar> a = Matrix<Scalar>::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = Scalar(std::sqrt(Real(k)));
  return a;
}

template <typename Scalar = Real>
Matrix<Scalar> raising(int n) {
  return lowering<Scalar>(n).adjoint();
}

template <typename Scalar = Real>
Matrix<Scalar> number(int n) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = Scalar(Real(k));
  return m;
}

template <typename Scalar = Real>
Matrix<Scalar> position(int n) {
  const Matrix<Scalar> a = lowering<Scalar>(n);
  return (a + a.adjoint()) / Scalar(std::sqrt(2.0));
}

inline CMatrix momentum(int n) {
  const CMatrix a = lowering<Complex>(n);
  return kI * (a.adjoint() - a) / std::sqrt(2.0);
}

/// exp(i eta (a + a^dag)), the recoil kick exp(i k z) with eta = k sqrt(hbar / 2 m omega).
/// Built on a ladder padded by `pad` levels and cropped to fock_dim; the
/// exponential of the truncated generator is otherwise wrong near the cutoff.
CMatrix displacement_matrix(Real lamb_dicke, int fock_dim, int pad = 8);

/// Matrix element <m| exp(i eta (a + a^dag)) |n> of the untruncated operator.
Complex displacement_element(Real lamb_dicke, int m, int n);

/// Norm lost from D|n> when the ladder is cut at `ladder_dim` levels, for the
/// exact displacement operator.
Real displacement_leakage(Real lamb_dicke, int n, int ladder_dim);

// Two-atom internal operators (9 x 9).
RMatrix sigma_plus(int atom);
RMatrix sigma_minus(int atom);
RMatrix rydberg_projector(int atom);

/// internal (x) M_0 (x) M_1 (x) ... with identity on every ladder not listed.
/// `motional` is indexed like space.axes(); empty matrices mean identity.
CSparse embed(const HilbertSpace& space, const CMatrix& internal, const std::vector<CMatrix>& motional = {});

/// Operator acting on one ladder only.
CSparse embed_motional(const HilbertSpace& space, int axis_index, const CMatrix& op);

}  // namespace rydgate
