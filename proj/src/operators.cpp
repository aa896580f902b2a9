#include "rydgate/operators.hpp"

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace rydgate {

namespace {

RMatrix single_atom_to_pair(const RMatrix& single, int atom) {
  const RMatrix id = RMatrix::Identity(kLevels, kLevels);
  if (atom == 0) return Eigen::kroneckerProduct(single, id).eval();
  if (atom == 1) return Eigen::kroneckerProduct(id, single).eval();
  throw std::invalid_argument("atom index must be 0 or 1");
}

RMatrix ket_bra(int ket, int bra) {
  RMatrix m = RMatrix::Zero(kLevels, kLevels);
  m(ket, bra) = 1.0;
  return m;
}

CSparse to_sparse(const CMatrix& m) {
  CSparse s = m.sparseView(Complex(0.0), 0.0);
  s.makeCompressed();
  return s;
}

}  // namespace

CMatrix displacement_matrix(Real lamb_dicke, int fock_dim, int pad) {
  if (fock_dim < 1 || pad < 0) throw std::invalid_argument("invalid ladder size");
  if (lamb_dicke == 0.0) return CMatrix::Identity(fock_dim, fock_dim);
  const int n = fock_dim + pad;
  const CMatrix generator = kI * lamb_dicke * (lowering<Complex>(n) + raising<Complex>(n));
  const CMatrix full = generator.exp();
  return full.topLeftCorner(fock_dim, fock_dim);
}

Complex displacement_element(Real lamb_dicke, int m, int n) {
  // D(alpha) with alpha = i eta; <m|D|n> = sqrt(n!/m!) alpha^(m-n) e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2)
  // for m >= n, and the transposed formula with (-alpha*) for m < n.
  const Complex alpha = kI * lamb_dicke;
  const Real x = lamb_dicke * lamb_dicke;
  const bool upper = m >= n;
  const int lo = upper ? n : m;
  const int hi = upper ? m : n;
  const int k = hi - lo;
  const Complex base = upper ? alpha : -std::conj(alpha);
  // log sqrt(lo!/hi!)
  const Real log_ratio = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0));
  const Real laguerre = std::assoc_laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(k), x);
  return std::exp(log_ratio - 0.5 * x) * std::pow(base, k) * laguerre;
}

Real displacement_leakage(Real lamb_dicke, int n, int ladder_dim) {
  Real kept = 0.0;
  for (int m = 0; m < ladder_dim; ++m) kept += std::norm(displacement_element(lamb_dicke, m, n));
  return 1.0 - kept;
}

RMatrix sigma_plus(int atom) { return single_atom_to_pair(ket_bra(kRydberg, kOne), atom); }
RMatrix sigma_minus(int atom) { return single_atom_to_pair(ket_bra(kOne, kRydberg), atom); }
RMatrix rydberg_projector(int atom) { return single_atom_to_pair(ket_bra(kRydberg, kRydberg), atom); }

CSparse embed(const HilbertSpace& space, const CMatrix& internal, const std::vector<CMatrix>& motional) {
  if (internal.rows() != kInternalDim || internal.cols() != kInternalDim) {
    throw std::invalid_argument("internal operator must be 9 x 9");
  }
  if (!motional.empty() && motional.size() != space.axes().size()) {
    throw std::invalid_argument("one motional factor per ladder expected");
  }
  CSparse result = to_sparse(internal);
  for (std::size_t a = 0; a < space.axes().size(); ++a) {
    const int n = space.axes()[a].fock_dim;
    CSparse factor;
    if (motional.empty() || motional[a].size() == 0) {
      factor.resize(n, n);
      factor.setIdentity();
    } else {
      if (motional[a].rows() != n || motional[a].cols() != n) throw std::invalid_argument("motional factor has wrong size");
      factor = to_sparse(motional[a]);
    }
    CSparse next = Eigen::kroneckerProduct(result, factor);
    result = std::move(next);
  }
  result.makeCompressed();
  return result;
}

CSparse embed_motional(const HilbertSpace& space, int axis_index, const CMatrix& op) {
  std::vector<CMatrix> factors(space.axes().size());
  factors.at(axis_index) = op;
  return embed(space, CMatrix::Identity(kInternalDim, kInternalDim), factors);
}

}  // namespace rydgate
