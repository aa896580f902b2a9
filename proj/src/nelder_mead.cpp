#include "rydgate/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rydgate {

NelderMeadResult nelder_mead(const std::function<Real(const RVector&)>& f, const RVector& x0, const RVector& step,
                             const NelderMeadOptions& options) {
  const Eigen::Index n = x0.size();
  if (step.size() != n) throw std::invalid_argument("step and x0 differ in size");
  NelderMeadResult out;
  if (n == 0) {
    out.x = x0;
    out.f = f(x0);
    out.evaluations = 1;
    out.converged = true;
    return out;
  }

  std::vector<RVector> simplex(n + 1, x0);
  std::vector<Real> values(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) simplex[i + 1](i) += step(i);
  long evals = 0;
  auto eval = [&](const RVector& x) {
    ++evals;
    return f(x);
  };
  for (Eigen::Index i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<Eigen::Index> order(n + 1);
  constexpr Real alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const auto best = order.front();
    const auto worst = order.back();
    const auto second = order[n - 1];

    Real spread = 0.0, diameter = 0.0;
    for (Eigen::Index i = 0; i <= n; ++i) {
      spread = std::max(spread, std::abs(values[i] - values[best]));
      diameter = std::max(diameter, (simplex[i] - simplex[best]).cwiseAbs().maxCoeff());
    }
    if (values[best] <= options.f_target || (spread <= options.f_tolerance && diameter <= options.x_tolerance)) {
      out.converged = true;
      break;
    }
    if (evals >= options.max_evaluations) break;

    RVector centroid = RVector::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<Real>(n);

    const RVector reflected = centroid + alpha * (centroid - simplex[worst]);
    const Real fr = eval(reflected);
    if (fr < values[best]) {
      const RVector expanded = centroid + gamma * (reflected - centroid);
      const Real fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const RVector contracted =
        outside ? RVector(centroid + rho * (reflected - centroid)) : RVector(centroid + rho * (simplex[worst] - centroid));
    const Real fc = eval(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + sigma * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  out.x = simplex[best];
  out.f = values[best];
  out.evaluations = evals;
  return out;
}

}  // namespace rydgate
