#pragma once

#include <functional>
#include <limits>

#include "rydgate/types.hpp"

namespace rydgate {

struct NelderMeadOptions {
  long max_evaluations = 4000;
  Real f_tolerance = 1e-15;   ///< stop when max |f_i - f_best| over the simplex falls below this
  Real x_tolerance = 1e-10;   ///< ... and the simplex diameter falls below this
  Real f_target = -std::numeric_limits<Real>::infinity();  ///< stop as soon as f <= f_target
};

struct NelderMeadResult {
  RVector x;
  Real f = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Downhill simplex (Nelder-Mead, standard coefficients) started from x0 with
/// an axis-aligned initial simplex of edge lengths `step`.
NelderMeadResult nelder_mead(const std::function<Real(const RVector&)>& f, const RVector& x0, const RVector& step,
                             const NelderMeadOptions& options = {});

}  // namespace rydgate
