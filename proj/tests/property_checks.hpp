#pragma once

#include <string>
#include <vector>

// Structural properties of the simulator, shared by the standalone property
// suite and the acceptance report.
namespace rydgate::properties {

struct Check {
  std::string name;
  double value = 0.0;      // measured deviation or quantity
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

Check norm_conservation();
Check hermiticity();
Check exchange_symmetry();
Check ground_pair_invariance();
Check blockade_enhancement();
Check coherent_overlap_oracle();
Check ground_state_occupations();
Check dcrab_monotone_trace();

// Gaussian minimum duration at `threshold` against a dCRAB search seeded
// with it; dCRAB must land within 1% and never more than 1% below.
struct DurationComparison {
  Check check;
  double gaussian_tau = 0.0;
  double dcrab_tau = 0.0;
};
DurationComparison dcrab_no_further_reduction(double threshold, int superiterations);

std::vector<Check> fast_checks();

}  // namespace rydgate::properties
