#pragma once

#include <functional>
#include <vector>

namespace ehmi {

// Derivative-free downhill-simplex minimizer with dimension-adaptive
// expansion/contraction/shrink coefficients. Convergence is declared when
// the value spread across the simplex falls below tol (relative to the
// best vertex), or at max_iter.
struct SimplexOptions {
  double initial_step = 1.0;   // per-coordinate simplex extent around x0
  double tol = 1e-8;
  int max_iter = 20000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, const SimplexOptions& opt = {});

}  // namespace ehmi
