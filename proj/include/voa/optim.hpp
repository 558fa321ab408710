#pragma once

#include <functional>
#include <vector>

namespace voa {

struct SimplexOptions {
  int max_iters = 100;
  // Stop early once max(f) - min(f) over the simplex drops below this;
  // zero runs the full iteration budget.
  double f_tolerance = 0.0;
  // Initial simplex edge length along each coordinate.
  double step = 0.25;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Derivative-free Nelder-Mead minimizer with dimension-adaptive reflection,
// expansion, contraction and shrink coefficients. Deterministic: no internal
// randomness, result depends only on f, start and options.
SimplexResult minimize_simplex(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& start, const SimplexOptions& opts);

}  // namespace voa
