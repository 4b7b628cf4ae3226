#pragma once

#include <functional>
#include <vector>

namespace ergokit {

struct NmOptions {
  int max_iter = 5000;
  double tol = 1e-10;      // relative spread of simplex values
  double init_step = 0.3;  // initial simplex edge length
};

struct NmResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Derivative-free simplex minimizer. The objectives it is used on involve
/// eigenvalue sorting and are non-smooth at crossings, where gradient
/// methods stall.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, const NmOptions& opt = {});

}  // namespace ergokit
