#pragma once

#include <span>
#include <vector>

namespace iscatter {

// Sequential extraction of a decaying exponential sum
//   y(u) ~ c0 + sum_j w_j e^{-r_j u},  r_j > 0, w_j > 0,
// on an ascending u-grid: the slowest surviving mode is fitted by log-linear
// regression on the far tail, deflated, and the process repeated; a final
// Gauss-Newton pass polishes all parameters jointly.
struct exp_term {
  double rate = 0.0;
  double weight = 0.0;
};

struct expfit_result {
  double c0 = 0.0;
  std::vector<exp_term> terms;  // sorted by increasing rate
  double residual = 0.0;        // max |y - model| over the grid
  bool converged = true;
};

expfit_result fit_decaying_exp_sum(std::span<const double> u,
                                   std::span<const double> y, int max_terms,
                                   double noise_floor, bool with_constant);

}  // namespace iscatter
