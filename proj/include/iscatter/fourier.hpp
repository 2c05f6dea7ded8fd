#pragma once

#include <span>

#include "iscatter/grid.hpp"

namespace iscatter {

// Transforms of spectral data g(k) sampled on a symmetric k-grid, with the
// reality symmetry g(-k) = conj g(k). Direct quadrature handles the bulk; the
// slowly decaying O(1/k) part is fitted to a two-pole rational model whose
// transform is attached in closed form, so the k-truncation error drops to
// O(1/K^3). With the pole in the upper half-plane the model transform is
// supported on x > 0, with the pole below on x < 0.
struct ft_tail_fit {
  double alpha = 0.0;  // coefficient of i/(k -+ i)
  double beta = 0.0;   // coefficient of 1/(k -+ i)^2
};

struct ft_result {
  std::vector<double> values;     // full transform at the targets
  std::vector<double> remainder;  // quadrature part only (continuous at 0)
  ft_tail_fit fit;

  // closed-form transform of the fitted model; at x = 0 the one-sided limit
  // from the supported side is returned (the model carries the whole jump)
  double model(double x, bool pole_upper) const;
};

ft_result fourier_transform_tail(const ComplexSamples& g,
                                 std::span<const double> xs, bool pole_upper,
                                 double fit_fraction = 0.12);

// Plain (1/2pi) int g(k) e^{ikx} dk without tail handling.
double fourier_transform_plain(const ComplexSamples& g, double x);

// int F(x) e^{-ikx} dx over F's grid (F real, decaying).
cplx spectrum_integral(const RealSamples& F, double k);

// int a(t) e^{ikt} dt and int a(t) e^{-lambda t} dt over a's grid.
cplx fourier_integral(const RealSamples& a, double k);
double laplace_integral(const RealSamples& a, double lambda);

}  // namespace iscatter
