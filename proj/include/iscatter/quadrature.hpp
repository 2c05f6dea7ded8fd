#pragma once

#include <span>
#include <vector>

#include "iscatter/grid.hpp"

namespace iscatter {

enum class quad_rule { trapezoid, simpson };

// Composite quadrature weights for n equispaced samples with unit step.
// Trapezoid is the default everywhere; Simpson (with a 3/8 patch when the
// interval count is odd) is opt-in for steps that feed diagonal derivatives.
std::vector<double> quad_weights(std::size_t n, quad_rule rule = quad_rule::trapezoid);

double quad(std::span<const double> samples, double step,
            quad_rule rule = quad_rule::trapezoid);
cplx quad(std::span<const cplx> samples, double step,
          quad_rule rule = quad_rule::trapezoid);

// Running integral F_i = int_{x_0}^{x_i}; F_0 = 0. Trapezoid.
std::vector<double> cumquad(std::span<const double> samples, double step);

// d/dx of equispaced samples: central differences in the interior, one-sided
// second-order stencils at the ends.
std::vector<double> differentiate(std::span<const double> samples, double step);

// Like differentiate, but slope kinks (local outliers of the second
// difference) switch to one-sided stencils on the smoother side within two
// cells. Used where the diagonal feeds a discontinuous potential.
std::vector<double> differentiate_jump_aware(std::span<const double> samples,
                                             double step);

// Diagonal derivative d/dx K(x,x) of a triangular kernel.
std::vector<double> diag_derivative(const TriangularKernel& K);

}  // namespace iscatter
