#pragma once

#include "iscatter/direct.hpp"
#include "iscatter/quadrature.hpp"

namespace iscatter {
namespace gl {

struct options {
  double kmax = 150.0;          // k-truncation of the measure transform
  double kstep = 0.01;
  double taper_fraction = 0.5;  // smooth rolloff of the truncated tail
  quad_rule rule = quad_rule::trapezoid;
  double residual_tol = 1e-6;   // Nystrom back-substitution guard
};

// L(x,y) = (Ls(x+y) - Ls(|x-y|))/2 with the one-variable kernel Ls; the
// assembly keeps L symmetric exactly.
struct GLKernel {
  RealSamples Ls;  // on [0, 2 xmax]

  double at(double x, double y) const {
    return 0.5 * (Ls.interp(x + y) - Ls.interp(std::abs(x - y)));
  }
  TriangularKernel tri(const UniformGrid& xgrid) const;
};

// Ls(s) = int (1 - cos(s sqrt(lambda)))/lambda dsigma(lambda), quadrature in
// k for the continuous part plus exact point-mass terms.
GLKernel measure_to_L(const direct::SpectralMeasure& m, double xmax,
                      double step, const options& opt = {});

struct SolveResult {
  TriangularKernel K;
  double max_residual = 0.0;
};
SolveResult solve_gl(const GLKernel& L, const UniformGrid& xgrid,
                     const options& opt = {});

struct QResult {
  PotentialSpec q;
  double diag_consistency = 0.0;  // max |K(x,x) - (1/2) int_0^x q|
};
QResult K_to_q(const TriangularKernel& K);

// forward Volterra march recovering Ls on [0, 2 xmax] from K
GLKernel K_to_L(const TriangularKernel& K, double xmax);

// Goursat problem for the transformation kernel, by the causal sweep of its
// Volterra form in characteristic variables.
TriangularKernel q_to_K(const PotentialSpec& q, const UniformGrid& xgrid);

}  // namespace gl
}  // namespace iscatter
