#pragma once

#include "iscatter/grid.hpp"

namespace iscatter {

struct pv_result {
  double value = 0.0;
  bool truncation_warning = false;
};

// Principal-value integral  PV int h(t)/(t-k0) dt  over the grid of h, by
// singularity subtraction:
//   int [h(t)-h(k0)]/(t-k0) dt + h(k0) * ln|(B-k0)/(A-k0)|
// k0 must lie strictly inside the grid. The caller guarantees decay of h; if
// |h| at either endpoint exceeds decay_tol the result carries a warning flag.
pv_result cauchy_pv(const RealSamples& h, double k0, double decay_tol = 1e-6);

// int g(t)/(t-z) dt for z off the real axis; plain quadrature on g's grid.
cplx cauchy_transform(const RealSamples& g, cplx z);
cplx cauchy_transform(const ComplexSamples& g, cplx z);

// Boundary value from the upper half-plane: PV + i*pi*g(k).
cplx cauchy_boundary_upper(const RealSamples& g, double k);

// Closed-form tails over |t| > T for integrands with known asymptotics.
// int_{|t|>T} (1/t^2)/(t-k) dt, real k with |k| < T:
double pv_tail_invsq(double T, double k);
// same with z off the real axis:
cplx cauchy_tail_invsq(double T, cplx z);
// int_{|t|>T} [t/(t^2+1)]/(t-k) dt, real k with |k| < T:
double pv_tail_lorentz_odd(double T, double k);
// int_{|t|>T} [t/(t^2+1)]/(t-z) dt, z off the real axis:
cplx cauchy_tail_lorentz_odd(double T, cplx z);

// Asymptotic coefficient c of g ~ c/t^2, averaged over the outer fraction of
// the (symmetric) grid on both ends.
double fit_invsq_coeff(const RealSamples& g, double fraction = 0.15);
// Coefficient b of an odd g ~ b*t/(t^2+1) (i.e. b/t at infinity).
double fit_lorentz_odd_coeff(const RealSamples& g, double fraction = 0.15);

}  // namespace iscatter
