#pragma once

#include <functional>
#include <optional>

#include "iscatter/ode.hpp"
#include "iscatter/potential.hpp"

namespace iscatter {
namespace direct {

struct options {
  double ode_step = 2e-3;       // base marching step
  double kmax_bound = 10.0;     // bound-state search window (0, kmax]
  double resonance_tol = 1e-6;  // |f(0)| < tol * max|f| flags a zero resonance
  double bisect_tol = 1e-12;
  bool store_rows = false;      // keep f(x,k) rows in the bundle
};

struct BoundState {
  double k = 0.0;      // kappa_j, zero of f(i kappa)
  double s = 0.0;      // norming constant of the scattering data
  double c = 0.0;      // spectral-measure point mass
  double r = 0.0;      // residue coefficient of the I-function at i kappa_j
  double fp0 = 0.0;    // f'(0, i kappa_j)
  double fdotim = 0.0; // d/dkappa f(i kappa) at kappa_j (f-dot = -i * this)
};

struct JostBundle {
  UniformGrid kgrid;  // k > 0
  std::vector<cplx> f, fp0;
  std::optional<UniformGrid> xgrid;
  std::vector<std::vector<cplx>> fx;  // per-k rows when stored
  double f_at_zero = 0.0;             // f(0) from the k = 0 march
  bool resonance_at_zero = false;
  double wronskian_residual = 0.0;  // max |2 Im(f'(0,k) conj f(k)) - 2k| / (1+k)

  cplx f_interp(double k) const;
  cplx fp0_interp(double k) const;
};

struct ScatteringDataHalfline {
  ComplexSamples S;  // on k > 0
  std::vector<BoundState> bound_states;  // k_j strictly decreasing
  bool f0_vanishes = false;
  std::vector<double> delta;  // unwrapped phase, delta(inf) = 0 anchor
  int index = 0;              // winding of S
  double index_residual = 0.0;
  std::size_t J() const { return bound_states.size(); }
};

struct SpectralMeasure {
  UniformGrid lgrid;
  std::vector<double> density;
  std::vector<std::pair<double, double>> masses;  // (lambda_j < 0, c_j > 0)
  // Optional smooth evaluator of W(k) = k^2 (1/|f(k)|^2 - 1), the k-space
  // excess over the free density. W stays analytic through k = 0 even at a
  // zero-energy resonance, where the density itself blows up like 1/sqrt(l).
  std::function<double(double)> excess_fn;

  double density_at(double lam) const;
  // excess from the evaluator when present, else from density samples
  double excess_at(double k) const;
};

// Unwrapped phase delta with the delta(inf) = 0 anchor at the top node, and
// the winding index -(2/pi) delta(0+) rounded to the nearest integer.
struct PhaseIndex {
  std::vector<double> delta;
  int index = 0;
  double residual = 0.0;
};
PhaseIndex phase_index_from_f(const std::vector<cplx>& f, const UniformGrid& kgrid);
PhaseIndex phase_index_from_S(const std::vector<cplx>& S, const UniformGrid& kgrid);

JostBundle jost(const PotentialSpec& q, const UniformGrid& kgrid,
                const options& opt = {});
JostBundle jost(const PotentialSpec& q, const UniformGrid& kgrid,
                const UniformGrid& xgrid, const options& opt = {});

// f(k), f'(0,k) at a single complex k (Im k >= 0).
JostPoint jost_at(const PotentialSpec& q, cplx k, const options& opt = {});

std::vector<BoundState> bound_states(const PotentialSpec& q, double kmax,
                                     const options& opt = {});

ScatteringDataHalfline scattering_data(const PotentialSpec& q,
                                       const UniformGrid& kgrid,
                                       const options& opt = {});

SpectralMeasure spectral_measure(const PotentialSpec& q, const UniformGrid& lgrid,
                                 const options& opt = {});

// I(k) = f'(0,k)/f(k); verifies Im I = k/|f|^2 on the grid.
ComplexSamples i_function(const PotentialSpec& q, const UniformGrid& kgrid,
                          const options& opt = {});

// rho'(lambda) = Im m(sqrt(lambda + i0)) / pi
SpectralMeasure rho_from_weyl(const ComplexSamples& m_on_lambda, double tol = 1e-9);

struct WeylReport {
  double w_vs_jost_residual = 0.0;   // max |W - f(x,k)/f(k)| over window, top k
  std::vector<double> asym_residual; // k |I - ik - q(0)/(2ik)| over top decade
  bool asym_trending_down = false;
  std::vector<double> herglotz_residual;  // |m(sqrt z)-i sqrt z - int dsigma/(t-z)|
};
WeylReport weyl_checks(const PotentialSpec& q, const UniformGrid& kgrid,
                       const options& opt = {});

}  // namespace direct
}  // namespace iscatter
