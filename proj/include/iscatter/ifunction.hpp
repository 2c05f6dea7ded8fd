#pragma once

#include "iscatter/direct.hpp"
#include "iscatter/marchenko.hpp"

namespace iscatter {
namespace ifunc {

// Pole/remainder representation of the I-function:
//   I(k) = ik + i r0/k + sum_j i r_j/(k - i k_j) + int_0^inf a(t) e^{ikt} dt
struct IFunctionRep {
  double r0 = 0.0;  // nonzero iff f(0) = 0
  std::vector<std::pair<double, double>> poles;  // (k_j, r_j), k_j decreasing
  RealSamples a_t;  // remainder on t >= 0 (may be empty)

  cplx eval(cplx k) const;  // Im k >= 0
};

struct options {
  double fit_tol = 1e-3;     // exponential-sum extraction tolerance
  double t_depth = 12.0;     // how far the transform is probed at t < 0
  double t_step = 0.02;
  double a_cut = 1e-8;       // |a(t)| truncation threshold
  int max_poles = 4;
  double herglotz_tol = 1e-9;
  marchenko::options mopt;   // settings of the embedded inversion
  double xmax = 10.0;        // domain of the embedded Marchenko recovery
};

struct RepResult {
  IFunctionRep rep;
  double fit_residual = 0.0;
  bool converged = true;
};

// Extract {r0, poles, a(t)} from samples of I on a symmetric real grid.
RepResult rep_extract(const ComplexSamples& I, const options& opt = {});

direct::SpectralMeasure i_to_spectral(const ComplexSamples& I,
                                      const IFunctionRep& rep,
                                      const UniformGrid& lgrid);
direct::SpectralMeasure i_to_spectral(const IFunctionRep& rep,
                                      const UniformGrid& lgrid);

// Jost function from I by the multiplicative Riemann problem on the real
// axis; the returned evaluator extends into the upper half-plane.
struct JostFromI {
  ComplexSamples f;                  // boundary values on k > 0
  std::function<cplx(cplx)> eval;    // Im k > 0
  double factorization_residual = 0.0;  // max |f(k) f(-k) Im I - k|
  bool truncation_warning = false;
};
JostFromI i_to_jost(const ComplexSamples& I, const IFunctionRep& rep,
                    const UniformGrid& kout, const options& opt = {});

direct::ScatteringDataHalfline i_to_scattering(const ComplexSamples& I,
                                               const UniformGrid& kout,
                                               const options& opt = {});

// Constructive converse: Marchenko inversion of the data, then the forward
// I-function of the recovered potential.
struct ScatteringToIResult {
  ComplexSamples I;
  PotentialSpec q;
};
ScatteringToIResult scattering_to_i(const direct::ScatteringDataHalfline& data,
                                    const UniformGrid& kout,
                                    const options& opt = {});

// Symmetric sample helper: I on [-T, T] from an evaluator on k > 0 using
// I(-k) = conj I(k).
ComplexSamples symmetric_samples(const std::function<cplx(double)>& I_pos,
                                 double T, double step);

}  // namespace ifunc
}  // namespace iscatter
