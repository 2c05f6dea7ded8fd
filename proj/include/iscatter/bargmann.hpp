#pragma once

#include <functional>

#include "iscatter/grid.hpp"
#include "iscatter/potential.hpp"

namespace iscatter {
namespace ifunc {

// Closed-form data bundles for the two reflectionless-type families with
// rational Jost functions. Every member is exact; these are the analytic
// test vectors for the inversion pipelines.
struct BargmannBundle {
  std::function<cplx(cplx)> f;                  // Jost function, Im k >= 0
  std::function<cplx(double)> S;                // S-matrix on the real axis
  std::function<double(double)> F;              // Marchenko kernel, x > 0
  std::function<double(double)> F_S;            // continuous part of F
  std::function<double(double, double)> A;      // transformation kernel
  std::function<cplx(cplx)> I;                  // I-function, Im k >= 0
  std::function<double(double)> Lscript;        // one-variable GL kernel
  PotentialSpec q;

  double r0 = 0.0;                              // nonzero iff f(0) = 0
  std::vector<std::pair<double, double>> poles; // (k_j, r_j)
  double s1 = 0.0;                              // norming constant (J = 1)
  double nu = 0.0;                              // decay rate of f's pole
};

// f(0) = 0 family: f = k/(k + i nu0), q = -2 nu0^2 sech^2(nu0 x), J = 0.
BargmannBundle bargmann_r0(double nu0);

// J = 1 family: f = (k - i k1)/(k + i nu1), nu1^2 = k1^2 + r1, f(0) != 0.
BargmannBundle bargmann_one_pole(double k1, double r1);

}  // namespace ifunc
}  // namespace iscatter
