#pragma once

#include "iscatter/direct.hpp"
#include "iscatter/quadrature.hpp"

namespace iscatter {
namespace marchenko {

struct options {
  double k_truncation = 60.0;   // symmetric k-window for the spectral transform
  double k_step = 0.0;          // 0: choose min(0.02, pi/(4 xmax))
  quad_rule rule = quad_rule::trapezoid;
  double ymax_tail = 1e-10;     // |F(x + ymax)| threshold picking ymax
  double residual_tol = 1e-6;   // Nystrom back-substitution guard
  double kmax_bound = 10.0;     // bound-state window in A_to_scattering
  double resonance_tol = 1e-4;  // |f(0)| threshold on quadrature-built f
};

// F(x) = F_S(x) + sum_j s_j e^{-k_j x}. F_S may jump at x = 0; it is carried
// as a continuous remainder sampled on a symmetric grid plus the two-pole
// model (alpha, beta) of the transform tail, evaluated in closed form so the
// jump stays sharp.
struct MarchenkoF {
  RealSamples F_S_cont;
  double alpha = 0.0, beta = 0.0;
  std::vector<std::pair<double, double>> F_d;  // (s_j, k_j), k_j decreasing
  double norm_sup = 0.0, norm_L1 = 0.0, norm_xFp = 0.0;  // clause-iv report

  double F_S(double x) const;
  double operator()(double x) const;
  // smallest y with |F| below the tail threshold for all arguments >= x+y
  double pick_ymax(double tail) const;
};

MarchenkoF scattering_to_F(const direct::ScatteringDataHalfline& data,
                           double xmax, const options& opt = {});

direct::ScatteringDataHalfline F_to_scattering(const RealSamples& F_full,
                                               const UniformGrid& kgrid,
                                               const options& opt = {});

// A(x,y) on y >= x >= 0, rows sampled at y = x_i + j h up to ymax.
struct AKernel {
  UniformGrid xgrid;
  double ymax = 0.0;
  std::vector<std::vector<double>> rows;
  double max_solve_residual = 0.0;
  double bound_constant = 0.0;  // fitted c in |A(x,y)| <= c sigma((x+y)/2)

  double at(std::size_t i, std::size_t j) const { return rows[i][j]; }
  std::vector<double> diagonal() const;
  double interp(double x, double y) const;
};

AKernel solve_marchenko(const MarchenkoF& F, const UniformGrid& xgrid,
                        double ymax, const options& opt = {});

struct QResult {
  PotentialSpec q;
  double diag_consistency = 0.0;  // max |A(x,x) + (1/2) int_x^inf q|
};
QResult A_to_q(const AKernel& A);

AKernel q_to_A(const PotentialSpec& q, const UniformGrid& xgrid, double ymax);

direct::ScatteringDataHalfline A_to_scattering(const RealSamples& A0,
                                               const RealSamples& A0x,
                                               const UniformGrid& kgrid,
                                               const options& opt = {});
// convenience: rows 0/1/2 of an AKernel supply A(0,.) and A_x(0,.)
direct::ScatteringDataHalfline A_to_scattering(const AKernel& A,
                                               const UniformGrid& kgrid,
                                               const options& opt = {});

struct KeyEquationReport {
  double residual_pos = 0.0;  // y > 0: left side must vanish
  double residual_neg = 0.0;  // y < 0: left side must reproduce A(-y)
};
KeyEquationReport key_equation_check(const RealSamples& A0, const MarchenkoF& F,
                                     double ywindow);

}  // namespace marchenko
}  // namespace iscatter
