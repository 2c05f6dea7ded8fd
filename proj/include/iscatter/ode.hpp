#pragma once

#include "iscatter/grid.hpp"
#include "iscatter/potential.hpp"

namespace iscatter {

struct march_state {
  cplx u = 0.0, du = 0.0;
};

// March u'' = (q(x) - k2) u over xgrid (forward) with classical RK4,
// nsub substeps per grid cell. Returns the state at every node.
std::vector<march_state> march_grid(const PotentialSpec& q, cplx k2,
                                    const UniformGrid& xgrid, march_state init,
                                    int nsub = 1);

// phi(0)=0, phi'(0)=1 and psi(0)=1, psi'(0)=0 for real k (k = 0 allowed).
struct RegularPair {
  UniformGrid xgrid;
  std::vector<double> phi, dphi, psi, dpsi;
};
RegularPair regular_solutions(const PotentialSpec& q, double k,
                              const UniformGrid& xgrid, int nsub = 1);

// Jost solution for Im k >= 0, marched inward from the support edge with
// exact free data through the reduced function f = e^{ikx} m(x),
//   m'' = q m - 2ik m', m(a)=1, m'(a)=0.
struct JostPoint {
  cplx f0, fp0;  // f(0,k), f'(0,k)
};
JostPoint jost_point(const PotentialSpec& q, cplx k, double step);

struct JostRow {
  cplx f0, fp0;
  std::vector<cplx> fx;  // f(x,k) on the requested xgrid
};
JostRow jost_row(const PotentialSpec& q, cplx k, const UniformGrid& xgrid,
                 int nsub = 1);

// States of m where u = e^{ikx} m(x) solves u'' = (q - k^2) u, marched from
// x_from to x_to (either direction); ncells+1 nodes in march order starting
// from m = 1, m' = 0 at x_from.
std::vector<march_state> march_reduced(const PotentialSpec& q, cplx k,
                                       double x_from, double x_to,
                                       std::size_t ncells);

}  // namespace iscatter
