#pragma once

#include <string>
#include <vector>

#include "iscatter/grid.hpp"

namespace iscatter {

// Real potential, either tabulated on a grid or one of the named closed
// forms used across the pipelines. support_radius declares q(x) = 0 for
// x > support_radius; decaying (non-compact) kinds carry a numeric cutoff
// chosen so that int_a^inf (1+t)|q| dt < 1e-10. offset translates the
// potential for full-line placements: q(x) = base(x - offset).
struct PotentialSpec {
  enum class kind_t { zero, grid, well, sech2, bargmann_one_pole, bump, one_plus_cos };

  kind_t kind = kind_t::zero;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;  // closed-form parameters
  UniformGrid grid;                      // tabulated form
  std::vector<double> values;

  double offset = 0.0;
  double support_left = 0.0;    // q = 0 for x < support_left
  double support_radius = 0.0;  // q = 0 for x > support_radius
  bool compact = true;          // false: support_radius is a numeric truncation
  std::vector<std::string> tags;

  double operator()(double x) const;

  static PotentialSpec zero();
  // q = -depth on [0, radius]
  static PotentialSpec well(double depth, double radius);
  // q = -2 nu0^2 sech^2(nu0 x); Jost function k/(k + i nu0)
  static PotentialSpec sech2(double nu0);
  // one bound state k1, residue r1; Jost function (k - i k1)/(k + i nu1)
  static PotentialSpec bargmann_one_pole(double k1, double r1);
  // C-infinity bump amp*exp(1 - 1/(1-u^2)), u = (x-center)/width
  static PotentialSpec bump(double amp, double center, double width);
  // q = 1 + cos(pi x) on [0,1]
  static PotentialSpec one_plus_cos();
  static PotentialSpec from_grid(UniformGrid g, std::vector<double> v,
                                 double support_radius,
                                 std::vector<std::string> tags = {});

  PotentialSpec shifted(double x0) const;
};

}  // namespace iscatter
