#include "iscatter/grid.hpp"

#include <algorithm>
#include <cmath>

namespace iscatter {

double TriangularKernel::interp(double x, double y) const {
  // Interpolation runs along diagonal bands x - y = const: the kernel is
  // smooth across the whole triangle in those coordinates, while row-based
  // blending cuts the corner where a row meets the diagonal.
  if (y < 0.0) y = 0.0;
  if (y > x) y = x;
  const double h = xgrid.step;
  const std::size_t n = xgrid.count;
  double d = (x - y) / h;
  auto jb = static_cast<std::size_t>(std::floor(d));
  if (jb > n - 2) jb = n - 2;
  double fd = std::clamp(d - static_cast<double>(jb), 0.0, 1.0);

  double s2 = (x + y) / h;
  auto band = [&](std::size_t j) {
    // entries K(i, i-j) sit at x+y = (2i-j) h
    double fi = 0.5 * (s2 + static_cast<double>(j));
    auto i0 = static_cast<std::size_t>(std::floor(fi));
    if (i0 < j) i0 = j;
    if (i0 > n - 2) i0 = n - 2;
    double t = std::clamp(fi - static_cast<double>(i0), 0.0, 1.0);
    return rows[i0][i0 - j] * (1.0 - t) + rows[i0 + 1][i0 + 1 - j] * t;
  };
  return band(jb) * (1.0 - fd) + band(jb + 1) * fd;
}

}  // namespace iscatter
