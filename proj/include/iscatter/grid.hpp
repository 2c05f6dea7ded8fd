#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "iscatter/errors.hpp"

namespace iscatter {

using cplx = std::complex<double>;

struct UniformGrid {
  double start = 0.0;
  double step = 0.0;
  std::size_t count = 0;

  UniformGrid() = default;
  UniformGrid(double start_, double step_, std::size_t count_)
      : start(start_), step(step_), count(count_) {
    require(step > 0.0, errc::invalid_input, "grid step must be positive");
    require(count >= 2, errc::invalid_input, "grid needs at least 2 nodes");
  }

  double node(std::size_t i) const { return start + static_cast<double>(i) * step; }
  double back() const { return node(count - 1); }

  std::vector<double> nodes() const {
    std::vector<double> x(count);
    for (std::size_t i = 0; i < count; ++i) x[i] = node(i);
    return x;
  }

  // Index of the last node <= x, clamped to [0, count-2].
  std::size_t cell(double x) const {
    if (x <= start) return 0;
    auto i = static_cast<std::size_t>((x - start) / step);
    if (i > count - 2) i = count - 2;
    return i;
  }
};

// Grid symmetric about 0: [-T, T] with an odd node exactly at 0.
inline UniformGrid symmetric_grid(double T, double step) {
  auto half = static_cast<std::size_t>(std::ceil(T / step));
  return UniformGrid(-static_cast<double>(half) * step, step, 2 * half + 1);
}

struct ComplexSamples {
  UniformGrid grid;
  std::vector<cplx> values;

  ComplexSamples() = default;
  ComplexSamples(UniformGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    require(values.size() == grid.count, errc::invalid_input,
            "sample count does not match grid");
  }

  cplx interp(double k) const {
    std::size_t i = grid.cell(k);
    double t = (k - grid.node(i)) / grid.step;
    return values[i] * (1.0 - t) + values[i + 1] * t;
  }
};

struct RealSamples {
  UniformGrid grid;
  std::vector<double> values;

  RealSamples() = default;
  RealSamples(UniformGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    require(values.size() == grid.count, errc::invalid_input,
            "sample count does not match grid");
  }

  double interp(double x) const {
    std::size_t i = grid.cell(x);
    double t = (x - grid.node(i)) / grid.step;
    return values[i] * (1.0 - t) + values[i + 1] * t;
  }
};

// Kernel on the triangle 0 <= y <= x <= xmax sampled with the same step on
// both axes; row i holds K(x_i, y_j), j = 0..i. xgrid.start must be 0.
struct TriangularKernel {
  UniformGrid xgrid;
  std::vector<std::vector<double>> rows;

  TriangularKernel() = default;
  explicit TriangularKernel(UniformGrid g) : xgrid(g) {
    require(g.start == 0.0, errc::invalid_input, "triangular kernel starts at x=0");
    rows.resize(g.count);
    for (std::size_t i = 0; i < g.count; ++i) rows[i].assign(i + 1, 0.0);
  }

  double operator()(std::size_t i, std::size_t j) const { return rows[i][j]; }
  double& at(std::size_t i, std::size_t j) { return rows[i][j]; }

  std::vector<double> diagonal() const {
    std::vector<double> d(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) d[i] = rows[i][i];
    return d;
  }

  // Piecewise-linear evaluation inside the triangle. Near the diagonal a row
  // may not reach y; that row's value is extended linearly from its last cell.
  double interp(double x, double y) const;
};

}  // namespace iscatter
