#include "iscatter/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace iscatter {

std::vector<double> quad_weights(std::size_t n, quad_rule rule) {
  require(n >= 2, errc::invalid_input, "quadrature needs at least 2 samples");
  std::vector<double> w(n, 0.0);
  if (rule == quad_rule::trapezoid || n < 4) {
    w.assign(n, 1.0);
    w.front() = w.back() = 0.5;
    return w;
  }
  // Simpson over an even number of intervals; odd counts get a trailing 3/8
  // patch on the last three intervals.
  std::size_t m = n - 1;  // interval count
  std::size_t simpson_end = (m % 2 == 0) ? n - 1 : n - 4;
  for (std::size_t i = 0; i < simpson_end; i += 2) {
    w[i] += 1.0 / 3.0;
    w[i + 1] += 4.0 / 3.0;
    w[i + 2] += 1.0 / 3.0;
  }
  if (m % 2 != 0) {
    w[n - 4] += 3.0 / 8.0;
    w[n - 3] += 9.0 / 8.0;
    w[n - 2] += 9.0 / 8.0;
    w[n - 1] += 3.0 / 8.0;
  }
  return w;
}

double quad(std::span<const double> s, double step, quad_rule rule) {
  auto w = quad_weights(s.size(), rule);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += w[i] * s[i];
  return acc * step;
}

cplx quad(std::span<const cplx> s, double step, quad_rule rule) {
  auto w = quad_weights(s.size(), rule);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += w[i] * s[i];
  return acc * step;
}

std::vector<double> cumquad(std::span<const double> s, double step) {
  require(s.size() >= 2, errc::invalid_input, "cumquad needs at least 2 samples");
  std::vector<double> F(s.size(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i)
    F[i] = F[i - 1] + 0.5 * step * (s[i - 1] + s[i]);
  return F;
}

std::vector<double> differentiate(std::span<const double> s, double step) {
  require(s.size() >= 3, errc::invalid_input, "differentiate needs at least 3 samples");
  std::size_t n = s.size();
  std::vector<double> d(n);
  d[0] = (-3.0 * s[0] + 4.0 * s[1] - s[2]) / (2.0 * step);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (i >= 2 && i + 2 < n) {
      // five-point central stencil: the second-order bias of the short one
      // is what limits the resonance-sensitive round trips
      d[i] = (s[i - 2] - 8.0 * s[i - 1] + 8.0 * s[i + 1] - s[i + 2]) /
             (12.0 * step);
    } else {
      d[i] = (s[i + 1] - s[i - 1]) / (2.0 * step);
    }
  }
  d[n - 1] = (3.0 * s[n - 1] - 4.0 * s[n - 2] + s[n - 3]) / (2.0 * step);
  return d;
}

std::vector<double> differentiate_jump_aware(std::span<const double> s,
                                             double step) {
  auto base = differentiate(s, step);
  std::size_t n = s.size();
  if (n < 8) return base;

  // second differences and their global median
  std::vector<double> dd(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    dd[i] = std::abs(s[i + 1] - 2.0 * s[i] + s[i - 1]);
  auto sorted = dd;
  std::sort(sorted.begin(), sorted.end());
  double med = sorted[sorted.size() / 2];

  std::vector<bool> nearjump(n, false);
  for (std::size_t i = 3; i + 3 < n; ++i) {
    // a kink is both a global and a local outlier, so smooth exponential
    // decay (where the global median is tiny) is not misflagged
    double local = std::max(dd[i - 3], dd[i + 3]);
    if (dd[i] > 5.0 * med + 1e-14 && dd[i] > 4.0 * local + 1e-14) {
      for (std::size_t o = 0; o <= 2; ++o) {
        if (i >= o) nearjump[i - o] = true;
        if (i + o < n) nearjump[i + o] = true;
      }
    }
  }
  for (std::size_t i = 2; i + 2 < n; ++i) {
    if (!nearjump[i]) continue;
    double left = (3.0 * s[i] - 4.0 * s[i - 1] + s[i - 2]) / (2.0 * step);
    double right = (-3.0 * s[i] + 4.0 * s[i + 1] - s[i + 2]) / (2.0 * step);
    double curv_l = std::abs(s[i] - 2.0 * s[i - 1] + s[i - 2]);
    double curv_r = std::abs(s[i] - 2.0 * s[i + 1] + s[i + 2]);
    base[i] = (curv_l <= curv_r) ? left : right;
  }
  return base;
}

std::vector<double> diag_derivative(const TriangularKernel& K) {
  require(K.rows.size() >= 3, errc::invalid_input, "diag_derivative needs >=3 rows");
  auto diag = K.diagonal();
  return differentiate(diag, K.xgrid.step);
}

}  // namespace iscatter
