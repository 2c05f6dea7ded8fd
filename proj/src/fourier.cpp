#include "iscatter/fourier.hpp"

#include <cmath>

#include "iscatter/parallel.hpp"

namespace iscatter {

namespace {

ft_tail_fit fit_two_pole(const ComplexSamples& g, bool pole_upper, double fraction) {
  const cplx pole = pole_upper ? cplx(0, 1) : cplx(0, -1);
  std::size_t n = g.grid.count;
  auto m = static_cast<std::size_t>(fraction * static_cast<double>(n));
  if (m < 8) m = std::min<std::size_t>(8, n / 2);
  // real least squares for g ~ alpha*i/(k-p) + beta/(k-p)^2, alpha/beta real
  double a11 = 0, a12 = 0, a22 = 0, r1 = 0, r2 = 0;
  auto add = [&](std::size_t j) {
    cplx d = g.grid.node(j) - pole;
    cplx b1 = cplx(0, 1) / d;
    cplx b2 = 1.0 / (d * d);
    a11 += std::norm(b1);
    a22 += std::norm(b2);
    a12 += b1.real() * b2.real() + b1.imag() * b2.imag();
    r1 += b1.real() * g.values[j].real() + b1.imag() * g.values[j].imag();
    r2 += b2.real() * g.values[j].real() + b2.imag() * g.values[j].imag();
  };
  for (std::size_t j = 0; j < m; ++j) {
    add(j);
    add(n - 1 - j);
  }
  double det = a11 * a22 - a12 * a12;
  ft_tail_fit fit;
  if (std::abs(det) > 1e-300) {
    fit.alpha = (r1 * a22 - r2 * a12) / det;
    fit.beta = (a11 * r2 - a12 * r1) / det;
  }
  return fit;
}

}  // namespace

double ft_result::model(double x, bool pole_upper) const {
  if (pole_upper) {
    if (x >= 0.0) return -fit.alpha * std::exp(-x) - fit.beta * x * std::exp(-x);
    return 0.0;
  }
  if (x <= 0.0) return fit.alpha * std::exp(x) + fit.beta * x * std::exp(x);
  return 0.0;
}

ft_result fourier_transform_tail(const ComplexSamples& g,
                                 std::span<const double> xs, bool pole_upper,
                                 double fit_fraction) {
  ft_result out;
  out.fit = fit_two_pole(g, pole_upper, fit_fraction);
  const cplx pole = pole_upper ? cplx(0, 1) : cplx(0, -1);

  std::size_t n = g.grid.count;
  std::vector<double> re(n), im(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx d = g.grid.node(j) - pole;
    cplx rem = g.values[j] - cplx(0, out.fit.alpha) / d - out.fit.beta / (d * d);
    double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    re[j] = w * rem.real();
    im[j] = w * rem.imag();
  }

  out.values.assign(xs.size(), 0.0);
  out.remainder.assign(xs.size(), 0.0);
  const double scale = g.grid.step / (2.0 * M_PI);
  parallel_for(xs.size(), [&](std::size_t ix) {
    double x = xs[ix];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double ph = g.grid.node(j) * x;
      acc += re[j] * std::cos(ph) - im[j] * std::sin(ph);
    }
    out.remainder[ix] = acc * scale;
    out.values[ix] = out.remainder[ix] + out.model(x, pole_upper);
  });
  return out;
}

double fourier_transform_plain(const ComplexSamples& g, double x) {
  std::size_t n = g.grid.count;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    double ph = g.grid.node(j) * x;
    acc += w * (g.values[j].real() * std::cos(ph) - g.values[j].imag() * std::sin(ph));
  }
  return acc * g.grid.step / (2.0 * M_PI);
}

cplx spectrum_integral(const RealSamples& F, double k) {
  std::size_t n = F.grid.count;
  cplx acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    double ph = -k * F.grid.node(j);
    acc += w * F.values[j] * cplx(std::cos(ph), std::sin(ph));
  }
  return acc * F.grid.step;
}

cplx fourier_integral(const RealSamples& a, double k) {
  std::size_t n = a.grid.count;
  cplx acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    double ph = k * a.grid.node(j);
    acc += w * a.values[j] * cplx(std::cos(ph), std::sin(ph));
  }
  return acc * a.grid.step;
}

double laplace_integral(const RealSamples& a, double lambda) {
  std::size_t n = a.grid.count;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    acc += w * a.values[j] * std::exp(-lambda * a.grid.node(j));
  }
  return acc * a.grid.step;
}

}  // namespace iscatter
