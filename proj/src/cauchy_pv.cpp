#include "iscatter/cauchy_pv.hpp"

#include <cmath>

#include "iscatter/quadrature.hpp"

namespace iscatter {

pv_result cauchy_pv(const RealSamples& h, double k0, double decay_tol) {
  const auto& g = h.grid;
  require(g.count >= 3, errc::invalid_input, "cauchy_pv needs at least 3 samples");
  const double A = g.start, B = g.back();
  require(k0 > A + g.step && k0 < B - g.step, errc::invalid_input,
          "cauchy_pv: k0 must lie inside the grid interior");

  const double hk0 = h.interp(k0);
  const double step = g.step;

  pv_result out;
  out.truncation_warning =
      std::abs(h.values.front()) > decay_tol || std::abs(h.values.back()) > decay_tol;

  double acc = 0.0;
  for (std::size_t i = 0; i < g.count; ++i) {
    double t = g.node(i);
    double w = (i == 0 || i + 1 == g.count) ? 0.5 : 1.0;
    double d = t - k0;
    double integrand;
    if (std::abs(d) < 0.25 * step) {
      // near the singular node the subtracted integrand tends to h'(k0)
      std::size_t lo = (i == 0) ? 0 : i - 1;
      std::size_t hi = (i + 1 == g.count) ? i : i + 1;
      integrand = (h.values[hi] - h.values[lo]) / (static_cast<double>(hi - lo) * step);
    } else {
      integrand = (h.values[i] - hk0) / d;
    }
    acc += w * integrand;
  }
  out.value = acc * step + hk0 * std::log(std::abs((B - k0) / (A - k0)));
  return out;
}

cplx cauchy_transform(const RealSamples& g, cplx z) {
  require(std::abs(z.imag()) > 0.0, errc::invalid_input,
          "cauchy_transform: z must be off the real axis");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < g.grid.count; ++i) {
    double w = (i == 0 || i + 1 == g.grid.count) ? 0.5 : 1.0;
    acc += w * g.values[i] / (g.grid.node(i) - z);
  }
  return acc * g.grid.step;
}

cplx cauchy_transform(const ComplexSamples& g, cplx z) {
  require(std::abs(z.imag()) > 0.0, errc::invalid_input,
          "cauchy_transform: z must be off the real axis");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < g.grid.count; ++i) {
    double w = (i == 0 || i + 1 == g.grid.count) ? 0.5 : 1.0;
    acc += w * g.values[i] / (g.grid.node(i) - z);
  }
  return acc * g.grid.step;
}

cplx cauchy_boundary_upper(const RealSamples& g, double k) {
  auto pv = cauchy_pv(g, k);
  return cplx(pv.value, M_PI * g.interp(k));
}

double pv_tail_invsq(double T, double k) {
  require(std::abs(k) < T, errc::invalid_input, "pv_tail_invsq: |k| < T required");
  double u = k / T;
  if (std::abs(u) < 1e-3) {
    // odd series: 2k/(3T^3) + 2k^3/(5T^5) + ...
    return 2.0 * k / (3.0 * T * T * T) * (1.0 + 0.6 * u * u);
  }
  return std::log((T + k) / (T - k)) / (k * k) - 2.0 / (k * T);
}

cplx cauchy_tail_invsq(double T, cplx z) {
  if (std::abs(z) < 1e-3 * T) {
    cplx u = z / T;
    return 2.0 * z / (3.0 * T * T * T) * (1.0 + 0.6 * u * u);
  }
  // int_T^inf dt/(t^2(t-z)) = ln(T/(T-z))/z^2 - 1/(zT); mirror for t < -T.
  cplx up = std::log(T / (T - z)) / (z * z) - 1.0 / (z * T);
  cplx dn = -std::log(T / (T + z)) / (z * z) - 1.0 / (z * T);
  return up + dn;
}

double pv_tail_lorentz_odd(double T, double k) {
  require(std::abs(k) < T, errc::invalid_input, "pv_tail_lorentz_odd: |k| < T required");
  return (k * std::log((T + k) / (T - k)) + 2.0 * std::atan(1.0 / T)) / (k * k + 1.0);
}

cplx cauchy_tail_lorentz_odd(double T, cplx z) {
  return (z * std::log((T + z) / (T - z)) + 2.0 * std::atan(1.0 / T)) / (z * z + 1.0);
}

namespace {

double tail_average(const RealSamples& g, double fraction,
                    double (*shape)(double)) {
  std::size_t n = g.grid.count;
  auto m = static_cast<std::size_t>(fraction * static_cast<double>(n));
  if (m < 4) m = std::min<std::size_t>(4, n / 2);
  double acc = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += g.values[i] / shape(g.grid.node(i));
    acc += g.values[n - 1 - i] / shape(g.grid.node(n - 1 - i));
    cnt += 2;
  }
  return acc / static_cast<double>(cnt);
}

}  // namespace

double fit_invsq_coeff(const RealSamples& g, double fraction) {
  return tail_average(g, fraction, [](double t) { return 1.0 / (t * t); });
}

double fit_lorentz_odd_coeff(const RealSamples& g, double fraction) {
  return tail_average(g, fraction, [](double t) { return t / (t * t + 1.0); });
}

}  // namespace iscatter
