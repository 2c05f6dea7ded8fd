#include "doctest.h"

#include <cmath>

#include "iscatter/cauchy_pv.hpp"
#include "iscatter/fourier.hpp"
#include "iscatter/grid.hpp"
#include "iscatter/quadrature.hpp"

using namespace iscatter;

namespace {

RealSamples sample(const UniformGrid& g, double (*f)(double)) {
  std::vector<double> v(g.count);
  for (std::size_t i = 0; i < g.count; ++i) v[i] = f(g.node(i));
  return RealSamples(g, std::move(v));
}

}  // namespace

TEST_CASE("trapezoid quad: exact for constants and affine") {
  std::vector<double> c = {1.0, 1.0, 1.0};
  CHECK(quad(c, 0.5) == doctest::Approx(1.0).epsilon(1e-15));

  UniformGrid g(0.0, 0.25, 5);
  auto lin = sample(g, [](double x) { return x; });
  CHECK(quad(lin.values, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("quad: x^2 against the antiderivative") {
  UniformGrid g(0.0, 0.01, 101);
  auto sq = sample(g, [](double x) { return x * x; });
  CHECK(std::abs(quad(sq.values, 0.01) - 1.0 / 3.0) < 2e-5);
}

TEST_CASE("quad: O(step^2) convergence under halving") {
  auto run = [](double step) {
    auto n = static_cast<std::size_t>(std::lround(1.0 / step)) + 1;
    UniformGrid g(0.0, step, n);
    std::vector<double> v(g.count);
    for (std::size_t i = 0; i < g.count; ++i) v[i] = std::exp(g.node(i));
    return quad(v, step) - (std::exp(1.0) - 1.0);
  };
  double ratio = run(0.01) / run(0.005);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("quad: fewer than 2 samples rejected") {
  std::vector<double> one = {1.0};
  CHECK_THROWS_AS(quad(one, 0.1), error);
}

TEST_CASE("simpson weights integrate cubics exactly") {
  UniformGrid g(0.0, 0.125, 9);
  auto cu = sample(g, [](double x) { return x * x * x; });
  CHECK(quad(cu.values, 0.125, quad_rule::simpson) ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("cauchy_pv: zero integrand gives exactly zero") {
  UniformGrid g = symmetric_grid(10.0, 0.05);
  auto h = sample(g, [](double) { return 0.0; });
  auto r = cauchy_pv(h, 0.3);
  CHECK(r.value == 0.0);
  CHECK_FALSE(r.truncation_warning);
}

TEST_CASE("cauchy_pv: antisymmetric under h -> -h") {
  UniformGrid g = symmetric_grid(50.0, 0.01);
  auto h = sample(g, [](double t) { return 1.0 / (t * t + 2.0); });
  auto hm = h;
  for (auto& v : hm.values) v = -v;
  CHECK(cauchy_pv(h, 0.7).value == doctest::Approx(-cauchy_pv(hm, 0.7).value));
}

// h(t) = 1/(t^2+1), k0 = 0: PV = 0 by symmetry; the boundary value from
// above is PV + i pi h(0) = i pi (residue oracle).
TEST_CASE("cauchy_pv: lorentzian at the origin") {
  UniformGrid g = symmetric_grid(200.0, 0.01);
  auto h = sample(g, [](double t) { return 1.0 / (t * t + 1.0); });
  auto pv = cauchy_pv(h, 0.0);
  CHECK(std::abs(pv.value) < 1e-10);
  cplx full = cauchy_boundary_upper(h, 0.0);
  CHECK(std::abs(full - cplx(0.0, M_PI)) < 1e-6);
}

// h(t) = t/(t^2+1), k0 = 1: PV = pi/2 by partial fractions (frozen residue
// oracle); the 1/t tail is added in closed form after fitting its weight.
TEST_CASE("cauchy_pv: shifted pole against residue oracle") {
  UniformGrid g = symmetric_grid(300.0, 0.005);
  auto h = sample(g, [](double t) { return t / (t * t + 1.0); });
  auto pv = cauchy_pv(h, 1.0);
  double c = fit_lorentz_odd_coeff(h);
  CHECK(c == doctest::Approx(1.0).epsilon(1e-3));
  double corrected = pv.value + c * pv_tail_lorentz_odd(300.0, 1.0);
  CHECK(std::abs(corrected - M_PI / 2.0) < 1e-4);
}

TEST_CASE("cauchy_pv: k0 outside the interior is rejected") {
  UniformGrid g = symmetric_grid(5.0, 0.1);
  auto h = sample(g, [](double t) { return std::exp(-t * t); });
  CHECK_THROWS_AS(cauchy_pv(h, 5.0), error);
  CHECK_THROWS_AS(cauchy_pv(h, -7.0), error);
}

TEST_CASE("cauchy_pv: non-decaying integrand flags truncation") {
  UniformGrid g = symmetric_grid(5.0, 0.1);
  auto h = sample(g, [](double) { return 1.0; });
  CHECK(cauchy_pv(h, 0.3).truncation_warning);
}

TEST_CASE("closed-form tails match brute-force quadrature") {
  double T = 30.0, k = 2.0;
  double brute = 0.0, step = 0.01;
  for (double t = T; t < 1e5; t += step) {
    double tm = t + 0.5 * step;
    brute += step / (tm * tm * (tm - k));
    double u = -tm;
    brute += step / (u * u * (u - k));
  }
  CHECK(pv_tail_invsq(T, k) == doctest::Approx(brute).epsilon(1e-4));

  cplx z(1.0, 0.7);
  cplx bz = 0.0;
  for (double t = T; t < 1e5; t += step) {
    double tm = t + 0.5 * step;
    bz += step / (tm * tm * (tm - z));
    double u = -tm;
    bz += step / (u * u * (u - z));
  }
  CHECK(std::abs(cauchy_tail_invsq(T, z) - bz) < 1e-6);
}

TEST_CASE("diag_derivative: zero and affine diagonals") {
  UniformGrid g(0.0, 0.1, 11);
  TriangularKernel K(g);
  for (double v : diag_derivative(K)) CHECK(v == 0.0);

  for (std::size_t i = 0; i < g.count; ++i) K.at(i, i) = g.node(i);
  for (double v : diag_derivative(K)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diag_derivative: quadratic diagonal against the symbolic slope") {
  UniformGrid g(0.0, 0.01, 101);
  TriangularKernel K(g);
  for (std::size_t i = 0; i < g.count; ++i) K.at(i, i) = g.node(i) * g.node(i);
  auto d = diag_derivative(K);
  for (std::size_t i = 0; i < g.count; ++i)
    CHECK(std::abs(d[i] - 2.0 * g.node(i)) < 1e-4);
}

TEST_CASE("diag_derivative composed with cumquad reproduces the diagonal") {
  UniformGrid g(0.0, 0.005, 201);
  TriangularKernel K(g);
  for (std::size_t i = 0; i < g.count; ++i) K.at(i, i) = std::sin(g.node(i));
  auto F = cumquad(diag_derivative(K), g.step);
  for (std::size_t i = 0; i < g.count; ++i)
    CHECK(std::abs(F[i] - std::sin(g.node(i))) < 5e-5);
}

TEST_CASE("diag_derivative requires 3 rows") {
  UniformGrid g(0.0, 0.1, 2);
  TriangularKernel K(g);
  CHECK_THROWS_AS(diag_derivative(K), error);
}

TEST_CASE("triangular interpolation is exact for bilinear kernels") {
  UniformGrid g(0.0, 0.1, 21);
  TriangularKernel K(g);
  for (std::size_t i = 0; i < g.count; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      K.at(i, j) = 2.0 * g.node(i) - 3.0 * g.node(j);
  CHECK(K.interp(1.234, 0.717) == doctest::Approx(2 * 1.234 - 3 * 0.717));
  CHECK(K.interp(1.0, 1.0) == doctest::Approx(-1.0));
}

TEST_CASE("fourier tail transform recovers a one-pole spectrum exactly") {
  // g(k) = -2i/(k-i)  =>  (1/2pi) int g e^{ikx} dk = 2 e^{-x} for x > 0
  UniformGrid g = symmetric_grid(40.0, 0.02);
  std::vector<cplx> v(g.count);
  for (std::size_t i = 0; i < g.count; ++i)
    v[i] = cplx(0, -2.0) / (cplx(g.node(i), 0.0) - cplx(0, 1));
  ComplexSamples gs(g, std::move(v));
  std::vector<double> xs = {0.1, 0.5, 1.0, 2.5, -0.5, -2.0};
  auto r = fourier_transform_tail(gs, xs, /*pole_upper=*/true);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(r.values[i] - 2.0 * std::exp(-xs[i])) < 1e-8);
  CHECK(std::abs(r.values[4]) < 1e-8);
  CHECK(std::abs(r.values[5]) < 1e-8);
}

TEST_CASE("laplace integral of an indicator") {
  UniformGrid g(0.0, 1e-3, 1001);
  RealSamples a(g, std::vector<double>(g.count, 1.0));
  for (double lam : {0.5, 1.0, 3.0}) {
    double exact = (1.0 - std::exp(-lam)) / lam;
    CHECK(laplace_integral(a, lam) == doctest::Approx(exact).epsilon(1e-5));
  }
}
