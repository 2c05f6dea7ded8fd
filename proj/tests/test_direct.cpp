#include "doctest.h"

#include <cmath>

#include "iscatter/bargmann.hpp"
#include "iscatter/direct.hpp"

using namespace iscatter;

namespace {

// log-derivative matching for the bound state of q = -V0 on [0,1]:
// sqrt(V0-x^2) cot sqrt(V0-x^2) = -x, bisected
double well_bound_state(double V0) {
  auto g = [&](double x) {
    double b = std::sqrt(V0 - x * x);
    return b * std::cos(b) / std::sin(b) + x;
  };
  double lo = 1e-3, hi = std::sqrt(V0) - 1e-9;
  // bracket the root from a coarse scan
  double prev = g(lo), a = lo;
  for (double x = lo; x < hi; x += 1e-3) {
    double cur = g(x);
    if (prev * cur < 0.0) {
      hi = x;
      break;
    }
    prev = cur;
    a = x;
  }
  lo = a;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(lo) * g(mid) <= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Jost function of the square well q = -V0 on [0,1] in closed form
cplx well_jost(double V0, double k) {
  double kp = std::sqrt(k * k + V0);
  cplx eik = std::exp(cplx(0, k));
  return eik * (std::cos(kp) - cplx(0, 1) * (k / kp) * std::sin(kp));
}

}  // namespace

TEST_CASE("regular solutions: free case") {
  UniformGrid xg(0.0, 1e-3, 1001);
  auto r = regular_solutions(PotentialSpec::zero(), 2.0, xg);
  for (std::size_t i = 0; i < xg.count; i += 100) {
    double x = xg.node(i);
    CHECK(std::abs(r.phi[i] - std::sin(2.0 * x) / 2.0) < 1e-8);
    CHECK(std::abs(r.psi[i] - std::cos(2.0 * x)) < 1e-8);
  }
}

TEST_CASE("regular solutions: k = 0 gives phi = x") {
  UniformGrid xg(0.0, 1e-2, 101);
  auto r = regular_solutions(PotentialSpec::zero(), 0.0, xg);
  for (std::size_t i = 0; i < xg.count; i += 10)
    CHECK(std::abs(r.phi[i] - xg.node(i)) < 1e-12);
}

TEST_CASE("regular solutions: square well against closed form and fine march") {
  auto q = PotentialSpec::well(4.0, 1.0);
  UniformGrid xg(0.0, 1e-3, 1001);
  auto r = regular_solutions(q, 1.0, xg);
  double kp = std::sqrt(5.0);
  CHECK(std::abs(r.phi.back() - std::sin(kp) / kp) < 1e-6);
  // independent march at 10x finer step
  UniformGrid xf(0.0, 1e-4, 10001);
  auto rf = regular_solutions(q, 1.0, xf);
  CHECK(std::abs(r.phi.back() - rf.phi.back()) < 1e-6);
}

TEST_CASE("jost: free potential") {
  UniformGrid kg(0.5, 0.5, 8);
  auto b = direct::jost(PotentialSpec::zero(), kg);
  for (std::size_t i = 0; i < kg.count; ++i) {
    CHECK(std::abs(b.f[i] - 1.0) < 1e-12);
    CHECK(std::abs(b.fp0[i] - cplx(0, kg.node(i))) < 1e-12);
  }
  CHECK_FALSE(b.resonance_at_zero);
}

TEST_CASE("jost: Bargmann resonance family has f(k) = k/(k+i)") {
  auto q = PotentialSpec::sech2(1.0);
  UniformGrid kg(0.25, 0.25, 40);
  auto b = direct::jost(q, kg);
  for (std::size_t i = 0; i < kg.count; ++i) {
    double k = kg.node(i);
    cplx exact = k / cplx(k, 1.0);
    CHECK(std::abs(b.f[i] - exact) < 1e-4);
  }
  // f(1) = 0.5 - 0.5i
  CHECK(std::abs(b.f_interp(1.0) - cplx(0.5, -0.5)) < 1e-4);
  CHECK(b.resonance_at_zero);
}

TEST_CASE("jost: square well against the closed form") {
  auto q = PotentialSpec::well(4.0, 1.0);
  UniformGrid kg(0.5, 0.5, 20);
  auto b = direct::jost(q, kg);
  for (std::size_t i = 0; i < kg.count; ++i)
    CHECK(std::abs(b.f[i] - well_jost(4.0, kg.node(i))) < 1e-6);
}

TEST_CASE("wronskian identity across the corpus") {
  UniformGrid kg(0.1, 0.1, 300);
  for (auto q : {PotentialSpec::zero(), PotentialSpec::sech2(0.5),
                 PotentialSpec::sech2(1.0), PotentialSpec::well(1.0, 1.0),
                 PotentialSpec::well(4.0, 1.0),
                 PotentialSpec::bump(0.75, 1.0, 1.0)}) {
    auto b = direct::jost(q, kg);
    CHECK(b.wronskian_residual < 1e-6);
  }
}

TEST_CASE("bound states: free and Bargmann have none; the deep well has one") {
  CHECK(direct::bound_states(PotentialSpec::zero(), 5.0).empty());
  CHECK(direct::bound_states(PotentialSpec::sech2(1.0), 5.0).empty());
  CHECK(direct::bound_states(PotentialSpec::well(1.0, 1.0), 5.0).empty());

  auto bs = direct::bound_states(PotentialSpec::well(4.0, 1.0), 5.0);
  REQUIRE(bs.size() == 1);
  double oracle = well_bound_state(4.0);
  CHECK(std::abs(bs[0].k - oracle) < 1e-6);
  CHECK(std::abs(bs[0].k - 0.637) < 0.01);
  CHECK(bs[0].s > 0.0);
  CHECK(bs[0].c > 0.0);
}

TEST_CASE("residue consistency: point mass equals 2 k r with r from the pole") {
  auto q = PotentialSpec::well(4.0, 1.0);
  auto bs = direct::bound_states(q, 5.0);
  REQUIRE(bs.size() == 1);
  double kj = bs[0].k;
  // independent residue estimate: (k - i k_j) I(k) approached radially
  auto res_at = [&](double h) {
    auto p = direct::jost_at(q, cplx(0.0, kj + h));
    cplx I = p.fp0 / p.f0;
    return (cplx(0.0, h) * I / cplx(0.0, 1.0)).real();  // -> r_j
  };
  double r1 = res_at(1e-3), r2 = res_at(5e-4);
  double r_est = 2.0 * r2 - r1;  // Richardson in h
  CHECK(std::abs(bs[0].c - 2.0 * kj * r_est) / bs[0].c < 1e-4);
}

TEST_CASE("scattering data: free, Bargmann, and wells (index integer-exact)") {
  UniformGrid kg(0.05, 0.05, 600);

  auto d0 = direct::scattering_data(PotentialSpec::zero(), kg);
  for (auto s : d0.S.values) CHECK(std::abs(s - 1.0) < 1e-10);
  CHECK(d0.index == 0);
  for (double d : d0.delta) CHECK(std::abs(d) < 1e-10);

  auto db = direct::scattering_data(PotentialSpec::sech2(1.0), kg);
  CHECK(db.f0_vanishes);
  CHECK(db.J() == 0);
  CHECK(db.index == -1);  // -2J - 1 with a zero-energy resonance
  CHECK(std::abs(db.S.interp(1.0) - cplx(0, 1)) < 1e-4);

  auto dw1 = direct::scattering_data(PotentialSpec::well(1.0, 1.0), kg);
  CHECK_FALSE(dw1.f0_vanishes);
  CHECK(dw1.J() == 0);
  CHECK(dw1.index == 0);

  auto dw4 = direct::scattering_data(PotentialSpec::well(4.0, 1.0), kg);
  CHECK_FALSE(dw4.f0_vanishes);
  CHECK(dw4.J() == 1);
  CHECK(dw4.index == -2);
  CHECK(dw4.index_residual < 0.2);
}

TEST_CASE("unitarity and phase oddness hold on the grid") {
  UniformGrid kg(0.05, 0.05, 400);
  auto d = direct::scattering_data(PotentialSpec::well(4.0, 1.0), kg);
  for (std::size_t i = 0; i < kg.count; ++i)
    CHECK(std::abs(std::abs(d.S.values[i]) - 1.0) < 1e-8);
  // delta(inf) anchor: top of grid matches the Born tail ~ -int q/(2k) = 0.1
  CHECK(std::abs(d.delta.back()) < 0.15);
  CHECK(std::abs(d.delta.back() - 4.0 / (2.0 * kg.back())) < 0.02);
}

TEST_CASE("spectral measure: free density and Bargmann value") {
  UniformGrid lg(0.0, 0.05, 201);
  auto m0 = direct::spectral_measure(PotentialSpec::zero(), lg);
  for (std::size_t i = 0; i < lg.count; ++i)
    CHECK(std::abs(m0.density[i] - std::sqrt(lg.node(i)) / M_PI) < 1e-9);
  CHECK(m0.masses.empty());

  auto mb = direct::spectral_measure(PotentialSpec::sech2(1.0), lg);
  // density(1) = (1/pi) / |f(1)|^2 = 2/pi
  CHECK(std::abs(mb.density_at(1.0) - 2.0 / M_PI) < 1e-3);
  CHECK(mb.masses.empty());

  auto mw = direct::spectral_measure(PotentialSpec::well(4.0, 1.0), lg);
  REQUIRE(mw.masses.size() == 1);
  CHECK(mw.masses[0].first < 0.0);
  CHECK(mw.masses[0].second > 0.0);
}

TEST_CASE("I-function: free and Bargmann, with the Herglotz identity") {
  UniformGrid kg(0.25, 0.25, 60);
  auto I0 = direct::i_function(PotentialSpec::zero(), kg);
  for (std::size_t i = 0; i < kg.count; ++i)
    CHECK(std::abs(I0.values[i] - cplx(0, kg.node(i))) < 1e-10);

  auto Ib = direct::i_function(PotentialSpec::sech2(1.0), kg);
  CHECK(std::abs(Ib.interp(1.0) - cplx(0, 2)) < 1e-4);
  // Im I(1) = 1/|f(1)|^2 = 2 for this family
  CHECK(std::abs(Ib.interp(1.0).imag() - 2.0) < 1e-4);
}

TEST_CASE("weyl checks: free case is clean, Bargmann identity, well trend") {
  UniformGrid kg(0.5, 0.5, 60);
  auto r0 = direct::weyl_checks(PotentialSpec::zero(), kg);
  CHECK(r0.w_vs_jost_residual < 1e-7);
  for (double v : r0.asym_residual) CHECK(v < 1e-9);
  for (double v : r0.herglotz_residual) CHECK(v < 1e-6);

  // I(k) - ik = i/k exactly equals q(0)/(2ik) with q(0) = -2
  auto rb = direct::weyl_checks(PotentialSpec::sech2(1.0), kg);
  for (double v : rb.asym_residual) CHECK(v < 1e-3);
  for (double v : rb.herglotz_residual) CHECK(v < 5e-3);

  auto rw = direct::weyl_checks(PotentialSpec::well(4.0, 1.0), kg);
  CHECK(rw.asym_trending_down);
  CHECK(rw.w_vs_jost_residual < 1e-5);
}

TEST_CASE("rho_from_weyl: free data and Herglotz guard") {
  UniformGrid lg(0.0, 0.1, 101);
  std::vector<cplx> m(lg.count);
  for (std::size_t i = 0; i < lg.count; ++i)
    m[i] = cplx(0, std::sqrt(lg.node(i)));
  auto rho = direct::rho_from_weyl(ComplexSamples(lg, m));
  for (std::size_t i = 0; i < lg.count; ++i)
    CHECK(std::abs(rho.density[i] - std::sqrt(lg.node(i)) / M_PI) < 1e-12);

  std::vector<cplx> zero(lg.count, 0.0);
  auto rz = direct::rho_from_weyl(ComplexSamples(lg, zero));
  for (double v : rz.density) CHECK(v == 0.0);

  std::vector<cplx> bad(lg.count, cplx(0.0, -1.0));
  CHECK_THROWS_AS(direct::rho_from_weyl(ComplexSamples(lg, bad)), error);
}

TEST_CASE("bargmann bundles: spot values") {
  auto b = ifunc::bargmann_r0(1.0);
  CHECK(std::abs(b.A(0.0, 0.0) - (-1.0)) < 1e-14);
  CHECK(std::abs(b.q(0.0) - (-2.0)) < 1e-14);
  CHECK(std::abs(b.F(0.0) - 2.0) < 1e-14);
  CHECK(std::abs(b.f(cplx(1.0, 0.0)) - cplx(0.5, -0.5)) < 1e-14);
  CHECK(std::abs(b.I(cplx(1.0, 0.0)) - cplx(0.0, 2.0)) < 1e-14);

  auto j1 = ifunc::bargmann_one_pole(1.0, 3.0);
  CHECK(j1.nu == doctest::Approx(2.0));
  CHECK(j1.s1 == doctest::Approx(6.0));
  CHECK(std::abs(j1.f(cplx(1.0, 0.0)) - (cplx(1, -1) / cplx(1, 2))) < 1e-14);
  // forward march of the bundle potential reproduces the rational Jost fn
  UniformGrid kg(0.5, 0.5, 10);
  auto jb = direct::jost(j1.q, kg);
  for (std::size_t i = 0; i < kg.count; ++i)
    CHECK(std::abs(jb.f[i] - j1.f(cplx(kg.node(i), 0.0))) < 1e-4);
  auto bs = direct::bound_states(j1.q, 5.0);
  REQUIRE(bs.size() == 1);
  CHECK(std::abs(bs[0].k - 1.0) < 1e-4);
  CHECK(std::abs(bs[0].s - 6.0) < 1e-3);
  CHECK(std::abs(bs[0].r - 3.0) < 1e-3);
}
