#include "iscatter/direct.hpp"

#include <algorithm>
#include <cmath>

#include "iscatter/parallel.hpp"
#include "iscatter/quadrature.hpp"

namespace iscatter {
namespace direct {

namespace {

double f_imag_axis(const PotentialSpec& q, double kappa, const options& opt) {
  return jost_point(q, cplx(0.0, kappa), opt.ode_step).f0.real();
}

}  // namespace

cplx JostBundle::f_interp(double k) const {
  std::size_t i = kgrid.cell(k);
  double t = (k - kgrid.node(i)) / kgrid.step;
  return f[i] * (1.0 - t) + f[i + 1] * t;
}

cplx JostBundle::fp0_interp(double k) const {
  std::size_t i = kgrid.cell(k);
  double t = (k - kgrid.node(i)) / kgrid.step;
  return fp0[i] * (1.0 - t) + fp0[i + 1] * t;
}

double SpectralMeasure::density_at(double lam) const {
  if (lam <= 0.0) return 0.0;
  double k = std::sqrt(lam);
  if (excess_fn) return (k + excess_fn(k) / k) / M_PI;
  if (lam >= lgrid.back()) return density.back();
  std::size_t i = lgrid.cell(lam);
  double t = (lam - lgrid.node(i)) / lgrid.step;
  return density[i] * (1.0 - t) + density[i + 1] * t;
}

double SpectralMeasure::excess_at(double k) const {
  if (excess_fn) return excess_fn(k);
  if (k <= 0.0) return 0.0;
  double lam = k * k;
  double dens = (lam >= lgrid.back()) ? density.back() : [&] {
    std::size_t i = lgrid.cell(lam);
    double t = (lam - lgrid.node(i)) / lgrid.step;
    return density[i] * (1.0 - t) + density[i + 1] * t;
  }();
  return k * (M_PI * dens - k);
}

JostPoint jost_at(const PotentialSpec& q, cplx k, const options& opt) {
  return jost_point(q, k, opt.ode_step);
}

JostBundle jost(const PotentialSpec& q, const UniformGrid& kgrid,
                const options& opt) {
  require(kgrid.start > 0.0, errc::invalid_input, "jost kgrid must have k > 0");
  JostBundle out;
  out.kgrid = kgrid;
  out.f.resize(kgrid.count);
  out.fp0.resize(kgrid.count);
  parallel_for(kgrid.count, [&](std::size_t i) {
    auto p = jost_point(q, cplx(kgrid.node(i), 0.0), opt.ode_step);
    out.f[i] = p.f0;
    out.fp0[i] = p.fp0;
  });
  out.f_at_zero = f_imag_axis(q, 0.0, opt);
  double fmax = 0.0;
  for (auto v : out.f) fmax = std::max(fmax, std::abs(v));
  out.resonance_at_zero = std::abs(out.f_at_zero) < opt.resonance_tol * fmax;
  double wr = 0.0;
  for (std::size_t i = 0; i < kgrid.count; ++i) {
    double k = kgrid.node(i);
    double lhs = 2.0 * std::imag(out.fp0[i] * std::conj(out.f[i]));
    wr = std::max(wr, std::abs(lhs - 2.0 * k) / (1.0 + k));
  }
  out.wronskian_residual = wr;
  return out;
}

JostBundle jost(const PotentialSpec& q, const UniformGrid& kgrid,
                const UniformGrid& xgrid, const options& opt) {
  JostBundle out = jost(q, kgrid, opt);
  out.xgrid = xgrid;
  out.fx.resize(kgrid.count);
  parallel_for(kgrid.count, [&](std::size_t i) {
    out.fx[i] = jost_row(q, cplx(kgrid.node(i), 0.0), xgrid).fx;
  });
  return out;
}

std::vector<BoundState> bound_states(const PotentialSpec& q, double kmax,
                                     const options& opt) {
  require(kmax > 0.0, errc::invalid_input, "bound-state search window must be > 0");
  // scan f(i kappa) for sign changes, then bisect
  std::size_t nscan = 240;
  double dk = kmax / static_cast<double>(nscan);
  std::vector<BoundState> out;
  double prev = f_imag_axis(q, dk * 0.5, opt);
  double prev_k = dk * 0.5;
  for (std::size_t i = 1; i <= nscan; ++i) {
    double kap = dk * 0.5 + static_cast<double>(i) * dk;
    if (kap > kmax) kap = kmax;
    double cur = f_imag_axis(q, kap, opt);
    if (prev == 0.0 || prev * cur < 0.0) {
      double lo = prev_k, hi = kap, flo = prev;
      while (hi - lo > opt.bisect_tol * (1.0 + hi)) {
        double mid = 0.5 * (lo + hi);
        double fm = f_imag_axis(q, mid, opt);
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      double kj = 0.5 * (lo + hi);
      BoundState b;
      b.k = kj;
      double hk = 1e-4 * kj;
      double gp = (f_imag_axis(q, kj + hk, opt) - f_imag_axis(q, kj - hk, opt)) /
                  (2.0 * hk);
      require(std::abs(gp) > 1e-10, errc::solver_failure,
              "degenerate zero of the Jost function on the imaginary axis");
      b.fdotim = gp;
      b.fp0 = jost_point(q, cplx(0.0, kj), opt.ode_step).fp0.real();
      b.s = 2.0 * kj / (gp * b.fp0);
      b.c = 2.0 * kj * b.fp0 / gp;
      b.r = b.fp0 / gp;
      require(b.s > 0.0 && b.c > 0.0, errc::solver_failure,
              "norming constant must be positive");
      out.push_back(b);
    }
    prev = cur;
    prev_k = kap;
    if (kap >= kmax) break;
  }
  // k_j strictly decreasing
  std::sort(out.begin(), out.end(),
            [](const BoundState& a, const BoundState& b) { return a.k > b.k; });
  return out;
}

namespace {

// raw phases are defined modulo `modulus`; unwrap downward from the top
// anchor, then read the index off the extrapolated delta(0+).
PhaseIndex unwrap_phase(std::vector<double> raw, const UniformGrid& kgrid,
                        double modulus) {
  std::size_t n = raw.size();
  PhaseIndex out;
  out.delta.resize(n);
  out.delta[n - 1] = raw[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    double d = raw[i] - out.delta[i + 1];
    d -= modulus * std::round(d / modulus);
    require(std::abs(d) < 0.45 * modulus, errc::solver_failure,
            "k-grid too coarse: phase jump near pi between adjacent nodes");
    out.delta[i] = out.delta[i + 1] + d;
  }
  double slope = (out.delta[1] - out.delta[0]) / kgrid.step;
  double delta0 = out.delta[0] - slope * kgrid.start;
  double nu = -2.0 * delta0 / M_PI;
  out.index = static_cast<int>(std::lround(nu));
  out.residual = std::abs(nu - static_cast<double>(out.index));
  return out;
}

}  // namespace

PhaseIndex phase_index_from_f(const std::vector<cplx>& f, const UniformGrid& kgrid) {
  std::vector<double> raw(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) raw[i] = -std::arg(f[i]);
  return unwrap_phase(std::move(raw), kgrid, 2.0 * M_PI);
}

PhaseIndex phase_index_from_S(const std::vector<cplx>& S, const UniformGrid& kgrid) {
  // S = e^{2 i delta}: the half-phase is defined modulo pi
  std::vector<double> raw(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) raw[i] = 0.5 * std::arg(S[i]);
  return unwrap_phase(std::move(raw), kgrid, M_PI);
}

ScatteringDataHalfline scattering_data(const PotentialSpec& q,
                                       const UniformGrid& kgrid,
                                       const options& opt) {
  auto bundle = jost(q, kgrid, opt);
  ScatteringDataHalfline out;
  std::vector<cplx> S(kgrid.count);
  for (std::size_t i = 0; i < kgrid.count; ++i)
    S[i] = std::conj(bundle.f[i]) / bundle.f[i];
  out.S = ComplexSamples(kgrid, std::move(S));
  out.f0_vanishes = bundle.resonance_at_zero;
  out.bound_states = bound_states(q, opt.kmax_bound, opt);
  auto pi_ = phase_index_from_f(bundle.f, kgrid);
  out.delta = std::move(pi_.delta);
  out.index = pi_.index;
  out.index_residual = pi_.residual;
  return out;
}

namespace {

// W(k) = k^2 (1/|f(k)|^2 - 1) sampled on [0, kmax]; constant beyond.
struct ExcessInterp {
  RealSamples W;
  double w_inf = 0.0;
  double operator()(double k) const {
    k = std::abs(k);
    if (k >= W.grid.back()) return w_inf;
    return W.interp(k);
  }
};

ExcessInterp make_excess(const PotentialSpec& q, double kmax, const options& opt) {
  double step = std::min(0.02, kmax / 400.0);
  auto grid = UniformGrid(0.0, step, static_cast<std::size_t>(kmax / step) + 1);
  std::vector<double> v(grid.count);
  parallel_for(grid.count, [&](std::size_t i) {
    double k = (i == 0) ? 0.25 * step : grid.node(i);
    double fsq = std::norm(jost_point(q, cplx(k, 0.0), opt.ode_step).f0);
    v[i] = k * k * (1.0 / fsq - 1.0);
  });
  ExcessInterp out{RealSamples(grid, std::move(v)), 0.0};
  out.w_inf = out.W.values.back();
  return out;
}

}  // namespace

SpectralMeasure spectral_measure(const PotentialSpec& q, const UniformGrid& lgrid,
                                 const options& opt) {
  SpectralMeasure out;
  out.lgrid = lgrid;
  double kmax = std::sqrt(std::max(lgrid.back(), 1.0));
  auto W = make_excess(q, kmax * 1.05, opt);
  out.excess_fn = [W](double k) { return W(k); };
  out.density.resize(lgrid.count);
  for (std::size_t i = 0; i < lgrid.count; ++i)
    out.density[i] = out.density_at(lgrid.node(i));
  for (const auto& b : bound_states(q, opt.kmax_bound, opt))
    out.masses.emplace_back(-b.k * b.k, b.c);
  return out;
}

ComplexSamples i_function(const PotentialSpec& q, const UniformGrid& kgrid,
                          const options& opt) {
  auto bundle = jost(q, kgrid, opt);
  double fmax = 0.0;
  for (auto v : bundle.f) fmax = std::max(fmax, std::abs(v));
  std::vector<cplx> I(kgrid.count);
  for (std::size_t i = 0; i < kgrid.count; ++i) {
    require(std::abs(bundle.f[i]) > 1e-8 * fmax, errc::solver_failure,
            "pole of I(k) on the real axis");
    I[i] = bundle.fp0[i] / bundle.f[i];
    double k = kgrid.node(i);
    double herglotz = std::abs(I[i].imag() - k / std::norm(bundle.f[i]));
    require(herglotz < 1e-4 * (1.0 + std::abs(I[i])), errc::solver_failure,
            "Im I(k) = k/|f|^2 identity violated beyond tolerance");
  }
  return ComplexSamples(kgrid, std::move(I));
}

SpectralMeasure rho_from_weyl(const ComplexSamples& m_on_lambda, double tol) {
  SpectralMeasure out;
  out.lgrid = m_on_lambda.grid;
  out.density.resize(out.lgrid.count);
  for (std::size_t i = 0; i < out.lgrid.count; ++i) {
    double im = m_on_lambda.values[i].imag();
    require(im >= -tol, errc::invalid_input,
            "Im m < 0 on lambda > 0 violates the Herglotz property");
    out.density[i] = std::max(im, 0.0) / M_PI;
  }
  return out;
}

WeylReport weyl_checks(const PotentialSpec& q, const UniformGrid& kgrid,
                       const options& opt) {
  WeylReport rep;
  auto bundle = jost(q, kgrid, opt);

  // (i) W marched from W(0)=1, W'(0)=I(k) against f(x,k)/f(k), top of grid
  {
    double k = kgrid.back();
    UniformGrid xw(0.0, 0.01, 101);
    auto row = jost_row(q, cplx(k, 0.0), xw);
    cplx Ik = row.fp0 / row.f0;
    auto W = march_grid(q, cplx(k * k, 0.0), xw, {1.0, Ik});
    double r = 0.0;
    for (std::size_t i = 0; i < xw.count; ++i)
      r = std::max(r, std::abs(W[i].u - row.fx[i] / row.f0));
    rep.w_vs_jost_residual = r;
  }

  // (ii) k |I(k) - ik - q(0)/(2ik)| over the top decade
  {
    double q0 = q(1e-9);
    for (std::size_t i = 0; i < kgrid.count; ++i) {
      double k = kgrid.node(i);
      if (k < kgrid.back() / 10.0) continue;
      cplx I = bundle.fp0[i] / bundle.f[i];
      cplx asym = cplx(0.0, k) + q0 / (cplx(0.0, 2.0 * k));
      rep.asym_residual.push_back(k * std::abs(I - asym));
    }
    std::size_t h = rep.asym_residual.size() / 2;
    if (h > 0) {
      double first = 0.0, second = 0.0;
      for (std::size_t i = 0; i < h; ++i) first += rep.asym_residual[i];
      for (std::size_t i = h; i < rep.asym_residual.size(); ++i)
        second += rep.asym_residual[i];
      first /= static_cast<double>(h);
      second /= static_cast<double>(rep.asym_residual.size() - h);
      rep.asym_trending_down = second <= first + 1e-12;
    }
  }

  // (iii) m(sqrt z) - i sqrt z against the subtracted spectral representation:
  // int [drho - drho_0]/(t-z) = (2/pi) int_0^inf W(k)/(k^2-z) dk + point masses
  {
    double K = std::max(kgrid.back(), 40.0);
    auto W = make_excess(q, K, opt);
    auto bs = bound_states(q, opt.kmax_bound, opt);
    const cplx zs[] = {cplx(1.0, 1.0), cplx(4.0, 2.0), cplx(-0.5, 1.0)};
    for (cplx z : zs) {
      cplx sqz = std::sqrt(z);
      if (sqz.imag() < 0.0) sqz = -sqz;
      auto p = jost_point(q, sqz, opt.ode_step);
      cplx lhs = p.fp0 / p.f0 - cplx(0, 1) * sqz;
      double step = 0.01;
      auto n = static_cast<std::size_t>(K / step);
      cplx acc = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        double k = static_cast<double>(i) * step;
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * (2.0 / M_PI) * W(k) / (k * k - z) * step;
      }
      cplx w0 = std::sqrt(-z);
      if (w0.real() < 0.0) w0 = -w0;
      acc += (2.0 / M_PI) * W.w_inf *
             (cplx(M_PI / 2.0, 0.0) - std::atan(K / w0)) / w0;
      for (const auto& b : bs) acc += b.c / (-b.k * b.k - z);
      rep.herglotz_residual.push_back(std::abs(lhs - acc));
    }
  }
  return rep;
}

}  // namespace direct
}  // namespace iscatter
