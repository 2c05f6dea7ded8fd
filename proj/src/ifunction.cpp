#include "iscatter/ifunction.hpp"

#include <algorithm>
#include <cmath>

#include "iscatter/cauchy_pv.hpp"
#include "iscatter/expfit.hpp"
#include "iscatter/fourier.hpp"
#include "iscatter/parallel.hpp"

namespace iscatter {
namespace ifunc {

cplx IFunctionRep::eval(cplx k) const {
  cplx v = cplx(0, 1) * k;
  if (r0 != 0.0) v += cplx(0, 1) * r0 / k;
  for (const auto& [kj, rj] : poles) v += cplx(0, 1) * rj / (k - cplx(0, kj));
  if (!a_t.values.empty()) {
    cplx acc = 0.0;
    const auto& g = a_t.grid;
    for (std::size_t i = 0; i < g.count; ++i) {
      double w = (i == 0 || i + 1 == g.count) ? 0.5 : 1.0;
      acc += w * a_t.values[i] * std::exp(cplx(0, 1) * k * g.node(i));
    }
    v += acc * g.step;
  }
  return v;
}

ComplexSamples symmetric_samples(const std::function<cplx(double)>& I_pos,
                                 double T, double step) {
  UniformGrid g = symmetric_grid(T, step);
  std::vector<cplx> v(g.count);
  std::size_t mid = g.count / 2;
  for (std::size_t i = mid + 1; i < g.count; ++i) {
    v[i] = I_pos(g.node(i));
    v[g.count - 1 - i] = std::conj(v[i]);
  }
  // the k = 0 node is the even-average of the adjacent samples; downstream
  // code never divides by it
  v[mid] = 0.5 * (v[mid + 1] + std::conj(v[mid + 1]));
  return ComplexSamples(g, std::move(v));
}

RepResult rep_extract(const ComplexSamples& I, const options& opt) {
  const auto& kg = I.grid;
  require(std::abs(kg.start + kg.back()) < kg.step, errc::invalid_input,
          "rep_extract needs a symmetric k-grid");

  std::vector<cplx> g(kg.count);
  for (std::size_t i = 0; i < kg.count; ++i)
    g[i] = I.values[i] - cplx(0, 1) * kg.node(i);
  double edge = std::max(std::abs(g.front()), std::abs(g.back()));
  require(edge < 0.2, errc::invalid_input,
          "I - ik does not decay within the supplied k-window");

  // A zero-energy resonance puts a genuine i r0/k pole at k = 0. Its weight
  // is read off k (Im I - k) -> r0 by quadratic extrapolation through the
  // first positive nodes, the pole is subtracted, and its transform
  // (+- r0/2 by the sign of t) is attached in closed form.
  std::size_t mid = kg.count / 2;
  auto wk = [&](std::size_t i) {
    double k = kg.node(i);
    return k * (I.values[i].imag() - k);
  };
  double g1 = wk(mid + 1), g2 = wk(mid + 2), g3 = wk(mid + 3);
  double gamma = 3.0 * g1 - 3.0 * g2 + g3;  // extrapolation to k = 0
  if (std::abs(gamma) < 1e-4) gamma = 0.0;
  if (gamma != 0.0) {
    for (std::size_t i = 0; i < kg.count; ++i) {
      double k = kg.node(i);
      if (i == mid) continue;
      g[i] -= cplx(0, gamma) / k;
    }
    g[mid] = 0.5 * (g[mid - 1] + g[mid + 1]);
  }

  // d(t) = (1/2pi) int (I - ik) e^{-ikt} dk, evaluated as the e^{+ikx}
  // transform at x = -t; the O(1/k) tail is carried by a pole model in the
  // lower half-plane so the t < 0 side stays clean
  auto nt = static_cast<std::size_t>(opt.t_depth / opt.t_step);
  std::vector<double> xs;
  for (std::size_t i = 1; i <= nt; ++i)
    xs.push_back(static_cast<double>(i) * opt.t_step);  // t < 0 side
  auto na = static_cast<std::size_t>(30.0 / opt.t_step);
  for (std::size_t i = 0; i <= na; ++i)
    xs.push_back(-static_cast<double>(i) * opt.t_step);  // t >= 0 side
  auto ft = fourier_transform_tail(ComplexSamples(kg, std::move(g)), xs,
                                   /*pole_upper=*/false);

  // decaying orientation: y(u) = -d(-u) - gamma/2; the closed-form pole
  // term contributes -gamma/2 to d(t<0), so y = -ft plainly, and the fitted
  // constant absorbs the extrapolation error of gamma
  std::vector<double> u(nt), y(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    u[i] = xs[i];
    y[i] = -ft.values[i];
  }
  auto fit = fit_decaying_exp_sum(u, y, opt.max_poles, 1e-6, /*with_constant=*/true);

  RepResult out;
  out.rep.r0 = gamma + 2.0 * fit.c0;
  if (out.rep.r0 < 1e-4) out.rep.r0 = 0.0;
  for (const auto& t : fit.terms)
    if (t.weight > 1e-4) out.rep.poles.emplace_back(t.rate, t.weight);
  std::sort(out.rep.poles.begin(), out.rep.poles.end(),
            [](auto& a, auto& b) { return a.first > b.first; });
  out.fit_residual = fit.residual;
  out.converged = fit.residual < opt.fit_tol;

  // a(t) = d(t) - r0/2 on t > 0, truncated where it stays below the cut
  std::vector<double> av(na + 1);
  for (std::size_t i = 0; i <= na; ++i)
    av[i] = ft.values[nt + i] + 0.5 * gamma - 0.5 * out.rep.r0;
  std::size_t keep = na + 1;
  while (keep > 3 && std::abs(av[keep - 1]) < opt.a_cut) --keep;
  double maxa = 0.0;
  for (std::size_t i = 0; i < keep; ++i) maxa = std::max(maxa, std::abs(av[i]));
  if (maxa > 10.0 * opt.a_cut) {
    av.resize(keep);
    out.rep.a_t = RealSamples(UniformGrid(0.0, opt.t_step, keep), std::move(av));
  }
  return out;
}

namespace {

direct::SpectralMeasure spectral_from(
    const std::function<double(double)>& imI,
    const std::vector<std::pair<double, double>>& poles,
    const UniformGrid& lgrid, double tol) {
  direct::SpectralMeasure m;
  m.lgrid = lgrid;
  m.excess_fn = [imI](double k) {
    if (k <= 0.0) k = 1e-9;
    return k * (imI(k) - k);
  };
  m.density.resize(lgrid.count);
  for (std::size_t i = 0; i < lgrid.count; ++i) {
    double lam = lgrid.node(i);
    m.density[i] = m.density_at(lam);
    require(m.density[i] > -tol, errc::invalid_input,
            "Im I < 0 on the positive axis violates the Herglotz property");
    if (m.density[i] < 0.0) m.density[i] = 0.0;
  }
  for (const auto& [kj, rj] : poles) m.masses.emplace_back(-kj * kj, 2.0 * kj * rj);
  return m;
}

}  // namespace

direct::SpectralMeasure i_to_spectral(const ComplexSamples& I,
                                      const IFunctionRep& rep,
                                      const UniformGrid& lgrid) {
  auto imI = [Icopy = I](double k) { return Icopy.interp(k).imag(); };
  return spectral_from(imI, rep.poles, lgrid, 1e-9);
}

direct::SpectralMeasure i_to_spectral(const IFunctionRep& rep,
                                      const UniformGrid& lgrid) {
  auto imI = [rep](double k) { return rep.eval(cplx(k, 0.0)).imag(); };
  return spectral_from(imI, rep.poles, lgrid, 1e-9);
}

JostFromI i_to_jost(const ComplexSamples& I, const IFunctionRep& rep,
                    const UniformGrid& kout, const options& opt) {
  const auto& kg = I.grid;
  const bool resonant = rep.r0 > 0.0;

  // rational factor w(k) carrying the upper half-plane zeros of f
  auto w_at = [resonant, poles = rep.poles](cplx k) {
    cplx w = 1.0;
    if (resonant) w *= k / (k + cplx(0, 1));
    for (const auto& [kj, rj] : poles)
      w *= (k - cplx(0, kj)) / (k + cplx(0, kj));
    return w;
  };

  // g(k) = k/Im I (times (k^2+1)/k^2 at a zero resonance): positive, even,
  // ln g -> 0; the scalar Riemann problem is solved through its Hilbert
  // transform with the 1/t^2 tail attached in closed form
  std::size_t n = kg.count;
  std::size_t mid = n / 2;
  std::vector<double> lng(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double k = kg.node(i);
    if (std::abs(k) < 0.5 * kg.step) continue;  // patched below
    double im = I.values[i].imag();
    double gv = k / im;
    if (resonant) gv *= (k * k + 1.0) / (k * k);
    require(std::isfinite(gv) && gv > 0.0, errc::invalid_input,
            "k/Im I(k) must be positive: data inconsistent");
    lng[i] = std::log(gv);
  }
  if (std::abs(kg.node(mid)) < 0.5 * kg.step)
    lng[mid] = 0.5 * (lng[mid - 1] + lng[mid + 1]);
  RealSamples lngs(kg, std::move(lng));
  double c_tail = fit_invsq_coeff(lngs);
  const double T = kg.back();

  JostFromI out;
  std::vector<cplx> fv(kout.count);
  std::vector<char> warns(kout.count, 0);
  parallel_for(kout.count, [&](std::size_t i) {
    double k = kout.node(i);
    auto pv = cauchy_pv(lngs, k, 1e-4);
    warns[i] = pv.truncation_warning ? 1 : 0;
    double P = pv.value + c_tail * pv_tail_invsq(T, k);
    cplx h = std::exp(0.5 * lngs.interp(k)) * std::exp(cplx(0, -P / (2.0 * M_PI)));
    fv[i] = w_at(cplx(k, 0.0)) * h;
  });
  for (char c : warns) out.truncation_warning = out.truncation_warning || c;
  out.f = ComplexSamples(kout, std::move(fv));

  // factorization check: f(k) f(-k) Im I(k) = k on the output grid
  double worst = 0.0;
  for (std::size_t i = 0; i < kout.count; ++i) {
    double k = kout.node(i);
    double lhs = std::norm(out.f.values[i]) * I.interp(k).imag();
    worst = std::max(worst, std::abs(lhs - k) / (1.0 + k));
  }
  out.factorization_residual = worst;

  out.eval = [lngs, c_tail, T, w_at](cplx z) {
    cplx C = cauchy_transform(lngs, z) + c_tail * cauchy_tail_invsq(T, z);
    return w_at(z) * std::exp(C / (2.0 * M_PI * cplx(0, 1)));
  };
  (void)opt;
  return out;
}

direct::ScatteringDataHalfline i_to_scattering(const ComplexSamples& I,
                                               const UniformGrid& kout,
                                               const options& opt) {
  auto rr = rep_extract(I, opt);
  require(rr.converged, errc::solver_failure,
          "representation extraction failed: residual above tolerance");
  auto jf = i_to_jost(I, rr.rep, kout, opt);

  direct::ScatteringDataHalfline out;
  std::vector<cplx> S(kout.count);
  for (std::size_t i = 0; i < kout.count; ++i)
    S[i] = std::conj(jf.f.values[i]) / jf.f.values[i];
  out.S = ComplexSamples(kout, std::move(S));
  out.f0_vanishes = rr.rep.r0 > 0.0;

  for (const auto& [kj, rj] : rr.rep.poles) {
    direct::BoundState b;
    b.k = kj;
    b.r = rj;
    double hk = 1e-4 * kj;
    cplx fdot = (jf.eval(cplx(0.0, kj + hk)) - jf.eval(cplx(0.0, kj - hk))) /
                (cplx(0, 2.0) * hk);
    cplx sj = -2.0 * kj / (rj * fdot * fdot);
    require(std::abs(sj.imag()) < 1e-3 * (1.0 + std::abs(sj)),
            errc::solver_failure, "norming constant came out non-real");
    b.s = sj.real();
    require(b.s > 0.0, errc::solver_failure, "norming constant must be positive");
    b.c = 2.0 * kj * rj;
    out.bound_states.push_back(b);
  }
  auto pi_ = direct::phase_index_from_f(jf.f.values, kout);
  out.delta = std::move(pi_.delta);
  out.index = pi_.index;
  out.index_residual = pi_.residual;
  return out;
}

ScatteringToIResult scattering_to_i(const direct::ScatteringDataHalfline& data,
                                    const UniformGrid& kout,
                                    const options& opt) {
  auto F = marchenko::scattering_to_F(data, opt.xmax + 4.0, opt.mopt);
  double ymax = std::max(std::min(F.pick_ymax(opt.mopt.ymax_tail), opt.xmax + 8.0),
                         opt.xmax + 2.0);
  auto n = static_cast<std::size_t>(opt.xmax / 0.02) + 1;
  UniformGrid xg(0.0, opt.xmax / static_cast<double>(n - 1), n);
  auto A = marchenko::solve_marchenko(F, xg, ymax, opt.mopt);
  auto qr = marchenko::A_to_q(A);

  ScatteringToIResult out;
  out.q = qr.q;
  out.I = direct::i_function(out.q, kout);
  return out;
}

}  // namespace ifunc
}  // namespace iscatter
