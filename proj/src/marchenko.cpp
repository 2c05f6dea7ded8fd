#include "iscatter/marchenko.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "iscatter/expfit.hpp"
#include "iscatter/fourier.hpp"
#include "iscatter/parallel.hpp"

namespace iscatter {
namespace marchenko {

double MarchenkoF::F_S(double x) const {
  double v = 0.0;
  if (x >= F_S_cont.grid.start && x <= F_S_cont.grid.back())
    v = F_S_cont.interp(x);
  if (x >= 0.0) v += -alpha * std::exp(-x) - beta * x * std::exp(-x);
  return v;
}

double MarchenkoF::operator()(double x) const {
  double v = F_S(x);
  for (const auto& [s, k] : F_d) v += s * std::exp(-k * x);
  return v;
}

double MarchenkoF::pick_ymax(double tail) const {
  double y = 4.0;
  while (std::abs((*this)(y)) > tail && y < 200.0) y += 0.5;
  return y;
}

namespace {

void check_realizable(const direct::ScatteringDataHalfline& data) {
  for (const auto& b : data.bound_states)
    require(b.k > 0.0 && b.s > 0.0, errc::data_not_realizable,
            "characterization clause ii: k_j > 0, s_j > 0 required");
  for (auto s : data.S.values)
    require(std::abs(std::abs(s) - 1.0) < 1e-6, errc::data_not_realizable,
            "characterization clause iii: unitarity |S(k)| = 1 violated");
  require(std::abs(data.S.values.back() - 1.0) < 0.2, errc::data_not_realizable,
          "characterization clause iii: S(inf) = 1 violated");
  auto pi_ = direct::phase_index_from_S(data.S.values, data.S.grid);
  int J = static_cast<int>(data.J());
  bool ok = (pi_.index == -2 * J) || (pi_.index == -2 * J - 1);
  require(ok, errc::data_not_realizable,
          "characterization clause i: index of S must be -2J or -2J-1");
}

}  // namespace

MarchenkoF scattering_to_F(const direct::ScatteringDataHalfline& data,
                           double xmax, const options& opt) {
  check_realizable(data);

  const auto& kg = data.S.grid;
  double kstep = opt.k_step > 0.0 ? opt.k_step
                                  : std::min(0.02, M_PI / (4.0 * xmax));
  kstep = std::min(kstep, kg.step);
  double T = std::min(opt.k_truncation, kg.back());
  UniformGrid sym = symmetric_grid(T, kstep);

  // g(k) = 1 - S(k) on the symmetric grid, S(-k) = conj S(k). Below the
  // first data node S is continued quadratically: near a zero-energy
  // resonance 1 - S is O(1) there and a linear tail would leave a spurious
  // constant in the transform.
  auto S_at = [&](double k) {
    if (k >= kg.start) return data.S.interp(k);
    double k0 = kg.node(0), k1 = kg.node(1), k2 = kg.node(2);
    cplx v0 = data.S.values[0], v1 = data.S.values[1], v2 = data.S.values[2];
    cplx l0 = (k - k1) * (k - k2) / ((k0 - k1) * (k0 - k2));
    cplx l1 = (k - k0) * (k - k2) / ((k1 - k0) * (k1 - k2));
    cplx l2 = (k - k0) * (k - k1) / ((k2 - k0) * (k2 - k1));
    return v0 * l0 + v1 * l1 + v2 * l2;
  };
  std::vector<cplx> g(sym.count);
  for (std::size_t i = 0; i < sym.count; ++i) {
    double k = sym.node(i);
    cplx S = (k >= 0.0) ? S_at(k) : std::conj(S_at(-k));
    g[i] = 1.0 - S;
  }

  double xstep = 0.01;
  auto n = static_cast<std::size_t>(std::ceil(2.0 * xmax / xstep)) + 1;
  UniformGrid xg(-xmax, 2.0 * xmax / static_cast<double>(n - 1), n);
  auto xs = xg.nodes();
  auto ft = fourier_transform_tail(ComplexSamples(sym, std::move(g)), xs,
                                   /*pole_upper=*/true);

  MarchenkoF out;
  out.F_S_cont = RealSamples(xg, std::move(ft.remainder));
  out.alpha = ft.fit.alpha;
  out.beta = ft.fit.beta;
  for (const auto& b : data.bound_states) out.F_d.emplace_back(b.s, b.k);

  // clause iv norms over x >= 0 (reported, not gated on)
  std::vector<double> Fa;
  for (std::size_t i = 0; i < xg.count; ++i) {
    double x = xg.node(i);
    if (x >= 0.0) Fa.push_back(out(x));
  }
  double h = xg.step;
  std::vector<double> absF(Fa.size()), xFp;
  for (std::size_t i = 0; i < Fa.size(); ++i) absF[i] = std::abs(Fa[i]);
  for (std::size_t i = 1; i + 1 < Fa.size(); ++i)
    xFp.push_back(std::abs((Fa[i + 1] - Fa[i - 1]) / (2.0 * h)) *
                  static_cast<double>(i) * h);
  out.norm_sup = *std::max_element(absF.begin(), absF.end());
  out.norm_L1 = quad(std::span<const double>(absF), h);
  out.norm_xFp = xFp.empty() ? 0.0 : quad(std::span<const double>(xFp), h);
  return out;
}

direct::ScatteringDataHalfline F_to_scattering(const RealSamples& F_full,
                                               const UniformGrid& kgrid,
                                               const options& opt) {
  const auto& xg = F_full.grid;
  require(xg.start < -1.0, errc::invalid_input,
          "F must be supplied on a two-sided grid reaching x << 0");

  // exponential sum at x -> -inf, fitted on the far-left window where the
  // continuous part has died out; u = x - x_min makes the sum decay in u
  double xcut = 0.25 * xg.start;
  std::size_t nfit = 0;
  while (nfit < xg.count && xg.node(nfit) <= xcut) ++nfit;
  require(nfit >= 10, errc::invalid_input, "too few nodes in the fit window");
  std::vector<double> u(nfit), y(nfit);
  double x2 = xg.start;
  for (std::size_t i = 0; i < nfit; ++i) {
    u[i] = xg.node(i) - x2;
    y[i] = F_full.values[i];
  }
  auto fit = fit_decaying_exp_sum(u, y, 4, 1e-7, /*with_constant=*/false);
  require(fit.residual < 1e-2 * (1.0 + std::abs(y[0])), errc::solver_failure,
          "exponential-sum extraction failed on the x -> -inf tail");

  direct::ScatteringDataHalfline out;
  for (const auto& t : fit.terms) {
    direct::BoundState b;
    b.k = t.rate;
    b.s = t.weight * std::exp(t.rate * x2);
    if (b.s < 1e-8) continue;  // numerically absent mode
    out.bound_states.push_back(b);
  }
  std::sort(out.bound_states.begin(), out.bound_states.end(),
            [](auto& a, auto& b) { return a.k > b.k; });

  // F_S = F - F_d, then S(k) = 1 - int F_S e^{-ikx} dx
  RealSamples FS = F_full;
  for (std::size_t i = 0; i < xg.count; ++i)
    for (const auto& b : out.bound_states)
      FS.values[i] -= b.s * std::exp(-b.k * xg.node(i));

  std::vector<cplx> S(kgrid.count);
  for (std::size_t i = 0; i < kgrid.count; ++i)
    S[i] = 1.0 - spectrum_integral(FS, kgrid.node(i));
  out.S = ComplexSamples(kgrid, std::move(S));
  auto pi_ = direct::phase_index_from_S(out.S.values, kgrid);
  out.delta = std::move(pi_.delta);
  out.index = pi_.index;
  out.index_residual = pi_.residual;
  out.f0_vanishes = (out.index == -2 * static_cast<int>(out.J()) - 1);
  (void)opt;
  return out;
}

std::vector<double> AKernel::diagonal() const {
  std::vector<double> d(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) d[i] = rows[i][0];
  return d;
}

double AKernel::interp(double x, double y) const {
  const double h = xgrid.step;
  if (y < x) y = x;
  std::size_t i = xgrid.cell(x);
  double tx = (x - xgrid.node(i)) / h;
  auto row_val = [&](std::size_t r) {
    double off = (y - xgrid.node(r)) / h;
    if (off < 0.0) off = 0.0;
    auto j = static_cast<std::size_t>(off);
    if (j + 1 >= rows[r].size()) return rows[r].back();
    double t = off - static_cast<double>(j);
    return rows[r][j] * (1.0 - t) + rows[r][j + 1] * t;
  };
  return row_val(i) * (1.0 - tx) + row_val(i + 1) * tx;
}

AKernel solve_marchenko(const MarchenkoF& F, const UniformGrid& xgrid,
                        double ymax, const options& opt) {
  require(xgrid.start == 0.0, errc::invalid_input, "x-grid starts at 0");
  const double h = xgrid.step;
  auto M = static_cast<std::size_t>(std::ceil((ymax - 1e-12) / h));
  require(M >= xgrid.count, errc::invalid_input, "ymax must exceed xmax");

  AKernel out;
  out.xgrid = xgrid;
  out.ymax = static_cast<double>(M) * h;
  out.rows.resize(xgrid.count);

  std::vector<double> resid(xgrid.count, 0.0);
  parallel_for(xgrid.count, [&](std::size_t i) {
    double x = xgrid.node(i);
    std::size_t m = M - i + 1;  // nodes y_j = x + j h
    auto w = quad_weights(m, opt.rule);
    Eigen::MatrixXd A(m, m);
    Eigen::VectorXd rhs(m);
    std::vector<double> Fx(2 * m);
    for (std::size_t j = 0; j < 2 * m; ++j)
      Fx[j] = F(2.0 * x + static_cast<double>(j) * h);
    for (std::size_t j = 0; j < m; ++j) {
      rhs[j] = -Fx[j];
      for (std::size_t t = 0; t < m; ++t)
        A(j, t) = (j == t ? 1.0 : 0.0) + w[t] * h * Fx[j + t];
    }
    Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
    resid[i] = (A * sol - rhs).lpNorm<Eigen::Infinity>();
    out.rows[i].assign(sol.data(), sol.data() + m);
  });
  out.max_solve_residual = *std::max_element(resid.begin(), resid.end());
  require(out.max_solve_residual < 1e-3, errc::solver_failure,
          "Marchenko system ill-conditioned: data not admissible");
  return out;
}

QResult A_to_q(const AKernel& A) {
  require(A.rows.size() >= 3, errc::invalid_input, "A_to_q needs >= 3 rows");
  auto diag = A.diagonal();
  auto dd = differentiate_jump_aware(diag, A.xgrid.step);
  std::vector<double> qv(dd.size());
  for (std::size_t i = 0; i < dd.size(); ++i) qv[i] = -2.0 * dd[i];

  QResult out;
  out.q = PotentialSpec::from_grid(A.xgrid, qv, A.xgrid.back());
  // A(x,x) - A(xmax,xmax) must equal (1/2) int_x^xmax q (the tail beyond the
  // grid is carried by the last diagonal sample)
  auto cum = cumquad(qv, A.xgrid.step);
  double total = cum.back();
  double worst = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i)
    worst = std::max(worst,
                     std::abs(diag[i] - diag.back() - 0.5 * (total - cum[i])));
  out.diag_consistency = worst;
  return out;
}

AKernel q_to_A(const PotentialSpec& q, const UniformGrid& xgrid, double ymax) {
  require(xgrid.start == 0.0, errc::invalid_input, "x-grid starts at 0");
  const double h = xgrid.step, h2 = 0.5 * h;
  auto M = static_cast<std::size_t>(std::ceil((ymax - 1e-12) / h));

  // H(u,v) = A(u-v, u+v), marched downward in u from the support edge:
  //   H(u,v) = (1/2) int_u^a q + int_u^a ds int_0^v dt q(s-t) H(s,t)
  double a = std::max(q.support_radius, xgrid.back());
  auto nu = static_cast<std::size_t>(std::ceil(a / h2)) + 1;
  auto nv = static_cast<std::size_t>(std::ceil(0.5 * (ymax + 1e-12) / h2)) + 2;

  std::vector<double> qs(nu), Cq(nu, 0.0);
  for (std::size_t i = 0; i < nu; ++i) qs[i] = q(static_cast<double>(i) * h2);
  for (std::size_t i = 1; i < nu; ++i)
    Cq[i] = Cq[i - 1] + h2 * 0.5 * (qs[i - 1] + qs[i]);
  double Cq_a = Cq[nu - 1];

  std::vector<std::vector<double>> H(nu, std::vector<double>(nv, 0.0));
  std::vector<double> G(nv, 0.0), Pprev(nv, 0.0), Pcur(nv, 0.0);

  for (std::size_t iu = nu - 1; iu-- > 0;) {
    double u = static_cast<double>(iu) * h2;
    double S1 = 0.5 * (Cq_a - Cq[iu]);
    Pcur[0] = 0.0;
    H[iu][0] = S1 + G[0];
    for (std::size_t j = 1; j < nv; ++j) {
      double v = static_cast<double>(j) * h2;
      double qa = q(u - v + h2), qb = q(u - v);
      double known = Pcur[j - 1] + 0.5 * h2 * qa * H[iu][j - 1];
      double rhs = S1 + G[j] + 0.5 * h2 * (Pprev[j] + known);
      double denom = 1.0 - 0.25 * h2 * h2 * qb;
      double Huv = rhs / denom;
      H[iu][j] = Huv;
      Pcur[j] = known + 0.5 * h2 * qb * Huv;
    }
    for (std::size_t j = 0; j < nv; ++j) {
      G[j] += 0.5 * h2 * (Pprev[j] + Pcur[j]);
      Pprev[j] = Pcur[j];
    }
  }

  AKernel out;
  out.xgrid = xgrid;
  out.ymax = static_cast<double>(M) * h;
  out.rows.resize(xgrid.count);
  double sup_ratio = 0.0;
  // sigma with |q| for the kernel bound report
  std::vector<double> Cabs(nu, 0.0);
  for (std::size_t i = 1; i < nu; ++i)
    Cabs[i] = Cabs[i - 1] + h2 * 0.5 * (std::abs(qs[i - 1]) + std::abs(qs[i]));
  for (std::size_t i = 0; i < xgrid.count; ++i) {
    std::size_t m = M - i + 1;
    out.rows[i].assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t ui = 2 * i + j, vi = j;
      if (ui < nu && vi < nv) out.rows[i][j] = H[ui][vi];
      if (ui < nu) {
        double sig = Cabs[nu - 1] - Cabs[ui];
        if (sig > 1e-8)
          sup_ratio = std::max(sup_ratio, std::abs(out.rows[i][j]) / sig);
      }
    }
  }
  out.bound_constant = sup_ratio;
  return out;
}

direct::ScatteringDataHalfline A_to_scattering(const RealSamples& A0,
                                               const RealSamples& A0x,
                                               const UniformGrid& kgrid,
                                               const options& opt) {
  const auto& yg = A0.grid;
  auto w = quad_weights(yg.count, opt.rule);
  auto f_at = [&](cplx k) {
    cplx acc = 1.0;
    for (std::size_t j = 0; j < yg.count; ++j)
      acc += w[j] * yg.step * A0.values[j] * std::exp(cplx(0, 1) * k * yg.node(j));
    return acc;
  };
  auto fp_at = [&](cplx k) {
    cplx acc = cplx(0, 1) * k - A0.values[0];
    for (std::size_t j = 0; j < yg.count; ++j)
      acc += w[j] * yg.step * A0x.values[j] * std::exp(cplx(0, 1) * k * yg.node(j));
    return acc;
  };

  direct::ScatteringDataHalfline out;
  std::vector<cplx> f(kgrid.count), S(kgrid.count);
  for (std::size_t i = 0; i < kgrid.count; ++i) {
    f[i] = f_at(cplx(kgrid.node(i), 0.0));
    S[i] = std::conj(f[i]) / f[i];
  }
  out.S = ComplexSamples(kgrid, std::move(S));

  double fmax = 0.0;
  for (auto v : f) fmax = std::max(fmax, std::abs(v));
  out.f0_vanishes = std::abs(f_at(cplx(0, 0))) < opt.resonance_tol * fmax;

  double kmax = opt.kmax_bound;
  std::size_t nscan = 200;
  double dk = kmax / static_cast<double>(nscan);
  double prev = f_at(cplx(0.0, 0.5 * dk)).real(), prev_k = 0.5 * dk;
  for (std::size_t i = 1; i <= nscan; ++i) {
    double kap = 0.5 * dk + static_cast<double>(i) * dk;
    double cur = f_at(cplx(0.0, kap)).real();
    if (prev * cur < 0.0) {
      double lo = prev_k, hi = kap, flo = prev;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f_at(cplx(0.0, mid)).real();
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      direct::BoundState b;
      b.k = 0.5 * (lo + hi);
      double hk = 1e-4 * b.k;
      double gp = (f_at(cplx(0.0, b.k + hk)).real() -
                   f_at(cplx(0.0, b.k - hk)).real()) /
                  (2.0 * hk);
      b.fdotim = gp;
      b.fp0 = fp_at(cplx(0.0, b.k)).real();
      b.s = 2.0 * b.k / (gp * b.fp0);
      b.c = 2.0 * b.k * b.fp0 / gp;
      b.r = b.fp0 / gp;
      require(b.s > 0.0, errc::solver_failure, "norming constant must be positive");
      out.bound_states.push_back(b);
    }
    prev = cur;
    prev_k = kap;
  }
  std::sort(out.bound_states.begin(), out.bound_states.end(),
            [](auto& a, auto& b) { return a.k > b.k; });

  auto pi_ = direct::phase_index_from_f(f, kgrid);
  out.delta = std::move(pi_.delta);
  out.index = pi_.index;
  out.index_residual = pi_.residual;
  return out;
}

direct::ScatteringDataHalfline A_to_scattering(const AKernel& A,
                                               const UniformGrid& kgrid,
                                               const options& opt) {
  require(A.rows.size() >= 3, errc::invalid_input, "need >= 3 rows");
  const double h = A.xgrid.step;
  std::size_t m = A.rows[2].size();
  UniformGrid yg(0.0, h, m);
  std::vector<double> a0(m), a0x(m);
  for (std::size_t j = 0; j < m; ++j) {
    // rows 1 and 2 start at y = h and 2h; select entries at the same y
    double r0 = A.rows[0][j];
    double r1 = (j >= 1) ? A.rows[1][j - 1] : A.rows[1][0];
    double r2 = (j >= 2) ? A.rows[2][j - 2] : A.rows[2][0];
    a0[j] = r0;
    a0x[j] = (-3.0 * r0 + 4.0 * r1 - r2) / (2.0 * h);
  }
  // the first two columns lack a one-sided x-stencil inside the triangle
  a0x[0] = a0x[2];
  a0x[1] = a0x[2];
  return A_to_scattering(RealSamples(yg, a0), RealSamples(yg, a0x), kgrid, opt);
}

KeyEquationReport key_equation_check(const RealSamples& A0, const MarchenkoF& F,
                                     double ywindow) {
  const auto& yg = A0.grid;
  auto w = quad_weights(yg.count, quad_rule::simpson);
  KeyEquationReport rep;

  // continuous part of F (remainder + bound-state exponentials)
  auto Fc = [&](double x) {
    double v = 0.0;
    if (x >= F.F_S_cont.grid.start && x <= F.F_S_cont.grid.back())
      v = F.F_S_cont.interp(x);
    for (const auto& [s, k] : F.F_d) v += s * std::exp(-k * x);
    return v;
  };
  auto Fjump = [&](double x) {
    return x >= 0.0 ? -F.alpha * std::exp(-x) - F.beta * x * std::exp(-x) : 0.0;
  };

  auto lhs = [&](double y) {
    double acc = F(y) + (y >= 0.0 ? A0.interp(y) : 0.0);
    // smooth part over the sample grid
    for (std::size_t t = 0; t < yg.count; ++t)
      acc += w[t] * yg.step * A0.values[t] * Fc(yg.node(t) + y);
    // jump part integrated from t* = max(0,-y) on its own aligned grid
    double tstar = std::max(0.0, -y);
    double T = yg.back();
    if (tstar < T) {
      std::size_t m = 801;
      double hh = (T - tstar) / static_cast<double>(m - 1);
      auto wj = quad_weights(m, quad_rule::simpson);
      for (std::size_t t = 0; t < m; ++t) {
        double tt = tstar + static_cast<double>(t) * hh;
        acc += wj[t] * hh * A0.interp(tt) * Fjump(tt + y);
      }
    }
    return acc;
  };
  for (double y = 0.01; y <= ywindow; y += 0.05)
    rep.residual_pos = std::max(rep.residual_pos, std::abs(lhs(y)));
  for (double y = -ywindow; y < 0.0; y += 0.05)
    rep.residual_neg = std::max(rep.residual_neg, std::abs(lhs(y) - A0.interp(-y)));
  return rep;
}

}  // namespace marchenko
}  // namespace iscatter
