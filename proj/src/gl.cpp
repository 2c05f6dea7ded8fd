#include "iscatter/gl.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "iscatter/parallel.hpp"

namespace iscatter {
namespace gl {

TriangularKernel GLKernel::tri(const UniformGrid& xgrid) const {
  TriangularKernel out(xgrid);
  for (std::size_t i = 0; i < xgrid.count; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      out.at(i, j) = at(xgrid.node(i), xgrid.node(j));
  return out;
}

GLKernel measure_to_L(const direct::SpectralMeasure& m, double xmax,
                      double step, const options& opt) {
  auto ns = static_cast<std::size_t>(std::ceil(2.0 * xmax / step)) + 1;
  UniformGrid sg(0.0, step, ns);

  const double K = opt.kmax, dk = opt.kstep;
  auto nk = static_cast<std::size_t>(K / dk);
  // w(k) = (2/pi) W(k); the constant part has the closed form pi s/2, the
  // remainder is truncated under a smooth taper so kernel kinks do not ring
  std::vector<double> w(nk + 1);
  for (std::size_t i = 0; i <= nk; ++i)
    w[i] = (2.0 / M_PI) * m.excess_at(static_cast<double>(i) * dk);
  double winf = 0.0;
  std::size_t ntail = std::max<std::size_t>(nk / 10, 1);
  for (std::size_t i = nk - ntail; i <= nk; ++i) winf += w[i];
  winf /= static_cast<double>(ntail + 1);
  require(std::abs(w[nk]) < 1e3, errc::invalid_input,
          "measure density too heavy at infinity for the kernel integral");

  const double K1 = opt.taper_fraction * K;
  std::vector<double> dev(nk + 1);
  for (std::size_t i = 0; i <= nk; ++i) {
    double k = static_cast<double>(i) * dk;
    double taper = 1.0;
    if (k > K1) {
      double u = (k - K1) / (K - K1);
      taper = 0.5 * (1.0 + std::cos(M_PI * u));
    }
    double wq = (i == 0 || i == nk) ? 0.5 : 1.0;
    dev[i] = (w[i] - winf) * taper * wq * dk;
  }

  std::vector<double> Ls(ns, 0.0);
  parallel_for(ns, [&](std::size_t is) {
    double s = sg.node(is);
    double acc = winf * M_PI * s * 0.5;
    acc += dev[0] * 0.5 * s * s;  // (1 - cos ks)/k^2 -> s^2/2 at k = 0
    for (std::size_t i = 1; i <= nk; ++i) {
      double k = static_cast<double>(i) * dk;
      double sh = std::sin(0.5 * k * s);
      acc += dev[i] * 2.0 * sh * sh / (k * k);
    }
    for (const auto& [lam, c] : m.masses) {
      double kj = std::sqrt(-lam);
      acc += c * (std::cosh(kj * s) - 1.0) / (kj * kj);
    }
    Ls[is] = acc;
  });

  GLKernel out;
  out.Ls = RealSamples(sg, std::move(Ls));
  return out;
}

SolveResult solve_gl(const GLKernel& L, const UniformGrid& xgrid,
                     const options& opt) {
  require(xgrid.start == 0.0, errc::invalid_input, "x-grid starts at 0");
  const double h = xgrid.step;
  SolveResult out;
  out.K = TriangularKernel(xgrid);
  std::vector<double> resid(xgrid.count, 0.0);

  parallel_for(xgrid.count, [&](std::size_t i) {
    if (i == 0) {
      out.K.at(0, 0) = -L.at(0.0, 0.0);
      return;
    }
    double x = xgrid.node(i);
    std::size_t n = i + 1;
    auto w = quad_weights(n, opt.rule);
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      double yj = xgrid.node(j);
      rhs[j] = -L.at(x, yj);
      for (std::size_t t = 0; t < n; ++t)
        M(j, t) = (j == t ? 1.0 : 0.0) + w[t] * h * L.at(xgrid.node(t), yj);
    }
    Eigen::VectorXd sol = M.partialPivLu().solve(rhs);
    double scale = 1.0 + rhs.lpNorm<Eigen::Infinity>();
    resid[i] = (M * sol - rhs).lpNorm<Eigen::Infinity>() / scale;
    for (std::size_t j = 0; j < n; ++j) out.K.at(i, j) = sol[j];
  });
  out.max_residual = *std::max_element(resid.begin(), resid.end());
  require(out.max_residual < opt.residual_tol, errc::data_not_realizable,
          "Gelfand-Levitan system ill-conditioned: measure not admissible");
  return out;
}

QResult K_to_q(const TriangularKernel& K) {
  require(K.rows.size() >= 3, errc::invalid_input, "K_to_q needs >= 3 rows");
  auto diag = K.diagonal();
  auto dd = differentiate_jump_aware(diag, K.xgrid.step);
  std::vector<double> qv(dd.size());
  for (std::size_t i = 0; i < dd.size(); ++i) qv[i] = 2.0 * dd[i];

  QResult out;
  out.q = PotentialSpec::from_grid(K.xgrid, qv, K.xgrid.back());
  auto cum = cumquad(qv, K.xgrid.step);
  double worst = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i)
    worst = std::max(worst, std::abs(diag[i] - 0.5 * cum[i]));
  out.diag_consistency = worst;
  return out;
}

GLKernel K_to_L(const TriangularKernel& K, double xmax) {
  const double h = K.xgrid.step;
  auto ns = static_cast<std::size_t>(std::ceil(2.0 * xmax / h)) + 1;
  UniformGrid sg(0.0, h, ns);
  std::vector<double> Ls(ns, 0.0);

  // march Ls(s) + int_0^{s/2} K(s/2,t)[Ls(s/2+t) - Ls(s/2-t)] dt
  //   = -2 K(s/2, s/2)
  // The t-lattice has step h/2, so Ls is only ever queried at nodes or exact
  // midpoints; midpoints use a quadratic stencil (a linear one leaves an
  // O(h^2) one-signed bias that the march accumulates).
  for (std::size_t is = 1; is < ns; ++is) {
    double x = 0.5 * sg.node(is);
    std::size_t mt = is + 1;
    double ht = x / static_cast<double>(mt - 1);
    double rhs = -2.0 * K.interp(x, x);
    double c_unknown = 1.0;

    // value of Ls at index2 half-units as (stencil nodes, weights); nodes
    // above `is` are not available yet, so those stencils fall back to the
    // in-cell linear form
    auto eval = [&](std::size_t index2, double scale, double& known,
                    double& unknown_coeff) {
      if (index2 % 2 == 0) {
        std::size_t m = index2 / 2;
        if (m == is) unknown_coeff += scale;
        else known += scale * Ls[m];
        return;
      }
      std::size_t m = (index2 - 1) / 2;  // midpoint of [m, m+1]
      std::size_t st;                    // stencil start
      if (m == 0) st = 0;
      else st = m - 1;
      double w[3];
      if (st == m - 1) {
        w[0] = -0.125; w[1] = 0.75; w[2] = 0.375;
      } else {
        w[0] = 0.375; w[1] = 0.75; w[2] = -0.125;
      }
      if (st + 2 > is) {
        // stencil would need a node beyond `is`; use the linear midpoint
        for (int o = 0; o < 2; ++o) {
          double lw = 0.5 * scale;
          std::size_t idx = m + static_cast<std::size_t>(o);
          if (idx == is) unknown_coeff += lw;
          else known += lw * Ls[idx];
        }
        return;
      }
      for (int o = 0; o < 3; ++o) {
        std::size_t idx = st + static_cast<std::size_t>(o);
        double lw = w[o] * scale;
        if (idx == is) unknown_coeff += lw;
        else known += lw * Ls[idx];
      }
    };

    for (std::size_t j = 0; j < mt; ++j) {
      double t = static_cast<double>(j) * ht;
      double wq = (j == 0 || j + 1 == mt) ? 0.5 : 1.0;
      double kv = K.interp(x, t);
      double scale = wq * ht * kv;
      double known = 0.0, ucoef = 0.0;
      eval(is + j, scale, known, ucoef);          // Ls(x + t)
      eval(is - j, -scale, known, ucoef);         // -Ls(x - t)
      rhs -= known;
      c_unknown += ucoef;
    }
    Ls[is] = rhs / c_unknown;
  }

  GLKernel out;
  out.Ls = RealSamples(sg, std::move(Ls));
  return out;
}

TriangularKernel q_to_K(const PotentialSpec& q, const UniformGrid& xgrid) {
  require(xgrid.start == 0.0, errc::invalid_input, "x-grid starts at 0");
  const double h = xgrid.step, h2 = 0.5 * h;
  const double xmax = xgrid.back();

  // H(u,v) = K(u+v, u-v) on 0 <= v <= u <= xmax:
  //   H(u,v) = (1/2) int_v^u q + int_v^u du' int_0^v dv' q(u'+v') H(u',v')
  auto nu = static_cast<std::size_t>(std::lround(xmax / h2)) + 1;
  std::vector<double> Cq(nu, 0.0);
  {
    std::vector<double> qs(nu);
    for (std::size_t i = 0; i < nu; ++i) qs[i] = q(static_cast<double>(i) * h2);
    for (std::size_t i = 1; i < nu; ++i)
      Cq[i] = Cq[i - 1] + h2 * 0.5 * (qs[i - 1] + qs[i]);
  }

  std::vector<std::vector<double>> H(nu);
  std::vector<double> G(nu, 0.0), Pprev(nu, 0.0), Pcur(nu, 0.0);
  for (std::size_t iu = 0; iu < nu; ++iu) {
    double u = static_cast<double>(iu) * h2;
    H[iu].assign(iu + 1, 0.0);
    if (iu == 0) continue;
    Pcur[0] = 0.0;
    H[iu][0] = 0.5 * Cq[iu] + G[0] + 0.5 * h2 * Pprev[0];
    for (std::size_t j = 1; j <= iu; ++j) {
      double v = static_cast<double>(j) * h2;
      double qa = q(u + v - h2), qb = q(u + v);
      double known = Pcur[j - 1] + 0.5 * h2 * qa * H[iu][j - 1];
      if (j == iu) {
        // diagonal: H = 0 is the side condition; only P propagates
        H[iu][j] = 0.0;
        Pcur[j] = known;
        continue;
      }
      double Q1 = 0.5 * (Cq[iu] - Cq[j]);
      double rhs = Q1 + G[j] + 0.5 * h2 * (Pprev[j] + known);
      double Huv = rhs / (1.0 - 0.25 * h2 * h2 * qb);
      H[iu][j] = Huv;
      Pcur[j] = known + 0.5 * h2 * qb * Huv;
    }
    for (std::size_t j = 0; j + 1 <= iu; ++j)
      G[j] += 0.5 * h2 * (Pprev[j] + Pcur[j]);
    Pprev = Pcur;
  }

  TriangularKernel out(xgrid);
  for (std::size_t i = 0; i < xgrid.count; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.at(i, j) = H[i + j][i - j];
  return out;
}

}  // namespace gl
}  // namespace iscatter
