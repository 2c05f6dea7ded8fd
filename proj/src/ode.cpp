#include "iscatter/ode.hpp"

#include <cmath>

namespace iscatter {

namespace {

// Endpoint stages are biased strictly into the current cell so that a
// potential edge aligned with a cell boundary is never sampled from the
// wrong side by endpoint roundoff.
inline double stage_lo(double x, double h) { return x + 1e-10 * h; }
inline double stage_hi(double x, double h) { return x + (1.0 - 1e-10) * h; }

// RK4 step for u'' = (q - k2) u, h may be negative.
inline void step_schrodinger(const PotentialSpec& q, cplx k2, double x, double h,
                             march_state& s) {
  auto rhs = [&](double xx, const march_state& y) {
    return march_state{y.du, (q(xx) - k2) * y.u};
  };
  march_state k1 = rhs(stage_lo(x, h), s);
  march_state k2s =
      rhs(x + 0.5 * h, {s.u + 0.5 * h * k1.u, s.du + 0.5 * h * k1.du});
  march_state k3 =
      rhs(x + 0.5 * h, {s.u + 0.5 * h * k2s.u, s.du + 0.5 * h * k2s.du});
  march_state k4 = rhs(stage_hi(x, h), {s.u + h * k3.u, s.du + h * k3.du});
  s.u += h / 6.0 * (k1.u + 2.0 * k2s.u + 2.0 * k3.u + k4.u);
  s.du += h / 6.0 * (k1.du + 2.0 * k2s.du + 2.0 * k3.du + k4.du);
}

// RK4 step for the reduced Jost equation m'' = q m - 2ik m'.
inline void step_reduced(const PotentialSpec& q, cplx k, double x, double h,
                         march_state& s) {
  const cplx c = cplx(0, 2) * k;
  auto rhs = [&](double xx, const march_state& y) {
    return march_state{y.du, q(xx) * y.u - c * y.du};
  };
  march_state k1 = rhs(stage_lo(x, h), s);
  march_state k2s =
      rhs(x + 0.5 * h, {s.u + 0.5 * h * k1.u, s.du + 0.5 * h * k1.du});
  march_state k3 =
      rhs(x + 0.5 * h, {s.u + 0.5 * h * k2s.u, s.du + 0.5 * h * k2s.du});
  march_state k4 = rhs(stage_hi(x, h), {s.u + h * k3.u, s.du + h * k3.du});
  s.u += h / 6.0 * (k1.u + 2.0 * k2s.u + 2.0 * k3.u + k4.u);
  s.du += h / 6.0 * (k1.du + 2.0 * k2s.du + 2.0 * k3.du + k4.du);
}

// Stability-driven substep count for the reduced march (the transported
// function varies slowly; only |2kh| matters).
int stable_substeps(cplx k, double h, int nsub) {
  double speed = 2.0 * std::abs(k) * h;
  int need = static_cast<int>(std::ceil(speed / 0.5));
  return std::max(nsub, std::max(need, 1));
}

// Accuracy-driven count for direct marches of oscillatory solutions.
int accurate_substeps(cplx k, double h, int nsub) {
  double speed = 2.0 * std::abs(k) * h;
  int need = static_cast<int>(std::ceil(speed / 0.04));
  return std::max(nsub, std::max(need, 1));
}

}  // namespace

std::vector<march_state> march_grid(const PotentialSpec& q, cplx k2,
                                    const UniformGrid& xgrid, march_state init,
                                    int nsub) {
  nsub = accurate_substeps(std::sqrt(std::abs(k2)), xgrid.step, nsub);
  std::vector<march_state> out(xgrid.count);
  out[0] = init;
  march_state s = init;
  const double hs = xgrid.step / nsub;
  for (std::size_t i = 1; i < xgrid.count; ++i) {
    double x = xgrid.node(i - 1);
    for (int m = 0; m < nsub; ++m) step_schrodinger(q, k2, x + m * hs, hs, s);
    out[i] = s;
  }
  return out;
}

RegularPair regular_solutions(const PotentialSpec& q, double k,
                              const UniformGrid& xgrid, int nsub) {
  for (std::size_t i = 0; i < xgrid.count; ++i)
    require(std::isfinite(q(xgrid.node(i))), errc::invalid_input,
            "potential sample not finite");
  auto rphi = march_grid(q, cplx(k * k, 0.0), xgrid, {0.0, 1.0}, nsub);
  auto rpsi = march_grid(q, cplx(k * k, 0.0), xgrid, {1.0, 0.0}, nsub);
  RegularPair out;
  out.xgrid = xgrid;
  out.phi.resize(xgrid.count);
  out.dphi.resize(xgrid.count);
  out.psi.resize(xgrid.count);
  out.dpsi.resize(xgrid.count);
  for (std::size_t i = 0; i < xgrid.count; ++i) {
    out.phi[i] = rphi[i].u.real();
    out.dphi[i] = rphi[i].du.real();
    out.psi[i] = rpsi[i].u.real();
    out.dpsi[i] = rpsi[i].du.real();
  }
  return out;
}

JostPoint jost_point(const PotentialSpec& q, cplx k, double step) {
  double a = q.support_radius;
  if (a <= 0.0) {
    cplx ik = cplx(0, 1) * k;
    return {1.0, ik};
  }
  auto n = static_cast<std::size_t>(std::ceil(a / step));
  double h = a / static_cast<double>(n);
  int nsub = stable_substeps(k, h, 1);
  double hs = -h / nsub;
  march_state s{1.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    double x = a - static_cast<double>(i) * h;
    for (int m = 0; m < nsub; ++m) step_reduced(q, k, x + m * hs, hs, s);
  }
  cplx ik = cplx(0, 1) * k;
  return {s.u, ik * s.u + s.du};
}

std::vector<march_state> march_reduced(const PotentialSpec& q, cplx k,
                                       double x_from, double x_to,
                                       std::size_t ncells) {
  require(ncells >= 1, errc::invalid_input, "march_reduced needs >=1 cell");
  double h = (x_to - x_from) / static_cast<double>(ncells);
  int nsub = stable_substeps(k, std::abs(h), 1);
  double hs = h / nsub;
  std::vector<march_state> out(ncells + 1);
  march_state s{1.0, 0.0};
  out[0] = s;
  for (std::size_t i = 1; i <= ncells; ++i) {
    double x = x_from + static_cast<double>(i - 1) * h;
    for (int t = 0; t < nsub; ++t) step_reduced(q, k, x + t * hs, hs, s);
    out[i] = s;
  }
  return out;
}

JostRow jost_row(const PotentialSpec& q, cplx k, const UniformGrid& xgrid,
                 int nsub) {
  require(xgrid.start == 0.0, errc::invalid_input, "jost_row grid starts at 0");
  const double h = xgrid.step;
  double a = std::max(q.support_radius, xgrid.back());
  auto ntot = static_cast<std::size_t>(std::ceil((a - 1e-12) / h));
  if (ntot < xgrid.count - 1) ntot = xgrid.count - 1;
  double atop = static_cast<double>(ntot) * h;

  nsub = stable_substeps(k, h, nsub);
  double hs = -h / nsub;
  march_state s{1.0, 0.0};
  std::vector<cplx> m(ntot + 1), dm(ntot + 1);
  m[ntot] = s.u;
  dm[ntot] = s.du;
  for (std::size_t i = ntot; i-- > 0;) {
    double x = atop - static_cast<double>(ntot - 1 - i) * h;
    for (int t = 0; t < nsub; ++t) step_reduced(q, k, x + t * hs, hs, s);
    m[i] = s.u;
    dm[i] = s.du;
  }

  JostRow out;
  cplx ik = cplx(0, 1) * k;
  out.f0 = m[0];
  out.fp0 = ik * m[0] + dm[0];
  out.fx.resize(xgrid.count);
  for (std::size_t i = 0; i < xgrid.count; ++i)
    out.fx[i] = std::exp(ik * xgrid.node(i)) * m[i];
  return out;
}

}  // namespace iscatter
