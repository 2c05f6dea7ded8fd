#include "iscatter/expfit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace iscatter {

namespace {

double model_at(const expfit_result& m, double u) {
  double v = m.c0;
  for (const auto& t : m.terms) v += t.weight * std::exp(-t.rate * u);
  return v;
}

// Variable-projection polish: the rates are optimized by accept/reject
// Levenberg-Marquardt in log coordinates while the weights (and constant)
// are re-solved linearly at every trial. Much better conditioned than a
// joint nonlinear solve on (weights, rates).
void polish(expfit_result& m, std::span<const double> u,
            std::span<const double> y, bool with_constant) {
  const std::size_t n = u.size();
  const std::size_t J = m.terms.size();
  if (J == 0 || n < 2 * J + 2) return;

  auto solve_weights = [&](const std::vector<double>& rates, expfit_result& mm) {
    std::size_t p = J + (with_constant ? 1 : 0);
    Eigen::MatrixXd Phi(n, p);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t o = 0;
      if (with_constant) Phi(i, o++) = 1.0;
      for (std::size_t j = 0; j < J; ++j)
        Phi(i, o++) = std::exp(-rates[j] * u[i]);
      rhs[i] = y[i];
    }
    Eigen::VectorXd w = Phi.colPivHouseholderQr().solve(rhs);
    std::size_t o = 0;
    if (with_constant) mm.c0 = w[o++];
    for (std::size_t j = 0; j < J; ++j) {
      mm.terms[j].rate = rates[j];
      mm.terms[j].weight = w[o++];
    }
    double c = (Phi * w - rhs).squaredNorm();
    return c;
  };

  std::vector<double> lr(J);
  for (std::size_t j = 0; j < J; ++j)
    lr[j] = std::log(std::max(m.terms[j].rate, 1e-4));
  auto rates_of = [&](const std::vector<double>& l) {
    std::vector<double> r(J);
    for (std::size_t j = 0; j < J; ++j) r[j] = std::exp(std::min(l[j], 12.0));
    return r;
  };

  expfit_result cur = m;
  double cost = solve_weights(rates_of(lr), cur);
  double lambda = 1e-4;
  const double fd = 1e-5;

  for (int iter = 0; iter < 60; ++iter) {
    // finite-difference Jacobian of the projected residual in ln-rates
    Eigen::VectorXd r0v(n);
    for (std::size_t i = 0; i < n; ++i) r0v[i] = y[i] - model_at(cur, u[i]);
    Eigen::MatrixXd Jm(n, J);
    for (std::size_t j = 0; j < J; ++j) {
      auto lt = lr;
      lt[j] += fd;
      expfit_result mt = cur;
      solve_weights(rates_of(lt), mt);
      for (std::size_t i = 0; i < n; ++i)
        Jm(i, j) = ((y[i] - model_at(mt, u[i])) - r0v[i]) / fd;
    }
    Eigen::MatrixXd H = Jm.transpose() * Jm;
    Eigen::VectorXd g = -Jm.transpose() * r0v;
    bool moved = false;
    for (int tries = 0; tries < 10; ++tries) {
      Eigen::MatrixXd Hd = H;
      Hd.diagonal().array() += lambda * (H.diagonal().array().abs() + 1e-12);
      Eigen::VectorXd step = Hd.ldlt().solve(g);
      if (!step.allFinite()) break;
      auto lt = lr;
      for (std::size_t j = 0; j < J; ++j) lt[j] -= step[j];
      expfit_result mt = cur;
      double ct = solve_weights(rates_of(lt), mt);
      if (ct < cost) {
        lr = lt;
        cur = mt;
        cost = ct;
        lambda = std::max(lambda * 0.3, 1e-12);
        moved = step.lpNorm<Eigen::Infinity>() > 1e-10;
        break;
      }
      lambda *= 10.0;
    }
    if (!moved) break;
  }
  m = cur;
  if (with_constant) m.c0 = std::max(m.c0, 0.0);
}

}  // namespace

expfit_result fit_decaying_exp_sum(std::span<const double> u,
                                   std::span<const double> y, int max_terms,
                                   double noise_floor, bool with_constant) {
  expfit_result out;
  const std::size_t n = u.size();
  std::vector<double> res(y.begin(), y.end());

  auto refresh_residual = [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res[i] = y[i] - model_at(out, u[i]);
      worst = std::max(worst, std::abs(res[i]));
    }
    return worst;
  };

  if (with_constant) {
    // far-tail mean as the constant when the tail has flattened
    std::size_t m = std::max<std::size_t>(8, n / 10);
    double mean = 0.0;
    for (std::size_t i = n - m; i < n; ++i) mean += res[i];
    mean /= static_cast<double>(m);
    double slope = (res[n - 1] - res[n - m]) / (u[n - 1] - u[n - m]);
    if (std::abs(slope) < 0.05 * std::abs(mean) / (u[n - 1] - u[n - m] + 1.0) ||
        std::abs(mean) < noise_floor) {
      out.c0 = std::max(mean, 0.0);
    }
    refresh_residual();
  }

  const double thresh = 10.0 * noise_floor;
  // seed a new mode from the current residual: the outermost run of positive
  // residuals that is still a relevant fraction of the current maximum, so
  // far-tail leftovers of already-deflated modes are skipped
  auto seed_mode = [&]() -> bool {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(res[i]));
    if (worst < thresh) return false;
    double cut = std::max(thresh, 1e-3 * worst);
    std::size_t hi = n;
    while (hi > 0 && res[hi - 1] < cut) --hi;
    if (hi < 8) return false;
    std::size_t lo = hi;
    while (lo > 0 && res[lo - 1] > cut) --lo;
    if (hi - lo < 6) return false;
    if (hi - lo > 60) lo = hi - 60;

    double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (res[i] <= 0.0) continue;
      double ly = std::log(res[i]);
      sx += u[i];
      sy += ly;
      sxx += u[i] * u[i];
      sxy += u[i] * ly;
      cnt += 1.0;
    }
    if (cnt < 6) return false;
    double det = cnt * sxx - sx * sx;
    double slope = (cnt * sxy - sx * sy) / det;
    double icpt = (sy * sxx - sx * sxy) / det;
    if (slope >= 0.0) return false;
    exp_term t{-slope, std::exp(icpt)};
    out.terms.push_back(t);
    for (std::size_t i = 0; i < n; ++i)
      res[i] -= t.weight * std::exp(-t.rate * u[i]);
    return true;
  };

  // cyclic refinement: re-fit each mode by log-regression over the region
  // where it dominates the current model, with the other modes subtracted;
  // this walks the seeds into the right basin before the joint polish
  auto cyclic_refine = [&](int rounds) {
    for (int round = 0; round < rounds; ++round) {
      std::sort(out.terms.begin(), out.terms.end(),
                [](const exp_term& a, const exp_term& b) { return a.rate < b.rate; });
      for (std::size_t j = 0; j < out.terms.size(); ++j) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double self = out.terms[j].weight * std::exp(-out.terms[j].rate * u[i]);
          if (self < thresh) continue;
          double rest = std::abs(out.c0);
          for (std::size_t mji = 0; mji < out.terms.size(); ++mji)
            if (mji != j)
              rest += std::abs(out.terms[mji].weight) *
                      std::exp(-out.terms[mji].rate * u[i]);
          if (self < 0.6 * rest) continue;  // outside the dominance region
          double rj = y[i] - (model_at(out, u[i]) - self);  // mode j + errors
          if (rj <= 0.0) continue;
          double ly = std::log(rj);
          sx += u[i];
          sy += ly;
          sxx += u[i] * u[i];
          sxy += u[i] * ly;
          cnt += 1.0;
        }
        if (cnt < 6) continue;
        double det = cnt * sxx - sx * sx;
        double slope = (cnt * sxy - sx * sy) / det;
        double icpt = (sy * sxx - sx * sxy) / det;
        if (slope < 0.0) {
          out.terms[j].rate = -slope;
          out.terms[j].weight = std::exp(icpt);
        }
      }
    }
  };

  // greedy pass, then alternate the joint polish with one more seed from
  // the polished residual while it stays above the floor; keep the best
  // model seen in case a late seed lands in a worse basin
  auto prune = [&] {
    std::erase_if(out.terms, [](const exp_term& t) {
      return t.weight < 1e-8 || t.rate > 1e5;
    });
  };
  for (int term = 0; term < max_terms; ++term) {
    refresh_residual();
    if (!seed_mode()) break;
  }
  cyclic_refine(15);
  polish(out, u, y, with_constant);
  prune();
  expfit_result best = out;
  double best_res = refresh_residual();
  while (static_cast<int>(out.terms.size()) < max_terms) {
    if (refresh_residual() < thresh) break;
    if (!seed_mode()) break;
    cyclic_refine(10);
    polish(out, u, y, with_constant);
    prune();
    double r = refresh_residual();
    if (r < best_res) {
      best = out;
      best_res = r;
    } else {
      out = best;
      break;
    }
  }
  out = best;
  std::sort(out.terms.begin(), out.terms.end(),
            [](const exp_term& a, const exp_term& b) { return a.rate < b.rate; });
  out.residual = refresh_residual();
  return out;
}

}  // namespace iscatter
