#include "iscatter/potential.hpp"

#include <cmath>

namespace iscatter {

namespace {

// Cutoff x with int_x^inf (1+t) q0 e^{-c t} dt < 1e-10 (envelope bound).
double decay_cutoff(double q0, double c) {
  double x = 1.0;
  while (q0 * std::exp(-c * x) * ((1.0 + x) / c + 1.0 / (c * c)) > 1e-10) x += 0.25;
  return x;
}

}  // namespace

double PotentialSpec::operator()(double x) const {
  x -= offset;
  switch (kind) {
    case kind_t::zero:
      return 0.0;
    case kind_t::well:
      return (x >= 0.0 && x <= p2) ? -p1 : 0.0;
    case kind_t::sech2: {
      if (x < 0.0 || x + offset > support_radius) return 0.0;
      double s = 1.0 / std::cosh(p1 * x);
      return -2.0 * p1 * p1 * s * s;
    }
    case kind_t::bargmann_one_pole: {
      if (x < 0.0 || x + offset > support_radius) return 0.0;
      double k1 = p1, nu1 = std::sqrt(k1 * k1 + p2);
      double D = (k1 + nu1) / (nu1 - k1);
      double u = D * std::exp(-2.0 * nu1 * x);
      return -8.0 * nu1 * nu1 * u / ((1.0 + u) * (1.0 + u));
    }
    case kind_t::bump: {
      double u = (x - p2) / p3;
      if (std::abs(u) >= 1.0) return 0.0;
      return p1 * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    case kind_t::one_plus_cos:
      return (x >= 0.0 && x <= 1.0) ? 1.0 + std::cos(M_PI * x) : 0.0;
    case kind_t::grid: {
      if (x < grid.start || x > grid.back()) return 0.0;
      std::size_t i = grid.cell(x);
      double t = (x - grid.node(i)) / grid.step;
      // Catmull-Rom: linear interpolation carries an O(step^2) bias of
      // definite sign that detunes resonance-sensitive round trips
      if (i == 0 || i + 2 >= grid.count)
        return values[i] * (1.0 - t) + values[i + 1] * t;
      double m0 = 0.5 * (values[i + 1] - values[i - 1]);
      double m1 = 0.5 * (values[i + 2] - values[i]);
      double d = values[i + 1] - values[i];
      return values[i] + t * (m0 + t * ((3.0 * d - 2.0 * m0 - m1) +
                                        t * (m0 + m1 - 2.0 * d)));
    }
  }
  return 0.0;
}

PotentialSpec PotentialSpec::zero() {
  PotentialSpec q;
  q.kind = kind_t::zero;
  q.tags = {"L11", "L12", "L13"};
  return q;
}

PotentialSpec PotentialSpec::well(double depth, double radius) {
  PotentialSpec q;
  q.kind = kind_t::well;
  q.p1 = depth;
  q.p2 = radius;
  q.support_radius = radius;
  q.tags = {"L11", "L12", "L13"};
  return q;
}

PotentialSpec PotentialSpec::sech2(double nu0) {
  PotentialSpec q;
  q.kind = kind_t::sech2;
  q.p1 = nu0;
  q.compact = false;
  q.support_radius = decay_cutoff(2.0 * nu0 * nu0, 2.0 * nu0);
  q.tags = {"L11", "L12", "L13"};
  return q;
}

PotentialSpec PotentialSpec::bargmann_one_pole(double k1, double r1) {
  require(k1 > 0.0 && r1 > 0.0, errc::invalid_input, "bargmann parameters positive");
  PotentialSpec q;
  q.kind = kind_t::bargmann_one_pole;
  q.p1 = k1;
  q.p2 = r1;
  double nu1 = std::sqrt(k1 * k1 + r1);
  double D = (k1 + nu1) / (nu1 - k1);
  q.compact = false;
  q.support_radius = decay_cutoff(8.0 * nu1 * nu1 * D, 2.0 * nu1);
  q.tags = {"L11", "L12", "L13"};
  return q;
}

PotentialSpec PotentialSpec::bump(double amp, double center, double width) {
  PotentialSpec q;
  q.kind = kind_t::bump;
  q.p1 = amp;
  q.p2 = center;
  q.p3 = width;
  q.support_left = center - width;
  q.support_radius = center + width;
  q.tags = {"L11", "L12", "L13"};
  return q;
}

PotentialSpec PotentialSpec::one_plus_cos() {
  PotentialSpec q;
  q.kind = kind_t::one_plus_cos;
  q.support_radius = 1.0;
  q.tags = {"L11", "L12", "L13"};
  return q;
}

PotentialSpec PotentialSpec::from_grid(UniformGrid g, std::vector<double> v,
                                       double support_radius,
                                       std::vector<std::string> tags) {
  require(v.size() == g.count, errc::invalid_input, "potential grid size mismatch");
  for (double x : v)
    require(std::isfinite(x), errc::invalid_input, "potential values must be finite");
  PotentialSpec q;
  q.kind = kind_t::grid;
  q.grid = g;
  q.values = std::move(v);
  q.support_left = g.start;
  q.support_radius = support_radius;
  q.tags = std::move(tags);
  for (std::size_t i = 0; i < q.grid.count; ++i)
    require(q.grid.node(i) <= support_radius + 1e-12 || std::abs(q.values[i]) < 1e-12,
            errc::invalid_input, "grid potential nonzero beyond declared support");
  return q;
}

PotentialSpec PotentialSpec::shifted(double x0) const {
  PotentialSpec q = *this;
  q.offset += x0;
  q.support_left += x0;
  q.support_radius += x0;
  return q;
}

}  // namespace iscatter
