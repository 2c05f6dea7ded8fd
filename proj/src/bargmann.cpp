#include "iscatter/bargmann.hpp"

#include <cmath>

namespace iscatter {
namespace ifunc {

BargmannBundle bargmann_r0(double nu0) {
  require(nu0 > 0.0, errc::invalid_input, "nu0 must be positive");
  BargmannBundle b;
  b.nu = nu0;
  b.r0 = nu0 * nu0;
  const cplx inu(0.0, nu0);
  b.f = [inu](cplx k) { return k / (k + inu); };
  b.S = [inu](double k) { return (k + inu) / (k - inu); };
  b.F = [nu0](double x) { return 2.0 * nu0 * std::exp(-nu0 * x); };
  b.F_S = b.F;
  b.A = [nu0](double x, double y) {
    return -2.0 * nu0 * std::exp(-nu0 * (x + y)) / (1.0 + std::exp(-2.0 * nu0 * x));
  };
  double r0 = b.r0;
  b.I = [r0](cplx k) { return cplx(0, 1) * k + cplx(0, 1) * r0 / k; };
  b.Lscript = [r0](double x) { return r0 * x; };
  b.q = PotentialSpec::sech2(nu0);
  return b;
}

BargmannBundle bargmann_one_pole(double k1, double r1) {
  require(k1 > 0.0 && r1 > 0.0, errc::invalid_input, "k1, r1 must be positive");
  BargmannBundle b;
  const double nu1 = std::sqrt(k1 * k1 + r1);
  b.nu = nu1;
  b.poles.emplace_back(k1, r1);
  b.s1 = 2.0 * k1 * (k1 + nu1) / (nu1 - k1);
  const double C = 2.0 * nu1 * (k1 + nu1) / (nu1 - k1);
  const double D = C / (2.0 * nu1);
  const cplx ik1(0.0, k1), inu1(0.0, nu1);

  b.f = [ik1, inu1](cplx k) { return (k - ik1) / (k + inu1); };
  b.S = [ik1, inu1](double k) {
    return (k + ik1) * (k + inu1) / ((k - ik1) * (k - inu1));
  };
  b.F = [C, nu1](double x) { return C * std::exp(-nu1 * x); };
  double s1 = b.s1;
  b.F_S = [C, nu1, s1, k1](double x) {
    return C * std::exp(-nu1 * x) - s1 * std::exp(-k1 * x);
  };
  b.A = [C, D, nu1](double x, double y) {
    return -C * std::exp(-nu1 * (x + y)) / (1.0 + D * std::exp(-2.0 * nu1 * x));
  };
  b.I = [ik1, r1](cplx k) { return cplx(0, 1) * k + cplx(0, 1) * r1 / (k - ik1); };
  // continuous part (r1/k1)(1 - e^{-k1 x}) plus the point-mass term,
  // c1 = 2 k1 r1
  b.Lscript = [k1, r1](double x) {
    return (r1 / k1) * (1.0 - std::exp(-k1 * x)) +
           2.0 * r1 * (std::cosh(k1 * x) - 1.0) / k1;
  };
  b.q = PotentialSpec::bargmann_one_pole(k1, r1);
  return b;
}

}  // namespace ifunc
}  // namespace iscatter
