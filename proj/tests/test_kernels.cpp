#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "support.hpp"
#include "vacuum/kernels.hpp"
#include "vacuum/quadrature.hpp"

using namespace vacuum;
using testing::Gen;
using testing::kPi;
using testing::rel_diff;

namespace {

// Extended-precision references: power series for small arguments, trig otherwise.
long double ref_j0(long double x) {
  if (x < 0.5L) {
    long double term = 1.0L, sum = 1.0L;
    for (int n = 1; n < 30; ++n) {
      term *= -x * x / ((2.0L * n) * (2.0L * n + 1.0L));
      sum += term;
    }
    return sum;
  }
  return std::sin(x) / x;
}

long double ref_j1(long double x) {
  if (x < 0.5L) {
    // j1(x) = sum (-1)^n x^{2n+1} (2n+2) / (2n+3)!
    long double pow = x, fact = 6.0L, sum = 0.0L;
    for (int n = 0; n < 30; ++n) {
      sum += ((n % 2) ? -1.0L : 1.0L) * pow * (2.0L * n + 2.0L) / fact;
      pow *= x * x;
      fact *= (2.0L * n + 4.0L) * (2.0L * n + 5.0L);
    }
    return sum;
  }
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("sph_j0 reference values") {
  CHECK(sph_j0(0.0) == 1.0);
  CHECK(std::abs(sph_j0(kPi)) < 1e-16);
  CHECK(sph_j0(1.0) == doctest::Approx(0.8414709848078965).epsilon(1e-15));
}

TEST_CASE("sph_j1 reference values") {
  CHECK(sph_j1(0.0) == 0.0);
  CHECK(std::abs(sph_j1(1e-3) - 3.3333330e-4) < 1e-11);
  CHECK(sph_j1(kPi) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
}

TEST_CASE("spherical Bessel functions match extended-precision references") {
  Gen g(11);
  double worst0 = 0.0, worst1 = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double x = g.log_uniform(1e-8, 200.0);
    const long double r0 = ref_j0(x);
    const long double r1 = ref_j1(x);
    // Relative error, except at zeros where the function value is below the argument-rounding scale.
    worst0 = std::max(worst0, static_cast<double>(std::abs(sph_j0(x) - r0) / std::max(std::abs(r0), 1e-3L)));
    worst1 = std::max(worst1, static_cast<double>(std::abs(sph_j1(x) - r1) / std::max(std::abs(r1), 1e-3L)));
  }
  CHECK(worst0 <= 1e-14);
  CHECK(worst1 <= 1e-13);
}

TEST_CASE("sph_j1_over_x limit and consistency") {
  CHECK(sph_j1_over_x(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  for (double x : {1e-6, 0.3, 0.99, 1.0, 1.01, 7.5, 40.0}) {
    CHECK(rel_diff(sph_j1_over_x(x), static_cast<double>(ref_j1(x) / x)) < 1e-13);
  }
}

TEST_CASE("kernel_qe values") {
  CHECK(kernel_qe({1.0, 1.0, 0.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(kernel_qe({5.0, 0.1, 0.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(kernel_qe({1.0, 1.0, kPi}) == doctest::Approx(3.0 / (kPi * kPi * kPi * kPi)).epsilon(1e-13));

  const double k = 2.0, kp = 3.0, r = 0.7;
  const double a = sph_j0(k * r), b = sph_j0(kp * r);
  const double c = sph_j1(k * r) / (k * r), d = sph_j1(kp * r) / (kp * r);
  CHECK(kernel_qe({k, kp, r}) == doctest::Approx(a * b - a * d - c * b + 3.0 * c * d).epsilon(1e-13));
}

TEST_CASE("kernel_qm values") {
  CHECK(kernel_qm({3.0, 4.0, 0.0}) == 0.0);
  CHECK(kernel_qm({1.0, 1.0, kPi}) == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-13));
  CHECK(kernel_qm({2.0, 5.0, 0.3}) == kernel_qm({5.0, 2.0, 0.3}));
}

TEST_CASE("kernel arguments validity") {
  CHECK(KernelArgs{1.0, 2.0, 0.0}.valid());
  CHECK_FALSE(KernelArgs{-1.0, 2.0, 1.0}.valid());
  CHECK_FALSE(KernelArgs{1.0, NAN, 1.0}.valid());
  CHECK_FALSE(KernelArgs{1.0, 1.0, INFINITY}.valid());
}

TEST_CASE("kernels are symmetric and bounded") {
  Gen g(12);
  for (int i = 0; i < 5000; ++i) {
    const double k = g.log_uniform(1e-3, 50.0);
    const double kp = g.log_uniform(1e-3, 50.0);
    const double r = g.integer(0, 9) == 0 ? 0.0 : g.log_uniform(1e-3, 20.0);
    const double qe = kernel_qe({k, kp, r});
    const double qm = kernel_qm({k, kp, r});
    CHECK(qe == doctest::Approx(kernel_qe({kp, k, r})).epsilon(1e-14));
    CHECK(qm == doctest::Approx(kernel_qm({kp, k, r})).epsilon(1e-14));
    CHECK(std::abs(qe) <= 4.0);
    // sup |j1| = 0.43617 at x = 2.0816
    CHECK(qm >= -2.0 * 0.4362 * 0.4362);
    CHECK(qm <= 2.0 * 0.4362 * 0.4362);
  }
}

TEST_CASE("Laplace transform closed forms") {
  CHECK(laplace_k3_j1(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(laplace_k3_j1(2.0, 1.0) == doctest::Approx(0.128).epsilon(1e-15));
  CHECK(laplace_k3_j0(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(laplace_k3_j0(1.0, std::sqrt(3.0))) < 1e-15);
  CHECK(laplace_k3_j0(3.0, 1.0) == doctest::Approx(0.052).epsilon(1e-15));
  CHECK(laplace_k2_j1(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(laplace_k2_j1(1.0, 2.0) == doctest::Approx(0.16).epsilon(1e-15));
  CHECK(laplace_k2_j1(1e-9, 1.0) == doctest::Approx(2.0).epsilon(1e-12));

  double prev = laplace_k3_j1(3.0, 1.0);
  for (double s = 3.5; s < 200.0; s *= 1.3) {
    const double v = laplace_k3_j1(s, 1.0);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("Laplace transforms reject non-positive arguments") {
  CHECK_THROWS_AS(laplace_k3_j1(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(laplace_k3_j0(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(laplace_k2_j1(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(laplace_k2_j1(1.0, NAN), std::domain_error);
}

TEST_CASE("Laplace closed forms agree with quadrature of their defining integrals") {
  // Beyond r/s ~ 30 the oscillating integrand's L1 mass exceeds the result by
  // more than 1e6 and double-precision quadrature cannot resolve 1e-10.
  double worst = 0.0;
  for (double s : {0.1, 0.3, 1.0, 3.0, 10.0}) {
    for (double r : {0.03, 0.1, 0.3, 1.0, 3.0}) {
      AxisOptions ax;
      ax.scale = 1.0 / s;
      ax.half_period = kPi / r;
      ax.accelerate = false;
      QuadratureConfig cfg;
      cfg.rel_tol = 1e-12;
      cfg.abs_tol = 1e-300;
      auto q1 = integrate_semi_infinite([&](double k) { return k * k * k * sph_j1(k * r) * std::exp(-s * k); }, cfg, ax);
      auto q0 = integrate_semi_infinite([&](double k) { return k * k * k * sph_j0(k * r) * std::exp(-s * k); }, cfg, ax);
      auto q2 = integrate_semi_infinite([&](double k) { return k * k * sph_j1(k * r) * std::exp(-s * k); }, cfg, ax);
      REQUIRE((q1.converged || q1.roundoff_limited));
      REQUIRE((q0.converged || q0.roundoff_limited));
      REQUIRE((q2.converged || q2.roundoff_limited));
      worst = std::max(worst, rel_diff(q1.value, laplace_k3_j1(s, r)));
      worst = std::max(worst, rel_diff(q2.value, laplace_k2_j1(s, r)));
      // laplace_k3_j0 changes sign at r^2 = 3 s^2; measure against the scale of its terms.
      const double scale0 = 2.0 * (3.0 * s * s + r * r) / std::pow(s * s + r * r, 3);
      worst = std::max(worst, std::abs(q0.value - laplace_k3_j0(s, r)) / scale0);
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("Laplace compositions reproduce the eta integrands") {
  double worst_e = 0.0, worst_m = 0.0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double s = 0.05 * std::pow(200.0, i / 19.0);
      const double r = 0.05 * std::pow(200.0, j / 19.0);
      const double a = laplace_k3_j0(s, r), b = laplace_k2_j1(s, r), c = laplace_k3_j1(s, r);
      const double d = s * s + r * r;
      const double e_lhs = a * a - 2.0 * a * b / r + 3.0 * b * b / (r * r);
      const double e_rhs = 8.0 * (3.0 * s * s * s * s - 2.0 * s * s * r * r + 3.0 * r * r * r * r) / std::pow(d, 6);
      const double m_lhs = 2.0 * c * c;
      const double m_rhs = 128.0 * r * r * s * s / std::pow(d, 6);
      worst_e = std::max(worst_e, rel_diff(e_lhs, e_rhs));
      worst_m = std::max(worst_m, rel_diff(m_lhs, m_rhs));
    }
  }
  CHECK(worst_e <= 1e-12);
  CHECK(worst_m <= 1e-12);
}

}  // TEST_SUITE
