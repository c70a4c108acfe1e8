#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "support.hpp"
#include "vacuum/extsource.hpp"
#include "vacuum/kernels.hpp"
#include "vacuum/pointlike.hpp"
#include "vacuum/quadrature.hpp"

using namespace vacuum;
using testing::Gen;
using testing::kPi;
using testing::rel_diff;

namespace {

// \int 4 pi r^2 rho(r) j0(kr) dr for the position-space profiles of each family.
double radial_transform(FormFactorKind kind, double a, double k) {
  Integrand1D f;
  if (kind == FormFactorKind::gaussian) {
    const double norm = std::pow(kPi * a * a, -1.5);
    f = [=](double r) { return 4.0 * kPi * r * r * norm * std::exp(-r * r / (a * a)) * sph_j0(k * r); };
  } else {
    const double norm = 1.0 / (8.0 * kPi * a * a * a);
    f = [=](double r) { return 4.0 * kPi * r * r * norm * std::exp(-r / a) * sph_j0(k * r); };
  }
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-13;
  AxisOptions ax;
  ax.scale = a;
  if (k > 0.0) ax.half_period = kPi / k;
  auto q = integrate_semi_infinite(f, cfg, ax);
  REQUIRE(q.converged);
  return q.value;
}

ExtendedSource gaussian_static(double a) {
  return ExtendedSource(FormFactor::gaussian(a), Polarizability::static_alpha(1.0));
}

}  // namespace

TEST_SUITE("extsource") {

TEST_CASE("form factor values") {
  for (const FormFactor& ff : {FormFactor::point(), FormFactor::gaussian(0.7), FormFactor::lorentzian2(2.0)}) {
    CHECK(form_factor_value(ff, 0.0) == 1.0);
  }
  CHECK(form_factor_value(FormFactor::gaussian(1.0), 2.0) == doctest::Approx(0.3678794).epsilon(1e-7));
  CHECK(form_factor_value(FormFactor::point(), 123.0) == 1.0);
  CHECK(form_factor_value(FormFactor::lorentzian2(1.0), 1.0) == 0.25);

  CHECK(FormFactor::point().decay_exponent() == 0.0);
  CHECK(std::isinf(FormFactor::gaussian(1.0).decay_exponent()));
  CHECK(FormFactor::lorentzian2(1.0).decay_exponent() == 4.0);

  CHECK_THROWS_AS(FormFactor::gaussian(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FormFactor::lorentzian2(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(FormFactor::gaussian(NAN), std::invalid_argument);
}

TEST_CASE("form factors are the transforms of normalized profiles") {
  Gen g(51);
  for (int i = 0; i < 40; ++i) {
    const double a = g.log_uniform(0.1, 3.0);
    const double k = g.integer(0, 7) == 0 ? 0.0 : g.log_uniform(0.01, 4.0) / a;
    for (FormFactorKind kind : {FormFactorKind::gaussian, FormFactorKind::lorentzian2}) {
      const FormFactor ff = kind == FormFactorKind::gaussian ? FormFactor::gaussian(a) : FormFactor::lorentzian2(a);
      CHECK(std::abs(form_factor_value(ff, k) - radial_transform(kind, a, k)) <= 1e-10);
    }
  }
}

TEST_CASE("form factors are bounded and decreasing") {
  Gen g(52);
  for (int i = 0; i < 2000; ++i) {
    const double a = g.log_uniform(0.01, 10.0);
    const double k1 = g.log_uniform(1e-4, 1e3);
    const double k2 = k1 * g.uniform(1.0, 3.0);
    for (const FormFactor& ff : {FormFactor::gaussian(a), FormFactor::lorentzian2(a)}) {
      const double v1 = form_factor_value(ff, k1), v2 = form_factor_value(ff, k2);
      CHECK(v1 <= 1.0);
      CHECK(v2 >= 0.0);
      CHECK(v2 <= v1);
    }
  }
}

TEST_CASE("polarizability models") {
  const Polarizability s = Polarizability::static_alpha(2.5);
  CHECK(s.value(0.0) == 2.5);
  CHECK(s.value(1e6) == 2.5);
  CHECK(s.decay_exponent() == 0.0);

  const Polarizability r = Polarizability::rational(1.0, 2.0);
  CHECK(r.value(0.0) == 1.0);
  CHECK(r.value(2.0) == 0.5);
  CHECK(r.decay_exponent() == 2.0);
  double prev = r.value(0.0);
  for (double k = 0.1; k < 100.0; k *= 1.5) {
    CHECK(r.value(k) > 0.0);
    CHECK(r.value(k) < prev);
    prev = r.value(k);
  }
  CHECK_THROWS_AS(Polarizability::rational(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Polarizability::static_alpha(INFINITY), std::invalid_argument);
}

TEST_CASE("admissibility is checked at construction") {
  CHECK_THROWS_AS(ExtendedSource(FormFactor::point(), Polarizability::static_alpha(1.0)), InadmissibleSource);
  CHECK_THROWS_AS(ExtendedSource(FormFactor::point(), Polarizability::rational(1.0, 2.0)), InadmissibleSource);
  CHECK_NOTHROW(ExtendedSource(FormFactor::gaussian(0.5), Polarizability::static_alpha(1.0)));
  CHECK_NOTHROW(ExtendedSource(FormFactor::lorentzian2(0.5), Polarizability::static_alpha(1.0)));
  CHECK_NOTHROW(ExtendedSource(FormFactor::lorentzian2(0.5), Polarizability::rational(1.0, 2.0)));

  const ExtendedSource src(FormFactor::lorentzian2(0.5), Polarizability::rational(1.0, 1.0));
  CHECK(src.describe() == "lorentzian2:0.5 rational:1:1");
  CHECK(src.size() == 1.0);
  CHECK_FALSE(src.is_point());
  CHECK(ExtendedSource::regulated_point(Polarizability::static_alpha(1.0)).is_point());
}

TEST_CASE("regulated point source reproduces the closed forms") {
  const ExtendedSource p = ExtendedSource::regulated_point(Polarizability::static_alpha(1.0));
  const ExtendedDensities d = extended_densities(p, 1.0);
  CHECK(std::abs(d.electric.value - closed_electric_density(1.0)) <= 1e-9);
  CHECK(std::abs(d.magnetic.value - closed_magnetic_density(1.0)) <= 1e-9);
  CHECK(std::abs(d.electric.value - 0.145649) <= 1e-6);
  CHECK((d.electric.converged || d.electric.roundoff_limited));

  const ExtendedSource half = ExtendedSource::regulated_point(Polarizability::static_alpha(0.5));
  const QuadratureResult e2 = extended_density(half, 2.0, Component::electric);
  CHECK(rel_diff(e2.value, 0.5 * closed_electric_density(2.0)) <= 1e-8);

  CHECK_THROWS_AS(extended_density(p, 0.0, Component::electric), std::domain_error);
  CHECK_THROWS_AS(extended_density(gaussian_static(0.5), -1.0, Component::electric), std::domain_error);
}

TEST_CASE("rational point source matches the small Gaussian limit") {
  const Polarizability alpha = Polarizability::rational(1.0, 2.0);
  const QuadratureResult p =
      extended_density(ExtendedSource::regulated_point(alpha), 1.0, Component::electric);
  CHECK((p.converged || p.roundoff_limited));
  CHECK(p.abs_error_estimate <= 1e-7 * std::abs(p.value));

  // Richardson table in a^2 over halving sizes.
  std::vector<double> t;
  for (double a : {0.2, 0.1, 0.05, 0.025}) {
    const QuadratureResult q = extended_density(ExtendedSource(FormFactor::gaussian(a), alpha), 1.0,
                                                Component::electric);
    REQUIRE(q.converged);
    t.push_back(q.value);
  }
  double f = 4.0;
  while (t.size() > 1) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) t[i] = (f * t[i + 1] - t[i]) / (f - 1.0);
    t.pop_back();
    f *= 4.0;
  }
  CHECK(rel_diff(p.value, t[0]) <= 1e-7);
  CHECK(p.value < closed_electric_density(1.0));
}

TEST_CASE("evaluation routes agree at the source centre") {
  const ExtendedSource src = gaussian_static(0.5);
  const QuadratureResult eta = extended_density(src, 0.0, Component::electric, {}, DensityRoute::eta_decoupled);
  const QuadratureResult dir = extended_density(src, 0.0, Component::electric, {}, DensityRoute::direct_2d);
  REQUIRE(eta.converged);
  REQUIRE(dir.converged);
  CHECK(std::isfinite(eta.value));
  CHECK(eta.value > 0.0);
  CHECK(rel_diff(eta.value, dir.value) <= 1e-8);

  const QuadratureResult m = extended_density(src, 0.0, Component::magnetic);
  CHECK(std::abs(m.value) <= 1e-12 * eta.value);

  const QuadratureResult em = extended_density(src, 0.8, Component::magnetic, {}, DensityRoute::eta_decoupled);
  const QuadratureResult dm = extended_density(src, 0.8, Component::magnetic, {}, DensityRoute::direct_2d);
  CHECK(rel_diff(em.value, dm.value) <= 1e-8);
}

TEST_CASE("densities are finite and continuous near the source") {
  for (const ExtendedSource& src : {gaussian_static(0.5), ExtendedSource(FormFactor::lorentzian2(0.5),
                                                                           Polarizability::static_alpha(1.0))}) {
    const double a = src.form_factor().a;
    for (int i = 0; i <= 20; ++i) {
      const ExtendedDensities d = extended_densities(src, 5.0 * a * i / 20.0);
      CHECK(d.electric.converged);
      CHECK(d.magnetic.converged);
      CHECK(std::isfinite(d.electric.value));
      CHECK(std::isfinite(d.magnetic.value));
    }
    const double centre = extended_density(src, 0.0, Component::electric).value;
    for (double R : {0.0, a, 3.0 * a}) {
      const double u = extended_density(src, R, Component::electric).value;
      double prev = INFINITY;
      for (double delta = 1e-2 * a; delta > 1e-6 * a; delta *= 0.1) {
        const double jump = std::abs(extended_density(src, R + delta, Component::electric).value - u);
        CHECK(jump < prev);
        prev = jump;
      }
      CHECK(prev <= 1e-3 * centre);
    }
  }
}

TEST_CASE("small sources approach the point-like densities") {
  const double R = 1.0;
  std::vector<double> dev;
  for (double a : {0.4, 0.2, 0.1, 0.05}) {
    const QuadratureResult q = extended_density(gaussian_static(a), R, Component::electric);
    REQUIRE(q.converged);
    dev.push_back(std::abs(q.value - closed_electric_density(R)));
  }
  for (std::size_t i = 0; i + 1 < dev.size(); ++i) {
    CHECK(dev[i + 1] < dev[i]);
    CHECK(std::log2(dev[i] / dev[i + 1]) >= 1.0);
  }
  CHECK(dev.back() <= 1e-3);
}

TEST_CASE("structure stops mattering far from the source") {
  // Relative difference from the point-like density as R grows from 10 to 30 source sizes.
  const std::vector<ExtendedSource> sources{
      gaussian_static(0.2), ExtendedSource(FormFactor::lorentzian2(0.2), Polarizability::static_alpha(1.0)),
      ExtendedSource(FormFactor::gaussian(0.2), Polarizability::rational(1.0, 2.0))};
  for (const ExtendedSource& src : sources) {
    double prev = INFINITY;
    for (double f : {10.0, 15.0, 20.0, 30.0}) {
      const double R = f * src.size();
      const QuadratureResult q = extended_density(src, R, Component::electric);
      REQUIRE(q.converged);
      const double excess = std::abs(q.value / closed_electric_density(R) - 1.0);
      CHECK(excess < prev);
      prev = excess;
    }
    CHECK(prev <= 0.03);
  }
  // Gaussian smearing of a static source raises the density outside it.
  for (double R : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(extended_density(gaussian_static(0.2), R, Component::electric).value >= closed_electric_density(R));
  }
}

TEST_CASE("radial kernel integrals cancel") {
  for (auto [k, kp] : {std::pair{1.0, 2.0}, std::pair{1.0, 1.0}, std::pair{3.0, 0.5}}) {
    const CancellationResult c = kernel_radial_cancellation(k, kp);
    CHECK(c.converged);
    CHECK(std::abs(c.value) <= 1e-7);
    CHECK(c.samples.size() >= 3);
  }
  CHECK_THROWS_AS(kernel_radial_cancellation(0.0, 1.0), std::domain_error);
  const std::vector<double> two{0.01, 0.005};
  CHECK_THROWS_AS(kernel_radial_cancellation(1.0, 2.0, {}, two), std::invalid_argument);
  const std::vector<double> rising{0.001, 0.002, 0.004};
  CHECK_THROWS_AS(kernel_radial_cancellation(1.0, 2.0, {}, rising), std::invalid_argument);
}

TEST_CASE("global energy of a Gaussian source cancels") {
  const ExtendedGlobalReport g = extended_global_energy(gaussian_static(0.5));
  CHECK(g.converged);
  CHECK(g.electric_total > 0.0);
  CHECK(g.magnetic_total < 0.0);
  CHECK(std::abs(-g.magnetic_total / g.electric_total - 1.0) <= 1e-6);
  CHECK(g.relative_total <= 1e-6);
  CHECK(g.r_max.size() == 3);
  CHECK(g.damping.size() == 3);

  const ExtendedSource p = ExtendedSource::regulated_point(Polarizability::static_alpha(1.0));
  CHECK_THROWS_AS(extended_global_energy(p), std::domain_error);
}

TEST_CASE("evaluations are deterministic") {
  const ExtendedSource src(FormFactor::lorentzian2(0.3), Polarizability::rational(1.0, 3.0));
  const QuadratureResult a = extended_density(src, 0.7, Component::magnetic);
  const QuadratureResult b = extended_density(src, 0.7, Component::magnetic);
  CHECK(a.value == b.value);
  CHECK(a.abs_error_estimate == b.abs_error_estimate);
  CHECK(a.evaluations == b.evaluations);

  const ExtendedDensities d = extended_densities(src, 0.7);
  CHECK(d.magnetic.value == a.value);
}

}  // TEST_SUITE
