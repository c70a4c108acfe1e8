#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "vacuum/extrapolation.hpp"
#include "vacuum/pointlike.hpp"

using namespace vacuum;
using testing::Gen;
using testing::kPi;

TEST_SUITE("extrapolation") {

TEST_CASE("exact polynomial is recovered") {
  const std::vector<Sample> s{{0.4, 3.0 + 0.16}, {0.2, 3.0 + 0.04}, {0.1, 3.0 + 0.01}};
  const Extrapolated e = extrapolate_to_zero(s, 2);
  CHECK(std::abs(e.value - 3.0) <= 1e-10);
  CHECK(e.error_estimate >= 0.0);
}

TEST_CASE("random polynomials of the model degree are reproduced") {
  Gen g(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int order = g.integer(1, 4);
    const ExtrapolationModel model{g.integer(1, 3), g.integer(1, 2)};
    std::vector<double> c(order + 1);
    for (double& x : c) x = g.uniform(-2.0, 2.0);
    std::vector<Sample> samples;
    double h = g.uniform(0.1, 0.5);
    for (int i = 0; i < order + 2; ++i, h *= 0.5) {
      double v = c[0];
      for (int j = 0; j < order; ++j) v += c[j + 1] * std::pow(h, model.first_power + j * model.step);
      samples.push_back({h, v});
    }
    const Extrapolated e = extrapolate_to_zero(samples, order, model);
    CHECK(std::abs(e.value - c[0]) <= 1e-9 * (1.0 + std::abs(c[0])));
  }
}

TEST_CASE("cutoff integral extrapolates to its regular part") {
  std::vector<Sample> s;
  for (double g : {0.2, 0.1, 0.05, 0.025}) s.push_back({g, regularized_I(1.0, g)});
  const Extrapolated e = extrapolate_to_zero(s, 3, {3, 2});
  CHECK(std::abs(e.value - 7.0 * kPi / 8.0) <= 1e-6);
  CHECK(e.error_estimate < 1e-5);

  std::vector<Sample> d;
  for (double g : {0.2, 0.1, 0.05, 0.025}) d.push_back({g, regularized_density(1.0, g, Component::electric)});
  const Extrapolated de = extrapolate_to_zero(d, 3, {1, 2});
  CHECK(de.value == doctest::Approx(0.1456495).epsilon(1e-6));
}

TEST_CASE("longer sequences estimate the error from the preceding window") {
  std::vector<Sample> s;
  for (double h = 0.8; h > 0.04; h *= 0.5) s.push_back({h, 1.0 + h + std::exp(-1.0 / h)});
  const Extrapolated e = extrapolate_to_zero(s, 2);
  CHECK(std::abs(e.value - 1.0) <= e.error_estimate + 1e-12);
}

TEST_CASE("invalid sample sets are rejected") {
  const std::vector<Sample> two{{0.2, 1.0}, {0.1, 1.0}};
  CHECK_THROWS_AS(extrapolate_to_zero(two, 2), std::invalid_argument);
  const std::vector<Sample> rising{{0.1, 1.0}, {0.2, 1.0}, {0.4, 1.0}};
  CHECK_THROWS_AS(extrapolate_to_zero(rising, 2), std::invalid_argument);
  const std::vector<Sample> repeated{{0.2, 1.0}, {0.2, 1.0}, {0.1, 1.0}};
  CHECK_THROWS_AS(extrapolate_to_zero(repeated, 2), std::invalid_argument);
  const std::vector<Sample> negative{{0.2, 1.0}, {0.1, 1.0}, {-0.1, 1.0}};
  CHECK_THROWS_AS(extrapolate_to_zero(negative, 2), std::invalid_argument);
  const std::vector<Sample> nan{{0.2, 1.0}, {0.1, NAN}, {0.05, 1.0}};
  CHECK_THROWS_AS(extrapolate_to_zero(nan, 2), std::invalid_argument);
  const std::vector<Sample> ok{{0.2, 1.0}, {0.1, 1.0}, {0.05, 1.0}};
  CHECK(extrapolate_to_zero(ok, 0).value == 1.0);
  CHECK_THROWS_AS(extrapolate_to_zero(ok, 2, {0, 1}), std::invalid_argument);
}

}  // TEST_SUITE
