#include "vacuum/pointlike.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vacuum {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi3 = kPi * kPi * kPi;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// 24-point Gauss-Legendre rule on [-1, 1], computed once by Newton iteration.
struct GaussLegendre {
  static constexpr int kN = 24;
  std::array<double, kN> x{};
  std::array<double, kN> w{};

  GaussLegendre() {
    for (int i = 0; i < kN; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (kN + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (int n = 2; n <= kN; ++n) {
          const double p2 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p0) / n;
          p0 = p1;
          p1 = p2;
        }
        dp = kN * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-17) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

// With s = r cot(theta) the cutoff integrals become
//   \int_gamma^\infty s^{2m} / (s^2 + r^2)^6 ds = r^{2m-11} \int_0^phi cos^{2m} sin^{10-2m} d theta,
// phi = atan(r / gamma), with a positive smooth integrand for every r/gamma.
template <class F>
double angle_integral(double phi, F f) {
  const auto& gl = gauss_legendre();
  double sum = 0.0;
  for (int i = 0; i < GaussLegendre::kN; ++i) {
    const double t = 0.5 * phi * (gl.x[i] + 1.0);
    sum += gl.w[i] * f(std::sin(t), std::cos(t));
  }
  return 0.5 * phi * sum;
}

double electric_angle(double phi) {
  return angle_integral(phi, [](double s, double c) {
    const double s2 = s * s;
    const double c2 = c * c;
    return s2 * s2 * s2 * (3.0 * c2 * c2 - 2.0 * c2 * s2 + 3.0 * s2 * s2);
  });
}

double magnetic_angle(double phi) {
  return angle_integral(phi, [](double s, double c) {
    const double s2 = s * s;
    return c * c * s2 * s2 * s2 * s2;
  });
}

// Below this r/gamma the leading small-r terms are exact to double precision.
constexpr double kTinyRatio = 1e-8;

double pow7(double x) {
  const double x2 = x * x;
  return x2 * x2 * x2 * x;
}

}  // namespace

const char* to_string(Component c) { return c == Component::electric ? "electric" : "magnetic"; }

double closed_electric_density(double r) {
  require(r > 0.0 && std::isfinite(r), "closed_electric_density: requires r > 0");
  return 23.0 / (16.0 * kPi * kPi) / pow7(r);
}

double closed_magnetic_density(double r) {
  require(r > 0.0 && std::isfinite(r), "closed_magnetic_density: requires r > 0");
  return -7.0 / (16.0 * kPi * kPi) / pow7(r);
}

double closed_density(double r, Component c) {
  return c == Component::electric ? closed_electric_density(r) : closed_magnetic_density(r);
}

QuadratureResult eta_repr_density(double r, Component c, const QuadratureConfig& config) {
  require(r > 0.0 && std::isfinite(r), "eta_repr_density: requires r > 0");
  const double r2 = r * r;
  Integrand1D f;
  if (c == Component::electric) {
    f = [r2](double eta) {
      const double e2 = eta * eta;
      const double d = r2 + e2;
      const double d3 = d * d * d;
      return 4.0 / kPi3 * (3.0 * r2 * r2 - 2.0 * r2 * e2 + 3.0 * e2 * e2) / (d3 * d3);
    };
  } else {
    f = [r2](double eta) {
      const double e2 = eta * eta;
      const double d = r2 + e2;
      const double d3 = d * d * d;
      return -4.0 / kPi3 * 8.0 * r2 * e2 / (d3 * d3);
    };
  }
  AxisOptions axis;
  axis.scale = r;
  return integrate_semi_infinite(f, config, axis);
}

double regularized_I(double r, double gamma) {
  require(r > 0.0 && std::isfinite(r) && gamma > 0.0 && std::isfinite(gamma),
          "regularized_I: requires r > 0 and gamma > 0");
  if (r < 0.5 * gamma) {
    // The printed terms cancel to many digits here; use the angle form.
    if (r < kTinyRatio * gamma) return 64.0 * r * r / 9.0 / std::pow(gamma, 9);
    return 64.0 * magnetic_angle(std::atan2(r, gamma)) / pow7(r);
  }
  const double r2 = r * r;
  const double r4 = r2 * r2;
  const double r6 = r4 * r2;
  const double d = r2 + gamma * gamma;
  const double d2 = d * d;
  const double d3 = d2 * d;
  const double d4 = d2 * d2;
  const double d5 = d4 * d;
  const double tail = std::atan2(r, gamma) / r;  // \int_gamma^\infty d mu / (r^2 + mu^2)
  return 32.0 / 5.0 * r2 * gamma / d5 - 4.0 / 5.0 * gamma / d4 - 14.0 / 15.0 * gamma / (r2 * d3) -
         7.0 / 6.0 * gamma / (r4 * d2) - 7.0 / 4.0 * gamma / (r6 * d) + 7.0 / 4.0 / r6 * tail;
}

double regularized_density(double r, double gamma, Component c) {
  require(gamma > 0.0 && std::isfinite(gamma), "regularized_density: requires gamma > 0");
  require(r >= 0.0 && std::isfinite(r), "regularized_density: requires r >= 0");
  if (r < kTinyRatio * gamma) {
    if (c == Component::electric) return 12.0 / (7.0 * kPi3 * pow7(gamma));
    return -32.0 / kPi3 * r * r / (9.0 * std::pow(gamma, 9));
  }
  const double phi = std::atan2(r, gamma);
  if (c == Component::electric) return 4.0 / kPi3 * electric_angle(phi) / pow7(r);
  return -32.0 / kPi3 * magnetic_angle(phi) / pow7(r);
}

GlobalEnergyReport global_energy(const CutoffParams& regulator) {
  require(regulator.eta_m > 0.0 && std::isfinite(regulator.eta_m), "global_energy: regulator must be positive");
  const double e2 = regulator.eta_m * regulator.eta_m;
  GlobalEnergyReport rep;
  rep.regulator = regulator;
  rep.electric_total = 3.0 / (16.0 * kPi * e2 * e2);
  rep.magnetic_total = -rep.electric_total;
  rep.sum_total = rep.electric_total + rep.magnetic_total;
  return rep;
}

RadialIntegral regularized_space_integral(double gamma, const QuadratureConfig& config) {
  require(gamma > 0.0 && std::isfinite(gamma), "regularized_space_integral: requires gamma > 0");
  AxisOptions axis;
  axis.scale = gamma;
  auto weight = [](double r) { return 4.0 * kPi * r * r; };
  RadialIntegral out;
  out.electric = integrate_semi_infinite(
      [&](double r) { return weight(r) * regularized_density(r, gamma, Component::electric); }, config, axis);
  out.magnetic = integrate_semi_infinite(
      [&](double r) { return weight(r) * regularized_density(r, gamma, Component::magnetic); }, config, axis);
  // The total cancels; resolve it to a small fraction of the component size.
  QuadratureConfig total_cfg = config;
  total_cfg.abs_tol = std::max(config.abs_tol, 1e-2 * config.rel_tol * std::abs(out.electric.value));
  out.total = integrate_semi_infinite(
      [&](double r) {
        return weight(r) * (regularized_density(r, gamma, Component::electric) +
                            regularized_density(r, gamma, Component::magnetic));
      },
      total_cfg, axis);
  return out;
}

double SingularExpansion::unit() { return 1.0 / (16.0 * kPi * kPi); }

double SingularExpansion::coefficient(int derivative_order, int inverse_power) const {
  for (const auto& t : delta_terms) {
    if (t.derivative_order == derivative_order && t.inverse_power == inverse_power) {
      return t.coefficient.value() * unit();
    }
  }
  throw std::out_of_range("no delta term with derivative order " + std::to_string(derivative_order) +
                          " and inverse power " + std::to_string(inverse_power));
}

SingularExpansion singular_expansion(Component c) {
  SingularExpansion e;
  e.component = c;
  if (c == Component::electric) {
    e.regular = {23, 1};
    e.delta_terms = {{0, 6, {-23, 1}}, {1, 5, {10, 1}}, {2, 4, {-7, 3}}, {3, 3, {1, 3}}, {4, 2, {1, 15}}};
  } else {
    e.regular = {-7, 1};
    e.delta_terms = {{0, 6, {7, 1}}, {1, 5, {-2, 1}}, {2, 4, {-1, 3}}, {3, 3, {1, 3}}, {4, 2, {1, 15}}};
  }
  return e;
}

SingularRow singular_row(double gamma, const QuadratureConfig& config, double tolerance) {
  SingularRow row;
  row.gamma = gamma;
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    row.failure = "gamma must be positive";
    return row;
  }
  row.expected_electric = 3.0 / (16.0 * kPi * gamma * gamma * gamma * gamma);
  try {
    row.integrals = regularized_space_integral(gamma, config);
    const auto& I = row.integrals;
    if (!I.electric.converged || !I.magnetic.converged || !I.total.converged) {
      const auto& bad = !I.electric.converged ? I.electric : (!I.magnetic.converged ? I.magnetic : I.total);
      row.failure = "quadrature did not converge: " + bad.diagnostic;
    } else if (std::abs(I.total.value) > tolerance) {
      row.failure = "total does not cancel";
    } else if (std::abs(I.electric.value - row.expected_electric) > tolerance * row.expected_electric) {
      row.failure = "electric total differs from 3/(16 pi gamma^4)";
    }
  } catch (const std::exception& ex) {
    row.failure = ex.what();
  }
  row.ok = row.failure.empty();
  return row;
}

SingularReport verify_singular_cancellation(std::span<const double> gammas, const QuadratureConfig& config,
                                            double tolerance) {
  if (gammas.size() < 3) throw std::invalid_argument("need at least 3 gamma values");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0) || !std::isfinite(gammas[i])) throw std::invalid_argument("gamma values must be positive");
    if (i > 0 && !(gammas[i] < gammas[i - 1])) throw std::invalid_argument("gamma values must be strictly decreasing");
  }
  SingularReport rep;
  rep.tolerance = tolerance;
  rep.all_cancel = true;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double g : gammas) {
    SingularRow row = singular_row(g, config, tolerance);
    if (!row.ok) rep.all_cancel = false;
    if (row.integrals.electric.converged && row.integrals.electric.value > 0.0) {
      const double x = std::log(g);
      const double y = std::log(row.integrals.electric.value);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    rep.rows.push_back(std::move(row));
  }
  if (n >= 2) {
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.fit_exponent = -slope;
    rep.fit_coefficient = std::exp((sy - slope * sx) / n);
    rep.fit_valid = true;
  }
  return rep;
}

}  // namespace vacuum
