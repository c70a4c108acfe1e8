#pragma once

// Energy densities around a point-like polarizable source.
//
// Natural units hbar = c = 1 and a unit polarizability; every density is a
// multiple of alpha*hbar*c and lengths are dimensionless.

#include <span>
#include <string>
#include <vector>

#include "vacuum/quadrature.hpp"

namespace vacuum {

enum class Component { electric, magnetic };

const char* to_string(Component c);

struct CutoffParams {
  double gamma = 0.0;  // exponential frequency cutoff scale
  double eta_m = 0.0;  // lower limit of the eta integral
};

// 23/(16 pi^2) / r^7. Throws std::domain_error unless r > 0.
double closed_electric_density(double r);
// -7/(16 pi^2) / r^7. Throws std::domain_error unless r > 0.
double closed_magnetic_density(double r);
double closed_density(double r, Component c);

// Numerical evaluation of the single-eta representation
//   electric:  (4/pi^3) \int (3r^4 - 2r^2 eta^2 + 3 eta^4) / (r^2 + eta^2)^6 d eta
//   magnetic: -(4/pi^3) \int 8 r^2 eta^2 / (r^2 + eta^2)^6 d eta
// The result's value and error estimate are in density units.
QuadratureResult eta_repr_density(double r, Component c, const QuadratureConfig& config = {});

// I(r, gamma) = \int\int j1(kr) j1(k'r) k^3 k'^3 / (k + k') e^{-gamma(k+k')} dk dk'
//             = 64 r^2 \int_gamma^\infty mu^2 / (r^2 + mu^2)^6 d mu,
// evaluated from its six-term closed form. Throws std::domain_error unless
// r > 0 and gamma > 0.
double regularized_I(double r, double gamma);

// Densities with the frequency cutoff e^{-gamma(k+k')}. Finite for all r >= 0.
// The magnetic branch equals -regularized_I / (2 pi^3). Throws
// std::domain_error unless gamma > 0 and r >= 0.
double regularized_density(double r, double gamma, Component c);

struct GlobalEnergyReport {
  double electric_total = 0.0;
  double magnetic_total = 0.0;
  double sum_total = 0.0;
  CutoffParams regulator;
};

// Closed-form space integrals with eta >= eta_m: electric 3/(16 pi eta_m^4),
// magnetic its negative. Throws std::domain_error unless eta_m > 0.
GlobalEnergyReport global_energy(const CutoffParams& regulator);

struct RadialIntegral {
  QuadratureResult electric;
  QuadratureResult magnetic;
  QuadratureResult total;  // integral of the summed density, not the sum of integrals
};

// \int_0^\infty 4 pi r^2 regularized_density(r, gamma, .) dr, by quadrature.
RadialIntegral regularized_space_integral(double gamma, const QuadratureConfig& config = {});

struct Rational {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// coefficient/(4 pi)^2 * delta^{(derivative_order)}(r) / r^{inverse_power}
struct DeltaTerm {
  int derivative_order = 0;
  int inverse_power = 0;
  Rational coefficient;
};

// Density near the source as  regular/(4 pi)^2 / r^7  plus delta-derivative terms.
struct SingularExpansion {
  Component component = Component::electric;
  Rational regular;
  std::vector<DeltaTerm> delta_terms;

  static double unit();  // 1/(4 pi)^2
  double regular_coeff() const { return regular.value() * unit(); }
  // Coefficient of the (n, m) term including 1/(4 pi)^2; throws std::out_of_range if absent.
  double coefficient(int derivative_order, int inverse_power) const;
};

SingularExpansion singular_expansion(Component c);

struct SingularRow {
  double gamma = 0.0;
  bool ok = false;
  std::string failure;  // empty when ok
  RadialIntegral integrals;
  double expected_electric = 0.0;  // 3/(16 pi gamma^4)
};

struct SingularReport {
  std::vector<SingularRow> rows;
  // Least-squares fit of the electric totals to C * gamma^{-p} over the rows that succeeded.
  double fit_exponent = 0.0;
  double fit_coefficient = 0.0;
  bool fit_valid = false;
  bool all_cancel = false;  // every row converged with |total| within tolerance
  double tolerance = 0.0;
};

// Space integrals at one gamma, checked against cancellation and the
// 3/(16 pi gamma^4) electric total. Failures are recorded in the row.
SingularRow singular_row(double gamma, const QuadratureConfig& config = {}, double tolerance = 1e-8);

// Space integrals of the regularized densities for each gamma. A failing gamma
// is reported in its row and the remaining ones are still computed. Throws
// std::invalid_argument for fewer than three values or a sequence that is not
// strictly decreasing and positive.
SingularReport verify_singular_cancellation(std::span<const double> gammas, const QuadratureConfig& config = {},
                                            double tolerance = 1e-8);

}  // namespace vacuum
