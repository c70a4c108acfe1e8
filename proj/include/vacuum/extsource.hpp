#pragma once

// Energy densities around an extended polarizable source, described by a
// spherically symmetric form factor rho(k) and a polarizability alpha(k).

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vacuum/extrapolation.hpp"
#include "vacuum/pointlike.hpp"
#include "vacuum/quadrature.hpp"

namespace vacuum {

enum class FormFactorKind { point, gaussian, lorentzian2 };

struct FormFactor {
  FormFactorKind kind = FormFactorKind::point;
  double a = 0.0;  // size scale; 0 for the point kind

  static FormFactor point();
  // exp(-k^2 a^2 / 4). Throws std::invalid_argument unless a > 0.
  static FormFactor gaussian(double a);
  // 1 / (1 + k^2 a^2)^2. Throws std::invalid_argument unless a > 0.
  static FormFactor lorentzian2(double a);

  // Power of 1/k at large k; infinity for the Gaussian.
  double decay_exponent() const;
};

double form_factor_value(const FormFactor& ff, double k);

enum class PolarizabilityKind { static_alpha, rational };

struct Polarizability {
  PolarizabilityKind kind = PolarizabilityKind::static_alpha;
  double alpha0 = 1.0;
  double k0 = 0.0;  // rational kind only

  static Polarizability static_alpha(double alpha0);
  // alpha0 k0^2 / (k0^2 + k^2). Throws std::invalid_argument unless k0 > 0.
  static Polarizability rational(double alpha0, double k0);

  double value(double k) const;
  double decay_exponent() const;
};

class InadmissibleSource : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ExtendedSource {
 public:
  // Throws InadmissibleSource unless the combined large-k decay of
  // alpha(k) rho(k) exceeds 2 powers of k.
  ExtendedSource(FormFactor ff, Polarizability alpha);

  // A point source. Its densities are defined as the limit of an auxiliary
  // cutoff rho = e^{-gamma k} as gamma -> 0 and exist only for R > 0.
  static ExtendedSource regulated_point(Polarizability alpha);

  const FormFactor& form_factor() const { return ff_; }
  const Polarizability& polarizability() const { return alpha_; }
  bool is_point() const { return ff_.kind == FormFactorKind::point; }
  // Length over which the densities vary near the source.
  double size() const;
  std::string describe() const;

 private:
  ExtendedSource(FormFactor ff, Polarizability alpha, bool);
  FormFactor ff_;
  Polarizability alpha_;
};

enum class DensityRoute { eta_decoupled, direct_2d };

// Electric or magnetic density at distance R, in units of hbar c times the
// polarizability unit. Finite for all R >= 0 when the form factor has a > 0.
// Point sources throw std::domain_error at R = 0.
QuadratureResult extended_density(const ExtendedSource& source, double R, Component c,
                                  const QuadratureConfig& config = {},
                                  DensityRoute route = DensityRoute::eta_decoupled);

struct ExtendedDensities {
  QuadratureResult electric;
  QuadratureResult magnetic;
};

// Both components from one eta integration (shared transforms).
ExtendedDensities extended_densities(const ExtendedSource& source, double R, const QuadratureConfig& config = {});

struct ExtendedGlobalReport {
  double electric_total = 0.0;
  double magnetic_total = 0.0;
  double total = 0.0;  // extrapolated integral of the summed density
  double error_estimate = 0.0;
  double relative_total = 0.0;  // |total| / electric_total
  bool converged = false;
  std::string diagnostic;
  std::vector<double> r_max;  // radial cutoffs used
  std::vector<double> damping;  // eps values used
};

struct GlobalEnergyOptions {
  // Largest radial cutoff; 0 picks 40 source sizes. Cutoffs R_max/4, R_max/2, R_max are used.
  double r_max = 0.0;
  // Damping values; empty picks {0.1, 0.05, 0.025} / R_max.
  std::vector<double> damping;
};

// \int 4 pi R^2 [u_el + u_mag] dR with e^{-eps R} damping, extrapolated to
// eps -> 0 and R_max -> infinity. Throws std::domain_error for point sources.
ExtendedGlobalReport extended_global_energy(const ExtendedSource& source, const QuadratureConfig& config = {},
                                            const GlobalEnergyOptions& options = {});

struct CancellationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::vector<Sample> samples;  // (eps, damped integral)
  bool converged = false;
  std::string diagnostic;
};

// \int_0^\infty 4 pi r^2 e^{-eps r} (w Q_E - Q_M) dr extrapolated to eps = 0,
// where w is electric_kernel_weight. Throws std::domain_error unless k, k' > 0
// and std::invalid_argument for fewer than 3 or non-decreasing eps values.
CancellationResult kernel_radial_cancellation(double k, double k_prime, const QuadratureConfig& config = {},
                                              std::span<const double> eps_sequence = {});

}  // namespace vacuum
