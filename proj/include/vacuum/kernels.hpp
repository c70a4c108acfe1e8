#pragma once

// Spherical-Bessel angular kernels and the closed-form Laplace transforms
// that every density evaluator is built from. All functions are pure.

namespace vacuum {

// sin(x)/x, with a series branch near the origin.
double sph_j0(double x);

// sin(x)/x^2 - cos(x)/x, with a series branch for x < 1.
double sph_j1(double x);

// j1(x)/x; tends to 1/3 at the origin.
double sph_j1_over_x(double x);

struct KernelArgs {
  double k = 0.0;        // wavenumber
  double k_prime = 0.0;  // wavenumber
  double r = 0.0;        // radial distance

  // All fields finite and non-negative.
  bool valid() const;
};

/// Electric angular kernel
///   j0(kr) j0(k'r) - j0(kr) j1(k'r)/(k'r) - j1(kr)/(kr) j0(k'r) + 3 j1(kr) j1(k'r)/(k k' r^2).
/// The r = 0 limit is 2/3 for all k, k'.
///
/// Note that the electric energy density pairs 2*kernel_qe with kernel_qm under a
/// common prefactor; see electric_kernel_weight.
double kernel_qe(const KernelArgs& args);

/// Magnetic angular kernel 2 j1(kr) j1(k'r).
double kernel_qm(const KernelArgs& args);

/// Factor multiplying kernel_qe wherever electric and magnetic densities share
/// the same double-wavenumber prefactor.
inline constexpr double electric_kernel_weight = 2.0;

// Closed forms of the damped transforms  \int_0^\infty k^n j_l(kr) e^{-sk} dk.
// All throw std::domain_error unless s > 0 and r > 0.

/// \int k^3 j1(kr) e^{-sk} dk = 8 r s / (r^2 + s^2)^3
double laplace_k3_j1(double s, double r);

/// \int k^3 j0(kr) e^{-sk} dk = 2 (3 s^2 - r^2) / (s^2 + r^2)^3
double laplace_k3_j0(double s, double r);

/// \int k^2 j1(kr) e^{-sk} dk = 2 r / (s^2 + r^2)^2
double laplace_k2_j1(double s, double r);

}  // namespace vacuum
