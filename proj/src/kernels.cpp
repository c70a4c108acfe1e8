#include "vacuum/kernels.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vacuum {
namespace {

constexpr double kJ0SeriesLimit = 1e-2;
constexpr double kJ1SeriesLimit = 1.0;

// Sum of t_0 + t_1 + ... where t_{n+1} = t_n * (-x^2) / ((2n + a)(2n + b)).
double bessel_series(double first, double x2, double a, double b) {
  double term = first;
  double sum = first;
  for (int n = 0; n < 40; ++n) {
    term *= -x2 / ((2.0 * n + a) * (2.0 * n + b));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

void require_positive(double s, double r, const char* name) {
  if (!(s > 0.0) || !(r > 0.0) || !std::isfinite(s) || !std::isfinite(r)) {
    throw std::domain_error(std::string(name) + ": requires s > 0 and r > 0");
  }
}

}  // namespace

double sph_j0(double x) {
  if (std::abs(x) < kJ0SeriesLimit) {
    // 1 - x^2/3! + x^4/5! - ...
    return bessel_series(1.0, x * x, 2.0, 3.0);
  }
  return std::sin(x) / x;
}

double sph_j1_over_x(double x) {
  if (std::abs(x) < kJ1SeriesLimit) {
    // sum_n (-1)^n (2n+2) x^{2n} / (2n+3)!
    return bessel_series(1.0 / 3.0, x * x, 2.0, 5.0);
  }
  return (std::sin(x) / x - std::cos(x)) / (x * x);
}

double sph_j1(double x) {
  if (std::abs(x) < kJ1SeriesLimit) return x * sph_j1_over_x(x);
  return (std::sin(x) / x - std::cos(x)) / x;
}

bool KernelArgs::valid() const {
  return std::isfinite(k) && std::isfinite(k_prime) && std::isfinite(r) && k >= 0.0 &&
         k_prime >= 0.0 && r >= 0.0;
}

double kernel_qe(const KernelArgs& args) {
  assert(args.valid());
  if (args.r == 0.0) return 2.0 / 3.0;
  const double x = args.k * args.r;
  const double y = args.k_prime * args.r;
  const double j0x = sph_j0(x);
  const double j0y = sph_j0(y);
  const double qx = sph_j1_over_x(x);
  const double qy = sph_j1_over_x(y);
  return j0x * j0y - j0x * qy - qx * j0y + 3.0 * qx * qy;
}

double kernel_qm(const KernelArgs& args) {
  assert(args.valid());
  return 2.0 * sph_j1(args.k * args.r) * sph_j1(args.k_prime * args.r);
}

double laplace_k3_j1(double s, double r) {
  require_positive(s, r, "laplace_k3_j1");
  const double d = s * s + r * r;
  return 8.0 * r * s / (d * d * d);
}

double laplace_k3_j0(double s, double r) {
  require_positive(s, r, "laplace_k3_j0");
  const double d = s * s + r * r;
  return 2.0 * (3.0 * s * s - r * r) / (d * d * d);
}

double laplace_k2_j1(double s, double r) {
  require_positive(s, r, "laplace_k2_j1");
  const double d = s * s + r * r;
  return 2.0 * r / (d * d);
}

}  // namespace vacuum
