#include "vacuum/extrapolation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace vacuum {
namespace {

// Constant term of the fit interpolating `s` exactly.
double fit_constant(std::span<const Sample> s, std::size_t order, ExtrapolationModel model) {
  const std::size_t n = order + 1;
  std::vector<double> m(n * n);
  std::vector<double> rhs(n);
  // Scale h so the basis columns stay O(1).
  const double h0 = s.front().h;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = s[i].h / h0;
    m[i * n] = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
      m[i * n + j] = std::pow(t, model.first_power + static_cast<int>(j - 1) * model.step);
    }
    rhs[i] = s[i].value;
  }
  // Gaussian elimination with partial pivoting.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    }
    if (m[piv * n + c] == 0.0) throw std::invalid_argument("extrapolation system is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[c * n + j], m[piv * n + j]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t c = n; c-- > 0;) {
    double acc = rhs[c];
    for (std::size_t j = c + 1; j < n; ++j) acc -= m[c * n + j] * x[j];
    x[c] = acc / m[c * n + c];
  }
  return x[0];
}

}  // namespace

Extrapolated extrapolate_to_zero(std::span<const Sample> samples, std::size_t order, ExtrapolationModel model) {
  if (model.first_power < 1 || model.step < 1) {
    throw std::invalid_argument("extrapolation model powers must be positive");
  }
  if (samples.size() < order + 1) {
    throw std::invalid_argument("need at least " + std::to_string(order + 1) + " samples for order " +
                                std::to_string(order));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].h > 0.0) || !std::isfinite(samples[i].h)) {
      throw std::invalid_argument("regulator values must be positive and finite");
    }
    if (!std::isfinite(samples[i].value)) throw std::invalid_argument("sample values must be finite");
    if (i > 0 && !(samples[i].h < samples[i - 1].h)) {
      throw std::invalid_argument("regulator values must be strictly decreasing");
    }
  }
  const std::size_t n = order + 1;
  const auto last = samples.subspan(samples.size() - n);
  Extrapolated out;
  out.value = fit_constant(last, order, model);
  if (samples.size() > n) {
    out.error_estimate = std::abs(out.value - fit_constant(samples.subspan(samples.size() - n - 1, n), order, model));
  } else if (order > 0) {
    out.error_estimate = std::abs(out.value - fit_constant(last.subspan(1), order - 1, model));
  } else {
    out.error_estimate = std::abs(out.value);
  }
  return out;
}

}  // namespace vacuum
