#pragma once

// Richardson-style extrapolation of a sequence of regulated values to zero
// regulator.

#include <cstddef>
#include <span>

namespace vacuum {

struct Sample {
  double h = 0.0;  // regulator value, > 0
  double value = 0.0;
};

// Powers of h in the fitted error model: first_power, first_power + step, ...
// The default is the plain polynomial 1, h, h^2, ...
struct ExtrapolationModel {
  int first_power = 1;
  int step = 1;
};

struct Extrapolated {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Fits v(h) = v0 + sum_{j<order} c_j h^{first_power + j*step} through the last
// order+1 samples and returns v0. The error estimate is the difference to the
// same fit through the preceding window, or to the order-1 fit when no earlier
// window exists.
//
// Throws std::invalid_argument when there are fewer than order+1 samples, when
// h is not strictly decreasing and positive, or when a value is not finite.
Extrapolated extrapolate_to_zero(std::span<const Sample> samples, std::size_t order,
                                 ExtrapolationModel model = {});

}  // namespace vacuum
