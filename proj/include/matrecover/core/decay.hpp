#pragma once

#include <cmath>

#include "matrecover/core/types.hpp"

namespace matrecover {

/// Exponential off-diagonal decay |B_ij| <= C * lambda^{|i-j|}, with separate
/// rates above (upper) and below (lower) the diagonal.
struct DecayProfile {
  double amplitude = 1.0;
  double lambda_upper = 0.5;
  double lambda_lower = 0.5;

  static DecayProfile symmetric(double c, double lambda) { return {c, lambda, lambda}; }

  void validate() const {
    require(amplitude > 0.0, "decay amplitude must be positive");
    require(lambda_upper > 0.0 && lambda_upper < 1.0, "upper decay rate must lie in (0, 1)");
    require(lambda_lower > 0.0 && lambda_lower < 1.0, "lower decay rate must lie in (0, 1)");
  }

  double bound(Index i, Index j) const {
    const Index d = j - i;
    return d >= 0 ? amplitude * std::pow(lambda_upper, static_cast<double>(d))
                  : amplitude * std::pow(lambda_lower, static_cast<double>(-d));
  }
};

}  // namespace matrecover
