#pragma once

#include <array>
#include <string>
#include <vector>

namespace fks::verify {

/// Exponent tuple of the well-posedness theory and the quantities derived
/// from it. violations names every failed inequality ("q3 < (d-lambda)/(2-beta) = 10").
struct AdmissibleExponents {
  int d = 2;
  double lambda = 0.0;
  double beta = 1.8;
  double alpha = 0.8;
  std::array<double, 3> r{3, 2, 4};
  std::array<double, 3> q{3, 2, 4};
  std::array<double, 3> betas{};  ///< β1..β3
  std::array<double, 3> chis{};   ///< χ1..χ3
  bool valid = false;
  std::vector<std::string> violations;
};

/// Evaluates the constraint system on (r, q), the derived β_i, χ_i, and the
/// exponent positivity facts the contraction estimates rely on (reported
/// with a "derived: " prefix). Each check is independent, so the order of
/// evaluation cannot change the outcome. Throws ErrorKind::domain unless
/// d ∈ {1,2,3}, 0 <= λ < d, β ∈ (1,2), α ∈ (0,1).
AdmissibleExponents admissible_params(int d, double lambda, double beta, double alpha, const std::array<double, 3>& r,
                                      const std::array<double, 3>& q);

/// "(d=2, lambda=0, ...): valid" or the violation list, one line.
std::string describe(const AdmissibleExponents& e);

}  // namespace fks::verify
