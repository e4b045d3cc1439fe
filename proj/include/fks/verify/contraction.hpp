#pragma once

#include <string>
#include <vector>

#include "fks/mild/solver.hpp"
#include "fks/verify/norms.hpp"

namespace fks::verify {

struct ContractionRow {
  double kappa = 0.0;
  double scale = 1.0;  ///< factor applied to the base data
  std::vector<mild::PicardIterate> iterations;
  bool converged = false;
  bool ratio_defined = false;  ///< false when fewer than two iterations ran
  double max_ratio = 0.0;      ///< over iterations >= 2; NaN if undefined
  std::string message;
};

struct ContractionReport {
  std::vector<ContractionRow> rows;
  double threshold = 0.0;       ///< first κ whose max ratio >= 1 or that fails; NaN if none
  bool monotone = true;         ///< max ratio nondecreasing in κ over rows with defined ratios
  bool smallest_contracts = false;  ///< every ratio of the smallest positive κ < 1/2
  std::string csv() const;      ///< kappa,iter,ratio
};

/// Scales (u0, v0, w0, φ) of the base problem to each κ (data_norm total) and
/// runs picard_solve. Throws ErrorKind::constraint_violation for an
/// inadmissible tuple; solver errors propagate.
ContractionReport contraction_probe(const mild::SolverConfig& cfg, const mild::SolverState& base,
                                    const AdmissibleExponents& e, const std::vector<double>& kappas,
                                    const NormOptions& o = {}, const mild::PicardOptions& po = {});

}  // namespace fks::verify
