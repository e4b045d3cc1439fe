#pragma once

#include <cstdint>

#include "fks/cli/config.hpp"
#include "fks/mild/solver.hpp"
#include "fks/verify/admissible.hpp"

namespace fks::cli {

/// Samples a profile on g. components is 1 or g.d; vector profiles are
/// divergence-free. Throws ErrorKind::config for unusable specs,
/// ErrorKind::io for unreadable snapshots.
spectral::Field make_profile(const ProfileSpec& p, const spectral::GridSpec& g, int components,
                             std::uint64_t run_seed);

struct Problem {
  mild::SolverConfig solver;
  mild::SolverState init;
  verify::AdmissibleExponents exponents;
  double kappa_scale = 1.0;  ///< factor applied when initial.kappa is set
};

/// Solver config, initial data (scaled to κ when requested) and the exponent
/// tuple. Throws ErrorKind::config naming the violated inequality when the
/// tuple is not admissible and require_admissible is set.
Problem build_problem(const RunConfig& c, bool require_admissible = true);

/// Shorthand for the solver config alone (no data built).
mild::SolverConfig solver_config(const RunConfig& c);

}  // namespace fks::cli
