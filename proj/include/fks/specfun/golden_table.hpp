#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fks::specfun {

/// One line of the golden-value table: `name alpha beta z expected abs_tol`.
///
/// name is one of gamma (argument in z), mittag_leffler, mainardi_wright
/// (θ in z, beta unused), wright_moment (ρ in beta, z unused).
struct GoldenRecord {
  std::string name;
  double alpha = 0.0;
  double beta = 0.0;
  double z = 0.0;
  double expected = 0.0;
  double abs_tol = 0.0;
};

std::vector<GoldenRecord> read_golden_table(std::istream& in);
void write_golden_table(std::ostream& out, const std::vector<GoldenRecord>& records);

/// Library value for the function named by the record.
double evaluate_record(const GoldenRecord& record);

/// Table produced by the specfun-table command. If alpha_filter is set, only
/// records with that α (or α-free rows such as gamma) are kept. Rows with
/// α = 1/2 Mittag-Leffler are cross-checked against e^{x²}erfc(x) while
/// building; a mismatch throws ErrorKind::accuracy_not_met.
std::vector<GoldenRecord> default_golden_table(std::optional<double> alpha_filter = std::nullopt);

}  // namespace fks::specfun
