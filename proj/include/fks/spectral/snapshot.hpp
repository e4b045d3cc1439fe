#pragma once

#include <string>

#include "fks/spectral/grid.hpp"

namespace fks::spectral {

struct SnapshotMeta {
  double time = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string field_name;
};

/// Binary snapshot: "FTCF1\n", u32 LE header length, JSON header
/// {d, n, box_length, components, time, alpha, beta, field_name}, then
/// components·n^d little-endian doubles. Throws ErrorKind::io.
void write_snapshot(const std::string& path, const Field& f, const SnapshotMeta& meta);
Field read_snapshot(const std::string& path, SnapshotMeta* meta = nullptr);

std::string encode_snapshot(const Field& f, const SnapshotMeta& meta);
Field decode_snapshot(const std::string& bytes, SnapshotMeta* meta = nullptr);

}  // namespace fks::spectral
