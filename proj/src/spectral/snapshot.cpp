#include "fks/spectral/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fks/error.hpp"

namespace fks::spectral {

namespace {

constexpr char magic[] = "FTCF1\n";
constexpr std::size_t magic_len = 6;

void put_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_f64_le(std::string& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xffu));
}

double get_f64_le(const unsigned char* p) {
  std::uint64_t u = 0;
  for (int i = 7; i >= 0; --i) u = (u << 8) | p[i];
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

std::string encode_snapshot(const Field& f, const SnapshotMeta& meta) {
  f.validate();
  nlohmann::ordered_json h;
  h["d"] = f.grid.d;
  h["n"] = f.grid.n;
  h["box_length"] = f.grid.box_length;
  h["components"] = f.components;
  h["time"] = meta.time;
  h["alpha"] = meta.alpha;
  h["beta"] = meta.beta;
  h["field_name"] = meta.field_name;
  const std::string header = h.dump();
  std::string out(magic, magic_len);
  put_u32_le(out, static_cast<std::uint32_t>(header.size()));
  out += header;
  out.reserve(out.size() + 8 * f.values.size());
  for (double v : f.values) put_f64_le(out, v);
  return out;
}

Field decode_snapshot(const std::string& bytes, SnapshotMeta* meta) {
  if (bytes.size() < magic_len + 4 || bytes.compare(0, magic_len, magic) != 0)
    throw Error(ErrorKind::io, "snapshot: bad magic");
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint32_t hlen = get_u32_le(raw + magic_len);
  const std::size_t hstart = magic_len + 4;
  if (bytes.size() < hstart + hlen) throw Error(ErrorKind::io, "snapshot: truncated header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(bytes.substr(hstart, hlen));
  } catch (const std::exception& e) {
    throw Error(ErrorKind::io, std::string("snapshot: header parse error: ") + e.what());
  }
  GridSpec g;
  int comps = 1;
  SnapshotMeta m;
  try {
    g.d = h.at("d").get<int>();
    g.n = h.at("n").get<int>();
    g.box_length = h.at("box_length").get<double>();
    comps = h.at("components").get<int>();
    m.time = h.at("time").get<double>();
    m.alpha = h.at("alpha").get<double>();
    m.beta = h.at("beta").get<double>();
    m.field_name = h.at("field_name").get<std::string>();
  } catch (const std::exception& e) {
    throw Error(ErrorKind::io, std::string("snapshot: header field missing or mistyped: ") + e.what());
  }
  Field f(g, comps);
  const std::size_t dstart = hstart + hlen;
  if (bytes.size() != dstart + 8 * f.values.size()) throw Error(ErrorKind::io, "snapshot: payload size mismatch");
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = get_f64_le(raw + dstart + 8 * i);
  if (meta) *meta = m;
  return f;
}

void write_snapshot(const std::string& path, const Field& f, const SnapshotMeta& meta) {
  const std::string bytes = encode_snapshot(f, meta);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::io, "snapshot: cannot open " + path + " for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw Error(ErrorKind::io, "snapshot: write failed for " + path);
}

Field read_snapshot(const std::string& path, SnapshotMeta* meta) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::io, "snapshot: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return decode_snapshot(ss.str(), meta);
}

}  // namespace fks::spectral
