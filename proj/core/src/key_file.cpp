#include "wmark/key_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "wmark/errors.hpp"

namespace wmark {

namespace {

constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 4 * 4;

void put_u32le(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xFF));
}

void put_f64le(std::vector<unsigned char>& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int shift = 0; shift < 64; shift += 8) {
    out.push_back(static_cast<unsigned char>((bits >> shift) & 0xFF));
  }
}

std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) {
    bits = (bits << 8) | p[i];
  }
  return std::bit_cast<double>(bits);
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open key file: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure: " + path.string());
  return bytes;
}

KeyFileHeader parse_header(const std::vector<unsigned char>& bytes,
                           const std::filesystem::path& path) {
  if (bytes.size() < kHeaderSize) {
    throw FormatError("key length mismatch: file shorter than the fixed header (" +
                          std::to_string(bytes.size()) + " bytes): " +
                          path.string(),
                      0);
  }
  if (std::memcmp(bytes.data(), kKeyMagic, 4) != 0) {
    throw FormatError("bad key magic (expected WMK1): " + path.string(), 0);
  }
  KeyFileHeader h;
  h.version = bytes[4];
  h.scheme_byte = bytes[5];
  if (h.version != kKeyVersion) {
    throw FormatError("unsupported key version " + std::to_string(h.version) +
                          ": " + path.string(),
                      4);
  }
  if (h.scheme_byte > 1) {
    throw FormatError("unknown scheme byte " + std::to_string(h.scheme_byte) +
                          ": " + path.string(),
                      5);
  }
  h.host_rows = get_u32le(bytes.data() + 6);
  h.host_cols = get_u32le(bytes.data() + 10);
  h.wm_rows = get_u32le(bytes.data() + 14);
  h.wm_cols = get_u32le(bytes.data() + 18);
  if (h.wm_rows == 0 || h.wm_cols == 0 || h.host_rows != 2 * h.wm_rows ||
      h.host_cols != 2 * h.wm_cols) {
    throw FormatError("inconsistent key dimensions: " + path.string(), 6);
  }
  return h;
}

}  // namespace

std::size_t key_file_size(std::size_t wm_rows, std::size_t wm_cols) {
  return kHeaderSize +
         8 * (wm_rows * wm_rows + wm_cols * wm_cols + std::min(wm_rows, wm_cols));
}

void write_key_file(const WatermarkKey& key, const std::filesystem::path& path) {
  std::vector<unsigned char> bytes;
  bytes.reserve(key_file_size(key.wm_rows, key.wm_cols));
  bytes.insert(bytes.end(), kKeyMagic, kKeyMagic + 4);
  bytes.push_back(kKeyVersion);
  bytes.push_back(key.scheme == SchemeId::kDwtSvd ? 0 : 1);
  put_u32le(bytes, static_cast<std::uint32_t>(key.host_rows));
  put_u32le(bytes, static_cast<std::uint32_t>(key.host_cols));
  put_u32le(bytes, static_cast<std::uint32_t>(key.wm_rows));
  put_u32le(bytes, static_cast<std::uint32_t>(key.wm_cols));
  for (double v : key.u_w.data()) put_f64le(bytes, v);
  for (double v : key.v_w.data()) put_f64le(bytes, v);
  for (double v : key.s_host) put_f64le(bytes, v);

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create key file: " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("write failure: " + tmp.string());
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

WatermarkKey read_key_file(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = read_all(path);
  const KeyFileHeader h = parse_header(bytes, path);

  const std::size_t expected = key_file_size(h.wm_rows, h.wm_cols);
  if (bytes.size() != expected) {
    throw FormatError("key length mismatch: expected " +
                          std::to_string(expected) + " bytes, found " +
                          std::to_string(bytes.size()) + ": " + path.string(),
                      static_cast<std::ptrdiff_t>(kHeaderSize));
  }

  WatermarkKey key;
  key.scheme = h.scheme_byte == 0 ? SchemeId::kDwtSvd : SchemeId::kDwtDctSvd;
  key.host_rows = h.host_rows;
  key.host_cols = h.host_cols;
  key.wm_rows = h.wm_rows;
  key.wm_cols = h.wm_cols;

  const unsigned char* p = bytes.data() + kHeaderSize;
  std::vector<double> u(static_cast<std::size_t>(h.wm_rows) * h.wm_rows);
  for (double& v : u) {
    v = get_f64le(p);
    p += 8;
  }
  key.u_w = RealMatrix(h.wm_rows, h.wm_rows, std::move(u));
  std::vector<double> vv(static_cast<std::size_t>(h.wm_cols) * h.wm_cols);
  for (double& v : vv) {
    v = get_f64le(p);
    p += 8;
  }
  key.v_w = RealMatrix(h.wm_cols, h.wm_cols, std::move(vv));
  key.s_host.resize(std::min(h.wm_rows, h.wm_cols));
  for (double& v : key.s_host) {
    v = get_f64le(p);
    p += 8;
  }
  return key;
}

KeyFileHeader read_key_file_header(const std::filesystem::path& path) {
  return parse_header(read_all(path), path);
}

}  // namespace wmark
