#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "wmark/schemes.hpp"

namespace wmark {

/// On-disk key layout, little-endian throughout:
///   magic "WMK1" | version byte (1) | scheme byte (0 = dwt-svd,
///   1 = dwt-dct-svd) | u32 host_rows, host_cols, wm_rows, wm_cols |
///   f64 u_w (row-major, wm_rows^2) | f64 v_w (row-major, wm_cols^2) |
///   f64 s_host (min(wm_rows, wm_cols))
/// Total length is exactly computable from the header; anything else is
/// rejected.
inline constexpr char kKeyMagic[4] = {'W', 'M', 'K', '1'};
inline constexpr std::uint8_t kKeyVersion = 1;

/// Header fields as stored, for inspection without pulling the arrays in.
struct KeyFileHeader {
  std::uint8_t version = 0;
  std::uint8_t scheme_byte = 0;
  std::uint32_t host_rows = 0;
  std::uint32_t host_cols = 0;
  std::uint32_t wm_rows = 0;
  std::uint32_t wm_cols = 0;
};

/// Byte size a key file with these dimensions must have.
std::size_t key_file_size(std::size_t wm_rows, std::size_t wm_cols);

/// Writes the key atomically. Throws IoError on filesystem failure.
void write_key_file(const WatermarkKey& key, const std::filesystem::path& path);

/// Reads and fully validates a key file (magic, version, scheme byte,
/// dimension consistency, exact length). Throws FormatError / IoError.
WatermarkKey read_key_file(const std::filesystem::path& path);

/// Parses only the fixed-size header (magic/version/scheme/dims validated).
KeyFileHeader read_key_file_header(const std::filesystem::path& path);

}  // namespace wmark
