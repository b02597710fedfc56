#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <utility>

#include "wmark/matrix.hpp"

namespace wmark {

enum class ImageFormat {
  kPgmP5,
  kPngGray8,
};

/// Format detection goes by magic bytes, never by extension.
std::optional<ImageFormat> detect_format(const std::filesystem::path& path);

/// Loads a PGM P5 (maxval 255) or 8-bit grayscale PNG as values in [0, 255],
/// row-major, top-left origin. Color or deeper inputs are rejected, not
/// converted. Throws IoError / FormatError.
RealMatrix load_gray(const std::filesystem::path& path);

/// Clamps to [0, 255], rounds half-away-from-zero and writes the requested
/// format atomically (temp file + rename). This export path is lossy for
/// non-integer matrices by construction.
void save_gray(const RealMatrix& m, const std::filesystem::path& path,
               ImageFormat format);

/// Bilinear resampling with half-pixel-centered sampling. Constant images
/// map to constant images exactly.
RealMatrix resize_bilinear(const RealMatrix& m, std::size_t new_rows,
                           std::size_t new_cols);

/// What pad_to_even added, so exports can crop back.
struct PadRecord {
  bool row_added = false;
  bool col_added = false;
};

/// Replicates the last row/column when the corresponding dimension is odd.
std::pair<RealMatrix, PadRecord> pad_to_even(const RealMatrix& m);

/// Undoes pad_to_even.
RealMatrix remove_pad(const RealMatrix& m, const PadRecord& record);

}  // namespace wmark
