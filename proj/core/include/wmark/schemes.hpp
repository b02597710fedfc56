#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmark/matrix.hpp"

namespace wmark {

enum class SchemeId {
  kDwtSvd,
  kDwtDctSvd,
};

std::string_view scheme_name(SchemeId scheme);
std::optional<SchemeId> parse_scheme(std::string_view name);

/// Extraction side-information: the scheme is semi-blind, so the decoder
/// needs the watermark's orthogonal factors and the host band's original
/// singular values, but not the host image itself.
struct WatermarkKey {
  SchemeId scheme = SchemeId::kDwtSvd;
  RealMatrix u_w;               // wm_rows x wm_rows, orthogonal
  RealMatrix v_w;               // wm_cols x wm_cols, orthogonal
  std::vector<double> s_host;   // min(wm_rows, wm_cols) values
  std::size_t wm_rows = 0;
  std::size_t wm_cols = 0;
  std::size_t host_rows = 0;
  std::size_t host_cols = 0;
};

struct EmbedResult {
  RealMatrix watermarked;  // same dimensions as the host
  WatermarkKey key;
};

struct ExtractResult {
  RealMatrix watermark_est;
  RealMatrix host_est;
};

/// Singular-value replacement in the host's HH band. The watermark must be
/// exactly half the host in each axis; callers resize beforehand.
EmbedResult embed_dwt_svd(const RealMatrix& host, const RealMatrix& watermark);
ExtractResult extract_dwt_svd(const RealMatrix& watermarked,
                              const WatermarkKey& key);

/// Same replacement applied to the full-frame DCT of the HH band.
EmbedResult embed_dwt_dct_svd(const RealMatrix& host,
                              const RealMatrix& watermark);
ExtractResult extract_dwt_dct_svd(const RealMatrix& watermarked,
                                  const WatermarkKey& key);

/// Scheme-dispatching conveniences.
EmbedResult embed(SchemeId scheme, const RealMatrix& host,
                  const RealMatrix& watermark);
ExtractResult extract(const RealMatrix& watermarked, const WatermarkKey& key);

}  // namespace wmark
