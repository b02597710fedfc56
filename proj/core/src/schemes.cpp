#include "wmark/schemes.hpp"

#include "wmark/dct.hpp"
#include "wmark/dwt.hpp"
#include "wmark/errors.hpp"
#include "wmark/svd.hpp"

namespace wmark {

std::string_view scheme_name(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::kDwtSvd:
      return "dwt-svd";
    case SchemeId::kDwtDctSvd:
      return "dwt-dct-svd";
  }
  return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  if (name == "dwt-svd") return SchemeId::kDwtSvd;
  if (name == "dwt-dct-svd") return SchemeId::kDwtDctSvd;
  return std::nullopt;
}

namespace {

void validate_embed_inputs(const RealMatrix& host, const RealMatrix& watermark) {
  if (host.empty() || watermark.empty()) {
    throw InvalidInput("embed: empty input");
  }
  if (host.rows() % 2 != 0 || host.cols() % 2 != 0) {
    throw InvalidInput("embed: host dimensions must be even (pad first)");
  }
  if (watermark.rows() != host.rows() / 2 ||
      watermark.cols() != host.cols() / 2) {
    throw InvalidInput(
        "embed: watermark must be exactly half the host in each axis");
  }
  if (!host.all_finite() || !watermark.all_finite()) {
    throw InvalidInput("embed: non-finite entries");
  }
}

void validate_key(const WatermarkKey& key, const RealMatrix& watermarked,
                  SchemeId expected) {
  if (key.scheme != expected) {
    throw WrongKeyError("extract: key belongs to the other scheme");
  }
  if (key.wm_rows == 0 || key.wm_cols == 0 ||
      key.wm_rows != key.host_rows / 2 || key.wm_cols != key.host_cols / 2 ||
      key.host_rows % 2 != 0 || key.host_cols % 2 != 0) {
    throw InvalidInput("extract: key dimensions are inconsistent");
  }
  if (key.u_w.rows() != key.wm_rows || key.u_w.cols() != key.wm_rows ||
      key.v_w.rows() != key.wm_cols || key.v_w.cols() != key.wm_cols ||
      key.s_host.size() != std::min(key.wm_rows, key.wm_cols)) {
    throw InvalidInput("extract: key factor shapes are inconsistent");
  }
  if (watermarked.rows() != key.host_rows ||
      watermarked.cols() != key.host_cols) {
    throw InvalidInput("extract: image dimensions do not match the key");
  }
  if (!watermarked.all_finite()) {
    throw InvalidInput("extract: non-finite entries");
  }
}

EmbedResult embed_impl(SchemeId scheme, const RealMatrix& host,
                       const RealMatrix& watermark) {
  validate_embed_inputs(host, watermark);
  const bool use_dct = scheme == SchemeId::kDwtDctSvd;

  SubbandSet bands = dwt2_forward(host);
  const RealMatrix band = use_dct ? dct2_forward(bands.hh) : bands.hh;

  const SvdFactors wm_f = svd_decompose(watermark);
  const SvdFactors band_f = svd_decompose(band);

  // Keep the band's singular vectors, substitute the watermark's spectrum.
  const RealMatrix replaced =
      svd_reconstruct(SvdFactors{band_f.u, wm_f.s, band_f.v});
  bands.hh = use_dct ? dct2_inverse(replaced) : replaced;

  EmbedResult out;
  out.watermarked = dwt2_inverse(bands);
  out.key = WatermarkKey{scheme,
                         wm_f.u,
                         wm_f.v,
                         band_f.s,
                         watermark.rows(),
                         watermark.cols(),
                         host.rows(),
                         host.cols()};
  return out;
}

ExtractResult extract_impl(SchemeId scheme, const RealMatrix& watermarked,
                           const WatermarkKey& key) {
  validate_key(key, watermarked, scheme);
  const bool use_dct = scheme == SchemeId::kDwtDctSvd;

  SubbandSet bands = dwt2_forward(watermarked);
  const RealMatrix band = use_dct ? dct2_forward(bands.hh) : bands.hh;
  const SvdFactors band_f = svd_decompose(band);

  ExtractResult out;
  out.watermark_est = svd_reconstruct(SvdFactors{key.u_w, band_f.s, key.v_w});

  // Restore the original singular values inside the received band's own
  // factorization; exact when nothing changed, an estimate after attacks.
  const RealMatrix restored =
      svd_reconstruct(SvdFactors{band_f.u, key.s_host, band_f.v});
  bands.hh = use_dct ? dct2_inverse(restored) : restored;
  out.host_est = dwt2_inverse(bands);
  return out;
}

}  // namespace

EmbedResult embed_dwt_svd(const RealMatrix& host, const RealMatrix& watermark) {
  return embed_impl(SchemeId::kDwtSvd, host, watermark);
}

ExtractResult extract_dwt_svd(const RealMatrix& watermarked,
                              const WatermarkKey& key) {
  return extract_impl(SchemeId::kDwtSvd, watermarked, key);
}

EmbedResult embed_dwt_dct_svd(const RealMatrix& host,
                              const RealMatrix& watermark) {
  return embed_impl(SchemeId::kDwtDctSvd, host, watermark);
}

ExtractResult extract_dwt_dct_svd(const RealMatrix& watermarked,
                                  const WatermarkKey& key) {
  return extract_impl(SchemeId::kDwtDctSvd, watermarked, key);
}

EmbedResult embed(SchemeId scheme, const RealMatrix& host,
                  const RealMatrix& watermark) {
  return embed_impl(scheme, host, watermark);
}

ExtractResult extract(const RealMatrix& watermarked, const WatermarkKey& key) {
  return extract_impl(key.scheme, watermarked, key);
}

}  // namespace wmark
