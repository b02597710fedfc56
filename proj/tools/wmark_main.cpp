// Command-line front end: embed, extract, attack, bench, key-info.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wmark/attacks.hpp"
#include "wmark/bench.hpp"
#include "wmark/dwt.hpp"
#include "wmark/errors.hpp"
#include "wmark/format.hpp"
#include "wmark/image_io.hpp"
#include "wmark/key_file.hpp"
#include "wmark/matrix.hpp"
#include "wmark/metrics.hpp"
#include "wmark/schemes.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wmark;

struct GlobalOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool quiet = false;
};

void notice(const GlobalOpts& g, const std::string& text) {
  if (!g.quiet) std::cout << "notice: " << text << "\n";
}

ImageFormat format_for_output(const fs::path& path, const std::string& override) {
  if (override == "png") return ImageFormat::kPngGray8;
  if (override == "pgm") return ImageFormat::kPgmP5;
  return path.extension() == ".png" ? ImageFormat::kPngGray8
                                    : ImageFormat::kPgmP5;
}

// Clamp/round to the 8-bit export grid without leaving the real domain,
// for reporting the post-export PSNR.
RealMatrix quantized_view(const RealMatrix& m) {
  RealMatrix out = m;
  for (double& v : out.data()) {
    v = v <= 0.0 ? 0.0 : (v >= 255.0 ? 255.0 : std::floor(v + 0.5));
  }
  return out;
}

// Rescale to [0, 255] for export; extracted watermarks carry an arbitrary
// positive gain, so the absolute scale is not meaningful.
RealMatrix normalized_view(const RealMatrix& m) {
  double lo = m.data()[0];
  double hi = m.data()[0];
  for (double v : m.data()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) return RealMatrix(m.rows(), m.cols(), 0.0);
  RealMatrix out = m;
  for (double& v : out.data()) v = (v - lo) * 255.0 / (hi - lo);
  return out;
}

struct EmbedOpts {
  std::string host_path;
  std::string watermark_path;
  std::string scheme_name = "dwt-dct-svd";
  std::string out_image;
  std::string out_key;
  std::string format_override;
  double wm_gain = 0.0;  // <= 0 means automatic energy match
  bool no_gain = false;
};

int run_embed(const GlobalOpts& g, const EmbedOpts& o) {
  const auto scheme = parse_scheme(o.scheme_name);
  if (!scheme) {
    throw InvalidInput("unknown scheme '" + o.scheme_name +
                       "' (valid: dwt-svd, dwt-dct-svd)");
  }

  const RealMatrix host = load_gray(o.host_path);
  const RealMatrix watermark_raw = load_gray(o.watermark_path);

  const auto [padded, pad] = pad_to_even(host);
  if (pad.row_added || pad.col_added) {
    notice(g, "host padded to " + std::to_string(padded.rows()) + "x" +
                  std::to_string(padded.cols()) +
                  " (odd dimension, last row/column replicated); the padded "
                  "size is what the key records");
  }

  const SubbandSet bands = dwt2_forward(padded);
  if (watermark_raw.rows() != bands.hh.rows() ||
      watermark_raw.cols() != bands.hh.cols()) {
    notice(g, "watermark resized to " + std::to_string(bands.hh.rows()) + "x" +
                  std::to_string(bands.hh.cols()) + " (HH-band dimensions)");
  }
  double gain = 1.0;
  const RealMatrix wm = condition_watermark(
      padded, watermark_raw, o.no_gain ? 1.0 : o.wm_gain, &gain);
  notice(g, "watermark gain: " + fixed6(gain));

  const EmbedResult result = embed(*scheme, padded, wm);

  save_gray(result.watermarked, o.out_image,
            format_for_output(o.out_image, o.format_override));
  write_key_file(result.key, o.out_key);

  std::cout << "psnr_db=" << metric_text(psnr(padded, result.watermarked))
            << "\n";
  std::cout << "psnr_db_clamped="
            << metric_text(psnr(padded, quantized_view(result.watermarked)))
            << "\n";
  return 0;
}

struct ExtractOpts {
  std::string image_path;
  std::string key_path;
  std::string out_watermark;
  std::string out_host;
  std::string reference_path;
  std::string scheme_name;
  std::string format_override;
};

int run_extract(const GlobalOpts& g, const ExtractOpts& o) {
  const WatermarkKey key = read_key_file(o.key_path);
  if (!o.scheme_name.empty()) {
    const auto requested = parse_scheme(o.scheme_name);
    if (!requested) {
      throw InvalidInput("unknown scheme '" + o.scheme_name + "'");
    }
    if (*requested != key.scheme) {
      throw WrongKeyError("key was produced by " +
                          std::string(scheme_name(key.scheme)) +
                          ", not " + o.scheme_name);
    }
  }

  const RealMatrix watermarked = load_gray(o.image_path);
  const ExtractResult result = extract(watermarked, key);

  if (!o.reference_path.empty()) {
    RealMatrix reference = load_gray(o.reference_path);
    if (!reference.same_shape(result.watermark_est)) {
      notice(g, "reference watermark resized to match the extracted one");
      reference = resize_bilinear(reference, result.watermark_est.rows(),
                                  result.watermark_est.cols());
    }
    std::cout << "nc="
              << metric_text(
                     normalized_correlation(reference, result.watermark_est))
              << "\n";
  }

  // The extracted watermark is exported min-max normalized; its absolute
  // scale depends on the embedding gain, which the key does not carry.
  save_gray(normalized_view(result.watermark_est), o.out_watermark,
            format_for_output(o.out_watermark, o.format_override));
  save_gray(result.host_est, o.out_host,
            format_for_output(o.out_host, o.format_override));
  return 0;
}

struct AttackOpts {
  std::string in_path;
  std::string out_path;
  std::string kind;
  std::string format_override;
  int window = 3;
  std::string model = "gaussian";
  double sigma = 5.0;
  double density = 0.05;
  double angle = 2.0;
  double factor = 0.05;
  double fraction = 0.25;
  std::string anchor = "center";
  std::optional<std::uint64_t> seed;
};

int run_attack(const GlobalOpts& g, const AttackOpts& o) {
  std::string directive = o.kind;
  if (o.kind == "median") {
    directive += " window=" + std::to_string(o.window);
  } else if (o.kind == "noise") {
    directive += " model=" + o.model;
    directive += o.model == "gaussian" ? " sigma=" + fixed6(o.sigma)
                                       : " density=" + fixed6(o.density);
  } else if (o.kind == "rotation") {
    directive += " angle=" + fixed6(o.angle);
  } else if (o.kind == "shear") {
    directive += " factor=" + fixed6(o.factor);
  } else if (o.kind == "crop") {
    directive += " fraction=" + fixed6(o.fraction) + " anchor=" + o.anchor;
  } else {
    throw InvalidInput("unknown attack '" + o.kind +
                       "' (valid: median, noise, rotation, shear, crop)");
  }
  const AttackSpec spec =
      parse_attack_directive(directive, o.seed.value_or(g.seed));

  const RealMatrix image = load_gray(o.in_path);
  const RealMatrix attacked = apply_attack(image, spec);
  save_gray(attacked, o.out_path,
            format_for_output(o.out_path, o.format_override));
  std::cout << attack_echo(spec) << "\n";
  return 0;
}

int run_bench_cmd(const GlobalOpts& g, const std::string& config_path,
                  int threads) {
  BenchConfig config = parse_bench_config(config_path);
  if (g.seed_given) config.seed = g.seed;  // explicit flag wins over the file
  if (threads > 0) config.threads = threads;
  run_bench(config, g.quiet ? nullptr : &std::cout);
  return 0;
}

int run_key_info(const std::string& key_path) {
  const KeyFileHeader h = read_key_file_header(key_path);
  std::cout << "magic=WMK1\n";
  std::cout << "version=" << static_cast<int>(h.version) << "\n";
  std::cout << "scheme="
            << scheme_name(h.scheme_byte == 0 ? SchemeId::kDwtSvd
                                              : SchemeId::kDwtDctSvd)
            << "\n";
  std::cout << "host_rows=" << h.host_rows << "\n";
  std::cout << "host_cols=" << h.host_cols << "\n";
  std::cout << "wm_rows=" << h.wm_rows << "\n";
  std::cout << "wm_cols=" << h.wm_cols << "\n";
  std::cout << "s_host_len=" << std::min(h.wm_rows, h.wm_cols) << "\n";
  std::cout << "file_bytes=" << key_file_size(h.wm_rows, h.wm_cols) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grayscale image watermarking via singular-value replacement "
               "in the wavelet HH band, with and without an interposed DCT"};
  app.require_subcommand(1);

  GlobalOpts global;
  auto* global_seed =
      app.add_option("--seed", global.seed, "Default seed for stochastic steps");
  app.add_flag("--quiet", global.quiet, "Suppress notices and summaries");

  EmbedOpts embed_opts;
  auto* cmd_embed = app.add_subcommand("embed", "Embed a watermark");
  cmd_embed->add_option("--host", embed_opts.host_path, "Host image")->required();
  cmd_embed->add_option("--watermark", embed_opts.watermark_path, "Watermark image")
      ->required();
  cmd_embed->add_option("--scheme", embed_opts.scheme_name,
                        "dwt-svd or dwt-dct-svd (default dwt-dct-svd)");
  cmd_embed->add_option("--out-image", embed_opts.out_image, "Watermarked image path")
      ->required();
  cmd_embed->add_option("--out-key", embed_opts.out_key, "Key file path")->required();
  cmd_embed->add_option("--format", embed_opts.format_override,
                        "Output format: pgm or png (default: by extension)");
  cmd_embed->add_option("--wm-gain", embed_opts.wm_gain,
                        "Watermark amplitude gain (default: match HH energy)");
  cmd_embed->add_flag("--no-gain", embed_opts.no_gain,
                      "Embed the resized watermark with gain 1");

  ExtractOpts extract_opts;
  auto* cmd_extract = app.add_subcommand("extract", "Extract a watermark");
  cmd_extract->add_option("--image", extract_opts.image_path, "Watermarked image")
      ->required();
  cmd_extract->add_option("--key", extract_opts.key_path, "Key file")->required();
  cmd_extract->add_option("--out-watermark", extract_opts.out_watermark,
                          "Extracted watermark path")
      ->required();
  cmd_extract->add_option("--out-host", extract_opts.out_host,
                          "Recovered host path")
      ->required();
  cmd_extract->add_option("--reference", extract_opts.reference_path,
                          "Reference watermark; prints nc= when given");
  cmd_extract->add_option("--scheme", extract_opts.scheme_name,
                          "Fail unless the key belongs to this scheme");
  cmd_extract->add_option("--format", extract_opts.format_override,
                          "Output format: pgm or png (default: by extension)");

  AttackOpts attack_opts;
  auto* cmd_attack = app.add_subcommand("attack", "Distort an image");
  cmd_attack->add_option("--in", attack_opts.in_path, "Input image")->required();
  cmd_attack->add_option("--out", attack_opts.out_path, "Output image")->required();
  cmd_attack->add_option("--kind", attack_opts.kind,
                         "median | noise | rotation | shear | crop")
      ->required();
  cmd_attack->add_option("--window", attack_opts.window, "Median window (odd, >= 3)");
  cmd_attack->add_option("--model", attack_opts.model,
                         "Noise model: gaussian or salt-pepper");
  cmd_attack->add_option("--sigma", attack_opts.sigma, "Gaussian sigma (0-255 scale)");
  cmd_attack->add_option("--density", attack_opts.density,
                         "Salt-and-pepper pixel fraction");
  cmd_attack->add_option("--angle", attack_opts.angle, "Rotation angle in degrees");
  cmd_attack->add_option("--factor", attack_opts.factor, "Shear factor");
  cmd_attack->add_option("--fraction", attack_opts.fraction,
                         "Removed-area fraction in (0, 1)");
  cmd_attack->add_option("--anchor", attack_opts.anchor, "Crop anchor: center or corner");
  std::uint64_t attack_seed = 0;
  auto* seed_opt = cmd_attack->add_option("--seed", attack_seed,
                                          "Seed for stochastic attacks");
  cmd_attack->add_option("--format", attack_opts.format_override,
                         "Output format: pgm or png (default: by extension)");

  std::string bench_config_path;
  int bench_threads = 0;
  auto* cmd_bench = app.add_subcommand("bench", "Run the evaluation harness");
  cmd_bench->add_option("--config", bench_config_path, "Bench config file")
      ->required();
  cmd_bench->add_option("--threads", bench_threads,
                        "Worker threads (default: hardware)");

  std::string key_info_path;
  auto* cmd_key_info = app.add_subcommand("key-info", "Dump key file header fields");
  cmd_key_info->add_option("--key", key_info_path, "Key file")->required();

  CLI11_PARSE(app, argc, argv);
  global.seed_given = global_seed->count() > 0;

  try {
    if (cmd_embed->parsed()) return run_embed(global, embed_opts);
    if (cmd_extract->parsed()) return run_extract(global, extract_opts);
    if (cmd_attack->parsed()) {
      if (seed_opt->count() > 0) attack_opts.seed = attack_seed;
      return run_attack(global, attack_opts);
    }
    if (cmd_bench->parsed()) {
      return run_bench_cmd(global, bench_config_path, bench_threads);
    }
    if (cmd_key_info->parsed()) return run_key_info(key_info_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
