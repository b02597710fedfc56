#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wmark/attacks.hpp"
#include "wmark/matrix.hpp"
#include "wmark/schemes.hpp"

namespace wmark {

/// One CSV row of the evaluation report.
struct EvalReport {
  std::string image_id;
  SchemeId scheme = SchemeId::kDwtSvd;
  std::optional<AttackSpec> attack;  // empty = the no-attack row
  double psnr_db = 0.0;
  double nc = 0.0;
  double mse = 0.0;
};

std::string eval_csv_header();
std::string eval_csv_row(const EvalReport& report);

/// Benchmark run description; parsed from a flat one-directive-per-line
/// config file (see parse_bench_config).
struct BenchConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path watermark_path;
  std::filesystem::path output_csv;
  std::vector<SchemeId> schemes;      // empty = both, dwt-svd first
  std::vector<AttackSpec> attack_grid;  // empty = default grid
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

/// Parses "key = value" lines; '#' starts a comment. Keys: corpus_dir,
/// watermark, output_csv, seed, threads, scheme (repeatable) and attack
/// (repeatable, e.g. "attack = noise model=gaussian sigma=5").
BenchConfig parse_bench_config(const std::filesystem::path& path);

/// Parses one attack directive like "median window=3" into a spec.
AttackSpec parse_attack_directive(const std::string& text,
                                  std::uint64_t default_seed);

struct BenchSummary {
  std::size_t images_used = 0;
  std::size_t images_skipped = 0;
  std::size_t rows_written = 0;
  /// Mean NC keyed by (attack label or "none", scheme).
  std::map<std::pair<std::string, SchemeId>, double> mean_nc;
};

/// Resizes the watermark to the host's HH-band dimensions and scales it so
/// its Frobenius energy matches the band's. Pure replacement has no strength
/// knob, so amplitude conditioning is what keeps the embedding imperceptible;
/// normalized correlation is scale-invariant, so scores are unaffected.
/// `gain` may be overridden (<= 0 selects the automatic energy match).
RealMatrix condition_watermark(const RealMatrix& host_padded,
                               const RealMatrix& watermark, double gain,
                               double* gain_out = nullptr);

/// Runs embed / attack / extract / score over the corpus and writes the CSV.
/// Rows come out sorted by (image_id, scheme, attack grid order) no matter
/// how tasks are scheduled. `log` may be null to silence notices.
BenchSummary run_bench(const BenchConfig& config, std::ostream* log);

}  // namespace wmark
