#include "wmark/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "wmark/dwt.hpp"
#include "wmark/errors.hpp"
#include "wmark/format.hpp"
#include "wmark/image_io.hpp"
#include "wmark/metrics.hpp"
#include "wmark/rng.hpp"

namespace wmark {

std::string eval_csv_header() {
  return "image_id,scheme,attack,param,seed,psnr_db,nc,mse";
}

std::string eval_csv_row(const EvalReport& r) {
  std::string attack;
  std::string param;
  std::string seed;
  if (r.attack) {
    attack = attack_label(*r.attack);
    param = attack_param_text(*r.attack);
    if (attack_is_stochastic(*r.attack)) seed = std::to_string(r.attack->seed);
  }
  return r.image_id + "," + std::string(scheme_name(r.scheme)) + "," + attack +
         "," + param + "," + seed + "," + metric_text(r.psnr_db) + "," +
         metric_text(r.nc) + "," + metric_text(r.mse);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::exception();
    return v;
  } catch (...) {
    throw InvalidInput("invalid " + what + " value: '" + text + "'");
  }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::exception();
    return v;
  } catch (...) {
    throw InvalidInput("invalid " + what + " value: '" + text + "'");
  }
}

}  // namespace

AttackSpec parse_attack_directive(const std::string& text,
                                  std::uint64_t default_seed) {
  const std::vector<std::string> tokens = split_ws(text);
  if (tokens.empty()) throw InvalidInput("empty attack directive");
  const std::string& kind = tokens[0];

  AttackSpec spec;
  spec.seed = default_seed;
  if (kind == "median") {
    spec.params = MedianParams{};
  } else if (kind == "noise") {
    spec.params = NoiseParams{};
  } else if (kind == "rotation") {
    spec.params = RotationParams{};
  } else if (kind == "shear") {
    spec.params = ShearParams{};
  } else if (kind == "crop") {
    spec.params = CropParams{};
  } else {
    throw InvalidInput("unknown attack '" + kind +
                       "' (valid: median, noise, rotation, shear, crop)");
  }

  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("attack parameter must be key=value: '" + tokens[i] + "'");
    }
    const std::string k = tokens[i].substr(0, eq);
    const std::string v = tokens[i].substr(eq + 1);
    if (k == "seed") {
      spec.seed = parse_u64(v, "seed");
    } else if (kind == "median" && k == "window") {
      std::get<MedianParams>(spec.params).window =
          static_cast<int>(parse_real(v, "window"));
    } else if (kind == "noise" && k == "model") {
      auto& p = std::get<NoiseParams>(spec.params);
      if (v == "gaussian") {
        p.model = NoiseModel::kGaussian;
      } else if (v == "salt-pepper" || v == "saltpepper") {
        p.model = NoiseModel::kSaltPepper;
      } else {
        throw InvalidInput("unknown noise model '" + v +
                           "' (valid: gaussian, salt-pepper)");
      }
    } else if (kind == "noise" && k == "sigma") {
      std::get<NoiseParams>(spec.params).sigma = parse_real(v, "sigma");
    } else if (kind == "noise" && k == "density") {
      std::get<NoiseParams>(spec.params).density = parse_real(v, "density");
    } else if (kind == "rotation" && k == "angle") {
      std::get<RotationParams>(spec.params).angle_deg = parse_real(v, "angle");
    } else if (kind == "shear" && k == "factor") {
      std::get<ShearParams>(spec.params).factor = parse_real(v, "factor");
    } else if (kind == "crop" && k == "fraction") {
      std::get<CropParams>(spec.params).fraction = parse_real(v, "fraction");
    } else if (kind == "crop" && k == "anchor") {
      auto& p = std::get<CropParams>(spec.params);
      if (v == "center") {
        p.anchor = CropAnchor::kCenter;
      } else if (v == "corner") {
        p.anchor = CropAnchor::kCorner;
      } else {
        throw InvalidInput("unknown crop anchor '" + v +
                           "' (valid: center, corner)");
      }
    } else {
      throw InvalidInput("unknown parameter '" + k + "' for attack '" + kind + "'");
    }
  }
  return spec;
}

BenchConfig parse_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bench config: " + path.string());

  BenchConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("bench config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "corpus_dir") {
      config.corpus_dir = value;
    } else if (key == "watermark") {
      config.watermark_path = value;
    } else if (key == "output_csv") {
      config.output_csv = value;
    } else if (key == "seed") {
      config.seed = parse_u64(value, "seed");
    } else if (key == "threads") {
      config.threads = static_cast<int>(parse_u64(value, "threads"));
    } else if (key == "scheme") {
      const auto scheme = parse_scheme(value);
      if (!scheme) {
        throw FormatError("bench config line " + std::to_string(line_no) +
                          ": unknown scheme '" + value + "'");
      }
      config.schemes.push_back(*scheme);
    } else if (key == "attack") {
      config.attack_grid.push_back(parse_attack_directive(value, config.seed));
    } else {
      throw FormatError("bench config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  if (config.corpus_dir.empty() || config.watermark_path.empty() ||
      config.output_csv.empty()) {
    throw FormatError(
        "bench config must set corpus_dir, watermark and output_csv");
  }
  return config;
}

RealMatrix condition_watermark(const RealMatrix& host_padded,
                               const RealMatrix& watermark, double gain,
                               double* gain_out) {
  const SubbandSet bands = dwt2_forward(host_padded);
  RealMatrix resized = resize_bilinear(watermark, bands.hh.rows(), bands.hh.cols());
  if (gain <= 0.0) {
    const double wm_norm = resized.frobenius_norm();
    if (wm_norm == 0.0) {
      throw InvalidInput("watermark has no signal (all zero after resize)");
    }
    const double band_norm = bands.hh.frobenius_norm();
    // A detail-free host has no energy budget to match; fall back to the
    // resized watermark as-is rather than erasing it.
    gain = band_norm == 0.0 ? 1.0 : band_norm / wm_norm;
  }
  if (gain_out) *gain_out = gain;
  return scale(resized, gain);
}

namespace {

struct CorpusEntry {
  std::string id;
  std::filesystem::path path;
};

// Rows produced by one (image, scheme) task, in grid order.
struct TaskResult {
  std::vector<EvalReport> rows;
};

std::vector<EvalReport> evaluate_one(const std::string& image_id,
                                     const RealMatrix& host, SchemeId scheme,
                                     const RealMatrix& watermark_raw,
                                     const std::vector<AttackSpec>& grid,
                                     std::uint64_t config_seed) {
  const RealMatrix padded = pad_to_even(host).first;
  const RealMatrix wm = condition_watermark(padded, watermark_raw, 0.0);
  const EmbedResult embedded = embed(scheme, padded, wm);

  std::vector<EvalReport> rows;
  rows.reserve(grid.size() + 1);

  {
    const ExtractResult ex = extract(embedded.watermarked, embedded.key);
    EvalReport r;
    r.image_id = image_id;
    r.scheme = scheme;
    r.psnr_db = psnr(padded, embedded.watermarked);
    r.nc = normalized_correlation(wm, ex.watermark_est);
    r.mse = mse(padded, embedded.watermarked);
    rows.push_back(std::move(r));
  }

  for (std::size_t ai = 0; ai < grid.size(); ++ai) {
    AttackSpec spec = grid[ai];
    if (attack_is_stochastic(spec)) {
      // Per-image, per-grid-slot stream, shared by both schemes so the
      // robustness comparison is paired on the same noise realization.
      spec.seed = mix_seed(mix_seed(config_seed, fnv1a64(image_id)), ai);
    }
    const RealMatrix attacked = apply_attack(embedded.watermarked, spec);
    const ExtractResult ex = extract(attacked, embedded.key);
    EvalReport r;
    r.image_id = image_id;
    r.scheme = scheme;
    r.attack = spec;
    r.psnr_db = psnr(padded, attacked);
    r.nc = normalized_correlation(wm, ex.watermark_est);
    r.mse = mse(padded, attacked);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

BenchSummary run_bench(const BenchConfig& config, std::ostream* log) {
  std::vector<SchemeId> schemes = config.schemes;
  if (schemes.empty()) {
    schemes = {SchemeId::kDwtSvd, SchemeId::kDwtDctSvd};
  }
  std::vector<AttackSpec> grid = config.attack_grid;
  if (grid.empty()) grid = default_attack_grid(config.seed);

  if (!std::filesystem::is_directory(config.corpus_dir)) {
    throw IoError("corpus directory does not exist: " +
                  config.corpus_dir.string());
  }

  std::vector<CorpusEntry> entries;
  for (const auto& de : std::filesystem::directory_iterator(config.corpus_dir)) {
    if (!de.is_regular_file()) continue;
    entries.push_back({de.path().filename().string(), de.path()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });

  const RealMatrix watermark_raw = load_gray(config.watermark_path);

  BenchSummary summary;
  std::vector<std::pair<CorpusEntry, RealMatrix>> corpus;
  for (const auto& entry : entries) {
    try {
      corpus.emplace_back(entry, load_gray(entry.path));
    } catch (const Error& e) {
      ++summary.images_skipped;
      if (log) *log << "warning: skipping " << entry.id << ": " << e.what() << "\n";
    }
  }
  if (corpus.empty()) {
    throw InvalidInput("no readable images in corpus: " +
                       config.corpus_dir.string());
  }
  summary.images_used = corpus.size();

  // One task per (image, scheme); results are merged in task order, so the
  // output is independent of scheduling.
  struct Task {
    std::size_t image_idx;
    std::size_t scheme_idx;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      tasks.push_back({i, s});
    }
  }
  std::vector<TaskResult> results(tasks.size());

  unsigned thread_count = config.threads > 0
                              ? static_cast<unsigned>(config.threads)
                              : std::max(1u, std::thread::hardware_concurrency());
  thread_count = std::min<unsigned>(thread_count,
                                    static_cast<unsigned>(tasks.size()));

  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t t = next_task.fetch_add(1);
      if (t >= tasks.size() || failed.load()) return;
      const Task& task = tasks[t];
      try {
        results[t].rows = evaluate_one(
            corpus[task.image_idx].first.id, corpus[task.image_idx].second,
            schemes[task.scheme_idx], watermark_raw, grid, config.seed);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failed.exchange(true)) {
          failure = corpus[task.image_idx].first.id + ": " + e.what();
        }
        return;
      }
    }
  };

  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) {
    throw Error("bench failed on " + failure);
  }

  // Emit CSV atomically so a repeated run can be compared byte for byte.
  std::string csv = eval_csv_header() + "\n";
  std::map<std::pair<std::string, SchemeId>, std::pair<double, std::size_t>> acc;
  for (const TaskResult& result : results) {
    for (const EvalReport& row : result.rows) {
      csv += eval_csv_row(row) + "\n";
      ++summary.rows_written;
      const std::string label = row.attack ? attack_label(*row.attack) : "none";
      auto& slot = acc[{label, row.scheme}];
      slot.first += row.nc;
      ++slot.second;
    }
  }
  for (const auto& [key, value] : acc) {
    summary.mean_nc[key] = value.first / static_cast<double>(value.second);
  }

  std::filesystem::path tmp = config.output_csv;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create CSV: " + tmp.string());
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    out.close();
    if (!out) throw IoError("write failure: " + tmp.string());
  }
  std::filesystem::rename(tmp, config.output_csv);

  if (log) {
    *log << "bench: " << summary.images_used << " images, " << schemes.size()
         << " schemes, " << grid.size() << " attacks, " << summary.rows_written
         << " rows -> " << config.output_csv.string() << "\n";
    // Per-attack means, with the scheme gap when both schemes ran. Grid
    // entries sharing a kind aggregate under one label.
    std::vector<std::string> labels;
    labels.push_back("none");
    for (const auto& spec : grid) {
      const std::string label = attack_label(spec);
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
        labels.push_back(label);
      }
    }
    for (const auto& label : labels) {
      *log << "mean_nc " << label << ":";
      for (SchemeId scheme : schemes) {
        const auto it = summary.mean_nc.find({label, scheme});
        if (it == summary.mean_nc.end()) continue;
        *log << " " << scheme_name(scheme) << "=" << fixed6(it->second);
      }
      const auto a = summary.mean_nc.find({label, SchemeId::kDwtDctSvd});
      const auto b = summary.mean_nc.find({label, SchemeId::kDwtSvd});
      if (a != summary.mean_nc.end() && b != summary.mean_nc.end()) {
        const double diff = a->second - b->second;
        *log << " dct_minus_plain=" << (diff >= 0 ? "+" : "") << fixed6(diff);
      }
      *log << "\n";
    }
  }
  return summary;
}

}  // namespace wmark
