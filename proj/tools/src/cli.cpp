/* Copyright 2026 The htg-eval Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "htg_eval_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "htg_eval/digest.hpp"
#include "htg_eval/distribution_metrics.hpp"
#include "htg_eval/error.hpp"
#include "htg_eval/fixture.hpp"
#include "htg_eval/geometry_score.hpp"
#include "htg_eval/htgf.hpp"
#include "htg_eval/image.hpp"
#include "htg_eval/linalg.hpp"
#include "htg_eval/manifest.hpp"
#include "htg_eval/parallel.hpp"
#include "htg_eval/pixel_metrics.hpp"
#include "htg_eval/protocol.hpp"
#include "htg_eval/records.hpp"
#include "htg_eval/report.hpp"
#include "htg_eval/style_metrics.hpp"
#include "htg_eval/text_metrics.hpp"

namespace htg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::optional<std::string> threads;
  std::string output;
  std::string format = "json";
};

struct Context {
  std::uint64_t seed = 0;
  ThreadCount threads;
  std::string output;
  std::string format;
  std::ostream* out = nullptr;

  void emit(const std::string& text) const {
    if (output.empty()) {
      *out << text;
    } else {
      write_text_file(output, text);
    }
  }

  void emit_json(const json& j) const {
    if (format != "json") throw UsageError("this subcommand only supports --format json");
    emit(j.dump(2) + "\n");
  }
};

using Runner = std::function<void(const Context&)>;
using Registry = std::map<const CLI::App*, Runner>;

CLI::App* subcommand(CLI::App& app, const std::string& name, const std::string& help) {
  auto* sub = app.add_subcommand(name, help);
  sub->fallthrough();
  return sub;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::kSchemaError, path.string() + ": " + e.what());
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits "name=value"; the name is the text before the first '='.
std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw UsageError("expected NAME=PATH, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

json metric_result(const std::string& metric, const std::string& key, double value,
                   json metadata) {
  json j;
  j["metric"] = metric;
  j["value"] = value;
  j[key] = value;
  j["metadata"] = std::move(metadata);
  return j;
}

std::set<std::string> id_set(const std::vector<std::string>& ids) {
  return {ids.begin(), ids.end()};
}

// ---------------------------------------------------------------- data model

void add_fixture(CLI::App& app, Registry& reg) {
  struct Opts {
    int writers = 5;
    int samples = 200;
    std::string out;
    double char_error_rate = 0.0;
    std::optional<double> clean_fraction;
    double style_accuracy = 1.0;
    double style_jitter = 0.0;
    std::optional<std::uint64_t> writer_seed;
    std::string prefix = "s";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "fixture", "Generate a synthetic handwriting fixture dataset");
  sub->add_option("--writers", o->writers, "Number of writers")->capture_default_str();
  sub->add_option("--samples", o->samples, "Number of word samples")->capture_default_str();
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->add_option("--char-error-rate", o->char_error_rate,
                  "Per-character substitution rate in the transcription log");
  sub->add_option("--clean-fraction", o->clean_fraction,
                  "Exact fraction of error-free transcription records");
  sub->add_option("--style-accuracy", o->style_accuracy,
                  "Probability that the style log predicts the true writer");
  sub->add_option("--style-jitter", o->style_jitter, "Writer parameter perturbation");
  sub->add_option("--writer-seed", o->writer_seed, "Seed for writer parameters");
  sub->add_option("--prefix", o->prefix, "Sample ID prefix");
  reg[sub] = [o](const Context& ctx) {
    FixtureOptions fo;
    fo.char_error_rate = o->char_error_rate;
    fo.clean_fraction = o->clean_fraction;
    fo.style_accuracy = o->style_accuracy;
    fo.style_jitter = o->style_jitter;
    fo.writer_seed = o->writer_seed;
    fo.id_prefix = o->prefix;
    const auto ds = generate_fixture_dataset(o->writers, o->samples, ctx.seed, fo);
    const auto paths = write_fixture(ds, o->out);
    json files = json::object();
    for (const auto& p : paths) {
      files[fs::relative(p, o->out).generic_string()] = sha256_file(p);
    }
    ctx.emit_json({{"n_writers", o->writers},
                   {"n_samples", o->samples},
                   {"seed", ctx.seed},
                   {"files", files}});
  };
}

void add_partition_lexicon(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string train;
    std::string words;
    std::string manifest;
    std::string tagged_out;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "partition-lexicon",
                         "Split candidate words into in- and out-of-vocabulary sets");
  sub->add_option("--train", o->train, "Training manifest (defines the lexicon)")->required();
  auto* words = sub->add_option("--words", o->words, "Candidate words, one per line");
  auto* man = sub->add_option("--manifest", o->manifest, "Candidate manifest to tag");
  words->excludes(man);
  sub->add_option("--tagged-out", o->tagged_out, "Write the tagged candidate manifest here")
      ->needs(man);
  reg[sub] = [o](const Context& ctx) {
    require(!o->words.empty() || !o->manifest.empty(), ErrorCode::kInvalidArgument,
            "one of --words or --manifest is required");
    const auto train = load_manifest(o->train);
    std::vector<std::string> candidates;
    std::optional<DatasetManifest> cand;
    if (!o->words.empty()) {
      candidates = load_id_list(o->words);
    } else {
      cand = load_manifest(o->manifest);
      for (const auto& s : cand->samples()) candidates.push_back(s.transcript);
    }
    const auto part = partition_lexicon(train.lexicon(), candidates);
    if (cand && !o->tagged_out.empty()) {
      write_manifest(tag_vocabulary(*cand, train.lexicon()), o->tagged_out);
    }
    ctx.emit_json({{"lexicon_size", train.lexicon().size()},
                   {"in_vocabulary", part.in_vocabulary},
                   {"out_of_vocabulary", part.out_of_vocabulary}});
  };
}

void add_style_split(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string manifest;
    double fraction = 0.7;
    std::string train_out;
    std::string eval_out;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "style-split", "Per-writer stratified train/eval split");
  sub->add_option("--manifest", o->manifest, "Dataset manifest")->required();
  sub->add_option("--fraction", o->fraction, "Train fraction")->capture_default_str();
  sub->add_option("--train-out", o->train_out, "Write train IDs here");
  sub->add_option("--eval-out", o->eval_out, "Write eval IDs here");
  reg[sub] = [o](const Context& ctx) {
    const auto m = load_manifest(o->manifest);
    const auto split = make_style_split(m, o->fraction, ctx.seed);
    if (!o->train_out.empty()) write_text_file(o->train_out, id_list_to_text(split.train_ids));
    if (!o->eval_out.empty()) write_text_file(o->eval_out, id_list_to_text(split.eval_ids));
    ctx.emit_json({{"train_fraction", o->fraction},
                   {"seed", ctx.seed},
                   {"train_size", split.train_ids.size()},
                   {"eval_size", split.eval_ids.size()},
                   {"train_digest", id_set_digest(split.train_ids)},
                   {"eval_digest", id_set_digest(split.eval_ids)},
                   {"warnings", split.warnings}});
  };
}

// ------------------------------------------------------------- pixel metrics

json summary_json(const SummaryStat& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}, {"count", s.count}};
}

void add_pixel(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string pairs;
    std::string ssim = "global";
    std::size_t window = 11;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "pixel", "MSE, RMSE, PSNR and SSIM over aligned image pairs");
  sub->add_option("--pairs", o->pairs, "JSON Lines of {\"real\", \"generated\"[, \"label\"]}")
      ->required();
  sub->add_option("--ssim", o->ssim, "SSIM mode")
      ->check(CLI::IsMember({"global", "windowed"}))
      ->capture_default_str();
  sub->add_option("--window", o->window, "Window size for windowed SSIM")->capture_default_str();
  reg[sub] = [o](const Context& ctx) {
    const fs::path base = fs::path(o->pairs).parent_path();
    std::ifstream in(o->pairs, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open " + o->pairs);
    std::vector<std::string> labels;
    std::vector<GrayImage> images;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        fail(ErrorCode::kSchemaError, "pairs line " + std::to_string(lineno) + ": " + e.what());
      }
      require(j.is_object() && j.contains("real") && j.contains("generated") &&
                  j["real"].is_string() && j["generated"].is_string(),
              ErrorCode::kSchemaError,
              "pairs line " + std::to_string(lineno) + ": needs string 'real' and 'generated'");
      const fs::path a = base / j["real"].get<std::string>();
      const fs::path b = base / j["generated"].get<std::string>();
      labels.push_back(j.contains("label") ? j["label"].get<std::string>()
                                           : fs::path(b).filename().string());
      images.push_back(load_image(a));
      images.push_back(load_image(b));
    }
    std::vector<ImagePair> pairs;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      pairs.push_back({labels[i], &images[2 * i], &images[2 * i + 1]});
    }
    const auto mode = o->ssim == "global" ? SsimMode::kGlobal : SsimMode::kWindowed;
    const auto r = evaluate_pixel_pairs(pairs, mode, o->window);
    json rows = json::array();
    for (const auto& p : r.pairs) {
      rows.push_back({{"label", p.label},
                      {"mse", p.mse},
                      {"rmse", p.rmse},
                      {"psnr", p.psnr ? json(*p.psnr) : json("inf")},
                      {"ssim", p.ssim}});
    }
    json meta = {{"variance", "population (1/n)"},
                 {"psnr_peak", "max intensity of the real image"},
                 {"ssim_mode", o->ssim},
                 {"pairs_sha256", sha256_file(o->pairs)}};
    if (mode == SsimMode::kWindowed) meta["ssim_window"] = o->window;
    ctx.emit_json({{"metric", "pixel"},
                   {"pairs", rows},
                   {"mse", summary_json(r.mse)},
                   {"rmse", summary_json(r.rmse)},
                   {"psnr", summary_json(r.psnr)},
                   {"ssim", summary_json(r.ssim)},
                   {"identical_pairs", r.identical_pairs},
                   {"metadata", meta}});
  };
}

// ------------------------------------------------------ distribution metrics

void add_fid(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string real, gen;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "fid", "Frechet distance between Gaussian fits of two feature sets");
  sub->add_option("--real", o->real, "Real features (HTGF)")->required();
  sub->add_option("--gen", o->gen, "Generated features (HTGF)")->required();
  reg[sub] = [o](const Context& ctx) {
    const auto r = load_feature_matrix(o->real);
    const auto g = load_feature_matrix(o->gen);
    const double v = fid(gaussian_summary(r), gaussian_summary(g));
    ctx.emit_json(metric_result(
        "FID", "fid", v,
        {{"covariance", "unbiased (1/(N-1))"},
         {"matrix_sqrt", "symmetric product, eigenvalues <= 1e-10 clamped to 0"},
         {"n_real", r.rows()},
         {"n_gen", g.rows()},
         {"dim", r.cols()},
         {"sources", {{"real", sha256_file(o->real)}, {"gen", sha256_file(o->gen)}}}}));
  };
}

void add_kid(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string real, gen;
    int degree = 3;
    std::optional<double> gamma;
    double coef0 = 1.0;
    std::size_t subsets = 0;
    std::size_t subset_size = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "kid", "Unbiased polynomial-kernel MMD^2 between feature sets");
  sub->add_option("--real", o->real, "Real features (HTGF)")->required();
  sub->add_option("--gen", o->gen, "Generated features (HTGF)")->required();
  sub->add_option("--degree", o->degree, "Kernel degree")->capture_default_str();
  sub->add_option("--gamma", o->gamma, "Kernel gamma (default 1/D)");
  sub->add_option("--coef0", o->coef0, "Kernel offset")->capture_default_str();
  auto* s = sub->add_option("--subsets", o->subsets, "Average over this many random blocks");
  auto* b = sub->add_option("--subset-size", o->subset_size, "Rows per block");
  s->needs(b);
  b->needs(s);
  reg[sub] = [o](const Context& ctx) {
    const auto r = load_feature_matrix(o->real);
    const auto g = load_feature_matrix(o->gen);
    KernelSpec k{o->degree, o->gamma, o->coef0};
    json meta = {{"estimator", "unbiased MMD^2"},
                 {"kernel",
                  {{"type", "polynomial"},
                   {"degree", k.degree},
                   {"gamma", k.gamma_for(r.cols())},
                   {"coef0", k.coef0}}},
                 {"n_real", r.rows()},
                 {"n_gen", g.rows()},
                 {"sources", {{"real", sha256_file(o->real)}, {"gen", sha256_file(o->gen)}}}};
    if (o->subsets > 0) {
      const auto est = kid_subsets(r, g, k, o->subsets, o->subset_size, ctx.seed, ctx.threads);
      meta["subsets"] = est.subsets;
      meta["subset_size"] = est.subset_size;
      meta["seed"] = ctx.seed;
      auto j = metric_result("KID", "kid", est.mean, meta);
      j["stddev"] = est.stddev;
      ctx.emit_json(j);
    } else {
      ctx.emit_json(metric_result("KID", "kid", kid(r, g, k, ctx.threads), meta));
    }
  };
}

void add_is(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string logits;
    std::size_t splits = 1;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "is", "Inception score of classifier outputs");
  sub->add_option("--logits", o->logits, "Logits or probabilities (HTGF)")->required();
  sub->add_option("--splits", o->splits, "Number of contiguous splits")->capture_default_str();
  reg[sub] = [o](const Context& ctx) {
    const auto l = load_logits(o->logits);
    const auto s = inception_score(l, o->splits);
    auto j = metric_result("IS", "is", s.mean,
                           {{"splits", s.splits},
                            {"stddev_convention", "population"},
                            {"input", l.is_probability() ? "probabilities" : "logits (softmax)"},
                            {"sources", {{"logits", sha256_file(o->logits)}}}});
    j["stddev"] = s.stddev;
    ctx.emit_json(j);
  };
}

std::vector<LayerSource> layer_sources(const std::vector<std::string>& specs) {
  std::vector<LayerSource> out;
  for (const auto& spec : specs) {
    LayerSource src;
    const auto eq = spec.rfind('=');
    if (eq == std::string::npos) {
      src.path = spec;
    } else {
      src.path = spec.substr(0, eq);
      try {
        std::size_t used = 0;
        src.weight = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("bad layer weight in '" + spec + "'");
      }
    }
    out.push_back(src);
  }
  return out;
}

void add_lpips(CLI::App& app, Registry& reg) {
  struct Opts {
    std::vector<std::string> a, b;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "lpips", "Weighted distance between normalised feature maps");
  sub->add_option("--a", o->a, "Layer file of set A, PATH[=WEIGHT], repeatable")->required();
  sub->add_option("--b", o->b, "Layer file of set B, PATH[=WEIGHT], repeatable")->required();
  reg[sub] = [o](const Context& ctx) {
    const auto sa = layer_sources(o->a);
    const auto sb = layer_sources(o->b);
    const auto a = load_layer_maps(sa);
    const auto b = load_layer_maps(sb);
    const auto values = lpips(a, b, ctx.threads);
    double mean = 0.0;
    json per = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      mean += values[i];
      per.push_back({{"sample_id", a.ids()[i]}, {"value", values[i]}});
    }
    mean /= static_cast<double>(values.size());
    json layers = json::array();
    for (const auto& l : a.layers()) layers.push_back({{"name", l.name}, {"weight", l.weight}});
    json sources = json::array();
    for (const auto& s : sa) sources.push_back(sha256_file(s.path));
    for (const auto& s : sb) sources.push_back(sha256_file(s.path));
    auto j = metric_result("LPIPS", "lpips", mean,
                           {{"normalisation", "x / (||x||_2 + 1e-10) over channels"},
                            {"layers", layers},
                            {"sources", sources}});
    j["per_sample"] = per;
    ctx.emit_json(j);
  };
}

void add_hwd(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string real, gen, manifest, gen_manifest;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "hwd", "Mean per-writer distance of aggregated features");
  sub->add_option("--real", o->real, "Real features (HTGF)")->required();
  sub->add_option("--gen", o->gen, "Generated features (HTGF)")->required();
  sub->add_option("--manifest", o->manifest, "Manifest assigning writers to real IDs")
      ->required();
  sub->add_option("--gen-manifest", o->gen_manifest,
                  "Manifest for generated IDs (default: --manifest)");
  reg[sub] = [o](const Context& ctx) {
    const auto rm = load_manifest(o->manifest);
    const auto gm = o->gen_manifest.empty() ? rm : load_manifest(o->gen_manifest);
    const auto rt = writer_feature_table(load_feature_matrix(o->real), rm);
    const auto gt = writer_feature_table(load_feature_matrix(o->gen), gm);
    ctx.emit_json(metric_result(
        "HWD", "hwd", hwd(rt, gt),
        {{"writer_aggregation", "mean feature vector"},
         {"n_writers", rt.size()},
         {"sources", {{"real", sha256_file(o->real)}, {"gen", sha256_file(o->gen)}}}}));
  };
}

// ------------------------------------------------------------ geometry score

void add_gs(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string a, b;
    GsParams p;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "gs", "Geometry score between two point clouds");
  sub->add_option("--a", o->a, "First feature set (HTGF)")->required();
  sub->add_option("--b", o->b, "Second feature set (HTGF)")->required();
  sub->add_option("--landmarks", o->p.n_landmarks, "Landmarks per draw")->capture_default_str();
  sub->add_option("--gamma", o->p.gamma, "alpha_max as a fraction of the max distance")
      ->capture_default_str();
  sub->add_option("--imax", o->p.i_max, "Number of hole-count bins")->capture_default_str();
  sub->add_option("--repeats", o->p.n_repeats, "Landmark draws")->capture_default_str();
  reg[sub] = [o](const Context& ctx) {
    GsParams p = o->p;
    p.seed = ctx.seed;
    const auto a = load_feature_matrix(o->a);
    const auto b = load_feature_matrix(o->b);
    const auto r = geometry_score(a.data(), b.data(), p, ctx.threads);
    json params = {{"landmarks", p.n_landmarks},
                   {"gamma", p.gamma},
                   {"imax", p.i_max},
                   {"repeats", p.n_repeats},
                   {"seed", p.seed}};
    auto j = metric_result("GS", "gs", r.score,
                           {{"params", params},
                            {"filtration", "lazy witness complex, flag triangles"},
                            {"sources", {{"a", sha256_file(o->a)}, {"b", sha256_file(o->b)}}}});
    j["mrlt_a"] = r.mrlt_a;
    j["mrlt_b"] = r.mrlt_b;
    j["params"] = params;
    ctx.emit_json(j);
  };
}

// -------------------------------------------------------------- text metrics

json cer_json(const CerReport& r, bool macro, bool per_record, const std::string& source) {
  const bool chars = r.unit == ErrorUnit::kCharacter;
  const std::string metric = chars ? "CER" : "WER";
  const double value = macro ? r.macro_rate : r.micro_rate;
  json j = metric_result(metric, chars ? "cer" : "wer", value,
                         {{"averaging", macro ? "macro" : "micro"},
                          {"normalisation", "Unicode NFC, case-sensitive"},
                          {"tokenisation", chars ? "codepoints" : "whitespace runs"},
                          {"sources", {{"log", source}}}});
  j["micro_rate"] = r.micro_rate;
  j["macro_rate"] = r.macro_rate;
  j["percent"] = 100.0 * r.micro_rate;
  j["n_records"] = r.records.size();
  j["total_edits"] = r.total_edits;
  j["total_reference_length"] = r.total_reference_length;
  j["split_digest"] = r.split_digest;
  if (per_record) {
    json rows = json::array();
    for (const auto& rec : r.records) {
      rows.push_back({{"sample_id", rec.sample_id},
                      {"substitutions", rec.stats.substitutions},
                      {"insertions", rec.stats.insertions},
                      {"deletions", rec.stats.deletions},
                      {"reference_length", rec.stats.reference_length},
                      {"rate", rec.rate()}});
    }
    j["records"] = rows;
  }
  return j;
}

void add_error_rate(CLI::App& app, Registry& reg, bool chars) {
  struct Opts {
    std::string log;
    bool macro = false;
    bool per_record = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, chars ? "cer" : "wer",
                         chars ? "Character error rate of a transcription log"
                               : "Word error rate of a transcription log");
  sub->add_option("--log", o->log, "Transcription JSON Lines")->required();
  sub->add_flag("--macro", o->macro, "Report the mean of per-record rates as the value");
  sub->add_flag("--per-record", o->per_record, "Include per-record edit statistics");
  reg[sub] = [o, chars](const Context& ctx) {
    const auto recs = load_transcriptions(o->log);
    const auto r = chars ? cer(recs, ctx.threads) : wer(recs, ctx.threads);
    ctx.emit_json(cer_json(r, o->macro, o->per_record, sha256_file(o->log)));
  };
}

void add_htg_htr(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string log, split;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "htg-htr", "CER (%) on the real test split of an HTR trained on synthetic data");
  sub->add_option("--log", o->log, "Transcription JSON Lines")->required();
  sub->add_option("--split", o->split, "Test split manifest")->required();
  reg[sub] = [o](const Context& ctx) {
    const auto recs = load_transcriptions(o->log);
    const auto split = load_manifest(o->split);
    const double v = htg_htr(recs, split, ctx.threads);
    std::vector<std::string> ids;
    for (const auto& r : recs) ids.push_back(r.sample_id);
    auto j = metric_result("HTG_HTR", "htg_htr", v,
                           {{"averaging", "micro"},
                            {"normalisation", "Unicode NFC, case-sensitive"},
                            {"split", split.split_name()},
                            {"sources", {{"log", sha256_file(o->log)},
                                         {"split", sha256_file(o->split)}}}});
    j["split_digest"] = id_set_digest(ids);
    ctx.emit_json(j);
  };
}

void add_htg_oov(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string log, manifest;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "htg-oov", "CER (%) of an HTR over out-of-vocabulary words");
  sub->add_option("--log", o->log, "Transcription JSON Lines")->required();
  sub->add_option("--manifest", o->manifest, "OOV-tagged manifest")->required();
  reg[sub] = [o](const Context& ctx) {
    const auto recs = load_transcriptions(o->log);
    const auto m = load_manifest(o->manifest);
    const double v = htg_oov(recs, m, ctx.threads);
    std::vector<std::string> ids;
    for (const auto& r : recs) ids.push_back(r.sample_id);
    auto j = metric_result("HTG_OOV", "htg_oov", v,
                           {{"averaging", "micro"},
                            {"normalisation", "Unicode NFC, case-sensitive"},
                            {"sources", {{"log", sha256_file(o->log)},
                                         {"manifest", sha256_file(o->manifest)}}}});
    j["split_digest"] = id_set_digest(ids);
    ctx.emit_json(j);
  };
}

void add_filter(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string log;
    double threshold = 0.0;
    std::string kept_out;
    std::string dropped_out;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "filter", "Keep records whose own CER is at most a threshold");
  sub->add_option("--log", o->log, "Transcription JSON Lines")->required();
  sub->add_option("--threshold", o->threshold, "Maximum per-record CER")->capture_default_str();
  sub->add_option("--kept-out", o->kept_out, "Write kept IDs here, one per line");
  sub->add_option("--dropped-out", o->dropped_out, "Write dropped IDs here, one per line");
  reg[sub] = [o](const Context& ctx) {
    const auto recs = load_transcriptions(o->log);
    const auto f = filter_by_cer(recs, o->threshold, ctx.threads);
    if (!o->kept_out.empty()) write_text_file(o->kept_out, id_list_to_text(f.kept_ids));
    if (!o->dropped_out.empty()) write_text_file(o->dropped_out, id_list_to_text(f.dropped_ids));
    ctx.emit_json({{"threshold", f.threshold},
                   {"n_records", recs.size()},
                   {"kept", f.kept_ids.size()},
                   {"dropped", f.dropped_ids.size()},
                   {"kept_digest", id_set_digest(f.kept_ids)},
                   {"sources", {{"log", sha256_file(o->log)}}}});
  };
}

// ------------------------------------------------------------- style metrics

void add_htg_style(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string pred, split, writers;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "htg-style", "Writer-identification accuracy (%) on the eval split");
  sub->add_option("--pred", o->pred, "Style prediction JSON Lines")->required();
  sub->add_option("--split", o->split, "Evaluation split IDs, one per line")->required();
  sub->add_option("--writers", o->writers,
                  "Manifest whose writers form the classifier's label set");
  reg[sub] = [o](const Context& ctx) {
    const auto recs = load_style_predictions(o->pred);
    const auto eval = id_set(load_id_list(o->split));
    std::optional<std::set<std::int64_t>> known;
    if (!o->writers.empty()) {
      known.emplace();
      for (const auto& s : load_manifest(o->writers).samples()) known->insert(s.writer_id);
    }
    const double v = htg_style(recs, eval, known);
    const auto r = style_accuracy(recs, known);
    json per = json::object();
    for (const auto& [w, acc] : r.per_writer) {
      per[std::to_string(w)] = {{"correct", acc.correct},
                                {"total", acc.total},
                                {"accuracy", acc.accuracy()}};
    }
    json conf = json::array();
    for (const auto& [cell, n] : r.confusion) {
      conf.push_back({{"true", cell.first}, {"predicted", cell.second}, {"count", n}});
    }
    auto j = metric_result("HTG_style", "htg_style", v,
                           {{"unknown_labels", "counted as errors"},
                            {"sources", {{"pred", sha256_file(o->pred)},
                                         {"split", sha256_file(o->split)}}}});
    j["accuracy"] = r.accuracy;
    j["n_records"] = r.n_records;
    j["n_correct"] = r.n_correct;
    j["unknown_predictions"] = r.unknown_predictions;
    j["per_writer"] = per;
    j["confusion"] = conf;
    ctx.emit_json(j);
  };
}

// ------------------------------------------------------------------ protocol

void add_scaling_plan(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string manifest, out;
    std::size_t step = 5000;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "scaling-plan", "Nested training subsets of growing size");
  sub->add_option("--manifest", o->manifest, "Synthetic training manifest")->required();
  sub->add_option("--step", o->step, "Samples added per step")->capture_default_str();
  sub->add_option("--out", o->out, "Directory for sub-manifests and plan.json");
  reg[sub] = [o](const Context& ctx) {
    const auto m = load_manifest(o->manifest);
    const auto plan = scaling_subsets(m, o->step, ctx.seed);
    if (!o->out.empty()) write_scaling_plan(plan, m, o->out);
    ctx.emit_json(scaling_plan_to_json(plan));
  };
}

void add_scaling_curve(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string results;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "scaling-curve", "CER versus training-set size");
  sub->add_option("--results", o->results, "CSV rows of size,cer_percent")->required();
  reg[sub] = [o](const Context& ctx) {
    const auto pts = parse_scaling_csv(read_text_file(o->results));
    const auto curve = scaling_curve(pts);
    if (ctx.format == "csv") {
      ctx.emit(curve.to_csv());
    } else if (ctx.format == "json") {
      ctx.emit_json(curve.to_json());
    } else {
      throw UsageError("scaling-curve supports --format json or csv");
    }
  };
}

void add_report(CLI::App& app, Registry& reg) {
  struct Opts {
    std::vector<std::string> inputs;
    std::vector<std::string> entries;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "report", "Method-by-metric comparison table");
  sub->add_option("--input", o->inputs, "JSON list of {method, metric, value, metadata}");
  sub->add_option("--entry", o->entries, "METHOD=PATH of a metric result file, repeatable");
  reg[sub] = [o](const Context& ctx) {
    std::vector<MetricEntry> all;
    for (const auto& path : o->inputs) {
      const std::string digest = sha256_file(path);
      for (auto e : entries_from_json(read_json_file(path))) {
        if (!e.metadata.is_object()) e.metadata = {{"value", e.metadata}};
        if (!e.metadata.contains("source_sha256")) e.metadata["source_sha256"] = digest;
        all.push_back(std::move(e));
      }
    }
    for (const auto& spec : o->entries) {
      const auto [method, path] = split_assignment(spec);
      const json j = read_json_file(path);
      require(j.is_object() && j.contains("metric") && j.contains("value") &&
                  j["metric"].is_string() && j["value"].is_number(),
              ErrorCode::kSchemaError, path + ": not a metric result file");
      MetricEntry e{method, j["metric"].get<std::string>(), j["value"].get<double>(),
                    j.value("metadata", json::object())};
      if (!e.metadata.is_object()) e.metadata = {{"value", e.metadata}};
      e.metadata["source_sha256"] = sha256_file(path);
      all.push_back(std::move(e));
    }
    const auto report = build_report(all);
    ctx.emit(render_report(report, parse_report_format(ctx.format)));
  };
}

CerSummary read_cer_summary(const std::string& path) {
  const json j = read_json_file(path);
  require(j.is_object() && j.contains("split_digest") && j["split_digest"].is_string(),
          ErrorCode::kSchemaError, path + ": missing 'split_digest'");
  CerSummary s;
  s.split_digest = j["split_digest"].get<std::string>();
  const std::string metric = j.value("metric", "");
  if (j.contains("cer_percent") && j["cer_percent"].is_number()) {
    s.cer_percent = j["cer_percent"].get<double>();
  } else if (metric == "CER" && j.contains("percent") && j["percent"].is_number()) {
    s.cer_percent = j["percent"].get<double>();
  } else if ((metric == "HTG_HTR" || metric == "HTG_OOV") && j["value"].is_number()) {
    s.cer_percent = j["value"].get<double>();
  } else {
    fail(ErrorCode::kSchemaError, path + ": no CER percentage found");
  }
  return s;
}

void add_compare(CLI::App& app, Registry& reg) {
  struct Opts {
    std::string baseline;
    std::vector<std::string> variants;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = subcommand(app, "compare", "CER deltas of variants against a baseline");
  sub->add_option("--baseline", o->baseline, "Baseline CER result (JSON)")->required();
  sub->add_option("--variant", o->variants, "NAME=PATH of a variant CER result, repeatable")
      ->required();
  reg[sub] = [o](const Context& ctx) {
    const auto base = read_cer_summary(o->baseline);
    std::vector<std::pair<std::string, CerSummary>> vs;
    for (const auto& spec : o->variants) {
      const auto [name, path] = split_assignment(spec);
      vs.emplace_back(name, read_cer_summary(path));
    }
    ctx.emit_json(utility_comparison(base, vs).to_json());
  };
}

void print_error(std::ostream& err, std::string_view name, const std::string& message) {
  err << json{{"error", name}, {"message", message}}.dump() << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluation toolkit for handwritten text generation", "htg-eval"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (default: HTG_EVAL_THREADS or all cores)");
  app.add_option("--output", g.output, "Write the result here instead of stdout");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "markdown"}))
      ->capture_default_str();

  Registry reg;
  add_fixture(app, reg);
  add_partition_lexicon(app, reg);
  add_style_split(app, reg);
  add_pixel(app, reg);
  add_fid(app, reg);
  add_kid(app, reg);
  add_is(app, reg);
  add_lpips(app, reg);
  add_hwd(app, reg);
  add_gs(app, reg);
  add_error_rate(app, reg, true);
  add_error_rate(app, reg, false);
  add_htg_htr(app, reg);
  add_htg_oov(app, reg);
  add_filter(app, reg);
  add_htg_style(app, reg);
  add_scaling_plan(app, reg);
  add_scaling_curve(app, reg);
  add_report(app, reg);
  add_compare(app, reg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx;
  ctx.seed = g.seed;
  ctx.output = g.output;
  ctx.format = g.format;
  ctx.out = &out;
  if (g.threads) {
    const auto t = parse_thread_count(g.threads->c_str());
    if (!t) {
      err << "--threads: expected a positive integer, got '" << *g.threads << "'\n";
      return kExitUsage;
    }
    ctx.threads = *t;
  } else {
    ctx.threads = default_thread_count();
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    reg.at(chosen)(ctx);
  } catch (const UsageError& e) {
    err << chosen->get_name() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    print_error(err, e.name(), e.what());
    return kExitDomainError;
  } catch (const json::exception& e) {
    print_error(err, error_code_name(ErrorCode::kSchemaError), e.what());
    return kExitDomainError;
  } catch (const fs::filesystem_error& e) {
    print_error(err, error_code_name(ErrorCode::kIoError), e.what());
    return kExitDomainError;
  } catch (const std::exception& e) {
    print_error(err, error_code_name(ErrorCode::kInvalidArgument), e.what());
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace htg::cli
