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

// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "htg_eval/digest.hpp"
#include "htg_eval/distribution_metrics.hpp"
#include "htg_eval/error.hpp"
#include "htg_eval/fixture.hpp"
#include "htg_eval/geometry_score.hpp"
#include "htg_eval/linalg.hpp"
#include "htg_eval/manifest.hpp"
#include "htg_eval/protocol.hpp"
#include "htg_eval/random.hpp"
#include "htg_eval/records.hpp"
#include "htg_eval/report.hpp"
#include "htg_eval/style_metrics.hpp"
#include "htg_eval/text_metrics.hpp"
#include "htg_eval_cli/cli.hpp"
#include "test_support.hpp"

namespace htg {
namespace {

using testing::normal;
using testing::random_matrix;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ------------------------------------------------------------------ FID

Outcome fid_oracle() {
  Outcome o;
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const double mr = rng.uniform(-5, 5), mg = rng.uniform(-5, 5);
    const double sr = rng.uniform(0.01, 3), sg = rng.uniform(0.01, 3);
    GaussianSummary r{Eigen::VectorXd::Constant(1, mr), Eigen::MatrixXd::Constant(1, 1, sr * sr), 2};
    GaussianSummary g{Eigen::VectorXd::Constant(1, mg), Eigen::MatrixXd::Constant(1, 1, sg * sg), 2};
    const double expect = (mr - mg) * (mr - mg) + (sr - sg) * (sr - sg);
    worst = std::max(worst, std::abs(fid(r, g) - expect));
  }
  o.check(worst <= 1e-10, "1-D closed form error " + fmt("%.3g", worst));
  double self = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto d = 1 + static_cast<Eigen::Index>(rng.uniform_index(16));
    const auto n = d + 2 + static_cast<Eigen::Index>(rng.uniform_index(200));
    const auto s = gaussian_summary(random_matrix(rng, n, d, -3, 3));
    self = std::max(self, std::abs(fid(s, s)));
  }
  o.check(self <= 1e-8, "fid(X,X) = " + fmt("%.3g", self));
  if (o.pass) o.detail = "max 1-D error " + fmt("%.2g", worst) + ", max fid(X,X) " + fmt("%.2g", self);
  return o;
}

Outcome matrix_sqrt() {
  Outcome o;
  Rng rng(102);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto d = 1 + static_cast<Eigen::Index>(rng.uniform_index(32));
    const auto k = 1 + static_cast<Eigen::Index>(rng.uniform_index(2 * d));
    const Eigen::MatrixXd a = random_matrix(rng, d, k, -2, 2);
    const Eigen::MatrixXd m = a * a.transpose();
    const Eigen::MatrixXd s = matrix_sqrt_psd(m);
    worst = std::max(worst, (s * s - m).norm() / m.norm());
  }
  o.check(worst <= 1e-8, "relative residual " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max relative residual " + fmt("%.2g", worst);
  return o;
}

// ------------------------------------------------------------------ KID

double kid_double_loop(const RowMatrix& x, const RowMatrix& y, double gamma) {
  const auto k = [&](const RowMatrix& a, Eigen::Index i, const RowMatrix& b, Eigen::Index j) {
    double dot = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) dot += a(i, c) * b(j, c);
    return std::pow(gamma * dot + 1.0, 3);
  };
  const double m = static_cast<double>(x.rows()), n = static_cast<double>(y.rows());
  double kxx = 0, kyy = 0, kxy = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.rows(); ++j)
      if (i != j) kxx += k(x, i, x, j);
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    for (Eigen::Index j = 0; j < y.rows(); ++j)
      if (i != j) kyy += k(y, i, y, j);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < y.rows(); ++j) kxy += k(x, i, y, j);
  return kxx / (m * (m - 1)) + kyy / (n * (n - 1)) - 2.0 * kxy / (m * n);
}

Outcome kid_oracle() {
  Outcome o;
  Rng rng(103);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto d = 1 + static_cast<Eigen::Index>(rng.uniform_index(8));
    const auto m = 2 + static_cast<Eigen::Index>(rng.uniform_index(199));
    const auto n = 2 + static_cast<Eigen::Index>(rng.uniform_index(199));
    const RowMatrix x = random_matrix(rng, m, d);
    const RowMatrix y = random_matrix(rng, n, d, -0.5, 1.5);
    const double got = kid(x, y);
    worst = std::max(worst, std::abs(got - kid_double_loop(x, y, 1.0 / static_cast<double>(d))));
  }
  o.check(worst <= 1e-12, "max abs difference " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max abs difference " + fmt("%.2g", worst);
  return o;
}

// ------------------------------------------------------------------- IS

double is_of(const RowMatrix& p) {
  return inception_score(LogitMatrix(testing::make_ids(static_cast<std::size_t>(p.rows())), p, true))
      .mean;
}

Outcome is_bounds() {
  Outcome o;
  Rng rng(104);
  for (int t = 0; t < 1000 && o.pass; ++t) {
    const auto n = 1 + static_cast<Eigen::Index>(rng.uniform_index(60));
    const auto k = 2 + static_cast<Eigen::Index>(rng.uniform_index(19));
    RowMatrix p(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) p(i, j) = std::pow(rng.uniform01(), 4);
      p(i, rng.uniform_index(static_cast<std::uint64_t>(k))) += 0.01;
      p.row(i) /= p.row(i).sum();
    }
    const double s = is_of(p);
    o.check(s >= 1.0 && s <= static_cast<double>(k),
            "IS " + fmt("%.17g", s) + " outside [1, " + std::to_string(k) + "]");
  }
  for (Eigen::Index k = 2; k <= 20 && o.pass; ++k) {
    const RowMatrix u = RowMatrix::Constant(3 * k, k, 1.0 / static_cast<double>(k));
    o.check(std::abs(is_of(u) - 1.0) <= 1e-9, "uniform rows give " + fmt("%.17g", is_of(u)));
    RowMatrix one = RowMatrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) one(i, k - 1 - i) = 1.0;
    o.check(std::abs(is_of(one) - static_cast<double>(k)) <= 1e-9,
            "distinct one-hots give " + fmt("%.17g", is_of(one)));
  }
  if (o.pass) o.detail = "1000 random matrices in [1, K]; uniform and one-hot extremes exact";
  return o;
}

// ------------------------------------------------------------------- GS

RowMatrix circle(Rng& rng, int n) {
  RowMatrix m(n, 2);
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(0, 2 * M_PI);
    m(i, 0) = std::cos(t);
    m(i, 1) = std::sin(t);
  }
  return m;
}

RowMatrix disk(Rng& rng, int n) {
  RowMatrix m(n, 2);
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(rng.uniform01());
    const double t = rng.uniform(0, 2 * M_PI);
    m(i, 0) = r * std::cos(t);
    m(i, 1) = r * std::sin(t);
  }
  return m;
}

Outcome gs_properties() {
  Outcome o;
  const GsParams desk;
  Rng rng(0);
  const RowMatrix c1 = circle(rng, 500), c2 = circle(rng, 500), d = disk(rng, 500);
  const auto cd = geometry_score(c1, d, desk);
  const auto cc = geometry_score(c1, c2, desk);
  o.check(cd.score > cc.score, "GS(circle, disk) " + fmt("%.4g", cd.score) +
                                   " <= GS(circle, circle') " + fmt("%.4g", cc.score));
  for (const auto* m : {&cd.mrlt_a, &cd.mrlt_b, &cc.mrlt_b}) {
    double sum = 0.0;
    bool nonneg = true;
    for (double v : *m) {
      sum += v;
      nonneg = nonneg && v >= 0.0;
    }
    o.check(nonneg && sum >= 0.0 && sum <= 1.0 + 1e-9, "MRLT sum " + fmt("%.17g", sum));
  }
  Rng cloud_rng(105);
  double shift = 0.0;
  for (int t = 0; t < 3; ++t) {
    RowMatrix x(300, 3);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < 3; ++j) x(i, j) = normal(cloud_rng);
    o.check(geometry_score(x, x, desk).score == 0.0, "GS(X,X) != 0");
    RowMatrix moved = x;
    moved.rowwise() += Eigen::RowVector3d(7.5, -3.25, 100.0);
    shift = std::max(shift, geometry_score(x, moved, desk).score);
  }
  o.check(shift <= 1e-9, "translated copy GS " + fmt("%.3g", shift));
  if (o.pass) {
    o.detail = "GS(circle, disk) " + fmt("%.4g", cd.score) + " > GS(circle, circle') " +
               fmt("%.4g", cc.score) + ", translation " + fmt("%.2g", shift);
  }
  return o;
}

// -------------------------------------------------------- edit distance

const std::vector<std::pair<char32_t, std::string>> kAlphabet{
    {U'a', "a"}, {U'b', "b"}, {U'c', "c"}, {U'é', "\xC3\xA9"}, {U'ß', "\xC3\x9F"},
    {U'中', "\xE4\xB8\xAD"}};

std::pair<std::u32string, std::string> random_text(Rng& rng) {
  std::u32string u;
  std::string s;
  const auto n = rng.uniform_index(11);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [c, utf8] = kAlphabet[rng.uniform_index(kAlphabet.size())];
    u += c;
    s += utf8;
  }
  return {u, s};
}

std::size_t memo_distance(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<long>> memo(a.size() + 1, std::vector<long>(b.size() + 1, -1));
  std::function<long(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> long {
    if (i == 0) return static_cast<long>(j);
    if (j == 0) return static_cast<long>(i);
    long& slot = memo[i][j];
    if (slot >= 0) return slot;
    slot = std::min({go(i - 1, j) + 1, go(i, j - 1) + 1,
                     go(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
    return slot;
  };
  return static_cast<std::size_t>(go(a.size(), b.size()));
}

Outcome edit_distance() {
  Outcome o;
  Rng rng(106);
  for (int t = 0; t < 10000 && o.pass; ++t) {
    const auto [ua, a] = random_text(rng);
    const auto [ub, b] = random_text(rng);
    const auto [uc, c] = random_text(rng);
    const std::size_t ab = levenshtein(a, b).distance();
    o.check(ab == memo_distance(ua, ub), "oracle mismatch on '" + a + "' / '" + b + "'");
    o.check(levenshtein(b, a).distance() == ab, "asymmetric on '" + a + "' / '" + b + "'");
    o.check((ab == 0) == (ua == ub), "identity of indiscernibles");
    o.check(levenshtein(a, c).distance() <= ab + levenshtein(b, c).distance(), "triangle");
    const std::size_t lo = ua.size() > ub.size() ? ua.size() - ub.size() : ub.size() - ua.size();
    o.check(ab >= lo && ab <= std::max(ua.size(), ub.size()), "length bounds");
    o.check(levenshtein(a, a).distance() == 0, "d(a,a) != 0");
  }
  if (o.pass) o.detail = "10000 pairs exact; axioms and length bounds hold";
  return o;
}

// ------------------------------------------------------------- protocol

Outcome protocol_integrity() {
  Outcome o;
  const DatasetManifest oov(
      "oov", {{"o1", std::nullopt, "zebra", 0, VocabTag::kOutOfVocabulary},
              {"o2", std::nullopt, "quokka", 1, VocabTag::kOutOfVocabulary},
              {"i1", std::nullopt, "the", 1, VocabTag::kInVocabulary}});
  const std::vector<TranscriptionRecord> clean{{"o1", "zebra", "zebra"}, {"o2", "quokka", "qukka"}};
  std::vector<TranscriptionRecord> leaked = clean;
  leaked.push_back({"i1", "the", "the"});
  o.check(std::abs(htg_oov(clean, oov) - 100.0 / 11.0) < 1e-12, "htg_oov value");
  o.check(testing::throws_code([&] { htg_oov(leaked, oov); }, ErrorCode::kVocabViolation),
          "htg_oov accepted an IV record");

  const auto fx = generate_fixture_dataset(4, 400, 7);
  const auto split = make_style_split(fx.manifest, 0.7, 7);
  const std::set<std::string> eval(split.eval_ids.begin(), split.eval_ids.end());
  std::vector<StylePredictionRecord> eval_preds, with_train;
  for (const auto& r : fx.style_predictions) {
    if (eval.contains(r.sample_id)) eval_preds.push_back(r);
  }
  with_train = eval_preds;
  for (const auto& r : fx.style_predictions) {
    if (!eval.contains(r.sample_id)) {
      with_train.push_back(r);
      break;
    }
  }
  o.check(htg_style(eval_preds, eval) == 100.0, "perfect classifier below 100");
  o.check(testing::throws_code([&] { htg_style(with_train, eval); }, ErrorCode::kSplitViolation),
          "htg_style accepted a train-split ID");

  FixtureOptions fo;
  fo.char_error_rate = 0.05;
  fo.clean_fraction = 0.73;
  const auto big = generate_fixture_dataset(5, 10000, 8, fo);
  std::size_t equal = 0;
  for (const auto& r : big.transcriptions) equal += r.reference == r.hypothesis;
  const auto f = filter_by_cer(big.transcriptions, 0.0);
  o.check(equal == 7300, "fixture has " + std::to_string(equal) + " clean records, not 7300");
  o.check(f.kept_ids.size() == 7300 && f.dropped_ids.size() == 2700,
          "filter kept " + std::to_string(f.kept_ids.size()) + " / dropped " +
              std::to_string(f.dropped_ids.size()));
  if (o.pass) o.detail = "IV and train-ID leaks rejected; filter kept 7300, dropped 2700";
  return o;
}

Outcome scaling_plan() {
  Outcome o;
  std::vector<SampleEntry> s;
  for (int i = 0; i < 47000; ++i) {
    s.push_back({"n" + std::to_string(i), std::nullopt, "w" + std::to_string(i % 500), i % 300,
                 VocabTag::kUnset});
  }
  const DatasetManifest m("synthetic", std::move(s));
  const auto plan = scaling_subsets(m, 5000, 0);
  o.check(plan.sizes.size() == 10, std::to_string(plan.sizes.size()) + " subsets");
  o.check(!plan.sizes.empty() && plan.sizes.back() == 47000, "final subset is not 47000");
  for (std::size_t k = 0; k + 1 < plan.sizes.size(); ++k) {
    o.check(plan.sizes[k] == 5000 * (k + 1), "size " + std::to_string(plan.sizes[k]));
    o.check(plan.sizes[k] < plan.sizes[k + 1], "sizes not increasing");
  }
  o.check(std::set<std::string>(plan.order.begin(), plan.order.end()).size() == 47000,
          "order is not a permutation");
  testing::TempDir dir;
  const auto paths = write_scaling_plan(plan, m, dir.path());
  std::set<std::string> prev;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto ids = load_manifest(paths[k]).ids();
    const std::set<std::string> cur(ids.begin(), ids.end());
    o.check(cur.size() == plan.sizes[k], "written subset size");
    o.check(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()), "not nested");
    prev = cur;
  }
  if (o.pass) o.detail = "10 nested subsets, final 47000";
  return o;
}

// --------------------------------------------------------------- report

Outcome report_fixture() {
  Outcome o;
  std::vector<MetricEntry> e{{"Real", "HTG_HTR", 5.14}, {"Real", "HTG_style", 82.05}};
  const auto add = [&](const std::string& m, std::vector<double> v) {
    for (std::size_t i = 0; i < 6; ++i) e.push_back({m, kTableColumns[i], v[i]});
  };
  add("GANwriting", {37.41, 0.0196, 0.610, 39.56, 4.59, 7.45});
  add("SmartPatch", {48.24, 0.0331, 0.641, 39.22, 3.00, 9.20});
  add("VATr", {27.79, 0.0105, 0.591, 21.37, 1.39, 5.42});
  add("WordStylist", {36.69, 0.0194, 0.303, 8.23, 67.12, 29.85});
  const std::string expected =
      "| Method | FID | KID | HWD | HTG_HTR | HTG_style | HTG_OOV |\n"
      "|---|---:|---:|---:|---:|---:|---:|\n"
      "| Real | - | - | - | 5.14 | 82.05 | - |\n"
      "| GANwriting | 37.41 | 0.0196 | 0.610 | 39.56 | 4.59 | 7.45 |\n"
      "| SmartPatch | 48.24 | 0.0331 | 0.641 | 39.22 | 3.00 | 9.20 |\n"
      "| VATr | 27.79 | 0.0105 | 0.591 | 21.37 | 1.39 | 5.42 |\n"
      "| WordStylist | 36.69 | 0.0194 | 0.303 | 8.23 | 67.12 | 29.85 |\n";
  const auto md1 = render_report(build_report(e), ReportFormat::kMarkdown);
  const auto md2 = render_report(build_report(e), ReportFormat::kMarkdown);
  o.check(md1 == expected, "markdown layout differs:\n" + md1);
  o.check(md1 == md2, "markdown not deterministic");
  for (auto f : {ReportFormat::kJson, ReportFormat::kCsv}) {
    o.check(render_report(build_report(e), f) == render_report(build_report(e), f),
            "render not deterministic");
  }
  const std::vector<std::pair<std::string, CerSummary>> v{{"with synthetic", {4.49, "split"}}};
  const auto cmp = utility_comparison(CerSummary{5.14, "split"}, v);
  const double delta = cmp.variants.at(0).delta;
  o.check(std::abs(delta + 0.65) < 1e-12 && fmt("%.2f", delta) == "-0.65",
          "delta " + fmt("%.17g", delta));
  if (o.pass) o.detail = "table bytes match; delta " + fmt("%.2f", delta);
  return o;
}

// ---------------------------------------------------------- end to end

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Runs the whole pipeline and returns the digest of every command output.
std::vector<std::string> pipeline(const std::filesystem::path& dir, const std::string& threads,
                                  Outcome& o) {
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  const std::vector<std::string> g{"--seed", "0", "--threads", threads};
  const auto with = [&](std::vector<std::string> args) {
    args.insert(args.begin(), g.begin(), g.end());
    return args;
  };
  const std::vector<std::vector<std::string>> steps{
      with({"fixture", "--writers", "5", "--samples", "200", "--out", p("real"),
            "--char-error-rate", "0.05", "--style-accuracy", "0.8"}),
      {"--seed", "1", "--threads", threads, "fixture", "--writers", "5", "--samples", "200",
       "--out", p("gen"), "--writer-seed", "0", "--style-jitter", "0.2", "--prefix", "g",
       "--char-error-rate", "0.1", "--style-accuracy", "0.6"},
      with({"fid", "--real", p("real/features.htgf"), "--gen", p("gen/features.htgf")}),
      with({"kid", "--real", p("real/features.htgf"), "--gen", p("gen/features.htgf")}),
      with({"gs", "--a", p("real/features.htgf"), "--b", p("gen/features.htgf")}),
      with({"hwd", "--real", p("real/features.htgf"), "--gen", p("gen/features.htgf"),
            "--manifest", p("real/manifest.jsonl"), "--gen-manifest", p("gen/manifest.jsonl")}),
      with({"cer", "--log", p("gen/transcriptions.jsonl")}),
      with({"htg-htr", "--log", p("gen/transcriptions.jsonl"), "--split",
            p("gen/manifest.jsonl")}),
      with({"style-split", "--manifest", p("gen/manifest.jsonl"), "--fraction", "0.7",
            "--train-out", p("train_ids.txt"), "--eval-out", p("eval_ids.txt")}),
      with({"filter", "--log", p("gen/transcriptions.jsonl"), "--kept-out", p("kept.txt")}),
  };
  std::vector<std::string> digests;
  for (const auto& args : steps) {
    const auto r = cli_run(args);
    o.check(r.code == 0, args[4] + " failed: " + r.err);
    digests.push_back(sha256_hex(r.out));
  }
  const auto eval_ids = load_id_list(dir / "eval_ids.txt");
  const std::set<std::string> eval(eval_ids.begin(), eval_ids.end());
  std::vector<StylePredictionRecord> eval_preds;
  for (const auto& r : load_style_predictions(dir / "gen/style.jsonl")) {
    if (eval.contains(r.sample_id)) eval_preds.push_back(r);
  }
  write_text_file(dir / "eval_style.jsonl", style_predictions_to_jsonl(eval_preds));
  const auto s = cli_run(with({"htg-style", "--pred", p("eval_style.jsonl"), "--split",
                               p("eval_ids.txt"), "--writers", p("real/manifest.jsonl")}));
  o.check(s.code == 0, "htg-style failed: " + s.err);
  digests.push_back(sha256_hex(s.out));
  return digests;
}

Outcome end_to_end() {
  Outcome o;
  testing::TempDir one, many;
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = pipeline(one.path(), "1", o);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.check(secs < 60.0, "single-threaded pipeline took " + fmt("%.1f s", secs));
  const auto b = pipeline(many.path(), "4", o);
  o.check(a == b, "output digests differ between --threads 1 and --threads 4");
  if (o.pass) {
    o.detail = "single-threaded " + fmt("%.2f s", secs) + "; " + std::to_string(a.size()) +
               " output digests identical at 1 and 4 threads";
  }
  return o;
}

struct Criterion {
  const char* name;
  double budget_seconds;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace htg

int main() {
  using namespace htg;
  const std::vector<Criterion> criteria{
      {"fid_analytic_oracle", 5, fid_oracle},
      {"matrix_sqrt_residual", 10, matrix_sqrt},
      {"kid_oracle_equivalence", 10, kid_oracle},
      {"inception_score_bounds", 0, is_bounds},
      {"geometry_score_properties", 60, gs_properties},
      {"edit_distance_properties", 10, edit_distance},
      {"protocol_integrity", 0, protocol_integrity},
      {"scaling_plan", 0, scaling_plan},
      {"report_fixture", 0, report_fixture},
      {"end_to_end_fixture", 0, end_to_end},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0 && secs >= c.budget_seconds && o.pass) {
      o.pass = false;
      o.detail = "exceeded " + fmt("%.0f s", c.budget_seconds) + " budget";
    }
    failures += !o.pass;
    std::printf("%s %-28s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
