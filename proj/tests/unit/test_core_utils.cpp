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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "htg_eval/digest.hpp"
#include "htg_eval/error.hpp"
#include "htg_eval/parallel.hpp"
#include "htg_eval/random.hpp"
#include "htg_eval/unicode.hpp"
#include "test_support.hpp"

namespace htg {
namespace {

TEST(ErrorTest, NamesAreStable) {
  EXPECT_EQ(error_code_name(ErrorCode::kDuplicateId), "DuplicateId");
  EXPECT_EQ(error_code_name(ErrorCode::kVocabViolation), "VocabViolation");
  EXPECT_EQ(error_code_name(ErrorCode::kSplitViolation), "SplitViolation");
  EXPECT_EQ(error_code_name(ErrorCode::kIdenticalImages), "IdenticalImages");
  try {
    fail(ErrorCode::kShapeError, "bad shape");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeError);
    EXPECT_EQ(e.name(), "ShapeError");
    EXPECT_STREQ(e.what(), "bad shape");
  }
}

TEST(DigestTest, KnownVectors) {
  EXPECT_EQ(sha256_hex(std::string_view("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(DigestTest, FileMatchesBytes) {
  testing::TempDir dir;
  testing::write_file(dir / "x.txt", "abc");
  EXPECT_EQ(sha256_file(dir / "x.txt"), sha256_hex(std::string_view("abc")));
  EXPECT_HTG_ERROR(sha256_file(dir / "missing"), kIoError);
}

TEST(DigestTest, IdSetDigestIgnoresOrderAndRepeats) {
  EXPECT_EQ(id_set_digest({"b", "a", "c"}), id_set_digest({"c", "a", "b", "a"}));
  EXPECT_NE(id_set_digest({"a", "b"}), id_set_digest({"a", "b", "c"}));
  EXPECT_NE(id_set_digest({"ab"}), id_set_digest({"a", "b"}));
}

TEST(UnicodeTest, NfcComposes) {
  EXPECT_EQ(nfc("e\xCC\x81"), "\xC3\xA9");
  EXPECT_EQ(nfc("plain"), "plain");
  EXPECT_EQ(nfc_codepoints("e\xCC\x81t\xC3\xA9"), std::u32string(U"été"));
}

TEST(UnicodeTest, SplitWhitespaceRuns) {
  EXPECT_EQ(split_whitespace("  a b\t\tc\n"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(split_whitespace(" \t ").empty());
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, UniformIndexInRangeAndCoversAll) {
  Rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform_index(10);
    ASSERT_LT(v, 10u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 10u);
}

TEST(RngTest, Uniform01HalfOpen) {
  Rng rng(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(RngTest, SampleWithoutReplacementIsDistinct) {
  Rng rng(11);
  const auto s = rng.sample_without_replacement(100, 64);
  ASSERT_EQ(s.size(), 64u);
  std::set<std::size_t> uniq(s.begin(), s.end());
  EXPECT_EQ(uniq.size(), 64u);
  for (auto v : s) EXPECT_LT(v, 100u);
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng rng(5);
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
  auto w = v;
  rng.shuffle(w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

TEST(RngTest, MixSeedSeparatesStreams) {
  EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
  EXPECT_NE(mix_seed(0, 1), mix_seed(1, 0));
  EXPECT_EQ(mix_seed(9, 4), mix_seed(9, 4));
}

TEST(ParallelTest, VisitsEveryIndexOnce) {
  for (unsigned t : {1u, 2u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), ThreadCount{t}, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelTest, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(100, ThreadCount{4},
                            [](std::size_t i) {
                              if (i == 57) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(ParallelTest, ParseThreadCount) {
  EXPECT_EQ(parse_thread_count("4")->value, 4u);
  EXPECT_FALSE(parse_thread_count("0"));
  EXPECT_FALSE(parse_thread_count("-1"));
  EXPECT_FALSE(parse_thread_count("3x"));
  EXPECT_FALSE(parse_thread_count(nullptr));
}

TEST(ParallelTest, EnvironmentFallback) {
  ::setenv("HTG_EVAL_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count().value, 3u);
  ::setenv("HTG_EVAL_THREADS", "zero", 1);
  EXPECT_GE(default_thread_count().value, 1u);
  ::unsetenv("HTG_EVAL_THREADS");
}

}  // namespace
}  // namespace htg
