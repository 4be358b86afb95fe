// Copyright (c) 2026 The cslex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <vector>

#include "cslex/metrics.hpp"
#include "cslex/rng.hpp"
#include "testing_util.hpp"

using namespace cslex;
using cslex::testing::word;

namespace {

MixedToken native(const std::string& s) {
  return MixedToken{s, MixedToken::Lang::kNativeChar};
}

MixedToken foreign(const std::string& s) {
  return MixedToken{s, MixedToken::Lang::kForeignWord};
}

/// Brute-force edit distance over tokens for cross-checking align().
int brute_distance(const std::vector<MixedToken>& ref,
                   const std::vector<MixedToken>& hyp) {
  std::vector<std::vector<int>> d(ref.size() + 1,
                                  std::vector<int>(hyp.size() + 1, 0));
  for (std::size_t i = 1; i <= ref.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 1; j <= hyp.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      d[i][j] = std::min(
          {d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1),
           d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  return d[ref.size()][hyp.size()];
}

}  // namespace

TEST_CASE("tokenize_mixed splits scripts") {
  SECTION("single native char") {
    auto tokens = tokenize_mixed("好");
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0] == native("好"));
  }
  SECTION("embedded foreign word with spaces") {
    auto tokens = tokenize_mixed("去 office 吗");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == native("去"));
    CHECK(tokens[1] == foreign("office"));
    CHECK(tokens[2] == native("吗"));
  }
  SECTION("script changes split without separators") {
    auto tokens = tokenize_mixed("去office吗");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[1] == foreign("office"));
  }
  SECTION("seven native chars plus one word gives eight tokens") {
    auto tokens = tokenize_mixed("我明天去 office 上班吗");
    CHECK(tokens.size() == 8);
  }
  SECTION("punctuation and digits drop; digit-letter runs are rejected") {
    CHECK(tokenize_mixed("你好, 123 。").size() == 2);
    CHECK_THROWS_AS(tokenize_mixed("mp3"), MixedScriptToken);
    CHECK_THROWS_AS(tokenize_mixed("3g"), MixedScriptToken);
    CHECK_THROWS_AS(tokenize_mixed("café"), MixedScriptToken);
  }
}

TEST_CASE("align basics") {
  SECTION("identical sequences are all correct") {
    std::vector<MixedToken> ref = {native("好"), foreign("go"), native("吗")};
    auto ops = align(ref, ref);
    REQUIRE(ops.size() == 3);
    for (const auto& op : ops) CHECK(op.kind == AlignmentOp::Kind::kCorrect);
  }
  SECTION("empty hypothesis is all deletions") {
    std::vector<MixedToken> ref = {native("好"), native("吗")};
    auto ops = align(ref, {});
    REQUIRE(ops.size() == 2);
    for (const auto& op : ops) CHECK(op.kind == AlignmentOp::Kind::kDeletion);
  }
  SECTION("random pairs cost-match the brute-force distance") {
    Rng rng(112233);
    std::vector<MixedToken> pool = {native("一"), native("二"), native("三"),
                                    foreign("go"), foreign("run")};
    for (int trial = 0; trial < 300; ++trial) {
      auto draw = [&](int max_len) {
        std::vector<MixedToken> v;
        int len = static_cast<int>(rng.between(0, max_len));
        for (int i = 0; i < len; ++i) v.push_back(pool[rng.below(pool.size())]);
        return v;
      };
      auto ref = draw(8);
      auto hyp = draw(8);
      auto ops = align(ref, hyp);
      int cost = 0;
      for (const auto& op : ops) {
        cost += op.kind == AlignmentOp::Kind::kCorrect ? 0 : 1;
      }
      CHECK(cost == brute_distance(ref, hyp));
      // Alignment consumes both sequences exactly.
      long refs = 0, hyps = 0;
      for (const auto& op : ops) {
        refs += op.ref_token ? 1 : 0;
        hyps += op.hyp_token ? 1 : 0;
      }
      CHECK(refs == static_cast<long>(ref.size()));
      CHECK(hyps == static_cast<long>(hyp.size()));
    }
  }
}

TEST_CASE("score reproduces the worked mixed-error example") {
  // Eight reference tokens (seven native chars, one foreign word); the
  // hypothesis misses the foreign word and one native char, both as
  // substitutions: MER 2/8 = 25.0%, CER 1 - 6/7 = 14.3%, WER 1 - 0/1 = 100%.
  auto ref = tokenize_mixed("我明天去 office 上班吗");
  auto hyp = tokenize_mixed("我明天去奥上班马");
  REQUIRE(ref.size() == 8);
  auto r = score(ref, hyp);
  CHECK(r.substitutions + r.insertions + r.deletions == 2);
  CHECK(r.correct_native == 6);
  CHECK(r.ref_native == 7);
  CHECK(r.correct_foreign == 0);
  CHECK(r.ref_foreign == 1);
  CHECK(r.mer == Catch::Approx(0.25).margin(1e-15));
  CHECK(r.cer_native == Catch::Approx(1.0 - 6.0 / 7.0).margin(1e-15));
  CHECK(r.wer_foreign == Catch::Approx(1.0).margin(1e-15));
  // Displayed as percentages rounded to one decimal: 25.0 / 14.3 / 100.0.
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * r.cer_native);
  CHECK(std::string(buf) == "14.3");
}

TEST_CASE("score of identical text is all zeros") {
  auto ref = tokenize_mixed("我去 office 吗");
  auto r = score(ref, ref);
  CHECK(r.mer == 0.0);
  CHECK(r.cer_native == 0.0);
  CHECK(r.wer_foreign == 0.0);
}

TEST_CASE("empty reference is rejected") {
  CHECK_THROWS_AS(score({}, {native("好")}), EmptyReference);
}

TEST_CASE("corpus-level scores equal pooled-count recomputation") {
  std::vector<std::pair<std::vector<MixedToken>, std::vector<MixedToken>>>
      pairs = {
          {tokenize_mixed("我去 office 吗"), tokenize_mixed("我去吗")},
          {tokenize_mixed("明天 top 会好"), tokenize_mixed("明天 top 会好了")},
      };
  auto pooled = score_corpus(pairs);
  long s = 0, i = 0, d = 0, ref = 0, cn = 0, rn = 0, cf = 0, rf = 0;
  for (const auto& [r, h] : pairs) {
    auto one = score(r, h);
    s += one.substitutions;
    i += one.insertions;
    d += one.deletions;
    ref += one.ref_tokens;
    cn += one.correct_native;
    rn += one.ref_native;
    cf += one.correct_foreign;
    rf += one.ref_foreign;
  }
  CHECK(pooled.mer == Catch::Approx(double(s + i + d) / ref).margin(1e-15));
  CHECK(pooled.cer_native ==
        Catch::Approx(1.0 - double(cn) / rn).margin(1e-15));
  CHECK(pooled.wer_foreign ==
        Catch::Approx(1.0 - double(cf) / rf).margin(1e-15));
}

TEST_CASE("MER is bounded below by each language's error contribution") {
  Rng rng(99);
  std::vector<MixedToken> pool = {native("一"), native("二"), foreign("go"),
                                  foreign("up")};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MixedToken> ref, hyp;
    int rl = static_cast<int>(rng.between(1, 8));
    int hl = static_cast<int>(rng.between(0, 8));
    for (int k = 0; k < rl; ++k) ref.push_back(pool[rng.below(pool.size())]);
    for (int k = 0; k < hl; ++k) hyp.push_back(pool[rng.below(pool.size())]);
    auto r = score(ref, hyp);
    double native_errors = static_cast<double>(r.ref_native - r.correct_native);
    double foreign_errors =
        static_cast<double>(r.ref_foreign - r.correct_foreign);
    CHECK(r.mer >= native_errors / r.ref_tokens - 1e-12);
    CHECK(r.mer >= foreign_errors / r.ref_tokens - 1e-12);
  }
}

TEST_CASE("alignment dump has three lines matching the ops") {
  auto ref = tokenize_mixed("我去 office 吗");
  auto hyp = tokenize_mixed("我去吗了");
  auto ops = align(ref, hyp);
  auto dump = dump_alignment(ops);
  int newlines = 0;
  for (char c : dump) newlines += c == '\n';
  CHECK(newlines == 3);
  CHECK(dump.find('C') != std::string::npos);
}

TEST_CASE("arr bucketing") {
  auto buckets = parse_buckets("1:10,10:20,20:");
  REQUIRE(buckets.size() == 3);
  CHECK(buckets[0].contains(1));
  CHECK(buckets[0].contains(9));
  CHECK_FALSE(buckets[0].contains(10));
  CHECK(buckets[2].contains(1000));

  SECTION("single word with full recall") {
    std::map<Word, WordRecall> per_word = {{word("go"), WordRecall{3, 3, 5}}};
    auto report = arr(per_word, buckets);
    REQUIRE(report.buckets.size() == 3);
    CHECK(report.buckets[0].n_words == 1);
    CHECK(*report.buckets[0].arr == Catch::Approx(1.0));
    CHECK(report.buckets[1].n_words == 0);
    CHECK_FALSE(report.buckets[1].arr.has_value());
  }
  SECTION("two words with recalls 0 and 1 average to one half") {
    std::map<Word, WordRecall> per_word = {
        {word("go"), WordRecall{0, 2, 12}}, {word("up"), WordRecall{4, 4, 15}}};
    auto report = arr(per_word, buckets);
    CHECK(report.buckets[1].n_words == 2);
    CHECK(*report.buckets[1].arr == Catch::Approx(0.5));
  }
  SECTION("all-correct hypothesis gives ARR exactly 1 in nonempty buckets") {
    std::map<Word, WordRecall> per_word = {
        {word("a"), WordRecall{1, 1, 2}},
        {word("b"), WordRecall{7, 7, 14}},
        {word("c"), WordRecall{9, 9, 33}}};
    auto report = arr(per_word, buckets);
    for (const auto& b : report.buckets) {
      if (b.n_words > 0) CHECK(*b.arr == 1.0);
    }
  }
  SECTION("invalid counts are rejected") {
    std::map<Word, WordRecall> bad = {{word("go"), WordRecall{5, 3, 2}}};
    CHECK_THROWS_AS(arr(bad, buckets), InvalidCounts);
    std::map<Word, WordRecall> zero = {{word("go"), WordRecall{0, 0, 2}}};
    CHECK_THROWS_AS(arr(zero, buckets), InvalidCounts);
  }
  SECTION("bucket spec validation") {
    CHECK_THROWS_AS(parse_buckets(""), ConfigError);
    CHECK_THROWS_AS(parse_buckets("5"), ConfigError);
    CHECK_THROWS_AS(parse_buckets("9:3"), ConfigError);
  }
}
