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
#include <set>

#include "cslex/distribution.hpp"
#include "cslex/edit_distance.hpp"
#include "cslex/simulate.hpp"
#include "testing_util.hpp"

using namespace cslex;
using cslex::testing::make_inventory;

namespace {

GeneratorConfig small_config(std::uint64_t seed, NoiseModel noise = {}) {
  GeneratorConfig cfg;
  cfg.n_words = 25;
  cfg.volume_law = VolumeLaw::uniform(1, 6);
  cfg.noise = noise;
  cfg.seed = seed;
  return cfg;
}

/// Exhaustive <=2-edit neighborhood (ground truth for decode_segment).
std::set<Pronunciation> exhaustive_neighborhood(const Pronunciation& r,
                                                const PhonemeInventory& inv) {
  std::set<Pronunciation> within1{r};
  for (const auto& p : detail::one_edit_neighbors(r, inv)) within1.insert(p);
  std::set<Pronunciation> within2 = within1;
  for (const auto& base : within1) {
    if (base.empty()) continue;
    for (const auto& p : detail::one_edit_neighbors(base, inv)) {
      within2.insert(p);
    }
  }
  return within2;
}

}  // namespace

TEST_CASE("volume law parsing") {
  CHECK(VolumeLaw::parse("fixed:5").min_volume() == 5);
  CHECK(VolumeLaw::parse("uniform:2:9").max_volume() == 9);
  CHECK(VolumeLaw::parse("zipf:1.1:1:60").min_volume() == 1);
  CHECK_THROWS_AS(VolumeLaw::parse("zipf:1.1"), InvalidDistribution);
  CHECK_THROWS_AS(VolumeLaw::parse("uniform:5:2"), InvalidDistribution);
  CHECK_THROWS_AS(VolumeLaw::parse("fixed:0"), InvalidDistribution);
  CHECK_THROWS_AS(VolumeLaw::parse("geom:1"), InvalidDistribution);
}

TEST_CASE("noise model validation") {
  NoiseModel noise;
  noise.p_sub = 0.5;
  noise.p_ins = 0.4;
  noise.p_del = 0.2;
  CHECK_THROWS_AS(noise.validate(), ConfigError);
}

TEST_CASE("zero noise reproduces the hidden lexicon in every segment") {
  auto corpus = generate_corpus(small_config(7));
  REQUIRE(!corpus.segments.empty());
  for (const auto& [w, segs] : corpus.segments) {
    const auto& truth = corpus.hidden_lexicon.at(w).front();
    for (const auto& s : segs) {
      CHECK(corpus.realized_of(s) == truth);
    }
  }
}

TEST_CASE("fixed seed gives bit-identical corpora") {
  NoiseModel noise;
  noise.p_sub = 0.2;
  noise.p_ins = 0.05;
  noise.p_del = 0.05;
  auto a = generate_corpus(small_config(11, noise));
  auto b = generate_corpus(small_config(11, noise));
  CHECK(a.realized == b.realized);
  CHECK(a.segments == b.segments);
  CHECK(a.hidden_lexicon == b.hidden_lexicon);
  REQUIRE(a.utterances.size() == b.utterances.size());
  for (std::size_t i = 0; i < a.utterances.size(); ++i) {
    CHECK(a.utterances[i].id == b.utterances[i].id);
    CHECK(a.utterances[i].tokens == b.utterances[i].tokens);
  }
}

TEST_CASE("changing only the noise stream keeps the corpus skeleton") {
  NoiseModel noise;
  noise.p_sub = 0.3;
  auto a = generate_corpus(small_config(11, noise));
  noise.rng_seed = 1;
  auto b = generate_corpus(small_config(11, noise));
  CHECK(a.hidden_lexicon == b.hidden_lexicon);
  CHECK(a.segments == b.segments);
  CHECK(a.realized != b.realized);
}

TEST_CASE("zipf volumes match the law under a chi-square test") {
  // Pools words into volume buckets and compares against the pmf at
  // alpha = 0.01 for each of five fixed seeds.
  auto law = VolumeLaw::zipf(1.1, 1, 30);
  for (std::uint64_t seed : {101, 202, 303, 404, 505}) {
    GeneratorConfig cfg;
    cfg.n_words = 880;
    cfg.volume_law = law;
    cfg.seed = seed;
    auto corpus = generate_corpus(cfg);
    std::map<int, int> observed;
    for (const auto& [w, segs] : corpus.segments) {
      observed[static_cast<int>(segs.size())] += 1;
    }
    // Merge the tail so every expected bucket count is >= 5.
    std::vector<double> expected;
    std::vector<int> counts;
    double exp_acc = 0.0;
    int obs_acc = 0;
    for (int v = law.min_volume(); v <= law.max_volume(); ++v) {
      exp_acc += cfg.n_words * law.pmf(v);
      obs_acc += observed.count(v) ? observed[v] : 0;
      if (exp_acc >= 5.0) {
        expected.push_back(exp_acc);
        counts.push_back(obs_acc);
        exp_acc = 0.0;
        obs_acc = 0;
      }
    }
    if (exp_acc > 0) {
      expected.back() += exp_acc;
      counts.back() += obs_acc;
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      double d = counts[i] - expected[i];
      stat += d * d / expected[i];
    }
    int dof = static_cast<int>(expected.size()) - 1;
    REQUIRE(dof >= 1);
    CHECK(stat < cslex::testing::chi2_critical(0.01, dof));
  }
}

TEST_CASE("decode_segment returns the truth first under zero noise") {
  auto corpus = generate_corpus(small_config(13));
  for (const auto& [w, segs] : corpus.segments) {
    auto nbest = decode_segment(segs.front(), corpus, 1);
    REQUIRE(nbest.size() == 1);
    CHECK(nbest[0] == corpus.hidden_lexicon.at(w).front());
  }
}

TEST_CASE("decode_segment n-best is sorted by edit distance and matches the "
          "exhaustive neighborhood") {
  GeneratorConfig cfg;
  cfg.n_words = 4;
  cfg.volume_law = VolumeLaw::fixed(2);
  cfg.seed = 5;
  cfg.native = make_inventory({"p", "t", "a1"});
  cfg.noise.p_sub = 0.3;
  auto corpus = generate_corpus(cfg);

  for (const auto& [w, segs] : corpus.segments) {
    const auto& realized = corpus.realized_of(segs.front());
    auto nbest = decode_segment(segs.front(), corpus, 40);
    auto neighborhood = exhaustive_neighborhood(realized, corpus.native);

    // Ranked by nondecreasing distance, lexicographic within a tier.
    int prev_dist = -1;
    Pronunciation prev;
    for (const auto& cand : nbest) {
      int d = edit_distance(cand, realized);
      CHECK(d <= 2);
      CHECK(d >= prev_dist);
      if (d == prev_dist) CHECK(prev < cand);
      CHECK(neighborhood.count(cand) == 1);
      prev_dist = d;
      prev = cand;
    }
    // All candidates distinct.
    std::set<Pronunciation> uniq(nbest.begin(), nbest.end());
    CHECK(uniq.size() == nbest.size());
  }
}

TEST_CASE("decode_segment truncates to the neighborhood size") {
  GeneratorConfig cfg;
  cfg.n_words = 1;
  cfg.word_len_min = 1;
  cfg.word_len_max = 1;
  cfg.letters = "a";
  cfg.volume_law = VolumeLaw::fixed(1);
  cfg.seed = 3;
  cfg.native = make_inventory({"p", "t"});
  auto corpus = generate_corpus(cfg);
  const auto& segs = corpus.segments.begin()->second;
  const auto& realized = corpus.realized_of(segs.front());
  REQUIRE(realized.size() == 1);

  auto neighborhood = exhaustive_neighborhood(realized, corpus.native);
  std::size_t limit = neighborhood.size();
  auto nbest = decode_segment(segs.front(), corpus, 1000);
  CHECK(nbest.size() == limit);
  auto ten = decode_segment(segs.front(), corpus, 10);
  CHECK(ten.size() == std::min<std::size_t>(10, limit));
}

TEST_CASE("collect_candidates equals the brute-force union with provenance") {
  NoiseModel noise;
  noise.p_sub = 0.25;
  noise.p_del = 0.05;
  auto corpus = generate_corpus(small_config(21, noise));
  const int n = 5;
  for (const auto& [w, segs] : corpus.segments) {
    auto set = collect_candidates(w, corpus, n);
    std::set<Pronunciation> expect;
    for (const auto& s : segs) {
      for (const auto& p : decode_segment(s, corpus, n)) expect.insert(p);
    }
    CHECK(std::set<Pronunciation>(set.candidates.begin(),
                                  set.candidates.end()) == expect);
    for (const auto& p : set.candidates) {
      const auto& sources = set.provenance.at(p);
      REQUIRE(!sources.empty());
      for (const auto& s : sources) {
        auto nbest = decode_segment(s, corpus, n);
        CHECK(std::find(nbest.begin(), nbest.end(), p) != nbest.end());
      }
    }
  }
}

TEST_CASE("candidate union is monotone in segments") {
  NoiseModel noise;
  noise.p_sub = 0.3;
  auto corpus = generate_corpus(small_config(31, noise));
  const int n = 4;
  for (const auto& [w, segs] : corpus.segments) {
    if (segs.size() < 2) continue;
    std::set<Pronunciation> acc;
    for (const auto& s : segs) {
      std::size_t before = acc.size();
      for (const auto& p : decode_segment(s, corpus, n)) acc.insert(p);
      CHECK(acc.size() >= before);
    }
    auto set = collect_candidates(w, corpus, n);
    CHECK(acc.size() == set.candidates.size());
  }
}

TEST_CASE("collect_candidates without segments fails") {
  auto corpus = generate_corpus(small_config(1));
  CHECK_THROWS_AS(
      collect_candidates(Word{"missing", Language::kForeign}, corpus, 3),
      NoSegments);
}

TEST_CASE("two segments with identical realizations add nothing to the union") {
  auto corpus = generate_corpus(small_config(17));  // zero noise
  for (const auto& [w, segs] : corpus.segments) {
    if (segs.size() < 2) continue;
    auto one = decode_segment(segs.front(), corpus, 6);
    auto set = collect_candidates(w, corpus, 6);
    CHECK(set.candidates.size() == one.size());
  }
}
