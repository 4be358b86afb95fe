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

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cslex/corpus.hpp"
#include "cslex/distribution.hpp"
#include "cslex/edit_distance.hpp"
#include "cslex/errors.hpp"
#include "cslex/lexicon.hpp"
#include "cslex/phoneme.hpp"
#include "cslex/rng.hpp"

// Synthetic stand-in for the phonetic decoder and its driving corpus. A
// hidden ground-truth lexicon maps each foreign word to a native phone
// sequence via a per-letter rule table, each audio segment is a
// noise-perturbed copy of that sequence, and "decoding" a segment returns
// the n-best native sequences ranked by edit distance to the realization.
// Everything is a pure function of (inputs, seed).

namespace cslex {

/// Accent/noise model applied per segment. `confusion` optionally biases
/// substitution targets per source symbol; unlisted symbols substitute
/// uniformly. `rng_seed` selects the realization stream, so two corpora that
/// differ only in rng_seed share words, volumes and utterances but draw
/// independent realizations (used for held-out evaluation splits).
struct NoiseModel {
  double p_sub = 0.0;
  double p_ins = 0.0;
  double p_del = 0.0;
  std::map<std::string, std::vector<std::pair<std::string, double>>> confusion;
  std::uint64_t rng_seed = 0;

  bool zero() const { return p_sub == 0 && p_ins == 0 && p_del == 0; }

  void validate() const {
    auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in01(p_sub) || !in01(p_ins) || !in01(p_del) ||
        p_sub + p_ins + p_del > 1.0) {
      throw ConfigError("noise probabilities must lie in [0,1] and sum to <= 1");
    }
  }
};

struct GeneratorConfig {
  int n_words = 100;
  VolumeLaw volume_law = VolumeLaw::fixed(5);
  NoiseModel noise;
  std::uint64_t seed = 1;

  PhonemeInventory native;           // defaults to default_native_inventory()
  std::string letters = "abcdefghijklmnopqrstuvwxyz";
  int word_len_min = 4;              // corpus filter: foreign words > 3 letters
  int word_len_max = 8;
  double multi_occurrence_prob = 0.15;  // chance a segment reuses an utterance
};

struct SyntheticCorpus {
  PhonemeInventory native;
  std::vector<Utterance> utterances;
  std::map<Word, std::vector<Segment>> segments;
  std::map<Segment, Pronunciation> realized;
  Lexicon hidden_lexicon;  // ground truth; never an input to selection

  const Pronunciation& realized_of(const Segment& s) const {
    auto it = realized.find(s);
    if (it == realized.end()) {
      throw UnknownSegment(s.word.grapheme + "@" + s.utterance_id + "#" +
                           std::to_string(s.occurrence_index));
    }
    return it->second;
  }

  std::vector<Word> words() const {
    std::vector<Word> out;
    out.reserve(segments.size());
    for (const auto& [w, segs] : segments) out.push_back(w);
    return out;
  }

  /// Driving volume k_w.
  int volume(const Word& w) const {
    auto it = segments.find(w);
    return it == segments.end() ? 0 : static_cast<int>(it->second.size());
  }

  /// Host-utterance count M_w.
  int utterance_count(const Word& w) const {
    auto it = segments.find(w);
    if (it == segments.end()) return 0;
    std::set<std::string> ids;
    for (const auto& s : it->second) ids.insert(s.utterance_id);
    return static_cast<int>(ids.size());
  }

  const Utterance& utterance(const std::string& id) const {
    for (const auto& u : utterances) {
      if (u.id == id) return u;
    }
    throw IoError("unknown utterance id '" + id + "'");
  }
};

/// Candidate pool for one word: the deduplicated union of per-segment n-best
/// decodes, with per-candidate provenance.
struct CandidateSet {
  Word word;
  std::vector<Pronunciation> candidates;  // sorted lexicographically
  std::map<Pronunciation, std::set<Segment>> provenance;

  bool contains(const Pronunciation& p) const {
    return provenance.count(p) > 0;
  }
};

/// Native inventory used when none is configured: pinyin-style initials plus
/// tone-marked finals.
inline PhonemeInventory default_native_inventory() {
  static const char* kSymbols[] = {
      "b",    "p",    "m",    "f",    "d",    "t",    "n",    "l",    "g",
      "k",    "h",    "j",    "q",    "x",    "zh",   "ch",   "sh",   "r",
      "z",    "c",    "s",    "y",    "w",    "ii",   "a1",   "a2",   "a3",
      "a4",   "ai2",  "ai4",  "an1",  "an4",  "ao3",  "e2",   "e4",   "ei1",
      "en2",  "i1",   "i2",   "i3",   "i4",   "ia1",  "iao1", "iao2", "iao3",
      "iao4", "ie4",  "in1",  "iu5",  "iy3",  "o1",   "ong2", "ou3",  "u2",
      "u4",   "ua1",  "uo3"};
  PhonemeInventory inv("default-native", Language::kNative);
  for (const char* s : kSymbols) inv.add(s);
  return inv;
}

/// Native filler characters for synthetic utterances.
inline const std::vector<std::string>& default_filler_chars() {
  static const std::vector<std::string> kChars = {
      "的", "一", "是", "在", "不", "了", "有", "大", "人", "这",
      "中", "上", "为", "个", "国", "我", "以", "要", "他", "时",
      "来", "用", "们", "生", "到", "作", "地", "于", "出", "就",
      "分", "对", "成", "会", "可", "主", "发", "年", "动", "同"};
  return kChars;
}

namespace detail {

inline Pronunciation apply_letter_rules(const std::string& grapheme,
                                        const std::map<char, Phoneme>& rules) {
  Pronunciation p;
  for (char c : grapheme) p.phones.push_back(rules.at(c));
  return p;
}

/// Applies the noise model to one realization draw. Draw order is fixed:
/// per gap one insertion draw, per source phone one op draw plus one target
/// draw on substitution.
inline Pronunciation perturb(const Pronunciation& truth,
                             const NoiseModel& noise,
                             const PhonemeInventory& inv, Rng& rng) {
  Pronunciation out;
  auto maybe_insert = [&] {
    if (noise.p_ins > 0 && rng.uniform() < noise.p_ins) {
      out.phones.push_back(inv.at(rng.below(inv.size())));
    }
  };
  for (const auto& phone : truth.phones) {
    maybe_insert();
    double u = rng.uniform();
    if (u < noise.p_del) continue;
    if (u < noise.p_del + noise.p_sub) {
      auto it = noise.confusion.find(phone.symbol);
      if (it != noise.confusion.end() && !it->second.empty()) {
        std::vector<double> weights;
        weights.reserve(it->second.size());
        for (const auto& [sym, w] : it->second) weights.push_back(w);
        out.phones.push_back(inv.get(it->second[rng.weighted(weights)].first));
      } else {
        // Uniform over the inventory, skipping the source symbol.
        std::size_t idx = rng.below(inv.size() - 1);
        if (inv.at(idx).symbol == phone.symbol) idx = inv.size() - 1;
        out.phones.push_back(inv.at(idx));
      }
      continue;
    }
    out.phones.push_back(phone);
  }
  maybe_insert();
  if (out.empty()) out.phones.push_back(truth.phones.front());
  return out;
}

/// All sequences at edit distance exactly 1 from `seq` over `inv`
/// (substitutions, deletions, insertions); never emits the empty sequence.
inline std::vector<Pronunciation> one_edit_neighbors(
    const Pronunciation& seq, const PhonemeInventory& inv) {
  std::vector<Pronunciation> out;
  const std::size_t len = seq.size();
  for (std::size_t i = 0; i < len; ++i) {
    for (const auto& ph : inv.phonemes()) {
      if (ph == seq.phones[i]) continue;
      Pronunciation v = seq;
      v.phones[i] = ph;
      out.push_back(std::move(v));
    }
  }
  if (len > 1) {
    for (std::size_t i = 0; i < len; ++i) {
      Pronunciation v;
      v.phones.reserve(len - 1);
      for (std::size_t j = 0; j < len; ++j) {
        if (j != i) v.phones.push_back(seq.phones[j]);
      }
      out.push_back(std::move(v));
    }
  }
  for (std::size_t i = 0; i <= len; ++i) {
    for (const auto& ph : inv.phonemes()) {
      Pronunciation v;
      v.phones.reserve(len + 1);
      v.phones.insert(v.phones.end(), seq.phones.begin(),
                      seq.phones.begin() + i);
      v.phones.push_back(ph);
      v.phones.insert(v.phones.end(), seq.phones.begin() + i,
                      seq.phones.end());
      out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Builds the corpus: words, hidden lexicon (per-letter pronunciation
/// rules), per-word volumes from the volume law, utterances and noisy
/// per-segment realizations. Deterministic for a fixed config.
inline SyntheticCorpus generate_corpus(const GeneratorConfig& cfg) {
  if (cfg.n_words < 1) throw ConfigError("n_words must be >= 1");
  if (cfg.word_len_min < 1 || cfg.word_len_max < cfg.word_len_min) {
    throw ConfigError("word length bounds invalid");
  }
  if (cfg.letters.empty()) throw ConfigError("letter alphabet empty");
  cfg.noise.validate();

  SyntheticCorpus corpus;
  corpus.native = cfg.native.empty() ? default_native_inventory() : cfg.native;
  for (const auto& [sym, targets] : cfg.noise.confusion) {
    corpus.native.get(sym);
    for (const auto& [t, w] : targets) corpus.native.get(t);
  }

  // Letter -> phoneme rules; shared by every word so the mapping stays
  // learnable by a grapheme-to-phoneme model.
  Rng rule_rng(derive_seed(cfg.seed, "rules"));
  std::map<char, Phoneme> rules;
  for (char c : cfg.letters) {
    rules[c] = corpus.native.at(rule_rng.below(corpus.native.size()));
  }

  Rng word_rng(derive_seed(cfg.seed, "words"));
  std::set<std::string> seen;
  std::vector<Word> words;
  while (static_cast<int>(words.size()) < cfg.n_words) {
    int len = static_cast<int>(
        word_rng.between(cfg.word_len_min, cfg.word_len_max));
    std::string g;
    for (int i = 0; i < len; ++i) {
      g += cfg.letters[word_rng.below(cfg.letters.size())];
    }
    if (!seen.insert(g).second) continue;
    words.push_back(Word{g, Language::kForeign});
  }
  for (const auto& w : words) {
    corpus.hidden_lexicon.add(w, detail::apply_letter_rules(w.grapheme, rules));
  }

  Rng volume_rng(derive_seed(cfg.seed, "volumes"));
  Rng utt_rng(derive_seed(cfg.seed, "utterances"));
  const auto& filler = default_filler_chars();
  std::uint64_t utt_counter = 0;
  auto next_id = [&] {
    ++utt_counter;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "u%06llu",
                  static_cast<unsigned long long>(utt_counter));
    return std::string(buf);
  };
  auto push_filler = [&](std::vector<UtteranceToken>& tokens) {
    int n = static_cast<int>(utt_rng.between(1, 4));
    for (int i = 0; i < n; ++i) {
      tokens.push_back(UtteranceToken{UtteranceToken::Kind::kNativeChar,
                                      filler[utt_rng.below(filler.size())]});
    }
  };

  const std::uint64_t noise_base =
      derive_seed(cfg.seed, "noise") + cfg.noise.rng_seed;
  for (const auto& w : words) {
    int k = cfg.volume_law.sample(volume_rng);
    if (k < 1) throw InvalidDistribution("volume law produced k < 1");
    // Group the k segments into utterances; a follow-up segment joins the
    // current utterance with probability multi_occurrence_prob, so k >= M_w.
    std::vector<int> occ_per_utt{1};
    for (int i = 1; i < k; ++i) {
      if (utt_rng.uniform() < cfg.multi_occurrence_prob) {
        ++occ_per_utt.back();
      } else {
        occ_per_utt.push_back(1);
      }
    }
    const Pronunciation& truth = corpus.hidden_lexicon.at(w).front();
    for (int occs : occ_per_utt) {
      Utterance utt;
      utt.id = next_id();
      push_filler(utt.tokens);
      for (int o = 0; o < occs; ++o) {
        utt.tokens.push_back(
            UtteranceToken{UtteranceToken::Kind::kForeignWord, w.grapheme});
        push_filler(utt.tokens);
        Segment seg{w, utt.id, o};
        corpus.segments[w].push_back(seg);
        Rng noise_rng(derive_seed(noise_base, utt.id + "#" + w.grapheme + "#" +
                                                  std::to_string(o)));
        corpus.realized[seg] =
            detail::perturb(truth, cfg.noise, corpus.native, noise_rng);
      }
      corpus.utterances.push_back(std::move(utt));
    }
  }
  return corpus;
}

inline SyntheticCorpus generate_corpus(int n_words, const VolumeLaw& law,
                                       const NoiseModel& noise,
                                       std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.n_words = n_words;
  cfg.volume_law = law;
  cfg.noise = noise;
  cfg.seed = seed;
  return generate_corpus(cfg);
}

/// n-best decode of a segment: candidates are the realization plus its 1-
/// and 2-edit neighborhood over the native inventory, ranked by edit
/// distance to the realization (the -lambda*distance score is monotone in
/// distance for any lambda > 0), ties broken lexicographically. The 2-edit
/// tier is only materialized when the 1-edit tier cannot fill n.
inline std::vector<Pronunciation> decode_segment(const Segment& s,
                                                 const SyntheticCorpus& corpus,
                                                 int n) {
  if (n < 1) throw ConfigError("decode n must be >= 1");
  const Pronunciation& realized = corpus.realized_of(s);

  std::vector<Pronunciation> out{realized};
  if (static_cast<int>(out.size()) >= n) return out;

  std::vector<Pronunciation> tier1 =
      detail::one_edit_neighbors(realized, corpus.native);
  for (const auto& p : tier1) {
    if (static_cast<int>(out.size()) >= n) return out;
    out.push_back(p);
  }

  std::set<Pronunciation> known(out.begin(), out.end());
  std::set<Pronunciation> tier2;
  for (const auto& base : tier1) {
    for (auto& p : detail::one_edit_neighbors(base, corpus.native)) {
      if (!known.count(p)) tier2.insert(std::move(p));
    }
  }
  for (const auto& p : tier2) {
    if (static_cast<int>(out.size()) >= n) break;
    out.push_back(p);
  }
  return out;
}

/// Candidate pool: union of the n-best decodes over all k segments of the
/// word, with provenance.
inline CandidateSet collect_candidates(const Word& word,
                                       const SyntheticCorpus& corpus, int n) {
  auto it = corpus.segments.find(word);
  if (it == corpus.segments.end() || it->second.empty()) {
    throw NoSegments(word.grapheme);
  }
  CandidateSet set;
  set.word = word;
  for (const auto& seg : it->second) {
    for (auto& p : decode_segment(seg, corpus, n)) {
      set.provenance[p].insert(seg);
    }
  }
  set.candidates.reserve(set.provenance.size());
  for (const auto& [p, segs] : set.provenance) set.candidates.push_back(p);
  return set;
}

}  // namespace cslex
