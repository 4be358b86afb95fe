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

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cslex/corpus.hpp"
#include "cslex/edit_distance.hpp"
#include "cslex/errors.hpp"
#include "cslex/simulate.hpp"

// Average posterior estimation: each candidate pronunciation is scored by
// its mean utterance-level posterior over the word's host utterances, then
// candidates are ranked and optionally pruned in two passes (the second
// pass renormalizes posteriors over the survivors).

namespace cslex {

/// Utterance-level posterior of (word, pron) in one utterance. For a fixed
/// (word, utterance) the posteriors over the hypothesis set sum to 1.
struct PosteriorRecord {
  Word word;
  Pronunciation pron;
  std::string utterance_id;
  double posterior = 0.0;
};

/// Per-candidate average posterior scores and host-utterance counts.
struct ApeTable {
  std::map<Word, std::map<Pronunciation, double>> scores;
  std::map<Word, int> m;

  double gamma(const Word& w, const Pronunciation& p) const {
    auto it = scores.find(w);
    if (it == scores.end()) return 0.0;
    auto jt = it->second.find(p);
    return jt == it->second.end() ? 0.0 : jt->second;
  }
};

/// Where per-utterance posteriors come from. The shipped default is the
/// noisy-channel oracle below; lattice-derived posteriors can be ingested
/// from file instead (see io.hpp).
class PosteriorSource {
 public:
  virtual ~PosteriorSource() = default;
  virtual std::vector<std::string> host_utterances(const Word& w) const = 0;
  virtual std::vector<PosteriorRecord> posteriors(
      const Word& w, const std::vector<Pronunciation>& hyps,
      const std::string& utterance_id) const = 0;
};

/// Per-hypothesis posterior in one utterance: softmax over the hypothesis
/// set of -lambda * editdist(hyp, realized phones); multiple occurrences of
/// the word in the utterance contribute the mean of their posteriors.
inline std::vector<PosteriorRecord> posterior_oracle(
    const Word& word, const std::vector<Pronunciation>& hyps,
    const Utterance& utt, const SyntheticCorpus& corpus, double lambda) {
  if (hyps.empty()) throw EmptyCandidates();
  std::vector<const Pronunciation*> occurrences;
  auto it = corpus.segments.find(word);
  if (it != corpus.segments.end()) {
    for (const auto& seg : it->second) {
      if (seg.utterance_id == utt.id) {
        occurrences.push_back(&corpus.realized_of(seg));
      }
    }
  }
  if (occurrences.empty()) throw WordNotInUtterance(word.grapheme, utt.id);

  std::vector<double> mean(hyps.size(), 0.0);
  for (const Pronunciation* realized : occurrences) {
    std::vector<double> logits(hyps.size());
    double max_logit = -1e300;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      logits[i] = -lambda * edit_distance(hyps[i], *realized);
      max_logit = std::max(max_logit, logits[i]);
    }
    double denom = 0.0;
    for (double& l : logits) {
      l = std::exp(l - max_logit);
      denom += l;
    }
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      mean[i] += logits[i] / denom;
    }
  }
  std::vector<PosteriorRecord> records;
  records.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    records.push_back(PosteriorRecord{
        word, hyps[i], utt.id,
        mean[i] / static_cast<double>(occurrences.size())});
  }
  return records;
}

class OraclePosteriorSource : public PosteriorSource {
 public:
  OraclePosteriorSource(const SyntheticCorpus& corpus, double lambda)
      : corpus_(corpus), lambda_(lambda) {}

  std::vector<std::string> host_utterances(const Word& w) const override {
    std::set<std::string> ids;
    auto it = corpus_.segments.find(w);
    if (it != corpus_.segments.end()) {
      for (const auto& seg : it->second) ids.insert(seg.utterance_id);
    }
    return {ids.begin(), ids.end()};
  }

  std::vector<PosteriorRecord> posteriors(
      const Word& w, const std::vector<Pronunciation>& hyps,
      const std::string& utterance_id) const override {
    return posterior_oracle(w, hyps, corpus_.utterance(utterance_id), corpus_,
                            lambda_);
  }

 private:
  const SyntheticCorpus& corpus_;
  double lambda_;
};

/// Posteriors ingested from records (e.g. lattice statistics computed
/// elsewhere). Restricting to a hypothesis subset renormalizes the stored
/// mass over that subset; hypotheses without a record contribute 0.
class RecordPosteriorSource : public PosteriorSource {
 public:
  explicit RecordPosteriorSource(const std::vector<PosteriorRecord>& records) {
    for (const auto& r : records) {
      stored_[r.word][r.utterance_id][r.pron] = r.posterior;
    }
  }

  std::vector<std::string> host_utterances(const Word& w) const override {
    std::vector<std::string> ids;
    auto it = stored_.find(w);
    if (it != stored_.end()) {
      for (const auto& [id, by_pron] : it->second) ids.push_back(id);
    }
    return ids;
  }

  std::vector<PosteriorRecord> posteriors(
      const Word& w, const std::vector<Pronunciation>& hyps,
      const std::string& utterance_id) const override {
    if (hyps.empty()) throw EmptyCandidates();
    std::vector<double> mass(hyps.size(), 0.0);
    double total = 0.0;
    auto it = stored_.find(w);
    if (it != stored_.end()) {
      auto jt = it->second.find(utterance_id);
      if (jt != it->second.end()) {
        for (std::size_t i = 0; i < hyps.size(); ++i) {
          auto kt = jt->second.find(hyps[i]);
          if (kt != jt->second.end()) {
            mass[i] = kt->second;
            total += kt->second;
          }
        }
      }
    }
    std::vector<PosteriorRecord> out;
    out.reserve(hyps.size());
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      out.push_back(PosteriorRecord{
          w, hyps[i], utterance_id, total > 0 ? mass[i] / total : 0.0});
    }
    return out;
  }

 private:
  std::map<Word, std::map<std::string, std::map<Pronunciation, double>>>
      stored_;
};

/// gamma_w^p = (1/M_w) * sum over the word's host utterances of the
/// per-utterance posterior. M_w is the count of distinct utterances in the
/// records; utterances with no record for a candidate contribute 0 to it.
inline ApeTable ape_score(const CandidateSet& candidates,
                          const std::vector<PosteriorRecord>& records) {
  if (candidates.candidates.empty()) throw EmptyCandidates();
  std::set<Pronunciation> wanted(candidates.candidates.begin(),
                                 candidates.candidates.end());
  std::set<std::string> utterances;
  std::map<Pronunciation, std::map<std::string, double>> sums;
  for (const auto& r : records) {
    if (!(r.word == candidates.word)) continue;
    utterances.insert(r.utterance_id);
    if (wanted.count(r.pron)) sums[r.pron][r.utterance_id] = r.posterior;
  }
  ApeTable table;
  const int m = static_cast<int>(utterances.size());
  table.m[candidates.word] = m;
  auto& row = table.scores[candidates.word];
  for (const auto& p : candidates.candidates) {
    double total = 0.0;
    auto it = sums.find(p);
    if (it != sums.end()) {
      for (const auto& [utt, v] : it->second) total += v;
    }
    row[p] = m > 0 ? total / m : 0.0;
  }
  return table;
}

/// Top-n pronunciations for `word` by gamma descending; ties break by
/// shorter pronunciation, then lexicographic.
inline std::vector<Pronunciation> select_top(const ApeTable& table,
                                             const Word& word, int n) {
  if (n < 1) throw ConfigError("select_top n must be >= 1");
  auto it = table.scores.find(word);
  if (it == table.scores.end()) return {};
  std::vector<std::pair<Pronunciation, double>> rows(it->second.begin(),
                                                     it->second.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<Pronunciation> out;
  for (const auto& [p, g] : rows) {
    if (static_cast<int>(out.size()) >= n) break;
    out.push_back(p);
  }
  return out;
}

inline std::vector<Pronunciation> select_top(const ApeTable& table, int n) {
  if (table.scores.size() != 1) {
    throw ConfigError("select_top without a word needs a single-word table");
  }
  return select_top(table, table.scores.begin()->first, n);
}

/// Scores a word's candidates over its host utterances with `source`.
inline std::vector<PosteriorRecord> gather_records(
    const Word& word, const std::vector<Pronunciation>& hyps,
    const PosteriorSource& source) {
  std::vector<PosteriorRecord> records;
  for (const auto& utt_id : source.host_utterances(word)) {
    auto batch = source.posteriors(word, hyps, utt_id);
    records.insert(records.end(), batch.begin(), batch.end());
  }
  return records;
}

struct TwoPassResult {
  CandidateSet pruned;
  ApeTable first_pass;
  ApeTable second_pass;
};

/// Pass 1 scores all candidates and keeps the top `keep`; pass 2 rescores
/// the survivors with posteriors renormalized over the smaller hypothesis
/// set. Renormalizing over a subset cannot lower a survivor's posterior
/// mass, so second-pass gammas dominate first-pass gammas.
inline TwoPassResult two_pass_prune(const CandidateSet& candidates,
                                    const PosteriorSource& source, int keep) {
  if (candidates.candidates.empty()) throw EmptyCandidates();
  if (keep < 1) throw ConfigError("keep must be >= 1");

  TwoPassResult result;
  result.first_pass = ape_score(
      candidates, gather_records(candidates.word, candidates.candidates,
                                 source));
  std::vector<Pronunciation> survivors =
      select_top(result.first_pass, candidates.word, keep);

  result.pruned.word = candidates.word;
  result.pruned.candidates = survivors;
  std::sort(result.pruned.candidates.begin(), result.pruned.candidates.end());
  for (const auto& p : result.pruned.candidates) {
    auto it = candidates.provenance.find(p);
    result.pruned.provenance[p] =
        it == candidates.provenance.end() ? std::set<Segment>{} : it->second;
  }
  result.second_pass = ape_score(
      result.pruned, gather_records(candidates.word, result.pruned.candidates,
                                    source));
  return result;
}

inline TwoPassResult two_pass_prune(const CandidateSet& candidates,
                                    const SyntheticCorpus& corpus,
                                    double lambda, int keep) {
  OraclePosteriorSource source(corpus, lambda);
  return two_pass_prune(candidates, source, keep);
}

}  // namespace cslex
