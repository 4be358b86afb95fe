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
#include <climits>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "cslex/ape.hpp"
#include "cslex/errors.hpp"
#include "cslex/phoneme.hpp"
#include "cslex/simulate.hpp"

// Phoneme confusion network: candidate pronunciations are folded into a
// slotted vote network by iterative dynamic-programming alignment, and the
// consensus pronunciations are the highest-vote paths through the slots.

namespace cslex {

inline constexpr const char* kEps = "<eps>";

struct AlignmentCosts {
  double match = 0.0;
  double substitution = 1.0;
  double insertion = 1.0;
  double deletion = 1.0;

  void validate() const {
    if (!(match < substitution && match < insertion && match < deletion)) {
      throw ConfigError("match cost must be strictly least");
    }
  }
};

/// Slotted vote network. Each slot maps a phone symbol (or "<eps>" for a
/// deletion arc) to its vote count; after k alignments every slot holds
/// exactly k votes.
class ConfusionNetwork {
 public:
  using Slot = std::map<std::string, int>;

  bool empty() const { return slots_.empty(); }
  std::size_t slot_count() const { return slots_.size(); }
  int aligned_count() const { return aligned_; }
  const std::vector<Slot>& slots() const { return slots_; }
  Language language() const { return language_; }

  int total_votes() const {
    int total = 0;
    for (const auto& slot : slots_) {
      for (const auto& [sym, v] : slot) total += v;
    }
    return total;
  }

  int eps_votes() const {
    int total = 0;
    for (const auto& slot : slots_) {
      auto it = slot.find(kEps);
      if (it != slot.end()) total += it->second;
    }
    return total;
  }

  /// Builds a network from explicit slots (tests, external imports).
  static ConfusionNetwork from_slots(std::vector<Slot> slots, Language lang) {
    ConfusionNetwork net;
    int aligned = 0;
    for (const auto& slot : slots) {
      if (slot.empty()) throw EmptyInput("confusion-network slot");
      int total = 0;
      for (const auto& [sym, votes] : slot) {
        if (votes < 1) throw ConfigError("slot votes must be >= 1");
        total += votes;
      }
      aligned = std::max(aligned, total);
    }
    net.slots_ = std::move(slots);
    net.aligned_ = aligned;
    net.language_ = lang;
    return net;
  }

  friend ConfusionNetwork align_into(const ConfusionNetwork& net,
                                     const Pronunciation& cand,
                                     const AlignmentCosts& costs);

 private:
  std::vector<Slot> slots_;
  int aligned_ = 0;
  Language language_ = Language::kNative;
};

/// Aligns one candidate against the network with standard DP over
/// (slots x phones). A phone matching an existing arc costs `match` and
/// increments that arc's vote; otherwise the phone joins the slot as a
/// substitution arc with one vote. Skipping a slot adds an "<eps>" vote;
/// a phone with no slot opens a new slot, where all previously aligned
/// candidates receive "<eps>" votes. Cost ties resolve by fewest
/// insert+delete ops (substitution beats insertion plus deletion), then the
/// backtrace prefers a matching diagonal, slot skip, and new slot, with
/// substitution last; this keeps variants of one phoneme clustered in one
/// slot.
inline ConfusionNetwork align_into(const ConfusionNetwork& net,
                                   const Pronunciation& cand,
                                   const AlignmentCosts& costs) {
  costs.validate();
  for (const auto& ph : cand.phones) {
    if (ph.symbol == kEps) {
      throw ConfigError("phone symbol collides with the epsilon marker");
    }
  }
  ConfusionNetwork out;
  if (net.empty()) {
    if (cand.empty()) throw EmptyInput("candidate pronunciation");
    out.language_ = cand.phones.front().language;
    for (const auto& ph : cand.phones) out.slots_.push_back({{ph.symbol, 1}});
    out.aligned_ = 1;
    return out;
  }

  const std::size_t ns = net.slots_.size();
  const std::size_t np = cand.size();
  std::vector<std::vector<double>> cost(ns + 1,
                                        std::vector<double>(np + 1, 0.0));
  // 0 = diagonal (match/sub), 1 = slot skipped (eps), 2 = new slot.
  std::vector<std::vector<std::uint8_t>> step(
      ns + 1, std::vector<std::uint8_t>(np + 1, 0));
  for (std::size_t i = 1; i <= ns; ++i) {
    cost[i][0] = cost[i - 1][0] + costs.deletion;
    step[i][0] = 1;
  }
  for (std::size_t j = 1; j <= np; ++j) {
    cost[0][j] = cost[0][j - 1] + costs.insertion;
    step[0][j] = 2;
  }
  for (std::size_t i = 1; i <= ns; ++i) {
    const auto& slot = net.slots_[i - 1];
    for (std::size_t j = 1; j <= np; ++j) {
      bool hit = slot.count(cand.phones[j - 1].symbol) > 0;
      double diag =
          cost[i - 1][j - 1] + (hit ? costs.match : costs.substitution);
      double del = cost[i - 1][j] + costs.deletion;
      double ins = cost[i][j - 1] + costs.insertion;
      double best = std::min({diag, del, ins});
      cost[i][j] = best;
      if (hit) {
        step[i][j] = diag == best ? 0 : (del == best ? 1 : 2);
      } else {
        step[i][j] = del == best ? 1 : (ins == best ? 2 : 0);
      }
    }
  }

  std::vector<std::uint8_t> ops;
  for (std::size_t i = ns, j = np; i > 0 || j > 0;) {
    std::uint8_t s = step[i][j];
    ops.push_back(s);
    if (s == 0) {
      --i;
      --j;
    } else if (s == 1) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());

  out.language_ = net.language_;
  out.aligned_ = net.aligned_ + 1;
  std::size_t si = 0, pj = 0;
  for (std::uint8_t s : ops) {
    if (s == 0) {
      ConfusionNetwork::Slot slot = net.slots_[si++];
      slot[cand.phones[pj++].symbol] += 1;
      out.slots_.push_back(std::move(slot));
    } else if (s == 1) {
      ConfusionNetwork::Slot slot = net.slots_[si++];
      slot[kEps] += 1;
      out.slots_.push_back(std::move(slot));
    } else {
      ConfusionNetwork::Slot slot{{cand.phones[pj++].symbol, 1}};
      slot[kEps] = net.aligned_;
      out.slots_.push_back(std::move(slot));
    }
  }
  return out;
}

/// Left-fold of align_into over the candidates in the given order (decode
/// or APE rank order; ROVER-style combination is order dependent).
inline ConfusionNetwork build_pcn(const std::vector<Pronunciation>& candidates,
                                  const AlignmentCosts& costs = {}) {
  if (candidates.empty()) throw EmptyInput("candidate list");
  ConfusionNetwork net;
  for (const auto& cand : candidates) net = align_into(net, cand, costs);
  return net;
}

/// n best phoneme sequences through the network. A path picks one arc per
/// slot; its score is the sum of the picked phoneme votes, with "<eps>"
/// arcs contributing zero and emitting nothing. Equal-score sequences order
/// lexicographically; paths emitting identical sequences are merged keeping
/// the higher score; the empty emission is never returned. The result can
/// contain sequences absent from the aligned candidates.
inline std::vector<Pronunciation> nbest_consensus(const ConfusionNetwork& net,
                                                  int n) {
  if (n < 1) throw ConfigError("consensus n must be >= 1");
  if (net.empty()) return {};

  struct Arc {
    std::string symbol;
    long long score;
  };
  std::vector<std::vector<Arc>> arcs(net.slot_count());
  for (std::size_t i = 0; i < net.slot_count(); ++i) {
    for (const auto& [sym, votes] : net.slots()[i]) {
      arcs[i].push_back(Arc{sym, sym == kEps ? 0 : votes});
    }
    std::sort(arcs[i].begin(), arcs[i].end(), [](const Arc& a, const Arc& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.symbol < b.symbol;
    });
  }

  // Lazy best-first enumeration over per-slot arc choices.
  struct State {
    long long score;
    std::vector<int> idx;
    bool operator<(const State& o) const { return score < o.score; }
  };
  const std::size_t ns = net.slot_count();
  auto score_of = [&](const std::vector<int>& idx) {
    long long s = 0;
    for (std::size_t i = 0; i < ns; ++i) s += arcs[i][idx[i]].score;
    return s;
  };
  std::priority_queue<State> heap;
  std::set<std::vector<int>> visited;
  std::vector<int> first(ns, 0);
  heap.push(State{score_of(first), first});
  visited.insert(first);

  std::map<std::vector<std::string>, long long> best;
  auto nth_boundary = [&]() -> long long {
    if (static_cast<int>(best.size()) < n) return LLONG_MIN;
    std::vector<long long> scores;
    scores.reserve(best.size());
    for (const auto& [seq, sc] : best) scores.push_back(sc);
    std::sort(scores.rbegin(), scores.rend());
    return scores[n - 1];
  };

  long long boundary = LLONG_MIN;
  while (!heap.empty()) {
    State top = heap.top();
    if (boundary != LLONG_MIN && top.score < boundary) break;
    heap.pop();
    std::vector<std::string> seq;
    seq.reserve(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      const auto& a = arcs[i][top.idx[i]];
      if (a.symbol != kEps) seq.push_back(a.symbol);
    }
    if (!seq.empty()) {
      auto it = best.find(seq);
      if (it == best.end() || it->second < top.score) {
        best[seq] = top.score;
        boundary = nth_boundary();
      }
    }
    for (std::size_t i = 0; i < ns; ++i) {
      if (top.idx[i] + 1 < static_cast<int>(arcs[i].size())) {
        std::vector<int> next = top.idx;
        ++next[i];
        if (visited.insert(next).second) {
          heap.push(State{score_of(next), next});
        }
      }
    }
  }

  std::vector<std::pair<std::vector<std::string>, long long>> ranked(
      best.begin(), best.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<Pronunciation> out;
  for (const auto& [seq, sc] : ranked) {
    if (static_cast<int>(out.size()) >= n) break;
    Pronunciation p;
    p.phones.reserve(seq.size());
    for (const auto& sym : seq) p.phones.push_back(Phoneme{sym, net.language()});
    out.push_back(std::move(p));
  }
  return out;
}

/// Hybrid selection: rank the (already pruned) candidates by average
/// posterior, fold them into a PCN in rank order, take n_pcn consensus
/// sequences, keep the original candidates alongside the new variants, and
/// rescore the union with a second posterior pass; returns the top n_out.
inline std::vector<Pronunciation> pcn_plus_ape(const CandidateSet& candidates,
                                               const PosteriorSource& source,
                                               const AlignmentCosts& costs,
                                               int n_pcn, int n_out) {
  if (candidates.candidates.empty()) throw EmptyCandidates();
  ApeTable base = ape_score(
      candidates,
      gather_records(candidates.word, candidates.candidates, source));
  std::vector<Pronunciation> ranked =
      select_top(base, candidates.word,
                 static_cast<int>(candidates.candidates.size()));

  std::vector<Pronunciation> consensus =
      nbest_consensus(build_pcn(ranked, costs), n_pcn);

  std::vector<Pronunciation> hyps = ranked;
  std::set<Pronunciation> seen(hyps.begin(), hyps.end());
  for (const auto& p : consensus) {
    if (seen.insert(p).second) hyps.push_back(p);
  }

  CandidateSet pool;
  pool.word = candidates.word;
  pool.candidates = hyps;
  std::sort(pool.candidates.begin(), pool.candidates.end());
  ApeTable rescored =
      ape_score(pool, gather_records(candidates.word, hyps, source));
  return select_top(rescored, candidates.word, n_out);
}

inline std::vector<Pronunciation> pcn_plus_ape(const CandidateSet& candidates,
                                               const SyntheticCorpus& corpus,
                                               const AlignmentCosts& costs,
                                               double lambda, int n_pcn,
                                               int n_out) {
  OraclePosteriorSource source(corpus, lambda);
  return pcn_plus_ape(candidates, source, costs, n_pcn, n_out);
}

/// Dump format used by golden tests: one line per slot,
/// "idx<TAB>phone:votes,phone:votes,...", arcs ordered by votes descending
/// then symbol, deletion arcs spelled "<eps>".
inline std::string dump_pcn(const ConfusionNetwork& net) {
  std::string out;
  for (std::size_t i = 0; i < net.slot_count(); ++i) {
    std::vector<std::pair<std::string, int>> arcs(net.slots()[i].begin(),
                                                  net.slots()[i].end());
    std::sort(arcs.begin(), arcs.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    out += std::to_string(i);
    out += '\t';
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      if (j) out += ',';
      out += arcs[j].first;
      out += ':';
      out += std::to_string(arcs[j].second);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cslex
