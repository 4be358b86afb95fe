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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cslex/errors.hpp"
#include "cslex/lexicon.hpp"

// Mixed scoring for intra-sentential code-switching: native text is scored
// per character, foreign text per word. MER charges every substitution,
// insertion and deletion against the full reference; the per-language CER
// and WER are recall based (correct over reference tokens), so insertions
// are charged to MER only.

namespace cslex {

struct MixedToken {
  enum class Lang { kNativeChar, kForeignWord };
  std::string surface;
  Lang language = Lang::kNativeChar;

  friend bool operator==(const MixedToken&, const MixedToken&) = default;
};

struct AlignmentOp {
  enum class Kind { kCorrect, kSubstitution, kInsertion, kDeletion };
  Kind kind = Kind::kCorrect;
  std::optional<MixedToken> ref_token;  // C/S/D
  std::optional<MixedToken> hyp_token;  // C/S/I

  char code() const {
    switch (kind) {
      case Kind::kCorrect: return 'C';
      case Kind::kSubstitution: return 'S';
      case Kind::kInsertion: return 'I';
      default: return 'D';
    }
  }
};

struct ScoreReport {
  double mer = 0.0;
  double cer_native = 0.0;
  double wer_foreign = 0.0;
  long correct = 0;
  long substitutions = 0;
  long insertions = 0;
  long deletions = 0;
  long correct_native = 0;
  long correct_foreign = 0;
  long ref_tokens = 0;
  long ref_native = 0;
  long ref_foreign = 0;
};

struct VolumeBucket {
  int lo = 1;                       // inclusive
  std::optional<int> hi;            // exclusive; empty = unbounded
  bool contains(int k) const { return k >= lo && (!hi || k < *hi); }

  std::string label() const {
    return "[" + std::to_string(lo) + "," + (hi ? std::to_string(*hi) : "inf") +
           ")";
  }
};

struct ArrBucketResult {
  VolumeBucket bucket;
  int n_words = 0;
  std::optional<double> arr;  // empty when the bucket holds no words
};

struct ArrReport {
  std::vector<ArrBucketResult> buckets;
};

namespace detail {

inline bool is_cjk(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF);
}

inline bool is_ascii_letter(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

inline bool is_separator(char32_t cp) {
  if (cp == ' ' || cp == '\t' || cp == '\r' || cp == '\n') return true;
  if (cp < 0x80) return !is_ascii_letter(cp) && !(cp >= '0' && cp <= '9');
  // CJK punctuation, fullwidth forms, general punctuation.
  return (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFF00 && cp <= 0xFFEF) ||
         (cp >= 0x2000 && cp <= 0x206F);
}

/// Decodes one UTF-8 codepoint; returns consumed byte count.
inline std::size_t decode_utf8(const std::string& s, std::size_t i,
                               char32_t& cp) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) {
    cp = c;
    return 1;
  }
  std::size_t len = (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : 4;
  if (i + len > s.size()) throw IoError("truncated UTF-8 sequence");
  cp = c & (0xFF >> (len + 1));
  for (std::size_t k = 1; k < len; ++k) {
    unsigned char cc = static_cast<unsigned char>(s[i + k]);
    if ((cc & 0xC0) != 0x80) throw IoError("invalid UTF-8 continuation");
    cp = (cp << 6) | (cc & 0x3F);
  }
  return len;
}

}  // namespace detail

/// Splits a code-switching line into scoring tokens: every CJK codepoint is
/// one native token, every maximal ASCII-letter run is one foreign token;
/// whitespace, punctuation and standalone digit runs are dropped. A run
/// mixing letters with digits, or any other letter-like codepoint, raises
/// MixedScriptToken.
inline std::vector<MixedToken> tokenize_mixed(const std::string& line) {
  std::vector<MixedToken> out;
  std::string word;
  bool word_has_digit = false;
  std::string digits;
  auto flush = [&] {
    if (!word.empty()) {
      if (word_has_digit) throw MixedScriptToken(word);
      out.push_back(MixedToken{word, MixedToken::Lang::kForeignWord});
      word.clear();
      word_has_digit = false;
    }
    digits.clear();
  };
  std::size_t i = 0;
  while (i < line.size()) {
    char32_t cp = 0;
    std::size_t len = detail::decode_utf8(line, i, cp);
    std::string chunk = line.substr(i, len);
    i += len;
    if (detail::is_ascii_letter(cp)) {
      if (!digits.empty()) {
        word_has_digit = true;  // digits directly before letters: "3g"
      }
      word += chunk;
    } else if (cp >= '0' && cp <= '9') {
      if (!word.empty()) {
        word_has_digit = true;  // letters directly before digits: "mp3"
        word += chunk;
      } else {
        digits += chunk;
      }
    } else if (detail::is_cjk(cp)) {
      flush();
      out.push_back(MixedToken{chunk, MixedToken::Lang::kNativeChar});
    } else if (detail::is_separator(cp)) {
      flush();
    } else {
      throw MixedScriptToken(word.empty() ? chunk : word + chunk);
    }
  }
  flush();
  return out;
}

/// Minimum-edit-distance alignment with unit costs (C=0, S=I=D=1) and a
/// deterministic backtrace preferring C > S > D > I on ties. Substitution
/// across languages is allowed at cost 1.
inline std::vector<AlignmentOp> align(const std::vector<MixedToken>& ref,
                                      const std::vector<MixedToken>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<int>> cost(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) cost[i][0] = static_cast<int>(i);
  for (std::size_t j = 1; j <= m; ++j) cost[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      int diag = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost[i][j] = std::min({diag, cost[i - 1][j] + 1, cost[i][j - 1] + 1});
    }
  }
  std::vector<AlignmentOp> ops;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        cost[i][j] == cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      bool eq = ref[i - 1] == hyp[j - 1];
      ops.push_back(AlignmentOp{eq ? AlignmentOp::Kind::kCorrect
                                   : AlignmentOp::Kind::kSubstitution,
                                ref[i - 1], hyp[j - 1]});
      --i;
      --j;
    } else if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      ops.push_back(AlignmentOp{AlignmentOp::Kind::kDeletion, ref[i - 1],
                                std::nullopt});
      --i;
    } else {
      ops.push_back(AlignmentOp{AlignmentOp::Kind::kInsertion, std::nullopt,
                                hyp[j - 1]});
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

inline void accumulate(ScoreReport& r, const std::vector<AlignmentOp>& ops) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case AlignmentOp::Kind::kCorrect: ++r.correct; break;
      case AlignmentOp::Kind::kSubstitution: ++r.substitutions; break;
      case AlignmentOp::Kind::kInsertion: ++r.insertions; break;
      case AlignmentOp::Kind::kDeletion: ++r.deletions; break;
    }
    if (op.ref_token) {
      ++r.ref_tokens;
      bool native = op.ref_token->language == MixedToken::Lang::kNativeChar;
      (native ? r.ref_native : r.ref_foreign) += 1;
      if (op.kind == AlignmentOp::Kind::kCorrect) {
        (native ? r.correct_native : r.correct_foreign) += 1;
      }
    }
  }
}

inline void finalize_rates(ScoreReport& r) {
  if (r.ref_tokens == 0) throw EmptyReference();
  r.mer = static_cast<double>(r.substitutions + r.insertions + r.deletions) /
          static_cast<double>(r.ref_tokens);
  r.cer_native =
      r.ref_native > 0
          ? 1.0 - static_cast<double>(r.correct_native) / r.ref_native
          : 0.0;
  r.wer_foreign =
      r.ref_foreign > 0
          ? 1.0 - static_cast<double>(r.correct_foreign) / r.ref_foreign
          : 0.0;
}

/// MER = (S+I+D)/|ref|; CER/WER are recall-based per language.
inline ScoreReport score(const std::vector<MixedToken>& ref,
                         const std::vector<MixedToken>& hyp) {
  ScoreReport r;
  accumulate(r, align(ref, hyp));
  finalize_rates(r);
  return r;
}

/// Corpus-level pooled scoring over parallel utterance pairs.
inline ScoreReport score_corpus(
    const std::vector<std::pair<std::vector<MixedToken>,
                                std::vector<MixedToken>>>& pairs) {
  ScoreReport r;
  for (const auto& [ref, hyp] : pairs) accumulate(r, align(ref, hyp));
  finalize_rates(r);
  return r;
}

struct WordRecall {
  long recognized = 0;  // P_w
  long occurrences = 0;  // T_w
  int volume = 0;        // k_w
};

/// ARR_B = (1/N_B) * sum over words with k_w in B of P_w/T_w.
inline ArrReport arr(const std::map<Word, WordRecall>& per_word,
                     const std::vector<VolumeBucket>& buckets) {
  for (const auto& [w, rec] : per_word) {
    if (rec.occurrences < 1 || rec.recognized < 0 ||
        rec.recognized > rec.occurrences) {
      throw InvalidCounts(w.grapheme, rec.recognized, rec.occurrences);
    }
  }
  ArrReport report;
  for (const auto& b : buckets) {
    ArrBucketResult row;
    row.bucket = b;
    double sum = 0.0;
    for (const auto& [w, rec] : per_word) {
      if (!b.contains(rec.volume)) continue;
      ++row.n_words;
      sum += static_cast<double>(rec.recognized) / rec.occurrences;
    }
    if (row.n_words > 0) row.arr = sum / row.n_words;
    report.buckets.push_back(row);
  }
  return report;
}

/// Parses "1:10,10:20,20:" into volume buckets ("lo:hi" exclusive hi, empty
/// hi = unbounded).
inline std::vector<VolumeBucket> parse_buckets(const std::string& spec) {
  std::vector<VolumeBucket> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string item = spec.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw ConfigError("bucket '" + item + "' needs 'lo:hi'");
      }
      VolumeBucket b;
      try {
        b.lo = std::stoi(item.substr(0, colon));
        std::string hi = item.substr(colon + 1);
        if (!hi.empty()) b.hi = std::stoi(hi);
      } catch (const std::exception&) {
        throw ConfigError("bucket '" + item + "' has unparsable bounds");
      }
      if (b.lo < 0 || (b.hi && *b.hi <= b.lo)) {
        throw ConfigError("bucket '" + item + "' bounds out of order");
      }
      out.push_back(b);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("no buckets in '" + spec + "'");
  return out;
}

/// Three-line alignment dump: reference / hypothesis / op codes, columns
/// padded to equal display width, "*" filling the missing side of I/D.
inline std::string dump_alignment(const std::vector<AlignmentOp>& ops) {
  auto width = [](const std::string& s) {
    std::size_t w = 0, i = 0;
    while (i < s.size()) {
      char32_t cp;
      i += detail::decode_utf8(s, i, cp);
      w += detail::is_cjk(cp) ? 2 : 1;
    }
    return w;
  };
  std::string ref_line, hyp_line, op_line;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    std::string r = ops[k].ref_token ? ops[k].ref_token->surface : "*";
    std::string h = ops[k].hyp_token ? ops[k].hyp_token->surface : "*";
    std::string o(1, ops[k].code());
    std::size_t col = std::max({width(r), width(h), o.size()});
    auto pad = [&](std::string& line, const std::string& cell) {
      if (k) line += ' ';
      line += cell;
      line.append(col - width(cell), ' ');
    };
    pad(ref_line, r);
    pad(hyp_line, h);
    pad(op_line, o);
  }
  auto rstrip = [](std::string& s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
  };
  rstrip(ref_line);
  rstrip(hyp_line);
  rstrip(op_line);
  return ref_line + "\n" + hyp_line + "\n" + op_line + "\n";
}

}  // namespace cslex
