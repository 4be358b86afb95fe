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
#include <compare>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cslex/errors.hpp"
#include "cslex/phoneme.hpp"

namespace cslex {

struct Word {
  std::string grapheme;
  Language language = Language::kForeign;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.grapheme <=> b.grapheme; c != 0) return c;
    return a.language <=> b.language;
  }
};

/// Word -> ordered candidate pronunciations. Entries iterate sorted by
/// grapheme; per-word lists keep insertion rank (selection is rank
/// sensitive). (word, pronunciation) pairs are unique.
class Lexicon {
 public:
  using EntryMap = std::map<Word, std::vector<Pronunciation>>;

  bool empty() const { return entries_.empty(); }
  std::size_t word_count() const { return entries_.size(); }

  std::size_t pronunciation_count() const {
    std::size_t n = 0;
    for (const auto& [w, prons] : entries_) n += prons.size();
    return n;
  }

  const EntryMap& entries() const { return entries_; }

  bool contains(const Word& w) const { return entries_.count(w) > 0; }

  const std::vector<Pronunciation>& at(const Word& w) const {
    auto it = entries_.find(w);
    if (it == entries_.end()) {
      throw IoError("lexicon has no entry for '" + w.grapheme + "'");
    }
    return it->second;
  }

  std::vector<Pronunciation> get(const Word& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? std::vector<Pronunciation>{} : it->second;
  }

  /// Appends a pronunciation; duplicate (word, pron) pairs are dropped.
  /// Returns false when dropped.
  bool add(const Word& w, const Pronunciation& pron) {
    auto& prons = entries_[w];
    if (std::find(prons.begin(), prons.end(), pron) != prons.end()) {
      if (prons.empty()) entries_.erase(w);
      return false;
    }
    prons.push_back(pron);
    return true;
  }

  void merge(const Lexicon& other) {
    for (const auto& [w, prons] : other.entries_) {
      for (const auto& p : prons) add(w, p);
    }
  }

  std::vector<Word> words() const {
    std::vector<Word> out;
    out.reserve(entries_.size());
    for (const auto& [w, prons] : entries_) out.push_back(w);
    return out;
  }

  /// Rank-sensitive equality.
  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.entries_ == b.entries_;
  }

  /// Order-insensitive comparison: same words, same pronunciation sets.
  bool set_equals(const Lexicon& other) const {
    if (entries_.size() != other.entries_.size()) return false;
    for (const auto& [w, prons] : entries_) {
      auto it = other.entries_.find(w);
      if (it == other.entries_.end()) return false;
      std::set<Pronunciation> mine(prons.begin(), prons.end());
      std::set<Pronunciation> theirs(it->second.begin(), it->second.end());
      if (mine != theirs) return false;
    }
    return true;
  }

 private:
  EntryMap entries_;
};

/// Parses TSV lexicon content: "grapheme<TAB>ph ph ph", UTF-8, LF endings,
/// '#' comment lines ignored. Unknown phoneme symbols are rejected.
inline Lexicon parse_lexicon(const std::string& text,
                             const PhonemeInventory& inv,
                             Language word_language = Language::kForeign) {
  Lexicon lex;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw MalformedLine(line_no, "expected 'grapheme<TAB>phones'");
    }
    std::string grapheme = line.substr(0, tab);
    Pronunciation pron = parse_pronunciation(line.substr(tab + 1), inv, line_no);
    if (pron.empty()) throw MalformedLine(line_no, "no phones after tab");
    lex.add(Word{grapheme, word_language}, pron);
  }
  return lex;
}

/// Inverse of parse_lexicon; byte-stable: entries sorted by grapheme, one
/// line per (word, pronunciation) in rank order, each line LF-terminated.
inline std::string serialize_lexicon(const Lexicon& lex) {
  std::string out;
  for (const auto& [w, prons] : lex.entries()) {
    for (const auto& p : prons) {
      out += w.grapheme;
      out += '\t';
      out += p.to_string();
      out += '\n';
    }
  }
  return out;
}

}  // namespace cslex
