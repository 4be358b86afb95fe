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
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cslex/errors.hpp"

namespace cslex {

enum class Language { kNative, kForeign };

inline const char* to_string(Language lang) {
  return lang == Language::kNative ? "native" : "foreign";
}

/// A phone symbol. Symbols are opaque tokens; tone digits ("ai2" vs "ai4")
/// make distinct phonemes.
struct Phoneme {
  std::string symbol;
  Language language = Language::kNative;

  friend bool operator==(const Phoneme&, const Phoneme&) = default;
  friend auto operator<=>(const Phoneme& a, const Phoneme& b) {
    if (auto c = a.symbol <=> b.symbol; c != 0) return c;
    return a.language <=> b.language;
  }
};

/// An ordered, duplicate-free set of phonemes of one language. Order is the
/// insertion (file) order and fixes deterministic enumeration downstream.
class PhonemeInventory {
 public:
  PhonemeInventory() = default;
  PhonemeInventory(std::string name, Language language)
      : name_(std::move(name)), language_(language) {}

  const std::string& name() const { return name_; }
  Language language() const { return language_; }
  std::size_t size() const { return phonemes_.size(); }
  bool empty() const { return phonemes_.empty(); }
  const std::vector<Phoneme>& phonemes() const { return phonemes_; }
  const Phoneme& at(std::size_t i) const { return phonemes_.at(i); }

  bool contains(const std::string& symbol) const {
    return index_.count(symbol) > 0;
  }

  /// Adds a symbol; rejects duplicates, empty symbols and whitespace.
  void add(const std::string& symbol) {
    if (symbol.empty()) {
      throw ConfigError("inventory '" + name_ + "': empty phoneme symbol");
    }
    if (symbol.find_first_of(" \t\r\n") != std::string::npos) {
      throw ConfigError("inventory '" + name_ + "': symbol '" + symbol +
                        "' contains whitespace");
    }
    if (contains(symbol)) {
      throw ConfigError("inventory '" + name_ + "': duplicate symbol '" +
                        symbol + "'");
    }
    index_[symbol] = phonemes_.size();
    phonemes_.push_back(Phoneme{symbol, language_});
  }

  const Phoneme& get(const std::string& symbol, std::size_t line_no = 0) const {
    auto it = index_.find(symbol);
    if (it == index_.end()) throw UnknownPhoneme(symbol, line_no);
    return phonemes_[it->second];
  }

  /// Parses a one-symbol-per-line listing; '#' starts a comment line.
  static PhonemeInventory parse(const std::string& text, std::string name,
                                Language language) {
    PhonemeInventory inv(std::move(name), language);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      inv.add(line);
    }
    return inv;
  }

 private:
  std::string name_;
  Language language_ = Language::kNative;
  std::vector<Phoneme> phonemes_;
  std::map<std::string, std::size_t> index_;
};

/// A phone sequence (length >= 1 once populated); all phones from one
/// inventory.
struct Pronunciation {
  std::vector<Phoneme> phones;

  std::size_t size() const { return phones.size(); }
  bool empty() const { return phones.empty(); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < phones.size(); ++i) {
      if (i) out += ' ';
      out += phones[i].symbol;
    }
    return out;
  }

  friend bool operator==(const Pronunciation&, const Pronunciation&) = default;
  friend bool operator<(const Pronunciation& a, const Pronunciation& b) {
    return std::lexicographical_compare(
        a.phones.begin(), a.phones.end(), b.phones.begin(), b.phones.end());
  }
};

/// Parses "ph ph ph" against an inventory; used by lexicon and corpus io.
inline Pronunciation parse_pronunciation(const std::string& text,
                                         const PhonemeInventory& inv,
                                         std::size_t line_no = 0) {
  Pronunciation pron;
  std::istringstream in(text);
  std::string symbol;
  while (in >> symbol) pron.phones.push_back(inv.get(symbol, line_no));
  return pron;
}

}  // namespace cslex
