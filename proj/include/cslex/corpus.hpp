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

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "cslex/lexicon.hpp"

namespace cslex {

/// One utterance token: either a single native character or a whole foreign
/// word.
struct UtteranceToken {
  enum class Kind { kNativeChar, kForeignWord };
  Kind kind = Kind::kNativeChar;
  std::string surface;

  friend bool operator==(const UtteranceToken&, const UtteranceToken&) =
      default;
};

struct Utterance {
  std::string id;
  std::vector<UtteranceToken> tokens;

  bool contains_word(const Word& w) const {
    for (const auto& t : tokens) {
      if (t.kind == UtteranceToken::Kind::kForeignWord &&
          t.surface == w.grapheme) {
        return true;
      }
    }
    return false;
  }
};

/// One audio-segment stand-in: the occurrence_index-th occurrence of `word`
/// inside utterance `utterance_id`.
struct Segment {
  Word word;
  std::string utterance_id;
  int occurrence_index = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment& a, const Segment& b) {
    if (auto c = a.word <=> b.word; c != 0) return c;
    if (auto c = a.utterance_id <=> b.utterance_id; c != 0) return c;
    return a.occurrence_index <=> b.occurrence_index;
  }
};

/// Driving volume k of a word: the number of its segments. k >= M_w, the
/// count of host utterances, since each utterance yields at least one
/// segment.
inline int driving_volume(const Word& word,
                          const std::vector<Segment>& segments) {
  int k = 0;
  for (const auto& s : segments) {
    if (s.word == word) ++k;
  }
  return k;
}

}  // namespace cslex
