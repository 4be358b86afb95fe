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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cslex {

/// Base class for all toolkit errors. `code()` is a stable identifier used
/// by the CLI when emitting machine-readable error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct MalformedLine : Error {
  explicit MalformedLine(std::size_t line_no, const std::string& detail = "")
      : Error("MalformedLine",
              "malformed line " + std::to_string(line_no) +
                  (detail.empty() ? "" : ": " + detail)),
        line_no(line_no) {}
  std::size_t line_no;
};

struct UnknownPhoneme : Error {
  UnknownPhoneme(std::string symbol, std::size_t line_no)
      : Error("UnknownPhoneme", "unknown phoneme '" + symbol + "' at line " +
                                    std::to_string(line_no)),
        symbol(std::move(symbol)),
        line_no(line_no) {}
  std::string symbol;
  std::size_t line_no;
};

struct InvalidDistribution : Error {
  explicit InvalidDistribution(const std::string& detail)
      : Error("InvalidDistribution", "invalid distribution: " + detail) {}
};

struct UnknownSegment : Error {
  explicit UnknownSegment(const std::string& detail)
      : Error("UnknownSegment", "segment not in corpus: " + detail) {}
};

struct NoSegments : Error {
  explicit NoSegments(std::string word)
      : Error("NoSegments", "word '" + word + "' has no segments"),
        word(std::move(word)) {}
  std::string word;
};

struct WordNotInUtterance : Error {
  WordNotInUtterance(const std::string& word, const std::string& utt_id)
      : Error("WordNotInUtterance",
              "word '" + word + "' does not occur in utterance '" + utt_id +
                  "'") {}
};

struct EmptyCandidates : Error {
  EmptyCandidates() : Error("EmptyCandidates", "candidate set is empty") {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& what)
      : Error("EmptyInput", "empty input: " + what) {}
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& detail)
      : Error("ShapeMismatch", "shape mismatch: " + detail) {}
};

struct EmptyLexicon : Error {
  EmptyLexicon() : Error("EmptyLexicon", "lexicon has no entries") {}
};

struct NonFiniteLoss : Error {
  explicit NonFiniteLoss(std::size_t epoch)
      : Error("NonFiniteLoss",
              "training loss became non-finite at epoch " +
                  std::to_string(epoch)) {}
};

struct UnknownGrapheme : Error {
  explicit UnknownGrapheme(std::string symbol)
      : Error("UnknownGrapheme", "grapheme '" + symbol + "' not in vocabulary"),
        symbol(std::move(symbol)) {}
  std::string symbol;
};

struct InvalidThreshold : Error {
  InvalidThreshold(int k_min, int threshold)
      : Error("InvalidThreshold",
              "threshold " + std::to_string(threshold) +
                  " must exceed k_min " + std::to_string(k_min)) {}
};

struct EmptySufficientSet : Error {
  EmptySufficientSet()
      : Error("EmptySufficientSet",
              "sufficient set is empty; internal assistance needs at least "
              "one word above the threshold") {}
};

struct MixedScriptToken : Error {
  explicit MixedScriptToken(std::string token)
      : Error("MixedScriptToken", "token mixes scripts: '" + token + "'"),
        token(std::move(token)) {}
  std::string token;
};

struct EmptyReference : Error {
  EmptyReference() : Error("EmptyReference", "reference has no tokens") {}
};

struct InvalidCounts : Error {
  InvalidCounts(const std::string& word, long p, long t)
      : Error("InvalidCounts", "word '" + word + "': recognized count " +
                                   std::to_string(p) +
                                   " exceeds occurrence count " +
                                   std::to_string(t)) {}
};

struct LineCountMismatch : Error {
  LineCountMismatch(std::size_t ref_lines, std::size_t hyp_lines)
      : Error("LineCountMismatch",
              "reference has " + std::to_string(ref_lines) +
                  " lines but hypothesis has " + std::to_string(hyp_lines)) {}
};

struct IoError : Error {
  explicit IoError(const std::string& detail) : Error("IoError", detail) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& detail)
      : Error("ConfigError", detail) {}
};

}  // namespace cslex
