//
// Copyright 2026 The lexsimp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef LEXSIMP_CORE_HPP_
#define LEXSIMP_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lexsimp/common.hpp"
#include "lexsimp/text.hpp"

namespace lexsimp {

/// One token of a sentence. `begin`/`end` are byte offsets into the owning text.
struct Token {
  std::string surface;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

/// A sentence together with its tokens. Offsets cover every token; the bytes
/// between tokens (whitespace) are kept in `text`, so the original string is
/// always recoverable.
class TokenizedSentence {
 public:
  TokenizedSentence() = default;
  TokenizedSentence(std::string text, std::vector<Token> tokens)
      : text_(std::move(text)), tokens_(std::move(tokens)) {}

  const std::string& text() const noexcept { return text_; }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }
  const Token& at(std::size_t i) const {
    if (i >= tokens_.size())
      throw Error("token position " + std::to_string(i) + " out of range (sentence has " +
                  std::to_string(tokens_.size()) + " tokens)");
    return tokens_[i];
  }

  std::vector<std::string> words() const {
    std::vector<std::string> out;
    out.reserve(tokens_.size());
    for (const Token& t : tokens_) out.push_back(t.surface);
    return out;
  }

 private:
  std::string text_;
  std::vector<Token> tokens_;
};

/// Splits `text` on Unicode whitespace and separates leading/trailing
/// punctuation into single-code-point tokens. Case is preserved and no
/// bytes are dropped.
inline TokenizedSentence tokenize(std::string text) {
  std::vector<Token> tokens;
  auto emit = [&](std::size_t b, std::size_t e) { tokens.push_back({text.substr(b, e - b), b, e}); };

  std::size_t i = 0;
  while (i < text.size()) {
    text::CodePoint cp = text::decode_utf8(text, i);
    if (text::is_space(cp.value)) {
      i += cp.length;
      continue;
    }
    // Collect one whitespace-delimited chunk as a list of code point boundaries.
    std::vector<std::size_t> starts;
    std::vector<bool> punct;
    std::size_t j = i;
    while (j < text.size()) {
      cp = text::decode_utf8(text, j);
      if (text::is_space(cp.value)) break;
      starts.push_back(j);
      punct.push_back(text::is_punct(cp.value));
      j += cp.length;
    }
    starts.push_back(j);
    const std::size_t n = punct.size();
    std::size_t lead = 0;
    while (lead < n && punct[lead]) ++lead;
    std::size_t trail = n;
    while (trail > lead && punct[trail - 1]) --trail;
    for (std::size_t k = 0; k < lead; ++k) emit(starts[k], starts[k + 1]);
    if (trail > lead) emit(starts[lead], starts[trail]);
    for (std::size_t k = trail; k < n; ++k) emit(starts[k], starts[k + 1]);
    i = j;
  }
  return TokenizedSentence(std::move(text), std::move(tokens));
}

/// Rebuilds the text from tokens and the inter-token gaps of the original.
inline std::string detokenize(const TokenizedSentence& s) {
  std::string out;
  std::size_t cursor = 0;
  for (const Token& t : s.tokens()) {
    out.append(s.text(), cursor, t.begin - cursor);
    out += t.surface;
    cursor = t.end;
  }
  out.append(s.text(), cursor, std::string::npos);
  return out;
}

/// Replaces the surface of token `position`; every other byte is untouched and
/// the offsets of the following tokens are shifted.
inline TokenizedSentence replace_token(const TokenizedSentence& sentence, std::size_t position,
                                       std::string_view replacement) {
  const Token& target = sentence.at(position);
  if (replacement.empty()) throw Error("replacement must be non-empty");
  if (text::contains_whitespace(replacement))
    throw Error("replacement '" + std::string(replacement) + "' contains whitespace");

  std::string out = sentence.text().substr(0, target.begin);
  out += replacement;
  out.append(sentence.text(), target.end, std::string::npos);

  const auto delta = static_cast<std::ptrdiff_t>(replacement.size()) -
                     static_cast<std::ptrdiff_t>(target.end - target.begin);
  std::vector<Token> tokens = sentence.tokens();
  tokens[position].surface = std::string(replacement);
  tokens[position].end = tokens[position].begin + replacement.size();
  for (std::size_t i = position + 1; i < tokens.size(); ++i) {
    tokens[i].begin = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(tokens[i].begin) + delta);
    tokens[i].end = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(tokens[i].end) + delta);
  }
  return TokenizedSentence(std::move(out), std::move(tokens));
}

/// Title-cased: starts with an ASCII capital.
inline bool is_title_case(std::string_view word) {
  return !word.empty() && text::is_ascii_upper(word.front());
}

inline bool is_all_caps(std::string_view word) {
  bool letters = false;
  for (char c : word) {
    if (text::is_ascii_lower(c)) return false;
    if (text::is_ascii_upper(c)) letters = true;
  }
  return letters;
}

/// Transfers the capitalization pattern of `original` onto a lowercase
/// candidate: "ADMISSION" -> "ENTRANCE", "Admission" -> "Entrance".
inline std::string apply_case(std::string_view original, std::string_view candidate) {
  std::string out(candidate);
  if (out.empty()) return out;
  if (original.size() > 1 && is_all_caps(original)) {
    for (char& c : out)
      if (text::is_ascii_lower(c)) c = static_cast<char>(c - 'a' + 'A');
  } else if (is_title_case(original) && text::is_ascii_lower(out.front())) {
    out.front() = static_cast<char>(out.front() - 'a' + 'A');
  }
  return out;
}

/// Tokens that can never be simplification targets.
inline bool is_non_word(std::string_view surface) {
  return text::is_punctuation(surface) || text::is_numeric(surface);
}

enum class GenerationMode { kSentencePair, kSingleMasked, kSingleUnmasked };

inline std::string to_string(GenerationMode m) {
  switch (m) {
    case GenerationMode::kSentencePair: return "sentence_pair";
    case GenerationMode::kSingleMasked: return "single_masked";
    case GenerationMode::kSingleUnmasked: return "single_unmasked";
  }
  return "sentence_pair";
}

inline GenerationMode parse_generation_mode(std::string_view s) {
  if (s == "sentence_pair") return GenerationMode::kSentencePair;
  if (s == "single_masked") return GenerationMode::kSingleMasked;
  if (s == "single_unmasked") return GenerationMode::kSingleUnmasked;
  throw ConfigError("unknown generation mode '" + std::string(s) +
                    "' (expected sentence_pair, single_masked or single_unmasked)");
}

/// Ranking features. Order is the canonical report order.
enum class Feature { kBertOrder, kLmLoss, kSimilarity, kFrequency, kPpdb };

inline constexpr Feature kAllFeatures[] = {Feature::kBertOrder, Feature::kLmLoss,
                                           Feature::kSimilarity, Feature::kFrequency,
                                           Feature::kPpdb};

inline std::string to_string(Feature f) {
  switch (f) {
    case Feature::kBertOrder: return "bert_order";
    case Feature::kLmLoss: return "lm_loss";
    case Feature::kSimilarity: return "similarity";
    case Feature::kFrequency: return "frequency";
    case Feature::kPpdb: return "ppdb";
  }
  return "bert_order";
}

inline Feature parse_feature(std::string_view s) {
  for (Feature f : kAllFeatures)
    if (to_string(f) == s) return f;
  throw ConfigError("unknown feature '" + std::string(s) +
                    "' (expected bert_order, lm_loss, similarity, frequency or ppdb)");
}

/// Bit set of enabled ranking features.
class FeatureSet {
 public:
  static FeatureSet all() {
    FeatureSet s;
    s.bits_ = 0x1F;
    return s;
  }
  static FeatureSet none() { return FeatureSet(); }

  bool contains(Feature f) const { return bits_ & bit(f); }
  FeatureSet& enable(Feature f) {
    bits_ |= bit(f);
    return *this;
  }
  FeatureSet& disable(Feature f) {
    bits_ &= ~bit(f);
    return *this;
  }
  bool empty() const { return bits_ == 0; }
  std::vector<Feature> list() const {
    std::vector<Feature> out;
    for (Feature f : kAllFeatures)
      if (contains(f)) out.push_back(f);
    return out;
  }
  bool operator==(const FeatureSet&) const = default;

 private:
  static std::uint8_t bit(Feature f) { return static_cast<std::uint8_t>(1u << static_cast<int>(f)); }
  std::uint8_t bits_ = 0;
};

struct PipelineConfig {
  double complexity_threshold = 0.5;
  int top_k = 10;
  double zipf_filter_min = 3.0;
  int lm_window = 5;  // tokens on each side of the target
  double context_mask_prob = 0.0;
  std::uint64_t rng_seed = 0;
  GenerationMode generation_mode = GenerationMode::kSentencePair;
  FeatureSet features = FeatureSet::all();
  // Replacement is accepted only if the winner is more frequent or fits the
  // context better than the original word. Turning this off is an ablation.
  bool acceptance_condition = true;

  void validate() const {
    if (!(complexity_threshold >= 0.0 && complexity_threshold <= 1.0))
      throw ConfigError("complexity_threshold must be in [0, 1]");
    if (top_k < 1) throw ConfigError("top_k must be a positive integer");
    if (lm_window < 1) throw ConfigError("lm_window must be a positive integer");
    if (!(context_mask_prob >= 0.0 && context_mask_prob <= 1.0))
      throw ConfigError("context_mask_prob must be in [0, 1]");
    if (features.empty()) throw ConfigError("at least one ranking feature must be enabled");
  }
};

}  // namespace lexsimp

#endif  // LEXSIMP_CORE_HPP_
