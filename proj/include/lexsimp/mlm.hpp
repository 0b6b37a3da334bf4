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

// Masked language model abstraction: top-k whole-word predictions at one
// masked slot, and the cross-entropy of a given word at a position.

#ifndef LEXSIMP_MLM_HPP_
#define LEXSIMP_MLM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lexsimp/common.hpp"
#include "lexsimp/text.hpp"

namespace lexsimp {

inline constexpr std::string_view kMaskToken = "[MASK]";
inline constexpr std::string_view kSeparatorToken = "[SEP]";

struct MaskSlot {
  int segment = 0;  // 0 = segment_a, 1 = segment_b
  std::size_t index = 0;

  bool operator==(const MaskSlot&) const = default;
};

/// One prediction request. The slot token is normally kMaskToken; in the
/// unmasked ablation it is the original word and predictions are read at its
/// position anyway.
struct MlmQuery {
  std::vector<std::string> segment_a;
  std::optional<std::vector<std::string>> segment_b;
  MaskSlot slot;

  const std::vector<std::string>& slot_segment() const {
    return slot.segment == 1 ? *segment_b : segment_a;
  }

  void validate() const {
    if (slot.segment != 0 && slot.segment != 1) throw BackendError("mask slot segment must be 0 or 1");
    if (slot.segment == 1 && !segment_b) throw BackendError("mask slot addresses a missing segment");
    if (slot.index >= slot_segment().size()) throw BackendError("mask slot index out of range");
  }
};

/// Lookup key used by the mock backend: tokens joined by spaces with the
/// slot rendered as [MASK]; a second segment follows " [SEP] ".
inline std::string fingerprint(const MlmQuery& q) {
  auto render = [&](const std::vector<std::string>& seg, int id) {
    std::vector<std::string> parts = seg;
    if (q.slot.segment == id && q.slot.index < parts.size()) parts[q.slot.index] = std::string(kMaskToken);
    return text::join(parts, " ");
  };
  std::string out = render(q.segment_a, 0);
  if (q.segment_b) out += " " + std::string(kSeparatorToken) + " " + render(*q.segment_b, 1);
  return out;
}

inline std::string slot_fingerprint(const MlmQuery& q) {
  MlmQuery single{q.slot_segment(), std::nullopt, {0, q.slot.index}};
  return fingerprint(single);
}

struct Prediction {
  std::string word;
  double probability = 0.0;

  bool operator==(const Prediction&) const = default;
};

struct MlmPrediction {
  std::vector<Prediction> entries;  // probability non-increasing, distinct words
};

struct TokenLoss {
  double nats = 0.0;
  // The target was not a single vocabulary item; the loss is the sum over
  // its subword pieces (or a floor probability for the mock).
  bool decomposed = false;
};

/// Special tokens look like "[CLS]" or "<s>".
inline bool is_special_token(std::string_view t) {
  return t.size() >= 3 && ((t.front() == '[' && t.back() == ']') || (t.front() == '<' && t.back() == '>'));
}

inline bool is_subword_continuation(std::string_view t) { return t.size() > 2 && t.substr(0, 2) == "##"; }

/// Keeps whole-word, non-punctuation, non-special entries in order, dropping
/// repeats, until `k` are collected.
inline MlmPrediction select_whole_words(const std::vector<Prediction>& raw, std::size_t k) {
  MlmPrediction out;
  std::unordered_set<std::string> seen;
  for (const Prediction& p : raw) {
    if (out.entries.size() >= k) break;
    if (p.word.empty() || is_subword_continuation(p.word) || is_special_token(p.word) ||
        text::is_punctuation(p.word) || text::contains_whitespace(p.word))
      continue;
    if (!(p.probability > 0.0)) continue;
    if (!seen.insert(p.word).second) continue;
    out.entries.push_back(p);
  }
  return out;
}

/// Thread-safe masked language model interface.
class MaskedLanguageModel {
 public:
  virtual ~MaskedLanguageModel() = default;

  virtual MlmPrediction predict_masked(const MlmQuery& query, std::size_t k) const = 0;

  /// -log p(target | tokens with `position` masked), in nats.
  virtual TokenLoss token_loss(std::span<const std::string> tokens, std::size_t position,
                               std::string_view target) const = 0;

  /// token_loss for every position of `tokens` against its own token.
  /// Backends that can batch override this.
  virtual std::vector<TokenLoss> sequence_losses(std::span<const std::string> tokens) const {
    std::vector<TokenLoss> out;
    out.reserve(tokens.size());
    for (std::size_t j = 0; j < tokens.size(); ++j) out.push_back(token_loss(tokens, j, tokens[j]));
    return out;
  }
};

/// Deterministic lookup-table backend.
///
/// JSON configuration:
///   {
///     "queries": { "<fingerprint>": [["sat", 0.5], ["seated", 0.3]], ... },
///     "fallback_vocabulary": ["the", ...],   // optional
///     "oov_probability": 1e-6                // optional
///   }
/// A query is looked up by its full fingerprint, then by the fingerprint of
/// the segment holding the slot; anything else gets a uniform distribution
/// over the fallback vocabulary.
class MockMaskedLanguageModel final : public MaskedLanguageModel {
 public:
  static std::vector<std::string> default_vocabulary() {
    return {"the", "a", "good", "big", "small", "new", "old", "make", "take", "use",
            "find", "give", "show", "help", "work", "part", "way", "place", "thing", "time"};
  }

  MockMaskedLanguageModel() : fallback_(default_vocabulary()) {}

  explicit MockMaskedLanguageModel(std::vector<std::string> fallback_vocabulary,
                                   double oov_probability = 1e-6)
      : fallback_(std::move(fallback_vocabulary)), oov_probability_(oov_probability) {
    if (fallback_.empty()) throw BackendError("mock fallback vocabulary must not be empty");
    if (!(oov_probability_ > 0.0 && oov_probability_ <= 1.0))
      throw BackendError("mock oov_probability must be in (0, 1]");
  }

  static MockMaskedLanguageModel from_json(const nlohmann::json& j) {
    std::vector<std::string> vocab = default_vocabulary();
    if (j.contains("fallback_vocabulary")) vocab = j.at("fallback_vocabulary").get<std::vector<std::string>>();
    const double oov = j.value("oov_probability", 1e-6);
    MockMaskedLanguageModel mock(std::move(vocab), oov);
    if (j.contains("queries")) {
      for (const auto& [key, list] : j.at("queries").items()) {
        std::vector<Prediction> preds;
        for (const auto& entry : list) {
          if (!entry.is_array() || entry.size() != 2)
            throw BackendError("mock entry for '" + key + "' must be [word, probability]");
          preds.push_back({entry.at(0).get<std::string>(), entry.at(1).get<double>()});
        }
        mock.set(key, std::move(preds));
      }
    }
    return mock;
  }

  static MockMaskedLanguageModel load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path, 0, e.what());
    }
  }

  /// Registers a distribution. Entries are sorted by probability (stable).
  void set(std::string fingerprint_key, std::vector<Prediction> predictions) {
    for (const Prediction& p : predictions)
      if (!(p.probability > 0.0 && p.probability <= 1.0))
        throw BackendError("mock probability for '" + p.word + "' must be in (0, 1]");
    std::stable_sort(predictions.begin(), predictions.end(),
                     [](const Prediction& a, const Prediction& b) { return a.probability > b.probability; });
    table_[std::move(fingerprint_key)] = std::move(predictions);
  }

  MlmPrediction predict_masked(const MlmQuery& query, std::size_t k) const override {
    if (k == 0) throw BackendError("k must be at least 1");
    query.validate();
    return select_whole_words(distribution(query), k);
  }

  TokenLoss token_loss(std::span<const std::string> tokens, std::size_t position,
                       std::string_view target) const override {
    if (position >= tokens.size()) throw BackendError("token_loss position out of range");
    if (target.empty()) throw BackendError("token_loss target must be non-empty");
    MlmQuery q{std::vector<std::string>(tokens.begin(), tokens.end()), std::nullopt, {0, position}};
    const std::string needle = text::to_lower(target);
    for (const Prediction& p : distribution(q))
      if (text::to_lower(p.word) == needle) return {-std::log(p.probability), false};
    return {-std::log(oov_probability_), true};
  }

 private:
  std::vector<Prediction> distribution(const MlmQuery& q) const {
    if (auto it = table_.find(fingerprint(q)); it != table_.end()) return it->second;
    if (q.segment_b) {
      if (auto it = table_.find(slot_fingerprint(q)); it != table_.end()) return it->second;
    }
    std::vector<Prediction> uniform;
    const double p = 1.0 / static_cast<double>(fallback_.size());
    for (const std::string& w : fallback_) uniform.push_back({w, p});
    return uniform;
  }

  std::unordered_map<std::string, std::vector<Prediction>> table_;
  std::vector<std::string> fallback_;
  double oov_probability_ = 1e-6;
};

}  // namespace lexsimp

#endif  // LEXSIMP_MLM_HPP_
