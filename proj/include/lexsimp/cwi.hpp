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

// Complex word identification: per-token complexity scores in [0, 1], the
// threshold selection, and the entity ignore list.

#ifndef LEXSIMP_CWI_HPP_
#define LEXSIMP_CWI_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexsimp/common.hpp"
#include "lexsimp/core.hpp"
#include "lexsimp/resources.hpp"

namespace lexsimp {

struct ComplexityAnnotation {
  std::vector<double> scores;  // one per token
  std::set<std::size_t> ignored;
};

/// Scores every token of a sentence. Implementations must be safe for
/// concurrent const calls.
class ComplexityScorer {
 public:
  virtual ~ComplexityScorer() = default;
  /// Raw per-token scores; score_complexity() clamps and zeroes non-words.
  virtual std::vector<double> score(const TokenizedSentence& sentence) const = 0;
};

/// p = clamp(1 - zipf(word) / 7, 0, 1). Unknown words have Zipf 0 and so p = 1.
class FrequencyComplexityScorer final : public ComplexityScorer {
 public:
  explicit FrequencyComplexityScorer(const FrequencyStore& store) : store_(&store) {}

  static double from_zipf(double zipf) { return std::clamp(1.0 - zipf / 7.0, 0.0, 1.0); }

  std::vector<double> score(const TokenizedSentence& sentence) const override {
    std::vector<double> out;
    out.reserve(sentence.size());
    for (const Token& t : sentence.tokens()) out.push_back(from_zipf(store_->zipf(t.surface)));
    return out;
  }

 private:
  const FrequencyStore* store_;
};

/// Fixed word -> score table, for plugging in scores produced elsewhere
/// (e.g. an external sequence labeller) and for tests.
class TableComplexityScorer final : public ComplexityScorer {
 public:
  explicit TableComplexityScorer(std::unordered_map<std::string, double> table,
                                 double default_score = 0.0)
      : default_(default_score) {
    for (auto& [w, p] : table) table_[text::to_lower(w)] = p;
  }

  std::vector<double> score(const TokenizedSentence& sentence) const override {
    std::vector<double> out;
    out.reserve(sentence.size());
    for (const Token& t : sentence.tokens()) {
      auto it = table_.find(text::to_lower(t.surface));
      out.push_back(it == table_.end() ? default_ : it->second);
    }
    return out;
  }

 private:
  std::unordered_map<std::string, double> table_;
  double default_;
};

/// Per-token scores; punctuation and numbers always score 0.
inline ComplexityAnnotation score_complexity(const TokenizedSentence& sentence,
                                             const ComplexityScorer& scorer) {
  ComplexityAnnotation a;
  if (sentence.empty()) return a;
  a.scores = scorer.score(sentence);
  if (a.scores.size() != sentence.size())
    throw Error("complexity scorer returned " + std::to_string(a.scores.size()) +
                " scores for " + std::to_string(sentence.size()) + " tokens");
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    double& p = a.scores[i];
    if (is_non_word(sentence[i].surface) || !(p == p)) {
      p = 0.0;
    } else {
      p = std::clamp(p, 0.0, 1.0);
    }
  }
  return a;
}

/// Indices with score strictly above `threshold` that are not ignored,
/// highest score first; equal scores keep left-to-right order.
inline std::vector<std::size_t> select_complex_words(const ComplexityAnnotation& annotation,
                                                     double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < annotation.scores.size(); ++i)
    if (annotation.scores[i] > threshold && !annotation.ignored.count(i)) out.push_back(i);
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    return annotation.scores[a] > annotation.scores[b];
  });
  return out;
}

class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  virtual std::set<std::size_t> recognize(const TokenizedSentence& sentence) const = 0;
};

/// Capitalization heuristic. A token is an entity when it is title-cased and
///   - not the first word of the sentence, or
///   - the first word and title-cased again later in the sentence, or
///   - the first word and unknown to the optional lexicon.
/// The first word is the first token that is not punctuation.
class CapitalizationEntityRecognizer final : public EntityRecognizer {
 public:
  CapitalizationEntityRecognizer() = default;
  explicit CapitalizationEntityRecognizer(std::function<bool(std::string_view)> is_known_word)
      : known_(std::move(is_known_word)) {}

  std::set<std::size_t> recognize(const TokenizedSentence& sentence) const override {
    std::set<std::size_t> out;
    std::size_t first = sentence.size();
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (!text::is_punctuation(sentence[i].surface)) {
        first = i;
        break;
      }
    }
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const std::string& w = sentence[i].surface;
      if (!is_title_case(w) || is_non_word(w)) continue;
      if (i != first) {
        out.insert(i);
        continue;
      }
      bool repeated = false;
      for (std::size_t j = i + 1; j < sentence.size() && !repeated; ++j)
        repeated = sentence[j].surface == w;
      if (repeated || (known_ && !known_(text::to_lower(w)))) out.insert(i);
    }
    return out;
  }

 private:
  std::function<bool(std::string_view)> known_;
};

/// Adapter for an external recognizer that reports [start, end) token spans.
class SpanEntityRecognizer final : public EntityRecognizer {
 public:
  using SpanFn =
      std::function<std::vector<std::pair<std::size_t, std::size_t>>(const std::vector<std::string>&)>;

  explicit SpanEntityRecognizer(SpanFn fn) : fn_(std::move(fn)) {}

  std::set<std::size_t> recognize(const TokenizedSentence& sentence) const override {
    std::set<std::size_t> out;
    for (const auto& [start, end] : fn_(sentence.words())) {
      if (start >= end || end > sentence.size())
        throw Error("entity span [" + std::to_string(start) + ", " + std::to_string(end) +
                    ") outside the sentence");
      for (std::size_t i = start; i < end; ++i) out.insert(i);
    }
    return out;
  }

 private:
  SpanFn fn_;
};

/// Runs the recognizer; a failing recognizer yields no entities and a warning.
inline std::set<std::size_t> detect_entities(const TokenizedSentence& sentence,
                                             const EntityRecognizer& recognizer) {
  try {
    std::set<std::size_t> found = recognizer.recognize(sentence);
    for (auto it = found.begin(); it != found.end();) {
      if (*it >= sentence.size()) {
        it = found.erase(it);
      } else {
        ++it;
      }
    }
    return found;
  } catch (const std::exception& e) {
    log::warn(std::string("entity recognition failed, continuing without entity protection: ") +
              e.what());
    return {};
  }
}

}  // namespace lexsimp

#endif  // LEXSIMP_CWI_HPP_
