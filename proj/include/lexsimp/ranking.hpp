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

// Substitute ranking. Each enabled feature orders the candidates on its own;
// a candidate's final score is the mean of its per-feature ranks and the
// lowest mean wins.
//
//   feature      raw score                               better
//   bert_order   prediction rank                         lower
//   lm_loss      mean masked-LM loss over a word window  lower
//   similarity   embedding cosine to the complex word    higher
//   frequency    Zipf value                              higher
//   ppdb         1 if (word, candidate) is a paraphrase  (already a rank)
//                pair, else max(1, n / 3)

#ifndef LEXSIMP_RANKING_HPP_
#define LEXSIMP_RANKING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lexsimp/common.hpp"
#include "lexsimp/core.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/resources.hpp"
#include "lexsimp/types.hpp"

namespace lexsimp {

/// Read-only resources used by ranking. Only `frequency` is mandatory; the
/// others are required when their feature is enabled.
struct LexicalResources {
  const FrequencyStore* frequency = nullptr;
  const EmbeddingStore* embeddings = nullptr;
  const ParaphraseStore* paraphrases = nullptr;

  void require(const FeatureSet& features) const {
    if (!frequency) throw ConfigError("a frequency store is required");
    if (features.contains(Feature::kSimilarity) && !embeddings)
      throw ConfigError("the similarity feature needs word embeddings (or disable it)");
    if (features.contains(Feature::kPpdb) && !paraphrases)
      throw ConfigError("the ppdb feature needs a paraphrase store (or disable it)");
  }
};

struct FilterResult {
  CandidateSet candidates;
  bool fallback = false;  // nothing passed, input returned unchanged
};

/// Drops candidates whose Zipf value is below `min_zipf` and renumbers the
/// prediction ranks. If nothing would survive, the input is returned and
/// `fallback` is set.
inline FilterResult filter_by_frequency(const CandidateSet& candidates, const FrequencyStore& store,
                                        double min_zipf) {
  FilterResult out;
  out.candidates.complex_word = candidates.complex_word;
  out.candidates.position = candidates.position;
  for (const Candidate& c : candidates.candidates) {
    if (store.zipf(c.surface) >= min_zipf) {
      Candidate kept = c;
      kept.prediction_rank = static_cast<int>(out.candidates.candidates.size()) + 1;
      out.candidates.candidates.push_back(std::move(kept));
    }
  }
  if (out.candidates.empty() && !candidates.empty()) {
    std::ostringstream msg;
    msg << "all candidates for '" << candidates.complex_word << "' are below Zipf " << min_zipf
        << "; ranking them unfiltered";
    log::warn(msg.str());
    out.candidates = candidates;
    out.fallback = true;
  }
  return out;
}

enum class Direction { kLowerIsBetter, kHigherIsBetter };

inline Direction direction_of(Feature f) {
  switch (f) {
    case Feature::kSimilarity:
    case Feature::kFrequency:
      return Direction::kHigherIsBetter;
    default:
      return Direction::kLowerIsBetter;
  }
}

/// 1-based ranks; equal values share the mean of the ranks they span.
inline std::vector<double> rank_with_ties(const std::vector<double>& values, Direction direction) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return direction == Direction::kLowerIsBetter ? values[a] < values[b] : values[a] > values[b];
  });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean;
    i = j + 1;
  }
  return ranks;
}

inline std::vector<double> feature_bert_order(const CandidateSet& candidates) {
  std::vector<double> out;
  for (const Candidate& c : candidates.candidates) out.push_back(c.prediction_rank);
  return out;
}

/// Mean masked-LM loss over the window [position - window, position + window]
/// (clipped to the sentence) after putting `candidate` at `position`. Every
/// window position is masked in turn and scored against its own word.
inline double feature_lm_loss(const TokenizedSentence& sentence, std::size_t position,
                              const std::string& candidate, const MaskedLanguageModel& backend,
                              int window) {
  if (window < 1) throw ConfigError("lm window must be at least 1");
  sentence.at(position);
  const std::size_t w = static_cast<std::size_t>(window);
  const std::size_t lo = position >= w ? position - w : 0;
  const std::size_t hi = std::min(sentence.size() - 1, position + w);
  std::vector<std::string> tokens;
  for (std::size_t i = lo; i <= hi; ++i) tokens.push_back(i == position ? candidate : sentence[i].surface);
  const std::vector<TokenLoss> losses = backend.sequence_losses(tokens);
  double sum = 0.0;
  for (const TokenLoss& l : losses) sum += l.nats;
  return sum / static_cast<double>(losses.size());
}

inline double feature_similarity(const std::string& complex_word, const std::string& candidate,
                                 const EmbeddingStore& embeddings) {
  return embeddings.cosine(complex_word, candidate).value;
}

inline double feature_frequency(const std::string& candidate, const FrequencyStore& store) {
  return store.zipf(candidate);
}

/// Rank contribution of the paraphrase feature among `n` candidates.
inline double feature_ppdb(const std::string& complex_word, const std::string& candidate,
                           const ParaphraseStore& store, std::size_t n) {
  if (n == 0) throw Error("ppdb rank needs at least one candidate");
  if (store.contains_pair(complex_word, candidate)) return 1.0;
  return std::max(1.0, static_cast<double>(n) / 3.0);
}

struct FeatureScores {
  Feature feature;
  std::vector<double> raw;
};

/// Turns per-feature raw scores into ranks, averages them and picks the
/// winner. Ties on the average go to the better prediction rank, then to
/// the lexicographically smaller surface.
inline RankingTable aggregate(const std::vector<std::string>& candidates,
                              const std::vector<int>& prediction_ranks,
                              const std::vector<FeatureScores>& features) {
  const std::size_t n = candidates.size();
  if (n == 0) throw Error("cannot rank an empty candidate set");
  if (prediction_ranks.size() != n) throw Error("prediction ranks do not match the candidates");
  if (features.empty()) throw Error("no ranking features enabled");

  RankingTable table;
  table.candidates = candidates;
  table.average_rank.assign(n, 0.0);
  for (const FeatureScores& f : features) {
    if (f.raw.size() != n)
      throw Error("feature " + to_string(f.feature) + " has " + std::to_string(f.raw.size()) +
                  " scores for " + std::to_string(n) + " candidates");
    FeatureColumn column;
    column.raw = f.raw;
    column.ranks = f.feature == Feature::kPpdb ? f.raw : rank_with_ties(f.raw, direction_of(f.feature));
    for (std::size_t i = 0; i < n; ++i) table.average_rank[i] += column.ranks[i];
    table.features[f.feature] = std::move(column);
  }
  for (double& a : table.average_rank) a /= static_cast<double>(features.size());

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = table.average_rank[i] - table.average_rank[best];
    if (d < -1e-9) {
      best = i;
    } else if (std::abs(d) <= 1e-9) {
      if (prediction_ranks[i] < prediction_ranks[best] ||
          (prediction_ranks[i] == prediction_ranks[best] && candidates[i] < candidates[best]))
        best = i;
    }
  }
  table.best = best;
  return table;
}

/// Filters and ranks a candidate set. An empty set yields an empty table.
inline RankingTable rank_substitutes(const TokenizedSentence& sentence, const CandidateSet& generated,
                                     const PipelineConfig& config, const LexicalResources& resources,
                                     const MaskedLanguageModel& backend) {
  resources.require(config.features);
  const FilterResult filtered = filter_by_frequency(generated, *resources.frequency, config.zipf_filter_min);
  const CandidateSet& set = filtered.candidates;
  if (set.empty()) {
    RankingTable empty;
    empty.filter_fallback = filtered.fallback;
    return empty;
  }
  const std::string& original = sentence.at(generated.position).surface;
  std::vector<int> prediction_ranks;
  for (const Candidate& c : set.candidates) prediction_ranks.push_back(c.prediction_rank);

  std::vector<FeatureScores> features;
  for (Feature f : config.features.list()) {
    FeatureScores scores{f, {}};
    for (const Candidate& c : set.candidates) {
      switch (f) {
        case Feature::kBertOrder:
          scores.raw.push_back(c.prediction_rank);
          break;
        case Feature::kLmLoss:
          scores.raw.push_back(feature_lm_loss(sentence, generated.position, apply_case(original, c.surface),
                                               backend, config.lm_window));
          break;
        case Feature::kSimilarity:
          scores.raw.push_back(feature_similarity(original, c.surface, *resources.embeddings));
          break;
        case Feature::kFrequency:
          scores.raw.push_back(feature_frequency(c.surface, *resources.frequency));
          break;
        case Feature::kPpdb:
          scores.raw.push_back(feature_ppdb(original, c.surface, *resources.paraphrases, set.size()));
          break;
      }
    }
    features.push_back(std::move(scores));
  }
  RankingTable table = aggregate(set.surfaces(), prediction_ranks, features);
  table.filter_fallback = filtered.fallback;
  return table;
}

}  // namespace lexsimp

#endif  // LEXSIMP_RANKING_HPP_
