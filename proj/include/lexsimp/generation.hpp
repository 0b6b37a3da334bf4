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

// Substitute generation. In the default mode the model sees the sentence
// twice, as a pair: the original (optionally with some context words
// masked) followed by a copy whose complex word is masked. Predictions for
// the masked slot are conditioned on both the context and the word itself.

#ifndef LEXSIMP_GENERATION_HPP_
#define LEXSIMP_GENERATION_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "lexsimp/core.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/stemmer.hpp"
#include "lexsimp/types.hpp"

namespace lexsimp {

namespace detail {
// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}
}  // namespace detail

inline MlmQuery build_mask_input(const TokenizedSentence& sentence, std::size_t position,
                                 const PipelineConfig& config) {
  sentence.at(position);
  const std::vector<std::string> words = sentence.words();
  std::vector<std::string> masked = words;
  masked[position] = std::string(kMaskToken);

  switch (config.generation_mode) {
    case GenerationMode::kSingleMasked:
      return {masked, std::nullopt, {0, position}};
    case GenerationMode::kSingleUnmasked:
      return {words, std::nullopt, {0, position}};
    case GenerationMode::kSentencePair:
      break;
  }

  std::vector<std::string> first = words;
  if (config.context_mask_prob > 0.0) {
    std::mt19937_64 gen(config.rng_seed + position);
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (i == position || text::is_punctuation(first[i])) continue;
      if (detail::unit_uniform(gen) < config.context_mask_prob) first[i] = std::string(kMaskToken);
    }
  }
  return {std::move(first), std::move(masked), {1, position}};
}

/// Up to config.top_k lowercase candidates for the word at `position`, in
/// model order, without the word itself or any word sharing its stem.
inline CandidateSet generate_candidates(const TokenizedSentence& sentence, std::size_t position,
                                        const PipelineConfig& config, const MaskedLanguageModel& backend) {
  config.validate();
  const std::string& word = sentence.at(position).surface;
  const MlmQuery query = build_mask_input(sentence, position, config);
  // Ask for extra predictions so that exclusions still leave top_k.
  const auto k = static_cast<std::size_t>(config.top_k);
  const MlmPrediction prediction = backend.predict_masked(query, std::max<std::size_t>(2 * k, k + 5));

  const PorterStemmer stem;
  const std::string word_lower = text::to_lower(word);
  const std::string word_stem = stem(word_lower);

  CandidateSet out;
  out.complex_word = word;
  out.position = position;
  std::unordered_set<std::string> seen;
  for (const Prediction& p : prediction.entries) {
    if (out.candidates.size() >= k) break;
    std::string c = text::to_lower(p.word);
    if (c == word_lower || stem(c) == word_stem) continue;
    if (!seen.insert(c).second) continue;
    out.candidates.push_back({std::move(c), p.probability, static_cast<int>(out.candidates.size()) + 1});
  }
  return out;
}

}  // namespace lexsimp

#endif  // LEXSIMP_GENERATION_HPP_
