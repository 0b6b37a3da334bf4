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

// Small in-memory stacks shared by the unit tests and the acceptance suite.

#ifndef LEXSIMP_TESTS_FIXTURES_HPP_
#define LEXSIMP_TESTS_FIXTURES_HPP_

#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexsimp/lexsimp.hpp"

namespace fixture {

/// Count giving exactly this Zipf value when the total is 1e9.
inline double count_for_zipf(double zipf) { return std::pow(10.0, zipf); }

inline lexsimp::FrequencyStore frequency_from_zipf(const std::vector<std::pair<std::string, double>>& zipfs) {
  std::unordered_map<std::string, double> counts;
  for (const auto& [w, z] : zipfs) counts[w] = count_for_zipf(z);
  return lexsimp::FrequencyStore(counts, 1e9);
}

/// Owns everything a Simplifier needs; the mock and the stores can be
/// edited before simplifier() is first called.
struct Stack {
  lexsimp::PipelineConfig config;
  lexsimp::FrequencyStore frequency;
  lexsimp::EmbeddingStore embeddings;
  lexsimp::ParaphraseStore paraphrases;
  lexsimp::MockMaskedLanguageModel mock;
  std::unique_ptr<lexsimp::ComplexityScorer> scorer;
  std::unique_ptr<lexsimp::EntityRecognizer> recognizer;

  Stack() {
    config.features = lexsimp::FeatureSet::all();
    config.features.disable(lexsimp::Feature::kSimilarity);
    config.features.disable(lexsimp::Feature::kPpdb);
  }

  lexsimp::LexicalResources resources() const { return {&frequency, &embeddings, &paraphrases}; }

  lexsimp::Simplifier simplifier() {
    if (!scorer) scorer = std::make_unique<lexsimp::FrequencyComplexityScorer>(frequency);
    if (!recognizer) {
      const lexsimp::FrequencyStore* f = &frequency;
      recognizer = std::make_unique<lexsimp::CapitalizationEntityRecognizer>(
          [f](std::string_view w) { return f->contains(w); });
    }
    return lexsimp::Simplifier(config, resources(), mock, *scorer, *recognizer);
  }
};

inline std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i ? " " : "") + words[i];
  return out;
}

/// Vocabulary for random sentences: frequent words, rare words (complex
/// under the default threshold), capitalised names and punctuation.
struct RandomCorpus {
  std::vector<std::string> common = {"the", "a", "good", "big", "small", "new", "old", "make", "take", "use",
                                     "find", "give", "show", "help", "work", "part", "way", "place", "thing", "time"};
  std::vector<std::string> rare = {"abstruse", "perched", "composed", "verses", "obfuscate", "recondite",
                                   "ameliorate", "ubiquitous", "ephemeral", "scrutinize", "perspicacious",
                                   "lugubrious", "sesquipedalian", "pulchritude"};
  std::vector<std::string> names = {"Tsinghua", "John", "Paris", "Mary", "Oslo"};
  std::vector<std::string> punct = {",", ".", "!", "?", ";"};

  lexsimp::FrequencyStore frequency() const {
    std::vector<std::pair<std::string, double>> z;
    double zc = 5.0;
    for (const auto& w : common) z.push_back({w, zc += 0.05});
    double zr = 1.0;
    for (const auto& w : rare) z.push_back({w, zr += 0.1});
    return frequency_from_zipf(z);
  }

  std::string sentence(std::mt19937_64& rng, std::size_t max_tokens = 30) const {
    std::uniform_int_distribution<std::size_t> len(1, max_tokens);
    std::uniform_int_distribution<int> kind(0, 9);
    const std::size_t n = len(rng);
    std::vector<std::string> words;
    for (std::size_t i = 0; i < n; ++i) {
      const int k = kind(rng);
      const auto& pool = k < 4 ? common : k < 8 ? rare : k < 9 ? names : punct;
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::string w = pool[pick(rng)];
      if (i == 0 && k < 8 && kind(rng) < 5) w[0] = static_cast<char>(w[0] - 'a' + 'A');
      words.push_back(std::move(w));
    }
    return join(words);
  }
};

}  // namespace fixture

#endif  // LEXSIMP_TESTS_FIXTURES_HPP_
