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

// Sentence-level simplification loop.
//
// Entities are detected once and put on the ignore list. Then, repeatedly:
// score every token of the current sentence, take the highest-scoring word
// above the threshold that is not ignored, generate and rank substitutes,
// and replace the word with the winner if the winner is more frequent
// (Zipf) or has a lower language-model loss than the word itself. The
// position is put on the ignore list whatever the outcome, so every
// iteration shrinks the set of candidates and the loop ends after at most
// one iteration per token.

#ifndef LEXSIMP_PIPELINE_HPP_
#define LEXSIMP_PIPELINE_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "lexsimp/common.hpp"
#include "lexsimp/core.hpp"
#include "lexsimp/cwi.hpp"
#include "lexsimp/generation.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/ranking.hpp"
#include "lexsimp/types.hpp"

namespace lexsimp {

struct SimplifiedResult {
  TokenizedSentence original;
  TokenizedSentence simplified;
  SimplificationTrace trace;
  std::size_t iterations = 0;
};

struct BatchItem {
  std::optional<SimplifiedResult> result;
  std::string error;  // set when result is empty
};

struct WordDecision {
  std::optional<std::string> chosen;  // lowercase candidate
  TraceStep step;
};

class Simplifier {
 public:
  Simplifier(PipelineConfig config, LexicalResources resources, const MaskedLanguageModel& backend,
             const ComplexityScorer& scorer, const EntityRecognizer& recognizer)
      : config_(std::move(config)),
        resources_(resources),
        backend_(&backend),
        scorer_(&scorer),
        recognizer_(&recognizer) {
    config_.validate();
    resources_.require(config_.features);
  }

  const PipelineConfig& config() const noexcept { return config_; }

  /// Generates, ranks and applies the acceptance test for one position.
  WordDecision simplify_word(const TokenizedSentence& sentence, std::size_t position) const {
    try {
      return decide(sentence, position);
    } catch (const std::exception& e) {
      throw Error("while simplifying token " + std::to_string(position) + " ('" +
                  (position < sentence.size() ? sentence[position].surface : std::string()) + "'): " + e.what());
    }
  }

  SimplifiedResult simplify_sentence(std::string text) const {
    SimplifiedResult result;
    result.original = tokenize(std::move(text));
    result.simplified = result.original;
    result.trace.enabled_features = config_.features.list();

    std::set<std::size_t> ignore = detect_entities(result.original, *recognizer_);
    while (true) {
      ComplexityAnnotation annotation = score_complexity(result.simplified, *scorer_);
      annotation.ignored = ignore;
      const std::vector<std::size_t> complex = select_complex_words(annotation, config_.complexity_threshold);
      if (complex.empty()) break;
      const std::size_t position = complex.front();
      ++result.iterations;

      WordDecision decision = simplify_word(result.simplified, position);
      if (decision.chosen) {
        const std::string& original = result.simplified[position].surface;
        result.simplified = replace_token(result.simplified, position, apply_case(original, *decision.chosen));
      } else {
        decision.step.ignored_after_rejection = true;
      }
      ignore.insert(position);
      result.trace.steps.push_back(std::move(decision.step));
    }
    return result;
  }

  /// Order-preserving; a failing line is reported in its item and the batch continues.
  std::vector<BatchItem> simplify_batch(const std::vector<std::string>& lines, int workers = 1) const {
    std::vector<BatchItem> out(lines.size());
    auto run_one = [&](std::size_t i) {
      try {
        out[i].result = simplify_sentence(lines[i]);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    };
    const std::size_t n_workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1,
                                                          std::max<std::size_t>(lines.size(), 1));
    if (n_workers == 1) {
      for (std::size_t i = 0; i < lines.size(); ++i) run_one(i);
      return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < lines.size(); i = next++) run_one(i);
      });
    }
    for (std::thread& t : pool) t.join();
    return out;
  }

 private:
  WordDecision decide(const TokenizedSentence& sentence, std::size_t position) const {
    WordDecision out;
    TraceStep& step = out.step;
    step.position = position;
    step.original = sentence.at(position).surface;
    step.candidates = generate_candidates(sentence, position, config_, *backend_);
    step.ranking = rank_substitutes(sentence, step.candidates, config_, resources_, *backend_);
    if (step.ranking.empty()) {
      step.reason = StepReason::kNoCandidates;
      return out;
    }

    const std::string& top = step.ranking.best_candidate();
    AcceptanceCheck check;
    check.zipf_original = resources_.frequency->zipf(step.original);
    check.zipf_top = resources_.frequency->zipf(top);
    check.loss_original = feature_lm_loss(sentence, position, step.original, *backend_, config_.lm_window);
    if (auto it = step.ranking.features.find(Feature::kLmLoss); it != step.ranking.features.end()) {
      check.loss_top = it->second.raw[step.ranking.best];
    } else {
      check.loss_top =
          feature_lm_loss(sentence, position, apply_case(step.original, top), *backend_, config_.lm_window);
    }
    step.check = check;

    const bool passes = check.zipf_top > check.zipf_original || check.loss_top < check.loss_original;
    if (passes || !config_.acceptance_condition) {
      out.chosen = top;
      step.chosen = top;
      step.accepted = true;
      step.reason = StepReason::kReplaced;
    } else {
      step.reason = StepReason::kRejectedByCondition;
    }
    return out;
  }

  PipelineConfig config_;
  LexicalResources resources_;
  const MaskedLanguageModel* backend_;
  const ComplexityScorer* scorer_;
  const EntityRecognizer* recognizer_;
};

}  // namespace lexsimp

#endif  // LEXSIMP_PIPELINE_HPP_
