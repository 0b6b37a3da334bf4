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

// Records passed between generation, ranking and the pipeline, and their
// JSON form (field names follow the struct members).

#ifndef LEXSIMP_TYPES_HPP_
#define LEXSIMP_TYPES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lexsimp/core.hpp"

namespace lexsimp {

struct Candidate {
  std::string surface;  // lowercase
  double probability = 0.0;
  int prediction_rank = 0;  // 1-based, no gaps

  bool operator==(const Candidate&) const = default;
};

struct CandidateSet {
  std::string complex_word;
  std::size_t position = 0;
  std::vector<Candidate> candidates;

  std::size_t size() const noexcept { return candidates.size(); }
  bool empty() const noexcept { return candidates.empty(); }
  std::vector<std::string> surfaces() const {
    std::vector<std::string> out;
    out.reserve(candidates.size());
    for (const Candidate& c : candidates) out.push_back(c.surface);
    return out;
  }
};

struct FeatureColumn {
  std::vector<double> raw;
  std::vector<double> ranks;
};

struct RankingTable {
  std::vector<std::string> candidates;
  std::map<Feature, FeatureColumn> features;
  std::vector<double> average_rank;
  std::size_t best = 0;
  bool filter_fallback = false;  // every candidate was below the Zipf floor

  bool empty() const noexcept { return candidates.empty(); }
  const std::string& best_candidate() const { return candidates.at(best); }
};

enum class StepReason { kReplaced, kRejectedByCondition, kNoCandidates };

inline std::string to_string(StepReason r) {
  switch (r) {
    case StepReason::kReplaced: return "replaced";
    case StepReason::kRejectedByCondition: return "rejected_by_condition";
    case StepReason::kNoCandidates: return "no_candidates";
  }
  return "replaced";
}

/// Values the acceptance test looked at for the winning candidate.
struct AcceptanceCheck {
  double zipf_original = 0.0;
  double zipf_top = 0.0;
  double loss_original = 0.0;
  double loss_top = 0.0;
};

struct TraceStep {
  std::size_t position = 0;
  std::string original;
  CandidateSet candidates;
  RankingTable ranking;
  std::optional<std::string> chosen;
  bool accepted = false;
  StepReason reason = StepReason::kNoCandidates;
  std::optional<AcceptanceCheck> check;
  // Set when a word that was not replaced is put on the ignore list so the
  // loop can move on.
  bool ignored_after_rejection = false;
};

struct SimplificationTrace {
  std::vector<Feature> enabled_features;
  std::vector<TraceStep> steps;
};

inline void to_json(nlohmann::json& j, const Candidate& c) {
  j = {{"surface", c.surface}, {"probability", c.probability}, {"prediction_rank", c.prediction_rank}};
}

inline void to_json(nlohmann::json& j, const CandidateSet& s) {
  j = {{"complex_word", s.complex_word}, {"position", s.position}, {"candidates", s.candidates}};
}

inline void to_json(nlohmann::json& j, const RankingTable& t) {
  nlohmann::json features = nlohmann::json::object();
  for (const auto& [feature, column] : t.features)
    features[to_string(feature)] = {{"raw", column.raw}, {"ranks", column.ranks}};
  j = {{"candidates", t.candidates}, {"features", features}, {"average_rank", t.average_rank},
       {"filter_fallback", t.filter_fallback}};
  if (!t.empty()) j["best"] = t.best;
}

inline void to_json(nlohmann::json& j, const TraceStep& s) {
  j = {{"position", s.position},
       {"original", s.original},
       {"candidates", s.candidates},
       {"ranking", s.ranking},
       {"chosen", s.chosen ? nlohmann::json(*s.chosen) : nlohmann::json(nullptr)},
       {"accepted", s.accepted},
       {"reason", to_string(s.reason)},
       {"ignored_after_rejection", s.ignored_after_rejection}};
  if (s.check) {
    j["acceptance"] = {{"zipf_original", s.check->zipf_original},
                       {"zipf_top", s.check->zipf_top},
                       {"loss_original", s.check->loss_original},
                       {"loss_top", s.check->loss_top}};
  }
}

inline void to_json(nlohmann::json& j, const SimplificationTrace& t) {
  std::vector<std::string> names;
  for (Feature f : t.enabled_features) names.push_back(to_string(f));
  j = {{"enabled_features", names}, {"steps", t.steps}};
}

}  // namespace lexsimp

#endif  // LEXSIMP_TYPES_HPP_
