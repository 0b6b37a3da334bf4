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

// Run configuration (JSON file + command-line overrides) and the loader
// that turns it into a ready pipeline.
//
// JSON keys: backend, mock, model, python, worker, device, max_seq_len,
// embeddings, frequency, ppdb, threshold, top_k, zipf_min, lm_window,
// mask_prob, seed, mode, disable_features, acceptance_condition, workers.
// Relative paths in a config file are resolved against the file's directory.

#ifndef LEXSIMP_RUN_CONFIG_HPP_
#define LEXSIMP_RUN_CONFIG_HPP_

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lexsimp/common.hpp"
#include "lexsimp/core.hpp"
#include "lexsimp/cwi.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/pipeline.hpp"
#include "lexsimp/ranking.hpp"
#include "lexsimp/resources.hpp"
#include "lexsimp/transformer_backend.hpp"

namespace lexsimp {

enum class BackendKind { kMock, kTransformer };

struct RunConfig {
  PipelineConfig pipeline;
  BackendKind backend = BackendKind::kMock;
  std::string mock_path;  // optional for the mock backend
  TransformerConfig transformer;
  std::string embeddings_path;
  std::string frequency_path;
  std::string ppdb_path;
  int workers = 1;

  /// Cheap checks that must pass before anything is loaded.
  void validate() const {
    pipeline.validate();
    if (workers < 1) throw ConfigError("workers must be at least 1");
    auto must_exist = [](const std::string& path, const std::string& what) {
      if (!path.empty() && !std::filesystem::exists(path))
        throw ConfigError(what + " file '" + path + "' does not exist");
    };
    if (frequency_path.empty()) throw ConfigError("--frequency is required");
    must_exist(frequency_path, "frequency");
    must_exist(embeddings_path, "embeddings");
    must_exist(ppdb_path, "paraphrase");
    must_exist(mock_path, "mock backend");
    if (pipeline.features.contains(Feature::kSimilarity) && embeddings_path.empty())
      throw ConfigError("--embeddings is required unless --disable-feature similarity");
    if (pipeline.features.contains(Feature::kPpdb) && ppdb_path.empty())
      throw ConfigError("--ppdb is required unless --disable-feature ppdb");
    if (backend == BackendKind::kTransformer) {
      if (transformer.model.empty()) throw ConfigError("--model must not be empty");
      if (transformer.max_sequence_length < 8) throw ConfigError("max_seq_len is too small");
    }
  }
};

inline std::string to_string(BackendKind k) { return k == BackendKind::kMock ? "mock" : "transformer"; }

inline BackendKind parse_backend(const std::string& s) {
  if (s == "mock") return BackendKind::kMock;
  if (s == "transformer") return BackendKind::kTransformer;
  throw ConfigError("unknown backend '" + s + "' (expected transformer or mock)");
}

/// Applies the keys of `j` onto `config`. Unknown keys are errors.
inline void apply_json(RunConfig& config, const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  auto path = [&](const nlohmann::json& v) {
    std::filesystem::path p = v.get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return p.string();
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "backend") config.backend = parse_backend(v.get<std::string>());
      else if (key == "mock") config.mock_path = path(v);
      else if (key == "model") config.transformer.model = v.get<std::string>();
      else if (key == "python") config.transformer.python = v.get<std::string>();
      else if (key == "worker") config.transformer.worker_script = path(v);
      else if (key == "device") config.transformer.device = v.get<std::string>();
      else if (key == "max_seq_len") config.transformer.max_sequence_length = v.get<int>();
      else if (key == "embeddings") config.embeddings_path = path(v);
      else if (key == "frequency") config.frequency_path = path(v);
      else if (key == "ppdb") config.ppdb_path = path(v);
      else if (key == "threshold") config.pipeline.complexity_threshold = v.get<double>();
      else if (key == "top_k") config.pipeline.top_k = v.get<int>();
      else if (key == "zipf_min") config.pipeline.zipf_filter_min = v.get<double>();
      else if (key == "lm_window") config.pipeline.lm_window = v.get<int>();
      else if (key == "mask_prob") config.pipeline.context_mask_prob = v.get<double>();
      else if (key == "seed") config.pipeline.rng_seed = v.get<std::uint64_t>();
      else if (key == "mode") config.pipeline.generation_mode = parse_generation_mode(v.get<std::string>());
      else if (key == "disable_features") {
        config.pipeline.features = FeatureSet::all();
        for (const auto& f : v) config.pipeline.features.disable(parse_feature(f.get<std::string>()));
      }
      else if (key == "acceptance_condition") config.pipeline.acceptance_condition = v.get<bool>();
      else if (key == "workers") config.workers = v.get<int>();
      else throw ConfigError("unknown configuration key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad configuration value: ") + e.what());
  }
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path, 0, e.what());
  }
  RunConfig config;
  apply_json(config, j, std::filesystem::path(path).parent_path());
  return config;
}

/// Fully resolved configuration, re-loadable with apply_json().
inline nlohmann::json echo(const RunConfig& c) {
  std::vector<std::string> disabled;
  for (Feature f : kAllFeatures)
    if (!c.pipeline.features.contains(f)) disabled.push_back(to_string(f));
  nlohmann::json j = {{"backend", to_string(c.backend)},
                      {"embeddings", c.embeddings_path},
                      {"frequency", c.frequency_path},
                      {"ppdb", c.ppdb_path},
                      {"threshold", c.pipeline.complexity_threshold},
                      {"top_k", c.pipeline.top_k},
                      {"zipf_min", c.pipeline.zipf_filter_min},
                      {"lm_window", c.pipeline.lm_window},
                      {"mask_prob", c.pipeline.context_mask_prob},
                      {"seed", c.pipeline.rng_seed},
                      {"mode", to_string(c.pipeline.generation_mode)},
                      {"disable_features", disabled},
                      {"acceptance_condition", c.pipeline.acceptance_condition},
                      {"workers", c.workers}};
  if (c.backend == BackendKind::kMock) {
    j["mock"] = c.mock_path;
  } else {
    j["model"] = c.transformer.model;
    j["python"] = c.transformer.python;
    j["worker"] = c.transformer.resolved_worker();
    j["device"] = c.transformer.device;
    j["max_seq_len"] = c.transformer.max_sequence_length;
  }
  return j;
}

/// Everything a run needs, loaded from a RunConfig. Not movable: the
/// simplifier points into the other members.
class Toolkit {
 public:
  static std::unique_ptr<Toolkit> load(const RunConfig& config) {
    config.validate();
    std::unique_ptr<Toolkit> t(new Toolkit());
    t->config_ = config;
    t->frequency_ = FrequencyStore::load_file(config.frequency_path);
    if (!config.embeddings_path.empty()) t->embeddings_ = EmbeddingStore::load_file(config.embeddings_path);
    if (!config.ppdb_path.empty()) t->paraphrases_ = ParaphraseStore::load_file(config.ppdb_path);
    if (config.backend == BackendKind::kMock) {
      t->backend_ = std::make_unique<MockMaskedLanguageModel>(
          config.mock_path.empty() ? MockMaskedLanguageModel() : MockMaskedLanguageModel::load_file(config.mock_path));
    } else {
      t->backend_ = std::make_unique<TransformerMaskedLanguageModel>(config.transformer);
    }
    t->scorer_ = std::make_unique<FrequencyComplexityScorer>(t->frequency_);
    const FrequencyStore* freq = &t->frequency_;
    t->recognizer_ = std::make_unique<CapitalizationEntityRecognizer>(
        [freq](std::string_view w) { return freq->contains(w); });
    t->simplifier_ = std::make_unique<Simplifier>(config.pipeline, t->resources(), *t->backend_, *t->scorer_,
                                                  *t->recognizer_);
    return t;
  }

  Toolkit(const Toolkit&) = delete;
  Toolkit& operator=(const Toolkit&) = delete;

  const RunConfig& config() const noexcept { return config_; }
  const FrequencyStore& frequency() const noexcept { return frequency_; }
  const MaskedLanguageModel& backend() const noexcept { return *backend_; }
  const Simplifier& simplifier() const noexcept { return *simplifier_; }
  const ComplexityScorer& scorer() const noexcept { return *scorer_; }
  const EntityRecognizer& recognizer() const noexcept { return *recognizer_; }

  /// A simplifier sharing this toolkit's resources with a different pipeline configuration.
  Simplifier make_simplifier(const PipelineConfig& pipeline) const {
    return Simplifier(pipeline, resources(), *backend_, *scorer_, *recognizer_);
  }

  LexicalResources resources() const {
    return {&frequency_, embeddings_ ? &*embeddings_ : nullptr, paraphrases_ ? &*paraphrases_ : nullptr};
  }

 private:
  Toolkit() = default;

  RunConfig config_;
  FrequencyStore frequency_;
  std::optional<EmbeddingStore> embeddings_;
  std::optional<ParaphraseStore> paraphrases_;
  std::unique_ptr<MaskedLanguageModel> backend_;
  std::unique_ptr<ComplexityScorer> scorer_;
  std::unique_ptr<EntityRecognizer> recognizer_;
  std::unique_ptr<Simplifier> simplifier_;
};

}  // namespace lexsimp

#endif  // LEXSIMP_RUN_CONFIG_HPP_
