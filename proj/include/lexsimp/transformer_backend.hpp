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

// Pretrained transformer backend. The model runs in a Python worker
// (tools/mlm_worker.py, HuggingFace transformers) and is driven over a
// JSON-lines pipe:
//
//   -> {"op":"info"}
//   <- {"ok":true,"model":...,"max_length":512}
//   -> {"op":"predict","segment_a":[...],"segment_b":[...]|null,
//       "slot":{"segment":1,"index":2},"top":50}
//   <- {"ok":true,"predictions":[["sat",0.41],["##s",0.02],...]}
//   -> {"op":"losses","tokens":[...],"targets":[{"position":0,"target":"w"},...]}
//   <- {"ok":true,"losses":[{"pieces":["w"],"nats":[1.7]},...]}
//
// Failures come back as {"ok":false,"error":"..."}. Requests are serialized
// behind one mutex; the worker holds a single model instance.

#ifndef LEXSIMP_TRANSFORMER_BACKEND_HPP_
#define LEXSIMP_TRANSFORMER_BACKEND_HPP_

#include <cstddef>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lexsimp/common.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/subprocess.hpp"

#ifndef LEXSIMP_DEFAULT_WORKER
#define LEXSIMP_DEFAULT_WORKER "mlm_worker.py"
#endif

namespace lexsimp {

struct TransformerConfig {
  std::string model = "bert-large-uncased-whole-word-masking";
  int max_sequence_length = 512;
  std::string device = "cpu";
  std::string python = "python3";
  std::string worker_script;  // empty: $LEXSIMP_MLM_WORKER, then the built-in default

  std::string resolved_worker() const {
    if (!worker_script.empty()) return worker_script;
    if (const char* env = std::getenv("LEXSIMP_MLM_WORKER"); env && *env) return env;
    return LEXSIMP_DEFAULT_WORKER;
  }
};

class TransformerMaskedLanguageModel final : public MaskedLanguageModel {
 public:
  // Whole words are filled from this many raw predictions per requested word.
  static constexpr std::size_t kScanFactor = 5;

  explicit TransformerMaskedLanguageModel(TransformerConfig config) : config_(std::move(config)) {
    process_ = std::make_unique<LineProcess>(std::vector<std::string>{
        config_.python, config_.resolved_worker(), "--model", config_.model, "--max-length",
        std::to_string(config_.max_sequence_length), "--device", config_.device});
    info_ = call({{"op", "info"}});
  }

  const nlohmann::json& info() const noexcept { return info_; }
  const TransformerConfig& config() const noexcept { return config_; }

  MlmPrediction predict_masked(const MlmQuery& query, std::size_t k) const override {
    if (k == 0) throw BackendError("k must be at least 1");
    query.validate();
    nlohmann::json req = {{"op", "predict"},
                          {"segment_a", query.segment_a},
                          {"segment_b", query.segment_b ? nlohmann::json(*query.segment_b) : nlohmann::json(nullptr)},
                          {"slot", {{"segment", query.slot.segment}, {"index", query.slot.index}}},
                          {"top", k * kScanFactor}};
    const nlohmann::json resp = call(req);
    std::vector<Prediction> raw;
    for (const auto& entry : resp.at("predictions"))
      raw.push_back({entry.at(0).get<std::string>(), entry.at(1).get<double>()});
    MlmPrediction out = select_whole_words(raw, k);
    if (out.entries.size() < k)
      throw BackendError("only " + std::to_string(out.entries.size()) + " whole words among the top " +
                         std::to_string(k * kScanFactor) + " predictions; lower top_k");
    return out;
  }

  TokenLoss token_loss(std::span<const std::string> tokens, std::size_t position,
                       std::string_view target) const override {
    if (position >= tokens.size()) throw BackendError("token_loss position out of range");
    if (target.empty()) throw BackendError("token_loss target must be non-empty");
    return losses(tokens, {{position, std::string(target)}}).front();
  }

  std::vector<TokenLoss> sequence_losses(std::span<const std::string> tokens) const override {
    std::vector<std::pair<std::size_t, std::string>> targets;
    for (std::size_t j = 0; j < tokens.size(); ++j) targets.emplace_back(j, tokens[j]);
    return losses(tokens, targets);
  }

 private:
  std::vector<TokenLoss> losses(std::span<const std::string> tokens,
                                const std::vector<std::pair<std::size_t, std::string>>& targets) const {
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& [pos, word] : targets) jt.push_back({{"position", pos}, {"target", word}});
    const nlohmann::json resp = call(
        {{"op", "losses"}, {"tokens", std::vector<std::string>(tokens.begin(), tokens.end())}, {"targets", jt}});
    const auto& items = resp.at("losses");
    if (items.size() != targets.size()) throw BackendError("worker returned the wrong number of losses");
    std::vector<TokenLoss> out;
    for (const auto& item : items) {
      const auto nats = item.at("nats").get<std::vector<double>>();
      if (nats.empty()) throw BackendError("worker returned no subword losses");
      // Multi-piece words: sum of the piece cross-entropies.
      out.push_back({std::accumulate(nats.begin(), nats.end(), 0.0), nats.size() > 1});
    }
    return out;
  }

  nlohmann::json call(const nlohmann::json& request) const {
    std::lock_guard<std::mutex> lock(mutex_);
    process_->write_line(request.dump());
    const std::string line = process_->read_line();
    nlohmann::json resp;
    try {
      resp = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw BackendError("malformed worker response: " + line.substr(0, 200));
    }
    if (!resp.value("ok", false)) throw BackendError("worker error: " + resp.value("error", std::string("unknown")));
    return resp;
  }

  TransformerConfig config_;
  std::unique_ptr<LineProcess> process_;
  nlohmann::json info_;
  mutable std::mutex mutex_;
};

}  // namespace lexsimp

#endif  // LEXSIMP_TRANSFORMER_BACKEND_HPP_
