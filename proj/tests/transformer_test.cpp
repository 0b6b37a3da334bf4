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

#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "lexsimp/generation.hpp"
#include "lexsimp/transformer_backend.hpp"

namespace lexsimp {
namespace {

const std::string kSupport = std::string(LEXSIMP_TEST_DIR) + "/support";

TransformerConfig fake_config() {
  TransformerConfig c;
  c.model = "fake-model";
  c.worker_script = kSupport + "/fake_mlm_worker.py";
  return c;
}

MlmQuery masked(std::vector<std::string> words, std::size_t slot) {
  words[slot] = std::string(kMaskToken);
  return {std::move(words), std::nullopt, {0, slot}};
}

std::vector<std::string> words_of(const MlmPrediction& p) {
  std::vector<std::string> out;
  for (const Prediction& e : p.entries) out.push_back(e.word);
  return out;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const BackendError& e) {
    return e.what();
  }
  return "no error";
}

TEST(TransformerProtocolTest, InfoAndArguments) {
  const TransformerMaskedLanguageModel m(fake_config());
  EXPECT_EQ(m.info().at("model"), "fake");
  const auto args = m.info().at("args").get<std::vector<std::string>>();
  EXPECT_EQ(args, (std::vector<std::string>{"--model", "fake-model", "--max-length", "512", "--device", "cpu"}));
}

TEST(TransformerProtocolTest, KeepsWholeWordsInModelOrder) {
  const TransformerMaskedLanguageModel m(fake_config());
  const MlmQuery q = masked({"the", "cat", "x"}, 2);
  EXPECT_EQ(m.predict_masked(q, 3).entries, (std::vector<Prediction>{{"sat", 0.30}, {"lay", 0.10}, {"stood", 0.07}}));
  EXPECT_EQ(words_of(m.predict_masked(q, 5)),
            (std::vector<std::string>{"sat", "lay", "stood", "rested", "slept"}));
  EXPECT_NE(error_of([&] { m.predict_masked(masked({"few", "x"}, 1), 3); }).find("only 2 whole words"),
            std::string::npos);
  EXPECT_THROW(m.predict_masked(q, 0), BackendError);
}

TEST(TransformerProtocolTest, LossesSumSubwordPieces) {
  const TransformerMaskedLanguageModel m(fake_config());
  const std::vector<std::string> t = {"the", "cat", "perched"};
  const TokenLoss one = m.token_loss(t, 1, "cat");
  EXPECT_NEAR(one.nats, 0.3, 1e-12);
  EXPECT_FALSE(one.decomposed);
  const TokenLoss two = m.token_loss(t, 2, "perched");
  EXPECT_DOUBLE_EQ(two.nats, 3.0);
  EXPECT_TRUE(two.decomposed);
  const std::vector<TokenLoss> all = m.sequence_losses(t);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_DOUBLE_EQ(all[2].nats, 3.0);
  EXPECT_THROW(m.token_loss(t, 3, "x"), BackendError);
  EXPECT_THROW(m.token_loss(t, 0, ""), BackendError);
}

TEST(TransformerProtocolTest, WorkerErrorsPropagate) {
  const TransformerMaskedLanguageModel m(fake_config());
  EXPECT_NE(error_of([&] { m.predict_masked(masked({"fail", "x"}, 1), 1); }).find("cannot score 'fail'"),
            std::string::npos);
  // The worker survives a failed request.
  EXPECT_EQ(m.predict_masked(masked({"ok", "x"}, 1), 1).entries.size(), 1u);
  EXPECT_NE(error_of([&] { m.predict_masked(masked({"die", "x"}, 1), 1); }).find("exited"), std::string::npos);
  EXPECT_THROW(m.predict_masked(masked({"ok", "x"}, 1), 1), BackendError);

  TransformerConfig missing = fake_config();
  missing.worker_script = kSupport + "/no_such_worker.py";
  EXPECT_THROW(TransformerMaskedLanguageModel{missing}, BackendError);
}

TEST(TransformerProtocolTest, ConcurrentCallsAreSerialized) {
  const TransformerMaskedLanguageModel m(fake_config());
  std::vector<std::thread> threads;
  std::vector<int> ok(8, 0);
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&, i] {
      for (int r = 0; r < 20; ++r) {
        const bool good = words_of(m.predict_masked(masked({"a", "b"}, 1), 2)) ==
                              std::vector<std::string>{"sat", "lay"} &&
                          m.token_loss(std::vector<std::string>{"abc"}, 0, "abc").nats == 0.1 * 3;
        ok[i] += good;
      }
    });
  for (auto& t : threads) t.join();
  for (int v : ok) EXPECT_EQ(v, 20);
}

// A randomly initialised two-layer BERT built on the fly, driven through the
// real worker script. Skipped when torch and transformers are unavailable.
class TinyBertTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const std::string dir = std::string(LEXSIMP_TEST_SCRATCH) + "/tiny_bert";
    const std::string cmd = "python3 " + kSupport + "/make_tiny_bert.py " + dir + " >/dev/null 2>&1";
    if (std::system(cmd.c_str()) == 0) {
      TransformerConfig c;
      c.model = dir;
      c.max_sequence_length = 64;
      shared_ = new TransformerMaskedLanguageModel(c);
    }
  }
  static void TearDownTestSuite() {
    delete shared_;
    shared_ = nullptr;
  }
  void SetUp() override {
    if (!shared_) GTEST_SKIP() << "torch/transformers not importable";
    model_ = shared_;
  }

  static TransformerMaskedLanguageModel* shared_;
  const TransformerMaskedLanguageModel* model_ = nullptr;
};

TransformerMaskedLanguageModel* TinyBertTest::shared_ = nullptr;

TEST_F(TinyBertTest, PredictionsAreWholeWordsInDescendingOrder) {
  const MlmPrediction p = model_->predict_masked(masked({"the", "cat", "x", "on", "the", "mat"}, 2), 5);
  ASSERT_EQ(p.entries.size(), 5u);
  double total = 0.0;
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    const std::string& w = p.entries[i].word;
    EXPECT_FALSE(is_subword_continuation(w) || is_special_token(w) || text::is_punctuation(w)) << w;
    if (i) {
      EXPECT_GE(p.entries[i - 1].probability, p.entries[i].probability);
    }
    total += p.entries[i].probability;
  }
  EXPECT_LE(total, 1.0);
}

TEST_F(TinyBertTest, SinglePieceLossMatchesPredictedProbability) {
  const std::vector<std::string> words = {"the", "cat", "sat", "on", "the", "mat"};
  const MlmPrediction p = model_->predict_masked(masked(words, 2), 3);
  for (const Prediction& e : p.entries) {
    const TokenLoss l = model_->token_loss(words, 2, e.word);
    EXPECT_FALSE(l.decomposed);
    EXPECT_NEAR(l.nats, -std::log(e.probability), 1e-4) << e.word;
  }
}

TEST_F(TinyBertTest, SentencePairAndMultiPieceWords) {
  const std::vector<std::string> words = {"the", "cat", "perched", "."};
  const MlmQuery pair{words, masked(words, 2).segment_a, {1, 2}};
  EXPECT_EQ(model_->predict_masked(pair, 3).entries.size(), 3u);
  const TokenLoss l = model_->token_loss(words, 2, "perched");
  EXPECT_TRUE(l.decomposed);
  EXPECT_GT(l.nats, model_->token_loss(words, 2, "cat").nats);
  EXPECT_EQ(model_->sequence_losses(words).size(), 4u);
}

}  // namespace
}  // namespace lexsimp
