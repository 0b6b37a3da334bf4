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

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lexsimp/evaluation.hpp"
#include "support/fixtures.hpp"

namespace lexsimp {
namespace {

std::vector<GoldInstance> parse(const std::string& text) {
  std::istringstream in(text);
  return load_ls_dataset(in, "ls.tsv");
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "no error";
}

TEST(DatasetTest, PretokenizedSplitsOnWhitespaceOnly) {
  const TokenizedSentence s = tokenize_pretokenized("don't  stop\tnow.");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].surface, "don't");
  EXPECT_EQ(s[2].surface, "now.");
  EXPECT_EQ(s[1].begin, 7u);
  EXPECT_EQ(s.text(), "don't  stop\tnow.");
}

TEST(DatasetTest, LoadsAndOrdersGold) {
  const auto data = parse("the cat perched on the mat\tperched\t2\t2:seated\t1:sat\t3:sat\t2:rested\r\n\n"
                          "John composed these verses\tcomposed\t1\t1:wrote\n");
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data[0].target, "perched");
  EXPECT_EQ(data[0].target_index, 2u);
  EXPECT_EQ(data[0].gold, (std::vector<GoldSubstitution>{{1, "sat"}, {2, "seated"}, {2, "rested"}}));
  EXPECT_EQ(data[1].gold_words(), (std::vector<std::string>{"wrote"}));
  EXPECT_TRUE(parse("").empty());
}

TEST(DatasetTest, ErrorsCarryLineNumbers) {
  const std::string ok = "a b\tb\t1\t1:c\n";
  EXPECT_NE(parse_error(ok + "a b\tb\t1\n").find("ls.tsv:2"), std::string::npos);
  EXPECT_NE(parse_error(ok + ok + "a b\tb\tone\t1:c\n").find("ls.tsv:3"), std::string::npos);
  EXPECT_NE(parse_error("a b\tb\t5\t1:c\n").find("past the end"), std::string::npos);
  EXPECT_NE(parse_error("a b\ta\t1\t1:c\n").find("does not match"), std::string::npos);
  for (const std::string field : {"c", "0:c", "x:c", ":c", "1:"})
    EXPECT_NE(parse_error("a b\tb\t1\t" + field + "\n").find("ls.tsv:1"), std::string::npos) << field;
  EXPECT_NE(parse_error("a b\tb\t1\t\n").find("no gold"), std::string::npos);
  EXPECT_THROW(load_ls_dataset_file("/nonexistent/ls.tsv"), Error);
}

TEST(DatasetTest, SentenceSimplificationFiles) {
  const std::string dir = ::testing::TempDir();
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir + name) << body;
    return dir + name;
  };
  const std::string src = write("src.txt", "a b\nc d\n");
  const std::string r1 = write("r1.txt", "a\nc\n");
  const std::string r2 = write("r2.txt", "b\r\nd\r\n");
  const std::string short_ref = write("r3.txt", "a\n");
  const auto data = load_ts_dataset(src, {r1, r2});
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data[1].source, "c d");
  EXPECT_EQ(data[1].references, (std::vector<std::string>{"c", "d"}));
  EXPECT_THROW(load_ts_dataset(src, {}), Error);
  EXPECT_THROW(load_ts_dataset(src, {r1, short_ref}), Error);
  EXPECT_THROW(load_ts_dataset(src, {dir + "missing.txt"}), Error);
}

TEST(DriverTest, SubstituteGeneration) {
  MockMaskedLanguageModel mock;
  mock.set("the cat [MASK] on the mat", {{"sat", 0.6}, {"hopped", 0.4}});
  mock.set("John [MASK] these verses", {{"wrote", 0.5}, {"made", 0.3}, {"penned", 0.2}});
  const auto data = parse("the cat perched on the mat\tperched\t2\t1:sat\t2:seated\n"
                          "John composed these verses\tcomposed\t1\t1:wrote\t2:created\n");
  PipelineConfig config;
  const SgReport r = run_substitute_generation(data, config, mock);
  ASSERT_EQ(r.instances.size(), 2u);
  EXPECT_EQ(r.instances[0].generated, (std::vector<std::string>{"sat", "hopped"}));
  EXPECT_DOUBLE_EQ(r.instances[0].scores.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.instances[1].scores.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.instances[1].scores.recall, 0.5);
  // P = (1/2 + 1/3) / 2 = 5/12, R = 1/2, F1 = 5/11.
  EXPECT_DOUBLE_EQ(r.corpus.precision, 5.0 / 12.0);
  EXPECT_DOUBLE_EQ(r.corpus.recall, 0.5);
  EXPECT_NEAR(r.corpus.f1, 5.0 / 11.0, 1e-12);
}

TEST(DriverTest, FullPipeline) {
  fixture::Stack st;
  st.frequency = fixture::frequency_from_zipf({{"sat", 5.0},
                                               {"hopped", 4.0},
                                               {"perched", 2.0},
                                               {"wrote", 5.0},
                                               {"made", 6.0},
                                               {"penned", 1.5},
                                               {"composed", 3.0},
                                               {"plain", 3.5},
                                               {"abstruse", 4.0}});
  st.mock.set("the cat [MASK] on the mat", {{"sat", 0.6}, {"hopped", 0.4}});
  st.mock.set("John [MASK] these verses", {{"wrote", 0.5}, {"made", 0.3}, {"penned", 0.2}});
  st.mock.set("we [MASK] it", {{"plain", 0.3}, {"abstruse", 0.6}});
  const auto data = parse("the cat perched on the mat\tperched\t2\t1:seated\t2:rested\n"
                          "John composed these verses\tcomposed\t1\t1:wrote\n"
                          "we abstruse it\tabstruse\t1\t1:clear\n");
  const FullReport r = run_full_pipeline(data, st.simplifier());
  ASSERT_EQ(r.instances.size(), 3u);
  EXPECT_EQ(r.instances[0].replacement, "sat");
  EXPECT_EQ(r.instances[0].hit, (PipelineHit{false, false}));
  EXPECT_EQ(r.instances[1].replacement, "wrote");
  EXPECT_EQ(r.instances[1].ranked, (std::vector<std::string>{"wrote", "made"}));
  EXPECT_EQ(r.instances[1].hit, (PipelineHit{true, true}));
  EXPECT_EQ(r.instances[2].replacement, "abstruse");
  EXPECT_EQ(r.instances[2].hit, (PipelineHit{true, false}));
  EXPECT_DOUBLE_EQ(r.corpus.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.corpus.accuracy, 1.0 / 3.0);
}

}  // namespace
}  // namespace lexsimp
