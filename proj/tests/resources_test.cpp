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
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lexsimp/resources.hpp"

namespace lexsimp {
namespace {

std::size_t parse_error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError";
  return 0;
}

// --- embeddings -------------------------------------------------------------

TEST(EmbeddingStoreTest, HeaderIsOptional) {
  std::istringstream plain("cat 1 0 0\ndog 0 1 0\n");
  std::istringstream with_header("2 3\ncat 1 0 0\ndog 0 1 0\n");
  const EmbeddingStore a = EmbeddingStore::load(plain);
  const EmbeddingStore b = EmbeddingStore::load(with_header);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.dimension(), 3u);
  EXPECT_EQ(b.size(), 2u);
  EXPECT_EQ(b.dimension(), 3u);
  EXPECT_EQ(*a.find("cat"), *b.find("cat"));
}

TEST(EmbeddingStoreTest, Cosine) {
  std::istringstream in("a 1 0 0\nb 0 1 0\nc 1 1 0\nz 0 0 0\n");
  const EmbeddingStore s = EmbeddingStore::load(in);
  EXPECT_DOUBLE_EQ(s.cosine("a", "a").value, 1.0);
  EXPECT_DOUBLE_EQ(s.cosine("a", "b").value, 0.0);
  // (1,1,0).(1,0,0) = 1, norms sqrt(2) and 1.
  EXPECT_NEAR(s.cosine("c", "a").value, 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(s.cosine("c", "a").value, 0.7071, 1e-4);
  const Similarity zero = s.cosine("z", "a");
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_TRUE(zero.zero_vector);
  const Similarity oov = s.cosine("a", "missing");
  EXPECT_EQ(oov.value, 0.0);
  EXPECT_TRUE(oov.oov);
}

TEST(EmbeddingStoreTest, DuplicateRowKeepsLastAndWarns) {
  std::vector<std::string> warnings;
  log::ScopedCapture capture([&](const std::string& m) { warnings.push_back(m); });
  std::istringstream in("cat 1 0\ndog 0 1\ncat 0.5 0.5\n");
  const EmbeddingStore s = EmbeddingStore::load(in, "vec.txt");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(*s.find("cat"), (std::vector<float>{0.5f, 0.5f}));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("vec.txt:3"), std::string::npos);
}

TEST(EmbeddingStoreTest, CaseVariantsKeepFirstRow) {
  std::istringstream in("Paris 1 0\nparis 0 1\n");
  const EmbeddingStore s = EmbeddingStore::load(in);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(*s.find("PARIS"), (std::vector<float>{1.0f, 0.0f}));
}

TEST(EmbeddingStoreTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("a 1 2 3\nb 1 2\n");
              EmbeddingStore::load(in);
            }),
            2u);
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("2 2\na 1 2\n\nb 1 x\n");
              EmbeddingStore::load(in);
            }),
            4u);
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("lonely\n");
              EmbeddingStore::load(in);
            }),
            1u);
  EXPECT_THROW(EmbeddingStore::load_file("/nonexistent/vectors.txt"), Error);
}

// --- frequency --------------------------------------------------------------

TEST(FrequencyStoreTest, Zipf) {
  const FrequencyStore s({{"thousand", 1000.0}, {"zero", 0.0}}, 1e9);
  EXPECT_DOUBLE_EQ(s.zipf("thousand"), 3.0);
  EXPECT_EQ(s.zipf("zero"), 0.0);
  EXPECT_EQ(s.zipf("absent"), 0.0);
  const FrequencyStore m({{"fifty", 50.0}}, 1e6);
  EXPECT_NEAR(m.zipf("fifty"), std::log10(5e4), 1e-12);
  EXPECT_NEAR(m.zipf("fifty"), 4.699, 1e-3);
}

TEST(FrequencyStoreTest, LoadAndCaseFolding) {
  std::istringstream in("#total\t1000000\nThe\t600\nthe\t400\ncat\t50\r\n\n");
  const FrequencyStore s = FrequencyStore::load(in);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.count("THE"), 1000.0);
  EXPECT_NEAR(s.zipf("cat"), std::log10(5e4), 1e-12);
  EXPECT_TRUE(s.contains("Cat"));
  EXPECT_FALSE(s.contains("dog"));
}

TEST(FrequencyStoreTest, Errors) {
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("the\t5\n");
              FrequencyStore::load(in);
            }),
            1u);
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("#total\t100\nthe\t5\ncat\tmany\n");
              FrequencyStore::load(in);
            }),
            3u);
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("#total\t100\nthe\t5\tx\n");
              FrequencyStore::load(in);
            }),
            2u);
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("#total\t-3\n");
              FrequencyStore::load(in);
            }),
            1u);
  EXPECT_THROW(
      {
        std::istringstream in("#total\t10\nthe\t50\n");
        FrequencyStore::load(in);
      },
      ParseError);
  EXPECT_THROW(
      {
        std::istringstream in("");
        FrequencyStore::load(in);
      },
      ParseError);
  EXPECT_THROW(FrequencyStore({{"a", 1.0}}, 0.0), Error);
}

// --- paraphrases ------------------------------------------------------------

TEST(ParaphraseStoreTest, SymmetricLookup) {
  std::istringstream in("# comment\ncomposed\twrote\n\nPerched\tsat\n");
  const ParaphraseStore s = ParaphraseStore::load(in);
  EXPECT_TRUE(s.contains_pair("composed", "wrote"));
  EXPECT_TRUE(s.contains_pair("wrote", "composed"));
  EXPECT_TRUE(s.contains_pair("sat", "perched"));
  EXPECT_FALSE(s.contains_pair("composed", "sat"));
  // A word is not its own paraphrase unless the file says so.
  EXPECT_FALSE(s.contains_pair("composed", "composed"));
}

TEST(ParaphraseStoreTest, SelfPairFollowsFile) {
  std::istringstream in("mat\tmat\n");
  EXPECT_TRUE(ParaphraseStore::load(in).contains_pair("mat", "mat"));
}

TEST(ParaphraseStoreTest, PpdbLines) {
  std::istringstream in(
      "[VB] ||| composed ||| wrote ||| PPDB2.0Score=3.2 ||| ||| Equivalence\n"
      "[NP] ||| the cat ||| the feline ||| PPDB2.0Score=2.0\n");
  const ParaphraseStore s = ParaphraseStore::load(in);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.contains_pair("wrote", "composed"));
  EXPECT_FALSE(s.contains_pair("the cat", "the feline"));
}

TEST(ParaphraseStoreTest, Errors) {
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("a\tb\nonlyone\n");
              ParaphraseStore::load(in);
            }),
            2u);
  EXPECT_EQ(parse_error_line([] {
              std::istringstream in("[X] ||| a\n");
              ParaphraseStore::load(in);
            }),
            1u);
}

}  // namespace
}  // namespace lexsimp
