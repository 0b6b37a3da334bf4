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

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lexsimp/cwi.hpp"
#include "support/fixtures.hpp"

namespace lexsimp {
namespace {

TEST(ComplexityTest, FrequencyScorer) {
  const FrequencyStore f = fixture::frequency_from_zipf({{"the", 7.0}, {"cat", 3.5}});
  const FrequencyComplexityScorer scorer(f);
  const ComplexityAnnotation a = score_complexity(tokenize("the cat abstruse ."), scorer);
  ASSERT_EQ(a.scores.size(), 4u);
  EXPECT_NEAR(a.scores[0], 0.0, 1e-12);
  EXPECT_NEAR(a.scores[1], 0.5, 1e-12);
  EXPECT_EQ(a.scores[2], 1.0);
  EXPECT_EQ(a.scores[3], 0.0);  // punctuation
  EXPECT_TRUE(score_complexity(tokenize(""), scorer).scores.empty());
  EXPECT_EQ(FrequencyComplexityScorer::from_zipf(8.0), 0.0);
}

TEST(ComplexityTest, ScoresAreClampedAndNumbersZeroed) {
  const TableComplexityScorer scorer({{"high", 4.0}, {"low", -1.0}, {"1999", 0.9}}, 0.3);
  const ComplexityAnnotation a = score_complexity(tokenize("high low 1999 other"), scorer);
  EXPECT_EQ(a.scores, (std::vector<double>{1.0, 0.0, 0.0, 0.3}));
}

TEST(ComplexityTest, ScorerWithWrongLengthIsAnError) {
  struct Bad : ComplexityScorer {
    std::vector<double> score(const TokenizedSentence&) const override { return {0.1}; }
  };
  EXPECT_THROW(score_complexity(tokenize("a b"), Bad()), Error);
}

TEST(SelectTest, Examples) {
  // "John composed these verses": composed 0.55, verses 0.76.
  ComplexityAnnotation a{{0.1, 0.55, 0.2, 0.76}, {}};
  EXPECT_EQ(select_complex_words(a, 0.5), (std::vector<std::size_t>{3, 1}));
  ComplexityAnnotation low{{0.1, 0.5, 0.2}, {}};
  EXPECT_TRUE(select_complex_words(low, 0.5).empty());  // strictly greater
  ComplexityAnnotation tie{{0.9, 0.9}, {}};
  EXPECT_EQ(select_complex_words(tie, 0.5), (std::vector<std::size_t>{0, 1}));
  a.ignored = {3};
  EXPECT_EQ(select_complex_words(a, 0.5), (std::vector<std::size_t>{1}));
}

// Against a brute-force oracle: for every assignment of up to 4 scores from
// a small grid, the result lists exactly the qualifying indices and a pair
// (i, j) appears in order iff score_i > score_j, or they are equal and i < j.
TEST(SelectTest, ExhaustiveOrderOracle) {
  const std::vector<double> grid = {0.2, 0.5, 0.6, 0.9};
  for (std::size_t n = 0; n <= 4; ++n) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos *= grid.size();
    for (std::size_t code = 0; code < combos; ++code) {
      ComplexityAnnotation a;
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= grid.size()) a.scores.push_back(grid[c % grid.size()]);
      const std::vector<std::size_t> got = select_complex_words(a, 0.5);
      std::set<std::size_t> expected;
      for (std::size_t i = 0; i < n; ++i)
        if (a.scores[i] > 0.5) expected.insert(i);
      ASSERT_EQ(std::set<std::size_t>(got.begin(), got.end()), expected);
      for (std::size_t x = 0; x < got.size(); ++x)
        for (std::size_t y = x + 1; y < got.size(); ++y) {
          const std::size_t i = got[x], j = got[y];
          EXPECT_TRUE(a.scores[i] > a.scores[j] || (a.scores[i] == a.scores[j] && i < j));
        }
    }
  }
}

TEST(EntityTest, CapitalizationHeuristic) {
  const CapitalizationEntityRecognizer plain;
  EXPECT_TRUE(plain.recognize(tokenize("the cat sat on the mat .")).empty());
  EXPECT_EQ(plain.recognize(tokenize("Admission to Tsinghua is exceedingly competitive .")),
            (std::set<std::size_t>{2}));
  // A sentence-initial capital alone is not evidence of a name...
  EXPECT_TRUE(plain.recognize(tokenize("John composed these verses .")).empty());
  // ...unless the word recurs capitalised or the lexicon does not know it.
  EXPECT_EQ(plain.recognize(tokenize("Smith met Smith .")), (std::set<std::size_t>{0, 2}));
  const CapitalizationEntityRecognizer with_lexicon([](std::string_view w) { return w != "john"; });
  EXPECT_EQ(with_lexicon.recognize(tokenize("John composed these verses .")), (std::set<std::size_t>{0}));
  EXPECT_TRUE(with_lexicon.recognize(tokenize("These verses .")).empty());
  // Leading punctuation does not change which word is first.
  EXPECT_TRUE(plain.recognize(tokenize("\" These verses \"")).empty());
}

TEST(EntityTest, SpanAdapterAndFailure) {
  const SpanEntityRecognizer spans([](const std::vector<std::string>&) {
    return std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}};
  });
  EXPECT_EQ(detect_entities(tokenize("at New York today"), spans), (std::set<std::size_t>{1, 2}));

  const SpanEntityRecognizer broken([](const std::vector<std::string>&) {
    return std::vector<std::pair<std::size_t, std::size_t>>{{0, 9}};
  });
  std::vector<std::string> warnings;
  log::ScopedCapture capture([&](const std::string& m) { warnings.push_back(m); });
  EXPECT_TRUE(detect_entities(tokenize("a b"), broken).empty());
  EXPECT_EQ(warnings.size(), 1u);
}

}  // namespace
}  // namespace lexsimp
