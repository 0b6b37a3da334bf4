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

// Benchmark datasets and drivers.
//
// Lexical simplification datasets are TSV, one instance per line:
//   sentence<TAB>target<TAB>target_index<TAB>rank:substitution<TAB>...
// The sentence is space-tokenized and target_index is 0-based.
//
// Sentence simplification data is line-aligned plain text: one source file
// and one file per reference.

#ifndef LEXSIMP_EVALUATION_HPP_
#define LEXSIMP_EVALUATION_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lexsimp/common.hpp"
#include "lexsimp/core.hpp"
#include "lexsimp/generation.hpp"
#include "lexsimp/metrics.hpp"
#include "lexsimp/pipeline.hpp"
#include "lexsimp/text.hpp"

namespace lexsimp {

struct GoldSubstitution {
  int rank = 0;
  std::string substitution;

  bool operator==(const GoldSubstitution&) const = default;
};

struct GoldInstance {
  std::string sentence;
  std::string target;
  std::size_t target_index = 0;
  std::vector<GoldSubstitution> gold;  // sorted by rank, then first appearance

  std::vector<std::string> gold_words() const {
    std::vector<std::string> out;
    for (const GoldSubstitution& g : gold) out.push_back(g.substitution);
    return out;
  }
};

/// Tokens are exactly the whitespace-separated pieces of `text`.
inline TokenizedSentence tokenize_pretokenized(std::string text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    text::CodePoint cp = text::decode_utf8(text, i);
    if (text::is_space(cp.value)) {
      i += cp.length;
      continue;
    }
    std::size_t j = i;
    while (j < text.size()) {
      cp = text::decode_utf8(text, j);
      if (text::is_space(cp.value)) break;
      j += cp.length;
    }
    tokens.push_back({text.substr(i, j - i), i, j});
    i = j;
  }
  return TokenizedSentence(std::move(text), std::move(tokens));
}

inline std::vector<GoldInstance> load_ls_dataset(std::istream& in, const std::string& source = "<dataset>") {
  std::vector<GoldInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = text::trim_cr(line);
    if (view.empty()) continue;
    const std::vector<std::string> fields = text::split(view, '\t');
    if (fields.size() < 4)
      throw ParseError(source, line_no, "expected sentence, target, index and at least one rank:substitution");
    GoldInstance inst;
    inst.sentence = fields[0];
    inst.target = fields[1];
    const std::string& idx = fields[2];
    const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), inst.target_index);
    if (idx.empty() || ec != std::errc() || ptr != idx.data() + idx.size())
      throw ParseError(source, line_no, "invalid target index '" + idx + "'");
    const std::vector<std::string> words = text::split_whitespace(inst.sentence);
    if (inst.target_index >= words.size())
      throw ParseError(source, line_no, "target index " + idx + " is past the end of the sentence");
    if (words[inst.target_index] != inst.target)
      throw ParseError(source, line_no,
                       "target '" + inst.target + "' does not match token " + idx + " ('" +
                           words[inst.target_index] + "')");

    std::map<std::string, std::pair<int, std::size_t>> best;  // substitution -> (rank, first seen)
    for (std::size_t f = 3; f < fields.size(); ++f) {
      const std::string& field = fields[f];
      if (field.empty()) continue;
      const std::size_t colon = field.find(':');
      int rank = 0;
      const auto [rp, rec] = std::from_chars(field.data(), field.data() + (colon == std::string::npos ? 0 : colon), rank);
      if (colon == std::string::npos || colon == 0 || rec != std::errc() || rp != field.data() + colon || rank <= 0)
        throw ParseError(source, line_no, "expected '<rank>:<substitution>', got '" + field + "'");
      const std::string sub = field.substr(colon + 1);
      if (sub.empty()) throw ParseError(source, line_no, "empty substitution in '" + field + "'");
      auto [it, inserted] = best.emplace(sub, std::make_pair(rank, f));
      if (!inserted) it->second.first = std::min(it->second.first, rank);
    }
    if (best.empty()) throw ParseError(source, line_no, "no gold substitutions");
    std::vector<std::pair<std::pair<int, std::size_t>, std::string>> ordered;
    for (const auto& [sub, key] : best) ordered.push_back({key, sub});
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [key, sub] : ordered) inst.gold.push_back({key.first, sub});
    out.push_back(std::move(inst));
  }
  return out;
}

inline std::vector<GoldInstance> load_ls_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return load_ls_dataset(in, path);
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.emplace_back(text::trim_cr(line));
  return out;
}

struct TsInstance {
  std::string source;
  std::vector<std::string> references;
};

inline std::vector<TsInstance> load_ts_dataset(const std::string& source_path,
                                               const std::vector<std::string>& reference_paths) {
  if (reference_paths.empty()) throw Error("at least one reference file is required");
  const std::vector<std::string> sources = read_lines(source_path);
  std::vector<TsInstance> out(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) out[i].source = sources[i];
  for (const std::string& path : reference_paths) {
    const std::vector<std::string> refs = read_lines(path);
    if (refs.size() != sources.size())
      throw Error("reference file '" + path + "' has " + std::to_string(refs.size()) + " lines, source has " +
                  std::to_string(sources.size()));
    for (std::size_t i = 0; i < refs.size(); ++i) out[i].references.push_back(refs[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Drivers. Complex word identification is bypassed: the target is given.

struct SgInstanceResult {
  std::vector<std::string> generated;
  SgScores scores;
};

struct SgReport {
  std::vector<SgInstanceResult> instances;
  SgScores corpus;
};

inline SgReport run_substitute_generation(const std::vector<GoldInstance>& data, const PipelineConfig& config,
                                          const MaskedLanguageModel& backend) {
  SgReport report;
  std::vector<SgScores> scores;
  for (const GoldInstance& inst : data) {
    const TokenizedSentence sentence = tokenize_pretokenized(inst.sentence);
    SgInstanceResult r;
    r.generated = generate_candidates(sentence, inst.target_index, config, backend).surfaces();
    r.scores = eval_sg(r.generated, inst.gold_words());
    scores.push_back(r.scores);
    report.instances.push_back(std::move(r));
  }
  report.corpus = corpus_sg(scores);
  return report;
}

struct FullInstanceResult {
  std::string replacement;
  PipelineHit hit;
  std::vector<std::string> ranked;  // candidates in ranking order
};

struct FullReport {
  std::vector<FullInstanceResult> instances;
  PipelineScores corpus;
};

inline FullReport run_full_pipeline(const std::vector<GoldInstance>& data, const Simplifier& simplifier) {
  FullReport report;
  std::vector<PipelineHit> hits;
  for (const GoldInstance& inst : data) {
    const TokenizedSentence sentence = tokenize_pretokenized(inst.sentence);
    const WordDecision d = simplifier.simplify_word(sentence, inst.target_index);
    FullInstanceResult r;
    r.replacement = d.chosen ? *d.chosen : inst.target;
    r.hit = eval_pipeline(r.replacement, inst.target, inst.gold_words());
    const RankingTable& t = d.step.ranking;
    std::vector<std::size_t> order(t.candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return t.average_rank[a] < t.average_rank[b]; });
    // The winner leads even when its average is tied with others.
    if (!order.empty()) std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return i == t.best; });
    for (std::size_t i : order) r.ranked.push_back(t.candidates[i]);
    hits.push_back(r.hit);
    report.instances.push_back(std::move(r));
  }
  report.corpus = corpus_pipeline(hits);
  return report;
}

}  // namespace lexsimp

#endif  // LEXSIMP_EVALUATION_HPP_
