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

// Evaluation metrics: candidate precision/recall/F1, pipeline
// precision/accuracy, SARI and Flesch reading ease.

#ifndef LEXSIMP_METRICS_HPP_
#define LEXSIMP_METRICS_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lexsimp/common.hpp"
#include "lexsimp/text.hpp"

namespace lexsimp {

struct SgScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline double harmonic_mean(double a, double b) { return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; }

/// Candidate-level scores against a gold set (case-insensitive exact match).
inline SgScores eval_sg(const std::vector<std::string>& generated, const std::vector<std::string>& gold) {
  std::unordered_set<std::string> g;
  for (const std::string& s : generated) g.insert(text::to_lower(s));
  std::unordered_set<std::string> ref;
  for (const std::string& s : gold) ref.insert(text::to_lower(s));
  std::size_t hits = 0;
  for (const std::string& s : g) hits += ref.count(s);
  SgScores out;
  out.precision = g.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(g.size());
  out.recall = ref.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(ref.size());
  out.f1 = harmonic_mean(out.precision, out.recall);
  return out;
}

/// Corpus scores: precision and recall are instance means; F1 is their
/// harmonic mean.
inline SgScores corpus_sg(const std::vector<SgScores>& per_instance) {
  SgScores out;
  if (per_instance.empty()) return out;
  for (const SgScores& s : per_instance) {
    out.precision += s.precision;
    out.recall += s.recall;
  }
  out.precision /= static_cast<double>(per_instance.size());
  out.recall /= static_cast<double>(per_instance.size());
  out.f1 = harmonic_mean(out.precision, out.recall);
  return out;
}

struct PipelineHit {
  bool pre = false;  // kept the word or picked a gold substitute
  bool acc = false;  // changed the word to a gold substitute

  bool operator==(const PipelineHit&) const = default;
};

inline PipelineHit eval_pipeline(const std::string& replacement, const std::string& original,
                                 const std::vector<std::string>& gold) {
  const std::string r = text::to_lower(replacement);
  const bool unchanged = r == text::to_lower(original);
  bool in_gold = false;
  for (const std::string& g : gold) in_gold = in_gold || text::to_lower(g) == r;
  return {unchanged || in_gold, !unchanged && in_gold};
}

struct PipelineScores {
  double precision = 0.0;
  double accuracy = 0.0;
};

inline PipelineScores corpus_pipeline(const std::vector<PipelineHit>& hits) {
  PipelineScores out;
  if (hits.empty()) return out;
  for (const PipelineHit& h : hits) {
    out.precision += h.pre ? 1.0 : 0.0;
    out.accuracy += h.acc ? 1.0 : 0.0;
  }
  out.precision /= static_cast<double>(hits.size());
  out.accuracy /= static_cast<double>(hits.size());
  return out;
}

// ---------------------------------------------------------------------------
// SARI, following the reference implementation distributed with the metric:
// n = 1..4; keep is an F1, deletion is precision only, addition is an F1.
// Source and output n-gram counts are multiplied by the number of references
// so that they are comparable with counts pooled over all references. Text is
// lowercased and split on whitespace.

struct SariComponents {
  double keep = 0.0;
  double del = 0.0;
  double add = 0.0;
};

namespace detail {

using NgramCounts = std::unordered_map<std::string, long>;

inline NgramCounts ngram_counts(const std::vector<std::string>& tokens, std::size_t n, long weight = 1) {
  NgramCounts out;
  if (tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string g = tokens[i];
    for (std::size_t k = 1; k < n; ++k) g += " " + tokens[i + k];
    out[g] += weight;
  }
  return out;
}

inline long count_of(const NgramCounts& c, const std::string& g) {
  auto it = c.find(g);
  return it == c.end() ? 0 : it->second;
}

inline SariComponents sari_ngram(const std::vector<std::string>& source, const std::vector<std::string>& output,
                                 const std::vector<std::vector<std::string>>& references, std::size_t n) {
  const long num_refs = static_cast<long>(references.size());
  const NgramCounts s = ngram_counts(source, n, num_refs);
  const NgramCounts c = ngram_counts(output, n, num_refs);
  NgramCounts r;
  for (const auto& ref : references)
    for (const auto& [g, k] : ngram_counts(ref, n)) r[g] += k;

  SariComponents out;

  // Keep.
  std::size_t keep_size = 0;      // n-grams in source & output
  std::size_t keep_all_size = 0;  // n-grams in source & references
  double keep_p = 0.0;
  double keep_r = 0.0;
  for (const auto& [g, sc] : s) {
    const long kept = std::min(sc, count_of(c, g));
    const long all = std::min(sc, count_of(r, g));
    if (kept > 0) ++keep_size;
    if (all > 0) ++keep_all_size;
    const long good = std::min(kept, count_of(r, g));
    if (good > 0) {
      keep_p += static_cast<double>(good) / static_cast<double>(kept);
      keep_r += static_cast<double>(good) / static_cast<double>(all);
    }
  }
  const double keep_precision = keep_size ? keep_p / static_cast<double>(keep_size) : 0.0;
  const double keep_recall = keep_all_size ? keep_r / static_cast<double>(keep_all_size) : 0.0;
  out.keep = harmonic_mean(keep_precision, keep_recall);

  // Deletion (precision only).
  std::size_t del_size = 0;
  double del_p = 0.0;
  for (const auto& [g, sc] : s) {
    const long deleted = sc - count_of(c, g);
    if (deleted <= 0) continue;
    ++del_size;
    const long good = deleted - count_of(r, g);
    if (good > 0) del_p += static_cast<double>(good) / static_cast<double>(deleted);
  }
  out.del = del_size ? del_p / static_cast<double>(del_size) : 0.0;

  // Addition (set based).
  std::size_t added = 0;
  std::size_t added_good = 0;
  for (const auto& [g, cc] : c) {
    if (s.count(g)) continue;
    ++added;
    if (r.count(g)) ++added_good;
  }
  std::size_t addable = 0;
  for (const auto& [g, rc] : r)
    if (!s.count(g)) ++addable;
  const double add_precision = added ? static_cast<double>(added_good) / static_cast<double>(added) : 0.0;
  const double add_recall = addable ? static_cast<double>(added_good) / static_cast<double>(addable) : 0.0;
  out.add = harmonic_mean(add_precision, add_recall);
  return out;
}

}  // namespace detail

/// Mean over n = 1..4 of each component (each in [0, 1]).
inline SariComponents sari_components(std::string_view source, std::string_view output,
                                      const std::vector<std::string>& references) {
  if (references.empty()) throw Error("SARI needs at least one reference");
  const auto s = text::split_whitespace(text::to_lower(source));
  const auto c = text::split_whitespace(text::to_lower(output));
  std::vector<std::vector<std::string>> refs;
  for (const std::string& r : references) refs.push_back(text::split_whitespace(text::to_lower(r)));
  SariComponents mean;
  for (std::size_t n = 1; n <= 4; ++n) {
    const SariComponents part = detail::sari_ngram(s, c, refs, n);
    mean.keep += part.keep / 4.0;
    mean.del += part.del / 4.0;
    mean.add += part.add / 4.0;
  }
  return mean;
}

/// Sentence SARI in [0, 100].
inline double sari(std::string_view source, std::string_view output, const std::vector<std::string>& references) {
  const SariComponents m = sari_components(source, output, references);
  return 100.0 * (m.keep + m.del + m.add) / 3.0;
}

// ---------------------------------------------------------------------------
// Flesch reading ease.

/// Vowel groups (a, e, i, o, u, y), minus a silent final 'e' unless it is the
/// only group; at least 1. Non-letters are ignored.
inline int count_syllables(std::string_view word) {
  std::string letters;
  for (char c : word)
    if (text::is_ascii_alpha(c)) letters.push_back(static_cast<char>(c | 0x20));
  auto vowel = [](char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; };
  int groups = 0;
  bool in_group = false;
  for (char c : letters) {
    const bool v = vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const std::size_t n = letters.size();
  if (groups > 1 && n >= 2 && letters[n - 1] == 'e' && !vowel(letters[n - 2])) --groups;
  return std::max(groups, 1);
}

struct ReadabilityCounts {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t syllables = 0;

  ReadabilityCounts& operator+=(const ReadabilityCounts& o) {
    sentences += o.sentences;
    words += o.words;
    syllables += o.syllables;
    return *this;
  }
};

inline double fres_from_counts(double sentences, double words, double syllables) {
  if (words <= 0.0) return 206.835;
  return 206.835 - 1.015 * (words / std::max(sentences, 1.0)) - 84.6 * (syllables / words);
}

/// Words are whitespace tokens holding a letter or digit; sentences are runs
/// of '.', '!' or '?' ending a token, at least one per text.
inline ReadabilityCounts readability_counts(std::string_view text_in) {
  ReadabilityCounts out;
  for (const std::string& tok : text::split_whitespace(text_in)) {
    const bool wordlike = std::any_of(tok.begin(), tok.end(), [](char c) {
      return text::is_ascii_alpha(c) || text::is_ascii_digit(c);
    });
    if (wordlike) {
      ++out.words;
      out.syllables += static_cast<std::size_t>(count_syllables(tok));
    }
    const char last = tok.back();
    if (last == '.' || last == '!' || last == '?') ++out.sentences;
  }
  out.sentences = std::max<std::size_t>(out.sentences, 1);
  return out;
}

inline double fres(std::string_view text_in) {
  const ReadabilityCounts c = readability_counts(text_in);
  return fres_from_counts(static_cast<double>(c.sentences), static_cast<double>(c.words),
                          static_cast<double>(c.syllables));
}

/// Corpus FRES over pooled counts; every line is at least one sentence.
inline double corpus_fres(const std::vector<std::string>& lines) {
  ReadabilityCounts total;
  for (const std::string& line : lines) total += readability_counts(line);
  return fres_from_counts(static_cast<double>(total.sentences), static_cast<double>(total.words),
                          static_cast<double>(total.syllables));
}

inline double corpus_sari(const std::vector<std::string>& sources, const std::vector<std::string>& outputs,
                          const std::vector<std::vector<std::string>>& references) {
  if (sources.size() != outputs.size() || sources.size() != references.size())
    throw Error("SARI corpus inputs have different lengths");
  if (sources.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < sources.size(); ++i) sum += sari(sources[i], outputs[i], references[i]);
  return sum / static_cast<double>(sources.size());
}

}  // namespace lexsimp

#endif  // LEXSIMP_METRICS_HPP_
