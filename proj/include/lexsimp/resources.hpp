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

// Lexical resources used for ranking: word vectors, corpus frequencies and
// paraphrase pairs. All stores are immutable once loaded and keyed by the
// lowercased surface form.
//
// File formats:
//   embeddings   optional header "<vocab> <dim>", then "<word> <f1> ... <fdim>"
//   frequency    first line "#total\t<N>", then "<word>\t<count>"
//   paraphrases  "<word_a>\t<word_b>" per line, or native PPDB lines
//                "[X] ||| a ||| b ||| ..." (only single-word pairs are kept)

#ifndef LEXSIMP_RESOURCES_HPP_
#define LEXSIMP_RESOURCES_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lexsimp/common.hpp"
#include "lexsimp/text.hpp"

namespace lexsimp {

namespace detail {

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace detail

struct Similarity {
  double value = 0.0;
  bool oov = false;          // either word missing from the store
  bool zero_vector = false;  // either vector has zero norm
};

class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  /// Builds a store from in-memory vectors (all must share one dimension).
  EmbeddingStore(std::size_t dimension, std::unordered_map<std::string, std::vector<float>> vectors)
      : dimension_(dimension) {
    for (auto& [word, vec] : vectors) {
      if (vec.size() != dimension)
        throw Error("vector for '" + word + "' has " + std::to_string(vec.size()) +
                    " components, expected " + std::to_string(dimension));
      vectors_.insert_or_assign(text::to_lower(word), std::move(vec));
    }
  }

  /// Parses the text vector format. A word repeated verbatim keeps its last
  /// row (with a warning); words that differ only by case keep the first
  /// row seen, which in frequency-sorted distributions is the common form.
  static EmbeddingStore load(std::istream& in, const std::string& source = "<embeddings>") {
    EmbeddingStore store;
    std::unordered_set<std::string> seen_exact;
    std::unordered_map<std::string, std::string> owner;  // lowercase key -> surface that set it
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view view = text::trim_cr(line);
      const std::vector<std::string> fields = text::split_whitespace(view);
      if (fields.empty()) continue;
      if (first) {
        first = false;
        std::size_t count = 0;
        std::size_t dim = 0;
        if (fields.size() == 2 && detail::parse_size(fields[0], count) &&
            detail::parse_size(fields[1], dim)) {
          if (dim == 0) throw ParseError(source, line_no, "header declares dimension 0");
          store.dimension_ = dim;
          continue;
        }
      }
      if (fields.size() < 2) throw ParseError(source, line_no, "row has no vector components");
      const std::size_t dim = fields.size() - 1;
      if (store.dimension_ == 0) store.dimension_ = dim;
      if (dim != store.dimension_)
        throw ParseError(source, line_no,
                         "row has " + std::to_string(dim) + " components, expected " +
                             std::to_string(store.dimension_));
      std::vector<float> vec(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        double v = 0.0;
        if (!detail::parse_double(fields[i + 1], v))
          throw ParseError(source, line_no, "non-numeric component '" + fields[i + 1] + "'");
        vec[i] = static_cast<float>(v);
      }
      const std::string& word = fields[0];
      const std::string key = text::to_lower(word);
      if (!seen_exact.insert(word).second) {
        log::warn(source + ":" + std::to_string(line_no) + ": duplicate vector for '" + word +
                  "', keeping the last one");
        store.vectors_[key] = std::move(vec);
        owner[key] = word;
        continue;
      }
      auto it = owner.find(key);
      if (it == owner.end()) {
        owner.emplace(key, word);
        store.vectors_.emplace(key, std::move(vec));
      }
    }
    return store;
  }

  static EmbeddingStore load_file(const std::string& path) {
    auto in = detail::open_or_throw(path);
    return load(in, path);
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  bool contains(std::string_view word) const { return vectors_.count(text::to_lower(word)) > 0; }

  const std::vector<float>* find(std::string_view word) const {
    auto it = vectors_.find(text::to_lower(word));
    return it == vectors_.end() ? nullptr : &it->second;
  }

  Similarity cosine(std::string_view a, std::string_view b) const {
    const std::vector<float>* va = find(a);
    const std::vector<float>* vb = find(b);
    Similarity out;
    if (!va || !vb) {
      out.oov = true;
      return out;
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      dot += static_cast<double>((*va)[i]) * (*vb)[i];
      na += static_cast<double>((*va)[i]) * (*va)[i];
      nb += static_cast<double>((*vb)[i]) * (*vb)[i];
    }
    if (na == 0.0 || nb == 0.0) {
      out.zero_vector = true;
      return out;
    }
    out.value = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
    return out;
  }

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<float>> vectors_;
};

class FrequencyStore {
 public:
  FrequencyStore() = default;

  FrequencyStore(std::unordered_map<std::string, double> counts, double total_tokens)
      : total_(total_tokens) {
    if (!(total_tokens > 0.0)) throw Error("total_tokens must be positive");
    for (auto& [word, count] : counts) {
      if (!(count >= 0.0)) throw Error("negative count for '" + word + "'");
      counts_[text::to_lower(word)] += count;
    }
    for (const auto& [word, count] : counts_)
      if (count > total_) throw Error("count for '" + word + "' exceeds total_tokens");
  }

  /// Words differing only by case are merged by summing their counts.
  static FrequencyStore load(std::istream& in, const std::string& source = "<frequency>") {
    std::string line;
    std::size_t line_no = 0;
    double total = 0.0;
    bool have_total = false;
    std::unordered_map<std::string, double> counts;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view view = text::trim_cr(line);
      if (view.empty()) continue;
      const std::vector<std::string> fields = text::split(view, '\t');
      if (!have_total) {
        if (fields.size() != 2 || fields[0] != "#total")
          throw ParseError(source, line_no, "expected header '#total<TAB>N'");
        if (!detail::parse_double(fields[1], total) || !(total > 0.0))
          throw ParseError(source, line_no, "total must be a positive number");
        have_total = true;
        continue;
      }
      if (fields.size() != 2 || fields[0].empty())
        throw ParseError(source, line_no, "expected '<word><TAB><count>'");
      double count = 0.0;
      if (!detail::parse_double(fields[1], count) || count < 0.0)
        throw ParseError(source, line_no, "invalid count '" + fields[1] + "'");
      counts[text::to_lower(fields[0])] += count;
    }
    if (!have_total) throw ParseError(source, 0, "missing '#total' header");
    for (const auto& [word, count] : counts)
      if (count > total)
        throw ParseError(source, 0, "count for '" + word + "' exceeds the declared total");
    FrequencyStore store;
    store.total_ = total;
    store.counts_ = std::move(counts);
    return store;
  }

  static FrequencyStore load_file(const std::string& path) {
    auto in = detail::open_or_throw(path);
    return load(in, path);
  }

  double total_tokens() const noexcept { return total_; }
  std::size_t size() const noexcept { return counts_.size(); }

  double count(std::string_view word) const {
    auto it = counts_.find(text::to_lower(word));
    return it == counts_.end() ? 0.0 : it->second;
  }

  bool contains(std::string_view word) const { return count(word) >= 1.0; }

  /// log10 of occurrences per billion tokens; 0 for words seen less than once.
  double zipf(std::string_view word) const {
    const double c = count(word);
    if (c < 1.0) return 0.0;
    return std::log10(c / total_ * 1e9);
  }

 private:
  double total_ = 1.0;
  std::unordered_map<std::string, double> counts_;
};

class ParaphraseStore {
 public:
  ParaphraseStore() = default;

  explicit ParaphraseStore(const std::vector<std::pair<std::string, std::string>>& pairs) {
    for (const auto& [a, b] : pairs) add(a, b);
  }

  static ParaphraseStore load(std::istream& in, const std::string& source = "<paraphrases>") {
    ParaphraseStore store;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view view = text::trim_cr(line);
      if (view.empty() || view.front() == '#') continue;
      if (view.find(" ||| ") != std::string_view::npos) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
          const std::size_t pos = view.find(" ||| ", start);
          fields.emplace_back(view.substr(start, pos == std::string_view::npos ? pos : pos - start));
          if (pos == std::string_view::npos) break;
          start = pos + 5;
        }
        if (fields.size() < 3) throw ParseError(source, line_no, "PPDB line has fewer than 3 fields");
        const auto a = text::split_whitespace(fields[1]);
        const auto b = text::split_whitespace(fields[2]);
        if (a.size() == 1 && b.size() == 1) store.add(a[0], b[0]);
        continue;
      }
      const std::vector<std::string> fields = text::split(view, '\t');
      if (fields.size() < 2 || fields[0].empty() || fields[1].empty())
        throw ParseError(source, line_no, "expected '<word_a><TAB><word_b>'");
      store.add(fields[0], fields[1]);
    }
    return store;
  }

  static ParaphraseStore load_file(const std::string& path) {
    auto in = detail::open_or_throw(path);
    return load(in, path);
  }

  std::size_t size() const noexcept { return pairs_.size(); }

  bool contains_pair(std::string_view a, std::string_view b) const {
    return pairs_.count(key(text::to_lower(a), text::to_lower(b))) > 0;
  }

 private:
  static std::pair<std::string, std::string> key(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
  }

  void add(std::string_view a, std::string_view b) {
    pairs_.insert(key(text::to_lower(a), text::to_lower(b)));
  }

  std::set<std::pair<std::string, std::string>> pairs_;
};

}  // namespace lexsimp

#endif  // LEXSIMP_RESOURCES_HPP_
