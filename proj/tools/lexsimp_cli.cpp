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

// lexsimp command-line tool.
//
//   lexsimp simplify   [options] [--input FILE] [--out FILE] [--trace FILE]
//   lexsimp candidates [options] --sentence TEXT (--index N | --target WORD)
//   lexsimp eval-ls    [options] --dataset FILE [--task sg|full] [--sweep-top-k LO:HI:STEP]
//   lexsimp eval-ts    --source FILE --reference FILE... (--output FILE | --simplify [options])
//
// Shared options may also come from a JSON file given with --config;
// command-line values take precedence. The resolved configuration is written
// to <out>.config.json, or to stderr when there is no --out.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lexsimp/lexsimp.hpp"

namespace {

using lexsimp::RunConfig;
using nlohmann::json;

// Shared options, kept as raw strings/values plus the CLI11 handles used to
// tell whether they were given.
struct SharedOptions {
  std::string config_path;
  std::string backend, mock, model, python, worker, device;
  int max_seq_len = 0;
  std::string embeddings, frequency, ppdb;
  double threshold = 0, zipf_min = 0, mask_prob = 0;
  int top_k = 0, lm_window = 0, workers = 0;
  std::uint64_t seed = 0;
  std::string mode;
  std::vector<std::string> disable_features;
  bool no_acceptance_condition = false;

  std::vector<std::pair<std::string, CLI::Option*>> handles;

  void attach(CLI::App& app) {
    auto add = [&](const std::string& name, auto& var, const std::string& help) {
      handles.emplace_back(name, app.add_option(name, var, help));
    };
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    add("--backend", backend, "masked language model: transformer or mock");
    add("--mock", mock, "mock backend table (JSON)");
    add("--model", model, "transformer model name or directory");
    add("--python", python, "python interpreter for the transformer worker");
    add("--worker", worker, "transformer worker script");
    add("--device", device, "torch device for the transformer worker");
    add("--max-seq-len", max_seq_len, "maximum subword sequence length");
    add("--embeddings", embeddings, "word embeddings (text format)");
    add("--frequency", frequency, "word frequency list (#total header + word<TAB>count)");
    add("--ppdb", ppdb, "paraphrase pairs (TSV or PPDB lines)");
    add("--threshold", threshold, "complexity threshold (a word is complex when its score is above it)");
    add("--top-k", top_k, "number of substitutes to generate");
    add("--zipf-min", zipf_min, "minimum Zipf frequency for a substitute");
    add("--lm-window", lm_window, "context words on each side for the language-model loss");
    add("--mask-prob", mask_prob, "probability of masking a context word in the first segment");
    add("--seed", seed, "random seed for context masking");
    add("--mode", mode, "generation input: sentence_pair, single_masked or single_unmasked");
    add("--disable-feature", disable_features,
        "ranking feature to drop (bert_order, lm_loss, similarity, frequency, ppdb); repeatable");
    handles.emplace_back("--no-acceptance-condition",
                         app.add_flag("--no-acceptance-condition", no_acceptance_condition,
                                      "always replace with the top-ranked substitute"));
    add("--workers", workers, "sentences processed in parallel");
  }

  bool given(const std::string& name) const {
    for (const auto& [n, opt] : handles)
      if (n == name) return opt->count() > 0;
    return false;
  }

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig() : lexsimp::load_run_config(config_path);
    if (given("--backend")) c.backend = lexsimp::parse_backend(backend);
    if (given("--mock")) c.mock_path = mock;
    if (given("--model")) c.transformer.model = model;
    if (given("--python")) c.transformer.python = python;
    if (given("--worker")) c.transformer.worker_script = worker;
    if (given("--device")) c.transformer.device = device;
    if (given("--max-seq-len")) c.transformer.max_sequence_length = max_seq_len;
    if (given("--embeddings")) c.embeddings_path = embeddings;
    if (given("--frequency")) c.frequency_path = frequency;
    if (given("--ppdb")) c.ppdb_path = ppdb;
    if (given("--threshold")) c.pipeline.complexity_threshold = threshold;
    if (given("--top-k")) c.pipeline.top_k = top_k;
    if (given("--zipf-min")) c.pipeline.zipf_filter_min = zipf_min;
    if (given("--lm-window")) c.pipeline.lm_window = lm_window;
    if (given("--mask-prob")) c.pipeline.context_mask_prob = mask_prob;
    if (given("--seed")) c.pipeline.rng_seed = seed;
    if (given("--mode")) c.pipeline.generation_mode = lexsimp::parse_generation_mode(mode);
    for (const std::string& f : disable_features) c.pipeline.features.disable(lexsimp::parse_feature(f));
    if (no_acceptance_condition) c.pipeline.acceptance_condition = false;
    if (given("--workers")) c.workers = workers;
    c.validate();
    return c;
  }
};

void echo_config(const RunConfig& config, const std::string& out_path) {
  const std::string text = lexsimp::echo(config).dump(2);
  if (out_path.empty()) {
    std::cerr << "config: " << lexsimp::echo(config).dump() << "\n";
    return;
  }
  std::ofstream f(out_path + ".config.json");
  if (!f) throw lexsimp::Error("cannot write '" + out_path + ".config.json'");
  f << text << "\n";
}

void write_json(const json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw lexsimp::Error("cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

// Left-aligned first column, right-aligned others.
void print_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) os << "  ";
      if (c == 0) os << std::left; else os << std::right;
      os << std::setw(static_cast<int>(width[c])) << r[c];
    }
    os << std::left << "\n";
  };
  line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  os << std::string(total + 2 * (width.size() - 1), '-') << "\n";
  for (const auto& r : rows) line(r);
}

// ---------------------------------------------------------------------------

struct SimplifyArgs {
  std::string input, out, trace;
};

int run_simplify(const SharedOptions& shared, const SimplifyArgs& args) {
  const RunConfig config = shared.resolve();
  std::vector<std::string> lines;
  if (args.input.empty() || args.input == "-") {
    std::string line;
    while (std::getline(std::cin, line)) lines.emplace_back(lexsimp::text::trim_cr(line));
  } else {
    lines = lexsimp::read_lines(args.input);
  }
  echo_config(config, args.out);
  const auto toolkit = lexsimp::Toolkit::load(config);
  const std::vector<lexsimp::BatchItem> items = toolkit->simplifier().simplify_batch(lines, config.workers);

  std::ofstream out_file;
  if (!args.out.empty()) {
    out_file.open(args.out);
    if (!out_file) throw lexsimp::Error("cannot write '" + args.out + "'");
  }
  std::ostream& out = args.out.empty() ? std::cout : out_file;
  std::ofstream trace;
  if (!args.trace.empty()) {
    trace.open(args.trace);
    if (!trace) throw lexsimp::Error("cannot write '" + args.trace + "'");
  }
  int failures = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const lexsimp::BatchItem& item = items[i];
    if (item.result) {
      out << item.result->simplified.text() << "\n";
      if (trace) {
        json j = {{"line", i + 1},
                  {"original", item.result->original.text()},
                  {"simplified", item.result->simplified.text()},
                  {"iterations", item.result->iterations},
                  {"trace", item.result->trace}};
        trace << j.dump() << "\n";
      }
    } else {
      ++failures;
      out << lines[i] << "\n";
      std::cerr << "line " << (i + 1) << ": " << item.error << "\n";
      if (trace) trace << json({{"line", i + 1}, {"original", lines[i]}, {"error", item.error}}).dump() << "\n";
    }
  }
  if (failures) std::cerr << failures << " of " << items.size() << " lines failed and were copied unchanged\n";
  return failures ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct CandidatesArgs {
  std::string sentence, target;
  std::size_t index = 0;
  CLI::Option* index_opt = nullptr;
  bool pretokenized = false;
  bool as_json = false;
};

int run_candidates(const SharedOptions& shared, const CandidatesArgs& args) {
  const RunConfig config = shared.resolve();
  const lexsimp::TokenizedSentence sentence =
      args.pretokenized ? lexsimp::tokenize_pretokenized(args.sentence) : lexsimp::tokenize(args.sentence);
  std::size_t position = args.index;
  if (args.index_opt->count() == 0) {
    const auto words = sentence.words();
    const auto it = std::find(words.begin(), words.end(), args.target);
    if (it == words.end()) throw lexsimp::Error("target '" + args.target + "' is not a token of the sentence");
    position = static_cast<std::size_t>(it - words.begin());
  }
  sentence.at(position);
  echo_config(config, "");
  const auto toolkit = lexsimp::Toolkit::load(config);
  const lexsimp::WordDecision d = toolkit->simplifier().simplify_word(sentence, position);

  if (args.as_json) {
    std::cout << json(d.step).dump(2) << "\n";
    return 0;
  }
  const lexsimp::TraceStep& step = d.step;
  const lexsimp::RankingTable& t = step.ranking;
  std::cout << "target: '" << step.original << "' (token " << position << ")\n";
  std::cout << "generated:";
  for (const lexsimp::Candidate& c : step.candidates.candidates) std::cout << " " << c.surface;
  std::cout << "\n";
  if (t.filter_fallback) std::cout << "(no candidate passed the Zipf floor; ranking all of them)\n";
  std::vector<std::string> header = {"candidate"};
  for (const auto& [f, col] : t.features) header.push_back(lexsimp::to_string(f));
  header.push_back("avg_rank");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < t.candidates.size(); ++i) {
    std::vector<std::string> row = {(i == t.best ? "* " : "  ") + t.candidates[i]};
    for (const auto& [f, col] : t.features) row.push_back(fmt(col.raw[i]) + " (" + fmt(col.ranks[i], 1) + ")");
    row.push_back(fmt(t.average_rank[i], 2));
    rows.push_back(std::move(row));
  }
  print_table(std::cout, header, rows);
  if (step.check) {
    std::cout << "zipf: " << fmt(step.check->zipf_original) << " -> " << fmt(step.check->zipf_top)
              << "   loss: " << fmt(step.check->loss_original) << " -> " << fmt(step.check->loss_top) << "\n";
  }
  std::cout << "decision: " << lexsimp::to_string(step.reason);
  if (d.chosen) std::cout << " -> " << *d.chosen;
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct EvalLsArgs {
  std::string dataset, task = "sg", sweep, out;
};

std::vector<int> parse_sweep(const std::string& range) {
  const std::vector<std::string> parts = lexsimp::text::split(range, ':');
  int v[3] = {0, 0, 1};
  if (parts.size() != 2 && parts.size() != 3) throw lexsimp::ConfigError("--sweep-top-k expects LO:HI[:STEP]");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      v[i] = std::stoi(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw lexsimp::ConfigError("--sweep-top-k: '" + parts[i] + "' is not an integer");
    }
  }
  if (v[0] < 1 || v[1] < v[0] || v[2] < 1) throw lexsimp::ConfigError("--sweep-top-k needs 1 <= LO <= HI and STEP >= 1");
  std::vector<int> out;
  for (int k = v[0]; k <= v[1]; k += v[2]) out.push_back(k);
  return out;
}

int run_eval_ls(const SharedOptions& shared, const EvalLsArgs& args) {
  const RunConfig config = shared.resolve();
  if (args.task != "sg" && args.task != "full") throw lexsimp::ConfigError("--task must be sg or full");
  const std::vector<int> ks = args.sweep.empty() ? std::vector<int>{config.pipeline.top_k} : parse_sweep(args.sweep);
  const std::vector<lexsimp::GoldInstance> data = lexsimp::load_ls_dataset_file(args.dataset);
  if (data.empty()) throw lexsimp::Error("dataset '" + args.dataset + "' has no instances");
  echo_config(config, args.out);
  const auto toolkit = lexsimp::Toolkit::load(config);

  json report = {{"task", args.task}, {"dataset", args.dataset}, {"instances", data.size()}, {"rows", json::array()}};
  std::vector<std::vector<std::string>> rows;
  for (int k : ks) {
    lexsimp::PipelineConfig pipeline = config.pipeline;
    pipeline.top_k = k;
    if (args.task == "sg") {
      const lexsimp::SgReport r = lexsimp::run_substitute_generation(data, pipeline, toolkit->backend());
      rows.push_back({std::to_string(k), fmt(r.corpus.precision), fmt(r.corpus.recall), fmt(r.corpus.f1)});
      json row = {{"top_k", k}, {"precision", r.corpus.precision}, {"recall", r.corpus.recall}, {"f1", r.corpus.f1}};
      if (ks.size() == 1) {
        row["per_instance"] = json::array();
        for (const auto& inst : r.instances)
          row["per_instance"].push_back({{"generated", inst.generated},
                                         {"precision", inst.scores.precision},
                                         {"recall", inst.scores.recall},
                                         {"f1", inst.scores.f1}});
      }
      report["rows"].push_back(std::move(row));
    } else {
      const lexsimp::Simplifier simplifier = toolkit->make_simplifier(pipeline);
      const lexsimp::FullReport r = lexsimp::run_full_pipeline(data, simplifier);
      rows.push_back({std::to_string(k), fmt(r.corpus.precision), fmt(r.corpus.accuracy)});
      json row = {{"top_k", k}, {"precision", r.corpus.precision}, {"accuracy", r.corpus.accuracy}};
      if (ks.size() == 1) {
        row["per_instance"] = json::array();
        for (const auto& inst : r.instances)
          row["per_instance"].push_back(
              {{"replacement", inst.replacement}, {"pre", inst.hit.pre}, {"acc", inst.hit.acc}, {"ranked", inst.ranked}});
      }
      report["rows"].push_back(std::move(row));
    }
  }
  std::cout << data.size() << " instances from " << args.dataset << "\n";
  if (args.task == "sg")
    print_table(std::cout, {"top_k", "precision", "recall", "f1"}, rows);
  else
    print_table(std::cout, {"top_k", "precision", "accuracy"}, rows);
  if (!args.out.empty()) {
    report["config"] = lexsimp::echo(config);
    write_json(report, args.out);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct EvalTsArgs {
  std::string source, output, out;
  std::vector<std::string> references;
  bool simplify = false;
};

json ts_row(const std::string& name, const std::vector<lexsimp::TsInstance>& data,
            const std::vector<std::string>& outputs) {
  lexsimp::SariComponents mean;
  double sari_sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const lexsimp::SariComponents c = lexsimp::sari_components(data[i].source, outputs[i], data[i].references);
    mean.keep += c.keep;
    mean.del += c.del;
    mean.add += c.add;
    sari_sum += lexsimp::sari(data[i].source, outputs[i], data[i].references);
  }
  const double n = data.empty() ? 1.0 : static_cast<double>(data.size());
  return {{"system", name},
          {"sari", sari_sum / n},
          {"keep", 100.0 * mean.keep / n},
          {"delete", 100.0 * mean.del / n},
          {"add", 100.0 * mean.add / n},
          {"fres", lexsimp::corpus_fres(outputs)}};
}

int run_eval_ts(const SharedOptions& shared, const EvalTsArgs& args) {
  const std::vector<lexsimp::TsInstance> data = lexsimp::load_ts_dataset(args.source, args.references);
  if (data.empty()) throw lexsimp::Error("source '" + args.source + "' has no lines");
  std::vector<std::string> sources;
  for (const auto& inst : data) sources.push_back(inst.source);

  std::vector<std::string> outputs;
  std::optional<RunConfig> config;
  if (args.simplify) {
    config = shared.resolve();
    echo_config(*config, args.out);
    const auto toolkit = lexsimp::Toolkit::load(*config);
    const auto items = toolkit->simplifier().simplify_batch(sources, config->workers);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].result) {
        outputs.push_back(items[i].result->simplified.text());
      } else {
        std::cerr << "line " << (i + 1) << ": " << items[i].error << " (copied unchanged)\n";
        outputs.push_back(sources[i]);
      }
    }
    if (!args.output.empty()) {
      std::ofstream f(args.output);
      if (!f) throw lexsimp::Error("cannot write '" + args.output + "'");
      for (const std::string& line : outputs) f << line << "\n";
    }
  } else {
    if (args.output.empty()) throw lexsimp::ConfigError("give --output FILE, or --simplify to produce it");
    outputs = lexsimp::read_lines(args.output);
    if (outputs.size() != sources.size())
      throw lexsimp::Error("output '" + args.output + "' has " + std::to_string(outputs.size()) +
                           " lines, source has " + std::to_string(sources.size()));
  }

  json rows = json::array({ts_row("source (copy)", data, sources), ts_row("system", data, outputs)});
  std::vector<std::vector<std::string>> table;
  for (const json& r : rows)
    table.push_back({r["system"].get<std::string>(), fmt(r["sari"].get<double>(), 2), fmt(r["keep"].get<double>(), 2),
                     fmt(r["delete"].get<double>(), 2), fmt(r["add"].get<double>(), 2),
                     fmt(r["fres"].get<double>(), 2)});
  std::cout << data.size() << " sentences, " << args.references.size() << " reference(s)\n";
  print_table(std::cout, {"system", "SARI", "keep", "delete", "add", "FRES"}, table);
  if (!args.out.empty()) {
    json report = {{"sentences", data.size()}, {"references", args.references.size()}, {"rows", rows}};
    if (config) report["config"] = lexsimp::echo(*config);
    write_json(report, args.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexsimp: lexical simplification with a masked language model"};
  app.require_subcommand(1);

  SharedOptions simplify_opts, candidates_opts, eval_ls_opts, eval_ts_opts;

  SimplifyArgs simplify_args;
  CLI::App* simplify = app.add_subcommand("simplify", "simplify text, one sentence per line");
  simplify_opts.attach(*simplify);
  simplify->add_option("--input", simplify_args.input, "input file (default: stdin)");
  simplify->add_option("--out", simplify_args.out, "output file (default: stdout)");
  simplify->add_option("--trace", simplify_args.trace, "write a JSON-lines trace of every decision");

  CandidatesArgs cand_args;
  CLI::App* candidates = app.add_subcommand("candidates", "show substitutes and their ranking for one word");
  candidates_opts.attach(*candidates);
  candidates->add_option("--sentence", cand_args.sentence, "the sentence")->required();
  cand_args.index_opt = candidates->add_option("--index", cand_args.index, "0-based token index of the word");
  candidates->add_option("--target", cand_args.target, "the word (first occurrence)")->excludes(cand_args.index_opt);
  candidates->add_flag("--pretokenized", cand_args.pretokenized, "split on whitespace only");
  candidates->add_flag("--json", cand_args.as_json, "print the decision as JSON");

  EvalLsArgs ls_args;
  CLI::App* eval_ls = app.add_subcommand("eval-ls", "evaluate on a lexical simplification dataset");
  eval_ls_opts.attach(*eval_ls);
  eval_ls->add_option("--dataset", ls_args.dataset, "TSV dataset")->required()->check(CLI::ExistingFile);
  eval_ls->add_option("--task", ls_args.task, "sg (substitute generation) or full (whole pipeline)")
      ->check(CLI::IsMember({"sg", "full"}));
  eval_ls->add_option("--sweep-top-k", ls_args.sweep, "evaluate for top_k = LO, LO+STEP, ..., HI");
  eval_ls->add_option("--out", ls_args.out, "write the report as JSON");

  EvalTsArgs ts_args;
  CLI::App* eval_ts = app.add_subcommand("eval-ts", "SARI and FRES on a sentence simplification test set");
  eval_ts_opts.attach(*eval_ts);
  eval_ts->add_option("--source", ts_args.source, "source sentences")->required()->check(CLI::ExistingFile);
  eval_ts->add_option("--reference", ts_args.references, "reference file; repeatable")
      ->required()
      ->check(CLI::ExistingFile);
  eval_ts->add_option("--output", ts_args.output, "system output (written when --simplify is given)");
  eval_ts->add_flag("--simplify", ts_args.simplify, "run the simplifier on the source");
  eval_ts->add_option("--out", ts_args.out, "write the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simplify->parsed()) return run_simplify(simplify_opts, simplify_args);
    if (candidates->parsed()) {
      if (cand_args.index_opt->count() == 0 && cand_args.target.empty())
        throw lexsimp::ConfigError("give --index or --target");
      return run_candidates(candidates_opts, cand_args);
    }
    if (eval_ls->parsed()) return run_eval_ls(eval_ls_opts, ls_args);
    if (eval_ts->parsed()) return run_eval_ts(eval_ts_opts, ts_args);
  } catch (const lexsimp::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
