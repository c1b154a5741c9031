// Copyright (c) 2026 The pba Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pba: pronunciation by analogy. Subcommands: build-index, transcribe, eval.
// Exit codes: 0 success (silence included), 1 data error, 2 usage/IO error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pba/chunk_index.h"
#include "pba/eval.h"
#include "pba/lattice.h"
#include "pba/lexicon.h"
#include "pba/ranker.h"
#include "pba/report_io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct CliError {
  int code;
  std::string message;
};

pba::Mode RequireMode(const std::string& name) {
  auto mode = pba::ParseModeName(name);
  if (!mode)
    throw CliError{kExitUsageError,
                   "unknown mode '" + name +
                       "' (expected smpa, pronounce, overlap1 or headtail)"};
  return *mode;
}

pba::TieBreak RequireTieBreak(const std::string& name) {
  auto tb = pba::ParseTieBreakName(name);
  if (!tb)
    throw CliError{kExitUsageError,
                   "unknown tie-break '" + name +
                       "' (expected freq_sum, freq_min or none)"};
  return *tb;
}

pba::Lexicon LoadLexicon(const std::string& path, bool skip_bad_lines) {
  if (!std::filesystem::exists(path))
    throw CliError{kExitUsageError, "lexicon file not found: " + path};
  pba::ParseResult parsed = pba::ParseLexiconFile(path);
  for (const pba::ParseDiagnostic& d : parsed.diagnostics) {
    if (d.kind == pba::ParseDiagnostic::Kind::kWarning)
      std::cerr << path << ":" << d.line << ": warning: " << d.message
                << "\n";
  }
  if (parsed.HasRejectedLines()) {
    std::cerr << parsed.RejectedLinesMessage(path);
    if (!skip_bad_lines)
      throw CliError{kExitDataError,
                     "malformed lines in " + path +
                         " (use --skip-bad-lines to ignore them)"};
  }
  return std::move(parsed.lexicon);
}

void WriteOutput(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CliError{kExitUsageError, "cannot write output file: " + path};
  out << content;
}

struct BuildIndexArgs {
  std::string lexicon_path;
  std::string output_path;
  int min_chunk_len = 2;
  bool weight_by_word_freq = false;
  bool skip_bad_lines = false;
};

void RequireMinChunkLen(int value) {
  if (value < 1)
    throw CliError{kExitUsageError, "--min-chunk-len must be >= 1"};
}

int RunBuildIndex(const BuildIndexArgs& args) {
  RequireMinChunkLen(args.min_chunk_len);
  pba::Lexicon lexicon = LoadLexicon(args.lexicon_path, args.skip_bad_lines);
  pba::IndexOptions opts;
  opts.min_chunk_len = args.min_chunk_len;
  opts.weight_by_word_freq = args.weight_by_word_freq;
  pba::ChunkIndex index = pba::ChunkIndex::Build(lexicon, opts);
  index.SaveToFile(args.output_path);
  std::cout << "indexed " << lexicon.entries().size() << " entries: "
            << index.distinct_chunks() << " distinct chunks, "
            << index.chunk_occurrences() << " occurrences -> "
            << args.output_path << "\n";
  return kExitOk;
}

struct TranscribeArgs {
  std::vector<std::string> words;
  std::string lexicon_path;
  std::string index_path;
  std::string mode = "smpa";
  std::string tie_break = "freq_sum";
  int k = 1;
  int min_chunk_len = 2;
  bool weight_by_word_freq = false;
  std::string format = "text";
  std::string dot_path;
  bool skip_bad_lines = false;
};

// Loads the cache when it exists and its embedded hash matches the lexicon;
// otherwise builds from the lexicon (and refreshes the cache when a path was
// given).
pba::ChunkIndex ObtainIndex(const std::string& lexicon_path,
                            const std::string& index_path,
                            const pba::IndexOptions& opts,
                            bool skip_bad_lines) {
  if (!index_path.empty() && lexicon_path.empty()) {
    if (!std::filesystem::exists(index_path))
      throw CliError{kExitUsageError, "index file not found: " + index_path};
    return pba::ChunkIndex::LoadFromFile(index_path);
  }
  if (lexicon_path.empty())
    throw CliError{kExitUsageError,
                   "either --lexicon or --index must be given"};
  pba::Lexicon lexicon = LoadLexicon(lexicon_path, skip_bad_lines);
  if (!index_path.empty() && std::filesystem::exists(index_path)) {
    pba::ChunkIndex cached = pba::ChunkIndex::LoadFromFile(index_path);
    if (cached.lexicon_hash() == lexicon.ContentHash() &&
        cached.min_chunk_len() == opts.min_chunk_len &&
        cached.weight_by_word_freq() == opts.weight_by_word_freq)
      return cached;
    std::cerr << index_path << ": stale cache (content hash mismatch), "
              << "rebuilding\n";
  }
  pba::ChunkIndex index = pba::ChunkIndex::Build(lexicon, opts);
  if (!index_path.empty()) index.SaveToFile(index_path);
  return index;
}

int RunTranscribe(const TranscribeArgs& args) {
  if (args.format != "text" && args.format != "json" && args.format != "dot")
    throw CliError{kExitUsageError,
                   "unknown format '" + args.format +
                       "' (expected text, json or dot)"};
  const bool want_dot = args.format == "dot" || !args.dot_path.empty();
  if (want_dot && args.words.size() != 1)
    throw CliError{kExitUsageError,
                   "lattice output requires exactly one word"};
  RequireMinChunkLen(args.min_chunk_len);

  pba::IndexOptions opts;
  opts.min_chunk_len = args.min_chunk_len;
  opts.weight_by_word_freq = args.weight_by_word_freq;
  pba::ChunkIndex index = ObtainIndex(args.lexicon_path, args.index_path,
                                      opts, args.skip_bad_lines);

  pba::RankingPolicy policy;
  policy.mode = RequireMode(args.mode);
  policy.tie_break = RequireTieBreak(args.tie_break);
  policy.k = args.k;
  if (policy.k < 1) throw CliError{kExitUsageError, "-k must be >= 1"};

  std::vector<pba::Transcription> results;
  results.reserve(args.words.size());
  for (const std::string& word : args.words) {
    if (word.empty())
      throw CliError{kExitUsageError, "cannot transcribe an empty word"};
    results.push_back(pba::Transcribe(index, word, policy));
  }

  if (want_dot) {
    const std::string& word = args.words.front();
    pba::SymSeq syms = index.TokenizeWord(word);
    std::vector<pba::ChunkMatch> matches = index.MatchWord(syms);
    pba::Lattice lat = pba::BuildLattice(syms, matches, policy.mode);
    std::string dot = pba::ExportDot(lat, index);
    if (!args.dot_path.empty()) WriteOutput(args.dot_path, dot);
    if (args.format == "dot") {
      std::cout << dot;
      return kExitOk;
    }
  }

  if (args.format == "json")
    std::cout << pba::TranscriptionsJson(index, policy, results);
  else
    std::cout << pba::TranscriptionsText(index, results);
  return kExitOk;
}

struct EvalArgs {
  std::string lexicon_path;
  std::string mode = "smpa";
  std::string compare_mode;
  std::string tie_break = "freq_sum";
  int folds = 10;
  double test_fraction = 0.1;
  uint64_t seed = 0;
  int min_chunk_len = 2;
  bool weight_by_word_freq = false;
  int threads = 0;
  std::string format = "text";
  std::string output_path;
  bool skip_bad_lines = false;
};

int RunEval(const EvalArgs& args) {
  if (args.format != "text" && args.format != "json")
    throw CliError{kExitUsageError,
                   "unknown format '" + args.format +
                       "' (expected text or json)"};
  RequireMinChunkLen(args.min_chunk_len);
  if (args.folds < 1)
    throw CliError{kExitUsageError, "--folds must be >= 1"};
  if (!(args.test_fraction > 0.0 && args.test_fraction < 1.0))
    throw CliError{kExitUsageError,
                   "--test-frac must lie strictly between 0 and 1"};
  if (args.threads < 0)
    throw CliError{kExitUsageError, "--threads must be >= 0"};
  pba::Lexicon lexicon = LoadLexicon(args.lexicon_path, args.skip_bad_lines);

  pba::SplitSpec spec;
  spec.fold_count = args.folds;
  spec.test_fraction = args.test_fraction;
  spec.rng_seed = args.seed;

  pba::EvalOptions options;
  options.index.min_chunk_len = args.min_chunk_len;
  options.index.weight_by_word_freq = args.weight_by_word_freq;
  options.policy.mode = RequireMode(args.mode);
  options.policy.tie_break = RequireTieBreak(args.tie_break);
  options.threads = args.threads;

  pba::EvalReport report = pba::Evaluate(lexicon, spec, options);

  std::optional<pba::EvalComparison> comparison;
  if (!args.compare_mode.empty()) {
    pba::EvalOptions other = options;
    other.policy.mode = RequireMode(args.compare_mode);
    pba::EvalComparison cmp;
    cmp.other = pba::Evaluate(lexicon, spec, other);
    std::vector<double> wa, wb, pa, pb;
    for (const pba::FoldReport& fr : report.folds) {
      wa.push_back(fr.word_accuracy);
      pa.push_back(fr.phoneme_accuracy);
    }
    for (const pba::FoldReport& fr : cmp.other.folds) {
      wb.push_back(fr.word_accuracy);
      pb.push_back(fr.phoneme_accuracy);
    }
    cmp.word_accuracy_test = pba::PairedTTest(wa, wb);
    cmp.phoneme_accuracy_test = pba::PairedTTest(pa, pb);
    comparison = std::move(cmp);
  }

  const pba::EvalComparison* cmp_ptr = comparison ? &*comparison : nullptr;
  if (args.format == "json")
    WriteOutput(args.output_path, pba::EvalRunJson(report, cmp_ptr));
  else
    WriteOutput(args.output_path, pba::EvalRunText(report, cmp_ptr));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pba: grapheme-to-phoneme transcription by recombining "
               "overlapping chunks of known words"};
  app.require_subcommand(1);

  BuildIndexArgs build_args;
  CLI::App* build = app.add_subcommand(
      "build-index", "Build a chunk index cache from a lexicon");
  build->add_option("lexicon", build_args.lexicon_path, "Lexicon file (TSV)")
      ->required();
  build->add_option("-o,--output", build_args.output_path, "Index cache path")
      ->required();
  build->add_option("--min-chunk-len", build_args.min_chunk_len,
                    "Minimum chunk length (default 2)");
  build->add_flag("--weight-by-word-freq", build_args.weight_by_word_freq,
                  "Weight chunk frequencies by word frequency");
  build->add_flag("--skip-bad-lines", build_args.skip_bad_lines,
                  "Skip malformed lines instead of failing");

  TranscribeArgs tr_args;
  CLI::App* tr = app.add_subcommand("transcribe",
                                    "Transcribe words to phoneme strings");
  tr->add_option("words", tr_args.words, "Words to transcribe")->required();
  tr->add_option("-l,--lexicon", tr_args.lexicon_path, "Lexicon file (TSV)");
  tr->add_option("-i,--index", tr_args.index_path, "Index cache path");
  tr->add_option("-m,--mode", tr_args.mode,
                 "smpa | pronounce | overlap1 | headtail");
  tr->add_option("-k", tr_args.k, "Number of candidates (default 1)");
  tr->add_option("--tie-break", tr_args.tie_break,
                 "freq_sum | freq_min | none");
  tr->add_option("--min-chunk-len", tr_args.min_chunk_len,
                 "Minimum chunk length (default 2)");
  tr->add_flag("--weight-by-word-freq", tr_args.weight_by_word_freq,
               "Weight chunk frequencies by word frequency");
  tr->add_option("--format", tr_args.format, "text | json | dot");
  tr->add_option("--dot", tr_args.dot_path,
                 "Write the pronunciation lattice as DOT to this file");
  tr->add_flag("--skip-bad-lines", tr_args.skip_bad_lines,
               "Skip malformed lexicon lines instead of failing");

  EvalArgs ev_args;
  CLI::App* ev = app.add_subcommand(
      "eval", "Run the split/train/test evaluation protocol");
  ev->add_option("lexicon", ev_args.lexicon_path, "Lexicon file (TSV)")
      ->required();
  ev->add_option("-m,--mode", ev_args.mode,
                 "smpa | pronounce | overlap1 | headtail");
  ev->add_option("--compare-mode", ev_args.compare_mode,
                 "Also evaluate this mode and report a paired test");
  ev->add_option("--tie-break", ev_args.tie_break,
                 "freq_sum | freq_min | none");
  ev->add_option("--folds", ev_args.folds, "Number of folds (default 10)");
  ev->add_option("--test-frac", ev_args.test_fraction,
                 "Test fraction (default 0.1)");
  ev->add_option("--seed", ev_args.seed, "RNG seed (default 0)");
  ev->add_option("--min-chunk-len", ev_args.min_chunk_len,
                 "Minimum chunk length (default 2)");
  ev->add_flag("--weight-by-word-freq", ev_args.weight_by_word_freq,
               "Weight chunk frequencies by word frequency");
  ev->add_option("--threads", ev_args.threads,
                 "Worker threads (default: hardware)");
  ev->add_option("--format", ev_args.format, "text | json");
  ev->add_option("-o,--output", ev_args.output_path,
                 "Output file (default stdout)");
  ev->add_flag("--skip-bad-lines", ev_args.skip_bad_lines,
               "Skip malformed lines instead of failing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitOk;
    }
    std::cerr << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    if (build->parsed()) return RunBuildIndex(build_args);
    if (tr->parsed()) return RunTranscribe(tr_args);
    if (ev->parsed()) return RunEval(ev_args);
    std::cerr << "no subcommand given\n";
    return kExitUsageError;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const pba::LexiconError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const pba::IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const pba::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitDataError;
  }
}
