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

#ifndef PBA_EVAL_H_
#define PBA_EVAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pba/chunk_index.h"
#include "pba/lexicon.h"
#include "pba/ranker.h"

namespace pba {

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

struct SplitSpec {
  int fold_count = 10;
  double test_fraction = 0.1;
  uint64_t rng_seed = 0;
};

// One train/test partition of entry indices. Pairs are disjoint; folds are
// derived deterministically from the seed.
struct Split {
  std::vector<uint32_t> train;
  std::vector<uint32_t> test;
};

// |test| == round(test_fraction * n) per fold. Throws EvalError when the
// rounded test size is 0 or leaves an empty training set.
std::vector<Split> GenerateSplits(size_t n, const SplitSpec& spec);
std::vector<Split> GenerateSplits(const Lexicon& lexicon,
                                  const SplitSpec& spec);

struct AlignCounts {
  int64_t correct = 0;
  int64_t substitutions = 0;
  int64_t insertions = 0;
  int64_t deletions = 0;
};

// Minimum-edit-cost alignment with unit substitution/insertion/deletion
// costs; among minimum-cost alignments the one with the most matches is
// chosen, which pins the counts deterministically. correct ==
// len(reference) - substitutions - deletions. Inputs are surface phoneme
// sequences (nulls already stripped).
AlignCounts AlignPhonemes(const SymSeq& hypothesis, const SymSeq& reference);
int64_t EditCost(const AlignCounts& c);

struct FoldReport {
  int fold = 0;
  uint64_t train_size = 0;
  uint64_t test_size = 0;
  uint64_t correct_words = 0;
  uint64_t silent_words = 0;
  uint64_t ref_phonemes = 0;
  uint64_t correct_phonemes = 0;
  uint64_t substitutions = 0;
  uint64_t insertions = 0;
  uint64_t deletions = 0;
  uint64_t ref_phonemes_nonsilent = 0;
  uint64_t correct_phonemes_nonsilent = 0;
  double word_accuracy = 0.0;
  double phoneme_accuracy = 0.0;  // silence counted as all-wrong
  std::optional<double> phoneme_accuracy_nonsilent;  // silence excluded
  double silence_rate = 0.0;
};

struct EvalReport {
  // Configuration echo.
  std::string mode;
  std::string tie_break;
  int min_chunk_len = 2;
  bool weight_by_word_freq = false;
  int fold_count = 0;
  double test_fraction = 0.0;
  uint64_t rng_seed = 0;
  uint64_t lexicon_entries = 0;

  std::vector<FoldReport> folds;

  // Unweighted means over folds.
  double word_accuracy = 0.0;
  double phoneme_accuracy = 0.0;
  std::optional<double> phoneme_accuracy_nonsilent;
  double silence_rate = 0.0;
};

struct EvalOptions {
  IndexOptions index;
  RankingPolicy policy;
  int threads = 0;  // 0 = hardware concurrency
};

// The fold protocol: per fold, index the training side, transcribe every
// test word, and score it. A hypothesis counts as a correct word when it
// exactly matches any pronunciation listed for that word in the lexicon
// (homographs); phoneme counts align the hypothesis against the listed
// pronunciation with the smallest edit cost. The report is deterministic in
// (lexicon, spec, options) regardless of thread count.
EvalReport Evaluate(const Lexicon& lexicon, const SplitSpec& spec,
                    const EvalOptions& options);

struct PairedTTestResult {
  double mean_diff = 0.0;
  double t = 0.0;
  int df = 0;
  double p_value = 1.0;  // two-tailed
};

// Two-tailed paired test over per-fold metric pairs. Convenience utility,
// not part of the scored protocol.
PairedTTestResult PairedTTest(std::span<const double> a,
                              std::span<const double> b);

}  // namespace pba

#endif  // PBA_EVAL_H_
