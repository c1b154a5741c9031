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

#include "pba/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

namespace pba {

namespace {

// splitmix64; pinned here so splits are reproducible across platforms and
// standard library versions.
uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Unbiased bounded draw (rejection sampling on the top of the range).
uint64_t DrawBelow(uint64_t& state, uint64_t bound) {
  const uint64_t limit = bound * (UINT64_MAX / bound);
  uint64_t v;
  do {
    v = SplitMix64(state);
  } while (v >= limit);
  return v % bound;
}

}  // namespace

std::vector<Split> GenerateSplits(size_t n, const SplitSpec& spec) {
  if (spec.fold_count < 1) throw EvalError("fold_count must be >= 1");
  if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
    throw EvalError("test_fraction must lie strictly between 0 and 1");
  if (n == 0) throw EvalError("cannot split an empty lexicon");
  const auto test_size =
      static_cast<size_t>(std::llround(spec.test_fraction * double(n)));
  if (test_size == 0)
    throw EvalError("lexicon too small: rounded test size is 0");
  if (test_size >= n)
    throw EvalError("lexicon too small: empty training set");

  std::vector<Split> splits;
  splits.reserve(spec.fold_count);
  for (int fold = 0; fold < spec.fold_count; ++fold) {
    uint64_t state =
        spec.rng_seed ^ ((uint64_t(fold) + 1) * 0xD1B54A32D192ED03ULL);
    std::vector<uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (size_t i = n - 1; i > 0; --i) {
      size_t j = static_cast<size_t>(DrawBelow(state, i + 1));
      std::swap(ids[i], ids[j]);
    }
    Split s;
    s.test.assign(ids.begin(), ids.begin() + test_size);
    s.train.assign(ids.begin() + test_size, ids.end());
    std::sort(s.test.begin(), s.test.end());
    std::sort(s.train.begin(), s.train.end());
    splits.push_back(std::move(s));
  }
  return splits;
}

std::vector<Split> GenerateSplits(const Lexicon& lexicon,
                                  const SplitSpec& spec) {
  return GenerateSplits(lexicon.entries().size(), spec);
}

AlignCounts AlignPhonemes(const SymSeq& hypothesis, const SymSeq& reference) {
  const int h = static_cast<int>(hypothesis.size());
  const int r = static_cast<int>(reference.size());
  // Cell = (cost, -matches): minimum cost first, then maximum matches, which
  // makes the per-category counts implementation-independent.
  using Cell = std::pair<int32_t, int32_t>;
  std::vector<Cell> prev(r + 1), cur(r + 1);
  for (int j = 0; j <= r; ++j) prev[j] = {j, 0};
  for (int i = 1; i <= h; ++i) {
    cur[0] = {i, 0};
    for (int j = 1; j <= r; ++j) {
      const bool eq = hypothesis[i - 1] == reference[j - 1];
      Cell best = {prev[j - 1].first + (eq ? 0 : 1),
                   prev[j - 1].second - (eq ? 1 : 0)};
      best = std::min(best, Cell{prev[j].first + 1, prev[j].second});
      best = std::min(best, Cell{cur[j - 1].first + 1, cur[j - 1].second});
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const int64_t cost = prev[r].first;
  const int64_t matches = -prev[r].second;
  AlignCounts c;
  c.correct = matches;
  c.substitutions = (h + r - 2 * matches) - cost;
  c.deletions = r - matches - c.substitutions;
  c.insertions = h - matches - c.substitutions;
  return c;
}

int64_t EditCost(const AlignCounts& c) {
  return c.substitutions + c.insertions + c.deletions;
}

namespace {

struct WordOutcome {
  bool silent = true;
  bool correct = false;
  AlignCounts counts;
  int64_t ref_len = 0;
};

double Mean(const std::vector<double>& xs) {
  return xs.empty() ? 0.0
                    : std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

// Regularized incomplete beta via Lentz's continued fraction.
double BetaCf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-12;
  constexpr double kTiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double RegIncBeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log(1.0 - x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * BetaCf(a, b, x) / a;
  return 1.0 - bt * BetaCf(b, a, 1.0 - x) / b;
}

}  // namespace

EvalReport Evaluate(const Lexicon& lexicon, const SplitSpec& spec,
                    const EvalOptions& options) {
  const std::vector<Split> splits = GenerateSplits(lexicon, spec);

  // Reference pronunciations per word over the whole lexicon; a hypothesis
  // matching any of them counts (homographs).
  std::map<SymSeq, std::vector<SymSeq>> references;
  for (const AlignedEntry& e : lexicon.entries()) {
    auto& refs = references[e.graphemes];
    SymSeq surface = lexicon.StripNulls(e.phonemes);
    if (std::find(refs.begin(), refs.end(), surface) == refs.end())
      refs.push_back(std::move(surface));
  }
  for (auto& [word, refs] : references) std::sort(refs.begin(), refs.end());

  EvalReport report;
  report.mode = ModeName(options.policy.mode);
  report.tie_break = TieBreakName(options.policy.tie_break);
  report.min_chunk_len = options.index.min_chunk_len;
  report.weight_by_word_freq = options.index.weight_by_word_freq;
  report.fold_count = spec.fold_count;
  report.test_fraction = spec.test_fraction;
  report.rng_seed = spec.rng_seed;
  report.lexicon_entries = lexicon.entries().size();

  unsigned hw = std::thread::hardware_concurrency();
  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(hw ? hw : 1);

  RankingPolicy policy = options.policy;
  policy.k = 1;

  for (size_t f = 0; f < splits.size(); ++f) {
    const Split& split = splits[f];
    ChunkIndex index = ChunkIndex::Build(lexicon, split.train, options.index);

    std::vector<WordOutcome> outcomes(split.test.size());
    auto run_range = [&](size_t lo, size_t hi) {
      for (size_t i = lo; i < hi; ++i) {
        const AlignedEntry& entry = lexicon.entries()[split.test[i]];
        WordOutcome& out = outcomes[i];
        Transcription t = TranscribeSyms(index, entry.graphemes, policy);
        const SymSeq own_surface = lexicon.StripNulls(entry.phonemes);
        if (t.silence) {
          out.silent = true;
          out.correct = false;
          out.ref_len = static_cast<int64_t>(own_surface.size());
          out.counts.deletions = out.ref_len;
          continue;
        }
        out.silent = false;
        const SymSeq& hyp = t.candidates.front().surface;
        const std::vector<SymSeq>& refs = references.at(entry.graphemes);
        bool have = false;
        AlignCounts best_counts;
        int64_t best_ref_len = 0;
        for (const SymSeq& ref : refs) {
          AlignCounts c = AlignPhonemes(hyp, ref);
          if (!have || EditCost(c) < EditCost(best_counts) ||
              (EditCost(c) == EditCost(best_counts) &&
               c.correct > best_counts.correct)) {
            have = true;
            best_counts = c;
            best_ref_len = static_cast<int64_t>(ref.size());
          }
        }
        out.counts = best_counts;
        out.ref_len = best_ref_len;
        out.correct = EditCost(best_counts) == 0;
      }
    };

    if (threads <= 1 || outcomes.size() < 2) {
      run_range(0, outcomes.size());
    } else {
      size_t n = outcomes.size();
      size_t workers = std::min<size_t>(threads, n);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (size_t w = 0; w < workers; ++w) {
        size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back(run_range, lo, hi);
      }
      for (std::thread& th : pool) th.join();
    }

    FoldReport fr;
    fr.fold = static_cast<int>(f);
    fr.train_size = split.train.size();
    fr.test_size = split.test.size();
    for (const WordOutcome& o : outcomes) {
      fr.correct_words += o.correct ? 1 : 0;
      fr.silent_words += o.silent ? 1 : 0;
      fr.ref_phonemes += o.ref_len;
      fr.correct_phonemes += o.counts.correct;
      fr.substitutions += o.counts.substitutions;
      fr.insertions += o.counts.insertions;
      fr.deletions += o.counts.deletions;
      if (!o.silent) {
        fr.ref_phonemes_nonsilent += o.ref_len;
        fr.correct_phonemes_nonsilent += o.counts.correct;
      }
    }
    fr.word_accuracy = fr.test_size ? double(fr.correct_words) / fr.test_size
                                    : 0.0;
    fr.phoneme_accuracy =
        fr.ref_phonemes ? double(fr.correct_phonemes) / fr.ref_phonemes : 0.0;
    if (fr.ref_phonemes_nonsilent > 0)
      fr.phoneme_accuracy_nonsilent =
          double(fr.correct_phonemes_nonsilent) / fr.ref_phonemes_nonsilent;
    fr.silence_rate =
        fr.test_size ? double(fr.silent_words) / fr.test_size : 0.0;
    report.folds.push_back(fr);
  }

  std::vector<double> wa, pa, sr, pan;
  for (const FoldReport& fr : report.folds) {
    wa.push_back(fr.word_accuracy);
    pa.push_back(fr.phoneme_accuracy);
    sr.push_back(fr.silence_rate);
    if (fr.phoneme_accuracy_nonsilent)
      pan.push_back(*fr.phoneme_accuracy_nonsilent);
  }
  report.word_accuracy = Mean(wa);
  report.phoneme_accuracy = Mean(pa);
  report.silence_rate = Mean(sr);
  if (!pan.empty()) report.phoneme_accuracy_nonsilent = Mean(pan);
  return report;
}

PairedTTestResult PairedTTest(std::span<const double> a,
                              std::span<const double> b) {
  if (a.size() != b.size())
    throw EvalError("paired test requires equal-length samples");
  if (a.size() < 2) throw EvalError("paired test requires at least 2 pairs");
  const size_t n = a.size();
  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  double mean = std::accumulate(d.begin(), d.end(), 0.0) / double(n);
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / double(n - 1));

  PairedTTestResult r;
  r.mean_diff = mean;
  r.df = static_cast<int>(n - 1);
  if (sd == 0.0) {
    r.t = mean == 0.0 ? 0.0
                      : std::copysign(std::numeric_limits<double>::infinity(),
                                      mean);
    r.p_value = mean == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = mean / (sd / std::sqrt(double(n)));
  double df = double(r.df);
  r.p_value = RegIncBeta(df / 2.0, 0.5, df / (df + r.t * r.t));
  return r;
}

}  // namespace pba
