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

#ifndef PBA_RANKER_H_
#define PBA_RANKER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pba/chunk_index.h"
#include "pba/lattice.h"
#include "pba/rational.h"
#include "pba/symbols.h"

namespace pba {

enum class TieBreak { kFreqSum, kFreqMin, kNone };

struct RankingPolicy {
  Mode mode = Mode::kSmpa;
  TieBreak tie_break = TieBreak::kFreqSum;
  int k = 1;  // candidates to return, >= 1
};

// Safety caps for the path search; generous enough that they only matter on
// degenerate inputs with astronomically many tied paths. Truncation is
// deterministic.
struct RankLimits {
  uint64_t max_pops = 200000;
  uint64_t max_pushes = 1000000;
  size_t max_group = 20000;
};

struct RankStats {
  uint64_t dp_transitions = 0;
  uint64_t heap_pops = 0;
  uint64_t heap_pushes = 0;
};

// One chunk of a candidate's decomposition, materialized so candidates stay
// meaningful after the lattice is gone.
struct CandidateChunk {
  int start = 0;
  int end = 0;
  SymSeq graphemes;
  SymSeq phonemes;
  uint64_t freq = 0;
};

// A candidate pronunciation: one surface form together with its best path.
struct Candidate {
  std::vector<int32_t> path;          // lattice node ids in traversal order
  std::vector<CandidateChunk> chunks;  // same order as path
  SymSeq merged;              // aligned phonemes, length == word length
  SymSeq surface;             // merged with nulls stripped
  Rational score;             // total_chunk_len / (chunk_count * word_len)
  int chunk_count = 0;
  int total_chunk_len = 0;
  uint64_t freq_key = 0;  // tie-break value under the policy
};

Rational ScoreFromTotals(int total_chunk_len, int chunk_count, int word_len);
Rational ScorePath(const Lattice& lattice, std::span<const int32_t> path);

// The layered dynamic program: entry [k] holds the maximum total chunk
// length over S->E paths visiting exactly k nodes, or -1 when no such path
// exists (index 0 is unused). The score optimum is max over k of
// [k] / (k * word_len).
std::vector<int> LayerMaxTotals(const Lattice& lattice,
                                RankStats* stats = nullptr);

// Ranked candidate pronunciations, best first. Candidates are distinct
// surface forms, each represented by its best path. Order: score
// (descending, compared exactly), then the frequency tie-break, then
// lexicographic surface string; residual ties fall back to a canonical path
// order so output is reproducible. In overlap-1 lattices every arc overlaps
// by one letter, so the score (l + k - 1)/(k * l) is strictly decreasing in
// the chunk count k and score order coincides with the fewest-chunks rule;
// in head-and-tail lattices paths hold at most two chunks and score order
// coincides with largest-overlap-first. An empty result means silence.
std::vector<Candidate> BestCandidates(const Lattice& lattice,
                                      const ChunkIndex& index,
                                      const RankingPolicy& policy,
                                      RankStats* stats = nullptr,
                                      const RankLimits& limits = {});

struct Transcription {
  std::string word;
  bool silence = true;
  std::vector<Candidate> candidates;  // empty iff silence

  const Candidate* best() const {
    return candidates.empty() ? nullptr : &candidates.front();
  }
};

struct TranscribeStats {
  LookupStats lookup;
  LatticeStats lattice;
  RankStats rank;
};

// match -> build lattice -> rank. Symbols outside the grapheme alphabet
// match nothing (usually silence).
Transcription Transcribe(const ChunkIndex& index, const std::string& word,
                         const RankingPolicy& policy,
                         TranscribeStats* stats = nullptr,
                         const RankLimits& limits = {});
Transcription TranscribeSyms(const ChunkIndex& index, const SymSeq& word,
                             const RankingPolicy& policy,
                             TranscribeStats* stats = nullptr,
                             const RankLimits& limits = {});

// Canonical mode labels: smpa, overlap1, headtail. Parsing also accepts
// "pronounce" as an alias for overlap1.
const char* ModeName(Mode mode);
std::optional<Mode> ParseModeName(const std::string& name);
const char* TieBreakName(TieBreak tb);
std::optional<TieBreak> ParseTieBreakName(const std::string& name);

}  // namespace pba

#endif  // PBA_RANKER_H_
