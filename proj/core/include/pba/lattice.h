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

#ifndef PBA_LATTICE_H_
#define PBA_LATTICE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pba/chunk_index.h"
#include "pba/symbols.h"

namespace pba {

// Recombination rule for the pronunciation lattice.
//  kSmpa:     arcs join any two strictly overlapping, phoneme-agreeing chunks
//             (unbounded overlap).
//  kOverlap1: arcs require an overlap of exactly one letter.
//  kHeadTail: arcs only join a prefix chunk to a suffix chunk, so traversals
//             use at most two chunks (or a single whole-word chunk).
enum class Mode { kSmpa, kOverlap1, kHeadTail };

// A chunk match placed on the unknown word.
struct LatticeNode {
  int start = 0;
  int end = 0;        // word[start, end) carries this realization
  SymSeq phonemes;    // aligned, length end - start
  uint64_t freq = 0;

  int length() const { return end - start; }
};

struct LatticeArc {
  int32_t from = 0;
  int32_t to = 0;
  int overlap = 0;  // shared letter positions, always >= 1
};

struct LatticeStats {
  uint64_t pair_checks = 0;
  uint64_t symbol_comparisons = 0;
  uint64_t arcs_created = 0;
};

// DAG over chunk matches with distinguished S/E vertices. S reaches every
// node whose span starts at 0; every node whose span ends at the word end
// reaches E. Paths from S to E are the candidate pronunciations; a lattice
// with no such path means silence.
struct Lattice {
  SymSeq word;
  int word_len = 0;
  Mode mode = Mode::kSmpa;
  std::vector<LatticeNode> nodes;  // canonical (start, end, phonemes) order
  std::vector<LatticeArc> arcs;    // sorted by (from, to)
  std::vector<int32_t> start_nodes;  // wired from S
  std::vector<int32_t> end_nodes;    // wired to E

  // CSR adjacency over arcs.
  std::vector<int32_t> adj_offsets;
  std::vector<std::pair<int32_t, int>> adj;  // (to, overlap)

  std::span<const std::pair<int32_t, int>> OutArcs(int32_t node) const {
    return {adj.data() + adj_offsets[node],
            adj.data() + adj_offsets[node + 1]};
  }
};

// Arcs require strict overlap (from.start < to.start < from.end < to.end,
// which excludes containment and mere abutment) plus symbol-by-symbol
// phonemic agreement on the shared positions; nulls participate like any
// other symbol.
Lattice BuildLattice(const SymSeq& word, std::span<const ChunkMatch> matches,
                     Mode mode, LatticeStats* stats = nullptr);

// Positional merge of a traversal's phonemes. The path must be a valid
// S->E traversal; any disagreement or gap indicates a lattice bug and throws
// std::logic_error.
SymSeq MergePathPhonemes(const Lattice& lattice,
                         std::span<const int32_t> path);

// Up to `limit` distinct S->E paths in ranked order (score, then frequency,
// then surface; see BestCandidates). Defined alongside the ranker.
std::vector<std::vector<int32_t>> EnumeratePaths(const Lattice& lattice,
                                                 const ChunkIndex& index,
                                                 size_t limit);

// DOT digraph with node labels `graphemes[start,end)/phonemes` and arc
// labels carrying the overlap size. Output ordering is deterministic.
std::string ExportDot(const Lattice& lattice, const ChunkIndex& index);

}  // namespace pba

#endif  // PBA_LATTICE_H_
