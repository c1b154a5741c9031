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

#ifndef PBA_CHUNK_INDEX_H_
#define PBA_CHUNK_INDEX_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pba/lexicon.h"
#include "pba/symbols.h"

namespace pba {

// An aligned (graphemic substring, phonemic substring) pair with its
// occurrence count; the unit of recombination.
struct Chunk {
  SymSeq graphemic;
  SymSeq phonemic;
  uint64_t freq = 1;
};

// Every contiguous aligned substring pair of length >= min_chunk_len, one
// Chunk per occurrence (freq 1 each). A whole word shorter than
// min_chunk_len yields the single whole-word chunk, so short known words
// stay pronounceable.
std::vector<Chunk> ExtractChunks(const AlignedEntry& entry, int min_chunk_len);

struct IndexOptions {
  int min_chunk_len = 2;
  // When set, each occurrence contributes the entry's word_freq instead
  // of 1.
  bool weight_by_word_freq = false;
};

// One phonemic realization of an indexed graphemic substring.
struct Realization {
  SymSeq phonemes;
  uint64_t freq = 0;
};

// A chunk laid on the unknown word: word[start, end) carries `phonemes`.
struct ChunkMatch {
  int start = 0;
  int end = 0;
  SymSeq phonemes;
  uint64_t freq = 0;
};

// Operation counters for the complexity contract: lookups must be linear in
// the query length, measured in trie transitions rather than wall clock.
struct LookupStats {
  uint64_t transitions = 0;
};

class IndexError : public std::runtime_error {
 public:
  explicit IndexError(const std::string& what) : std::runtime_error(what) {}
};

// Trie over every indexed graphemic substring; each node holds the phonemic
// realizations of its path with aggregated frequencies. Immutable after
// Build/Load; concurrent reads are safe.
class ChunkIndex {
 public:
  static ChunkIndex Build(const Lexicon& lexicon, const IndexOptions& opts = {});
  // Builds over a subset of entries (e.g. the training side of a fold).
  static ChunkIndex Build(const Lexicon& lexicon,
                          std::span<const uint32_t> entry_ids,
                          const IndexOptions& opts = {});

  // Exact-substring lookup; empty when the string is not indexed.
  std::vector<Realization> Lookup(const SymSeq& graphemes,
                                  LookupStats* stats = nullptr) const;
  std::vector<Realization> Lookup(const std::string& graphemes,
                                  LookupStats* stats = nullptr) const;

  // Every indexed realization of every span of the word, ordered by
  // (start, end, realization). Unknown symbols match nothing.
  std::vector<ChunkMatch> MatchWord(const SymSeq& word,
                                    LookupStats* stats = nullptr) const;

  // Word string -> grapheme ids; unknown code points map to kNoSym.
  SymSeq TokenizeWord(const std::string& word) const;

  const SymbolTable& graphemes() const { return graphemes_; }
  const SymbolTable& phonemes() const { return phonemes_; }
  Sym null_sym() const { return null_sym_; }
  bool multichar() const { return multichar_; }
  int min_chunk_len() const { return opts_.min_chunk_len; }
  bool weight_by_word_freq() const { return opts_.weight_by_word_freq; }
  const std::string& lexicon_hash() const { return lexicon_hash_; }
  uint64_t distinct_chunks() const { return distinct_chunks_; }
  uint64_t chunk_occurrences() const { return chunk_occurrences_; }

  std::string RenderGraphemes(const SymSeq& seq) const {
    return JoinSyms(graphemes_, seq, "");
  }
  std::string RenderPhonemes(const SymSeq& seq) const {
    return JoinSyms(phonemes_, seq, multichar_ ? " " : "");
  }

  // Versioned text cache embedding the source lexicon's content hash.
  // Save -> Load -> Save is byte-identical.
  void Save(std::ostream& out) const;
  void SaveToFile(const std::string& path) const;
  static ChunkIndex Load(std::istream& in);
  static ChunkIndex LoadFromFile(const std::string& path);

 private:
  struct Node {
    std::vector<std::pair<Sym, int32_t>> children;  // sorted by symbol
    std::vector<Realization> realizations;          // sorted by phonemes
  };

  ChunkIndex() = default;
  int32_t FindChild(int32_t node, Sym sym) const;
  int32_t FindOrAddChild(int32_t node, Sym sym);
  void AddRealization(int32_t node, const SymSeq& phonemes, int start, int len,
                      uint64_t weight);
  void InsertEntry(const AlignedEntry& entry, uint64_t weight);
  void FinalizeCounts();

  std::vector<Node> nodes_{1};  // 0 is the root
  IndexOptions opts_;
  SymbolTable graphemes_;
  SymbolTable phonemes_;
  Sym null_sym_ = kNoSym;
  bool multichar_ = false;
  std::string lexicon_hash_;
  uint64_t distinct_chunks_ = 0;
  uint64_t chunk_occurrences_ = 0;
};

}  // namespace pba

#endif  // PBA_CHUNK_INDEX_H_
