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

#ifndef PBA_LEXICON_H_
#define PBA_LEXICON_H_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pba/symbols.h"

namespace pba {

// A lexicon word: graphemic string and positionally aligned phonemic string
// of equal length. The null phoneme marks letters with no sound.
struct AlignedEntry {
  SymSeq graphemes;
  SymSeq phonemes;
  uint64_t word_freq = 1;

  int length() const { return static_cast<int>(graphemes.size()); }
};

// Input conventions, overridable per file by header lines (see file format
// in ParseLexicon below).
struct LexiconFormat {
  std::string null_symbol = "-";
  bool multichar = false;
};

class LexiconError : public std::runtime_error {
 public:
  explicit LexiconError(const std::string& what) : std::runtime_error(what) {}
};

// Immutable after construction; safe for concurrent reads.
class Lexicon {
 public:
  const std::vector<AlignedEntry>& entries() const { return entries_; }
  const SymbolTable& graphemes() const { return graphemes_; }
  const SymbolTable& phonemes() const { return phonemes_; }
  Sym null_sym() const { return null_sym_; }
  bool multichar() const { return multichar_; }
  bool alphabets_declared() const { return alphabets_declared_; }

  // Surface pronunciation: phoneme sequence with every null removed.
  SymSeq StripNulls(const SymSeq& phonemes) const;

  std::string WordString(const AlignedEntry& e) const {
    return JoinSyms(graphemes_, e.graphemes, "");
  }
  std::string PhonemeString(const SymSeq& seq) const {
    return JoinSyms(phonemes_, seq, multichar_ ? " " : "");
  }

  // Canonical text form; ParseLexicon(Serialize()) reproduces the lexicon.
  std::string Serialize() const;
  // SHA-256 of Serialize(); embedded in index caches to detect staleness.
  std::string ContentHash() const;

 private:
  friend class LexiconParser;

  std::vector<AlignedEntry> entries_;
  SymbolTable graphemes_;
  SymbolTable phonemes_;
  Sym null_sym_ = kNoSym;
  bool multichar_ = false;
  bool alphabets_declared_ = false;
};

SymSeq StripNulls(const SymSeq& phonemes, Sym null_sym);

struct ParseDiagnostic {
  enum class Kind { kRejectedLine, kWarning };
  Kind kind = Kind::kWarning;
  int line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

struct ParseResult {
  Lexicon lexicon;
  std::vector<ParseDiagnostic> diagnostics;

  bool HasRejectedLines() const;
  // Rejected-line diagnostics formatted one per line, for error streams.
  std::string RejectedLinesMessage(const std::string& source_name) const;
};

// Parses the tab-separated lexicon format:
//   word<TAB>aligned_phonemes[<TAB>frequency]
// Lines starting with '#' are comments. Header lines before the first entry
// may override conventions: `#null=<symbol>`, `#multichar=true`,
// `#graphemes=<tokens>`, `#phonemes=<tokens>` (declared alphabets).
// Phoneme symbols are single code points unless multichar, in which case the
// phoneme field is space-separated tokens. Malformed lines are rejected with
// a line-number diagnostic; homographs with conflicting pronunciations are
// kept and flagged as warnings. Throws LexiconError when no entry survives.
ParseResult ParseLexicon(std::istream& in, const LexiconFormat& format = {});
ParseResult ParseLexicon(const std::string& text,
                         const LexiconFormat& format = {});
// Throws LexiconError when the file cannot be opened.
ParseResult ParseLexiconFile(const std::string& path,
                             const LexiconFormat& format = {});

}  // namespace pba

#endif  // PBA_LEXICON_H_
