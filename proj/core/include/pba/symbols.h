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

#ifndef PBA_SYMBOLS_H_
#define PBA_SYMBOLS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pba {

// Interned symbol id. Graphemes and phonemes are opaque tokens; all internal
// processing works on ids.
using Sym = int32_t;
inline constexpr Sym kNoSym = -1;

using SymSeq = std::vector<Sym>;

// Insertion-ordered string interner. Ids are dense and start at 0.
class SymbolTable {
 public:
  Sym Intern(std::string_view token);
  // Returns kNoSym when absent.
  Sym Find(std::string_view token) const;
  bool Contains(std::string_view token) const { return Find(token) != kNoSym; }
  const std::string& Token(Sym id) const { return tokens_.at(id); }
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Sym> ids_;
};

// Splits text into one token per UTF-8 code point. Bytes that do not form a
// valid sequence become single-byte tokens.
std::vector<std::string> SplitUtf8(std::string_view text);

// Splits on runs of ASCII whitespace; never yields empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Renders a symbol sequence, joining tokens with `sep`.
std::string JoinSyms(const SymbolTable& table, const SymSeq& seq,
                     std::string_view sep);

}  // namespace pba

#endif  // PBA_SYMBOLS_H_
