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

#include "pba/chunk_index.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace pba {

std::vector<Chunk> ExtractChunks(const AlignedEntry& entry,
                                 int min_chunk_len) {
  std::vector<Chunk> out;
  const int len = entry.length();
  if (len == 0) return out;
  if (len < min_chunk_len) {
    out.push_back({entry.graphemes, entry.phonemes, 1});
    return out;
  }
  for (int s = 0; s < len; ++s) {
    for (int e = s + min_chunk_len; e <= len; ++e) {
      Chunk c;
      c.graphemic.assign(entry.graphemes.begin() + s,
                         entry.graphemes.begin() + e);
      c.phonemic.assign(entry.phonemes.begin() + s,
                        entry.phonemes.begin() + e);
      c.freq = 1;
      out.push_back(std::move(c));
    }
  }
  return out;
}

int32_t ChunkIndex::FindChild(int32_t node, Sym sym) const {
  const auto& ch = nodes_[node].children;
  auto it = std::lower_bound(
      ch.begin(), ch.end(), sym,
      [](const std::pair<Sym, int32_t>& p, Sym s) { return p.first < s; });
  if (it == ch.end() || it->first != sym) return -1;
  return it->second;
}

int32_t ChunkIndex::FindOrAddChild(int32_t node, Sym sym) {
  auto& ch = nodes_[node].children;
  auto it = std::lower_bound(
      ch.begin(), ch.end(), sym,
      [](const std::pair<Sym, int32_t>& p, Sym s) { return p.first < s; });
  if (it != ch.end() && it->first == sym) return it->second;
  int32_t id = static_cast<int32_t>(nodes_.size());
  nodes_[node].children.insert(it, {sym, id});
  nodes_.emplace_back();
  return id;
}

void ChunkIndex::AddRealization(int32_t node, const SymSeq& phonemes,
                                int start, int len, uint64_t weight) {
  auto& reals = nodes_[node].realizations;
  for (Realization& r : reals) {
    if (static_cast<int>(r.phonemes.size()) == len &&
        std::equal(r.phonemes.begin(), r.phonemes.end(),
                   phonemes.begin() + start)) {
      r.freq += weight;
      ++chunk_occurrences_;
      return;
    }
  }
  Realization r;
  r.phonemes.assign(phonemes.begin() + start, phonemes.begin() + start + len);
  r.freq = weight;
  reals.push_back(std::move(r));
  ++distinct_chunks_;
  ++chunk_occurrences_;
}

void ChunkIndex::InsertEntry(const AlignedEntry& entry, uint64_t weight) {
  const int len = entry.length();
  if (len == 0) return;
  if (len < opts_.min_chunk_len) {
    int32_t node = 0;
    for (int i = 0; i < len; ++i) node = FindOrAddChild(node, entry.graphemes[i]);
    AddRealization(node, entry.phonemes, 0, len, weight);
    return;
  }
  for (int s = 0; s < len; ++s) {
    int32_t node = 0;
    for (int e = s + 1; e <= len; ++e) {
      node = FindOrAddChild(node, entry.graphemes[e - 1]);
      if (e - s >= opts_.min_chunk_len)
        AddRealization(node, entry.phonemes, s, e - s, weight);
    }
  }
}

void ChunkIndex::FinalizeCounts() {
  for (Node& n : nodes_) {
    std::sort(n.realizations.begin(), n.realizations.end(),
              [](const Realization& a, const Realization& b) {
                return a.phonemes < b.phonemes;
              });
  }
}

ChunkIndex ChunkIndex::Build(const Lexicon& lexicon, const IndexOptions& opts) {
  std::vector<uint32_t> ids(lexicon.entries().size());
  std::iota(ids.begin(), ids.end(), 0);
  return Build(lexicon, ids, opts);
}

ChunkIndex ChunkIndex::Build(const Lexicon& lexicon,
                             std::span<const uint32_t> entry_ids,
                             const IndexOptions& opts) {
  if (entry_ids.empty()) throw IndexError("cannot build index: no entries");
  if (opts.min_chunk_len < 1)
    throw IndexError("min_chunk_len must be positive");
  ChunkIndex index;
  index.opts_ = opts;
  index.graphemes_ = lexicon.graphemes();
  index.phonemes_ = lexicon.phonemes();
  index.null_sym_ = lexicon.null_sym();
  index.multichar_ = lexicon.multichar();
  index.lexicon_hash_ = lexicon.ContentHash();
  for (uint32_t id : entry_ids) {
    const AlignedEntry& e = lexicon.entries().at(id);
    index.InsertEntry(e, opts.weight_by_word_freq ? e.word_freq : 1);
  }
  index.FinalizeCounts();
  return index;
}

std::vector<Realization> ChunkIndex::Lookup(const SymSeq& graphemes,
                                            LookupStats* stats) const {
  int32_t node = 0;
  for (Sym sym : graphemes) {
    if (stats) ++stats->transitions;
    node = FindChild(node, sym);
    if (node < 0) return {};
  }
  return nodes_[node].realizations;
}

std::vector<Realization> ChunkIndex::Lookup(const std::string& graphemes,
                                            LookupStats* stats) const {
  SymSeq seq;
  for (const std::string& t : SplitUtf8(graphemes)) {
    Sym s = graphemes_.Find(t);
    if (s == kNoSym) return {};
    seq.push_back(s);
  }
  return Lookup(seq, stats);
}

std::vector<ChunkMatch> ChunkIndex::MatchWord(const SymSeq& word,
                                              LookupStats* stats) const {
  std::vector<ChunkMatch> out;
  const int len = static_cast<int>(word.size());
  for (int s = 0; s < len; ++s) {
    int32_t node = 0;
    for (int e = s + 1; e <= len; ++e) {
      if (stats) ++stats->transitions;
      node = FindChild(node, word[e - 1]);
      if (node < 0) break;
      for (const Realization& r : nodes_[node].realizations)
        out.push_back({s, e, r.phonemes, r.freq});
    }
  }
  return out;
}

SymSeq ChunkIndex::TokenizeWord(const std::string& word) const {
  SymSeq seq;
  for (const std::string& t : SplitUtf8(word)) seq.push_back(graphemes_.Find(t));
  return seq;
}

namespace {

constexpr char kMagic[] = "pba-chunk-index";
constexpr int kVersion = 1;

void WriteTable(std::ostream& out, const char* name, const SymbolTable& t) {
  out << name << ' ' << t.size() << '\n';
  for (const std::string& tok : t.tokens()) out << tok << '\n';
}

}  // namespace

void ChunkIndex::Save(std::ostream& out) const {
  out << kMagic << ' ' << kVersion << '\n';
  out << "hash " << lexicon_hash_ << '\n';
  out << "null " << phonemes_.Token(null_sym_) << '\n';
  out << "multichar " << (multichar_ ? 1 : 0) << '\n';
  out << "min-chunk-len " << opts_.min_chunk_len << '\n';
  out << "weighted " << (opts_.weight_by_word_freq ? 1 : 0) << '\n';
  WriteTable(out, "graphemes", graphemes_);
  WriteTable(out, "phonemes", phonemes_);
  out << "chunks " << distinct_chunks_ << ' ' << chunk_occurrences_ << '\n';
  // Depth-first in sorted child order, so output is canonical.
  std::vector<std::pair<int32_t, size_t>> stack;
  SymSeq path;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    auto& [node, next_child] = stack.back();
    if (next_child == 0) {
      for (const Realization& r : nodes_[node].realizations) {
        for (size_t i = 0; i < path.size(); ++i)
          out << (i ? " " : "") << graphemes_.Token(path[i]);
        out << '\t';
        for (size_t i = 0; i < r.phonemes.size(); ++i)
          out << (i ? " " : "") << phonemes_.Token(r.phonemes[i]);
        out << '\t' << r.freq << '\n';
      }
    }
    if (next_child < nodes_[node].children.size()) {
      auto [sym, child] = nodes_[node].children[next_child];
      ++next_child;
      path.push_back(sym);
      stack.push_back({child, 0});
    } else {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
    }
  }
}

void ChunkIndex::SaveToFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IndexError("cannot write index file: " + path);
  Save(out);
  if (!out) throw IndexError("error while writing index file: " + path);
}

ChunkIndex ChunkIndex::Load(std::istream& in) {
  auto fail = [](const std::string& msg) -> void {
    throw IndexError("invalid index cache: " + msg);
  };
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) fail("bad magic");
  if (version != kVersion)
    fail("unsupported version " + std::to_string(version));

  ChunkIndex index;
  std::string key, null_token;
  int multichar = 0, weighted = 0;
  if (!(in >> key >> index.lexicon_hash_) || key != "hash") fail("hash line");
  if (!(in >> key >> null_token) || key != "null") fail("null line");
  if (!(in >> key >> multichar) || key != "multichar") fail("multichar line");
  if (!(in >> key >> index.opts_.min_chunk_len) || key != "min-chunk-len")
    fail("min-chunk-len line");
  if (!(in >> key >> weighted) || key != "weighted") fail("weighted line");
  index.multichar_ = multichar != 0;
  index.opts_.weight_by_word_freq = weighted != 0;

  auto read_table = [&](const char* name, SymbolTable* table) {
    int n = 0;
    if (!(in >> key >> n) || key != name) fail(std::string(name) + " line");
    std::string line;
    std::getline(in, line);  // consume end of count line
    for (int i = 0; i < n; ++i) {
      if (!std::getline(in, line)) fail("truncated symbol table");
      table->Intern(line);
    }
  };
  read_table("graphemes", &index.graphemes_);
  read_table("phonemes", &index.phonemes_);
  index.null_sym_ = index.phonemes_.Find(null_token);
  if (index.null_sym_ == kNoSym) fail("null symbol not in phoneme table");

  uint64_t distinct = 0, occurrences = 0;
  if (!(in >> key >> distinct >> occurrences) || key != "chunks")
    fail("chunks line");
  std::string line;
  std::getline(in, line);
  for (uint64_t i = 0; i < distinct; ++i) {
    if (!std::getline(in, line)) fail("truncated chunk table");
    size_t t1 = line.find('\t');
    size_t t2 = line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      fail("malformed chunk row");
    SymSeq g, p;
    for (const std::string& tok : SplitWhitespace(line.substr(0, t1))) {
      Sym s = index.graphemes_.Find(tok);
      if (s == kNoSym) fail("grapheme '" + tok + "' not in table");
      g.push_back(s);
    }
    for (const std::string& tok :
         SplitWhitespace(line.substr(t1 + 1, t2 - t1 - 1))) {
      Sym s = index.phonemes_.Find(tok);
      if (s == kNoSym) fail("phoneme '" + tok + "' not in table");
      p.push_back(s);
    }
    uint64_t freq = 0;
    try {
      freq = std::stoull(line.substr(t2 + 1));
    } catch (const std::exception&) {
      fail("malformed chunk frequency");
    }
    if (g.empty() || g.size() != p.size()) fail("malformed chunk row");
    int32_t node = 0;
    for (Sym sym : g) node = index.FindOrAddChild(node, sym);
    index.nodes_[node].realizations.push_back({std::move(p), freq});
    ++index.distinct_chunks_;
  }
  index.chunk_occurrences_ = occurrences;
  index.FinalizeCounts();
  return index;
}

ChunkIndex ChunkIndex::LoadFromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError("cannot open index file: " + path);
  return Load(in);
}

}  // namespace pba
