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

// Shared helpers for the unit and acceptance suites: fixture lexicons,
// deterministic generators, and brute-force oracles kept independent of the
// implementation paths they check.

#ifndef PBA_TESTS_TEST_SUPPORT_H_
#define PBA_TESTS_TEST_SUPPORT_H_

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pba/lattice.h"
#include "pba/lexicon.h"
#include "pba/rational.h"
#include "pba/symbols.h"

namespace pba::test {

// The five-entry example lexicon: hot, hose, slope, slop, shop.
inline std::string Fig3LexiconText() {
  return "hot\th@t\n"
         "hose\thOz-\n"
         "slope\tslOp-\n"
         "slop\tsl@p\n"
         "shop\tS-@p\n";
}

inline Lexicon Fig3Lexicon() {
  return ParseLexicon(Fig3LexiconText()).lexicon;
}

// Deterministic PRNG for property tests (splitmix64).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi].
  int Int(int lo, int hi) {
    return lo + static_cast<int>(Next() % uint64_t(hi - lo + 1));
  }
  bool Chance(double p) { return double(Next() >> 11) / double(1ULL << 53) < p; }

 private:
  uint64_t state_;
};

struct MicroParams {
  int max_entries = 8;
  int max_word_len = 6;
  int alphabet = 4;          // letters a.., at most 5
  int phoneme_alphabet = 3;  // symbols p.., plus the null
  double null_prob = 0.15;
};

// Random small lexicon in canonical text form (entries may repeat words with
// different pronunciations; word_freq occasionally set).
inline std::string RandomMicroLexiconText(Rng& rng, const MicroParams& p = {}) {
  int n = rng.Int(1, p.max_entries);
  std::ostringstream out;
  bool with_freq = rng.Chance(0.3);
  for (int i = 0; i < n; ++i) {
    int len = rng.Int(1, p.max_word_len);
    std::string word, phon;
    for (int j = 0; j < len; ++j) {
      word.push_back(static_cast<char>('a' + rng.Int(0, p.alphabet - 1)));
      if (rng.Chance(p.null_prob))
        phon.push_back('-');
      else
        phon.push_back(static_cast<char>('p' + rng.Int(0, p.phoneme_alphabet - 1)));
    }
    out << word << '\t' << phon;
    if (with_freq) out << '\t' << rng.Int(1, 5);
    out << '\n';
  }
  return out.str();
}

inline SymSeq WordSyms(const Lexicon& lex, const std::string& word) {
  SymSeq out;
  for (const std::string& t : SplitUtf8(word))
    out.push_back(lex.graphemes().Find(t));
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracles. These scan lexicon entries directly and never touch
// ChunkIndex, Lattice or the ranker.

struct BruteMatch {
  int start;
  int end;
  SymSeq phonemes;
  uint64_t freq;

  friend bool operator<(const BruteMatch& a, const BruteMatch& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    return a.phonemes < b.phonemes;
  }
  friend bool operator==(const BruteMatch& a, const BruteMatch& b) {
    return a.start == b.start && a.end == b.end && a.phonemes == b.phonemes &&
           a.freq == b.freq;
  }
};

// Double loop over all substrings of all entries: every (span, realization)
// of `word` that some entry substring realizes, with occurrence counts.
inline std::vector<BruteMatch> BruteMatches(const Lexicon& lex,
                                            const SymSeq& word,
                                            int min_chunk_len,
                                            bool weight_by_word_freq = false) {
  std::map<std::pair<std::pair<int, int>, SymSeq>, uint64_t> acc;
  const int wl = static_cast<int>(word.size());
  for (int s = 0; s < wl; ++s) {
    for (int e = s + 1; e <= wl; ++e) {
      const int len = e - s;
      for (const AlignedEntry& entry : lex.entries()) {
        const int el = entry.length();
        bool short_whole = el < min_chunk_len && len == el;
        if (len < min_chunk_len && !short_whole) continue;
        for (int t = 0; t + len <= el; ++t) {
          if (el < min_chunk_len && !(t == 0 && len == el)) continue;
          bool match = true;
          for (int i = 0; i < len; ++i) {
            if (entry.graphemes[t + i] != word[s + i]) {
              match = false;
              break;
            }
          }
          if (!match) continue;
          SymSeq ph(entry.phonemes.begin() + t, entry.phonemes.begin() + t + len);
          acc[{{s, e}, ph}] += weight_by_word_freq ? entry.word_freq : 1;
        }
      }
    }
  }
  std::vector<BruteMatch> out;
  for (auto& [key, freq] : acc)
    out.push_back({key.first.first, key.first.second, key.second, freq});
  return out;
}

struct BruteDecomposition {
  std::vector<BruteMatch> chunks;
  SymSeq merged;
  int total = 0;
};

struct BruteResult {
  std::vector<BruteDecomposition> paths;
  std::set<SymSeq> merged_set;
  std::optional<Rational> best_score;
  std::map<int, int> layer_max;  // chunk count -> max total length
};

// Enumerates every valid overlapping chunk decomposition of `word` under the
// given mode by direct recursion over placements.
inline BruteResult BruteDecompose(const Lexicon& lex, const SymSeq& word,
                                  Mode mode, int min_chunk_len) {
  BruteResult result;
  const int wl = static_cast<int>(word.size());
  if (wl == 0) return result;
  std::vector<BruteMatch> placements = BruteMatches(lex, word, min_chunk_len);

  std::vector<const BruteMatch*> chain;
  auto record = [&]() {
    BruteDecomposition d;
    d.merged.assign(wl, kNoSym);
    for (const BruteMatch* m : chain) {
      d.chunks.push_back(*m);
      d.total += m->end - m->start;
      for (int i = m->start; i < m->end; ++i)
        d.merged[i] = m->phonemes[i - m->start];
    }
    int count = static_cast<int>(chain.size());
    Rational score = Rational::Of(d.total, int64_t(count) * wl);
    if (!result.best_score || score > *result.best_score)
      result.best_score = score;
    auto it = result.layer_max.find(count);
    if (it == result.layer_max.end() || it->second < d.total)
      result.layer_max[count] = d.total;
    result.merged_set.insert(d.merged);
    result.paths.push_back(std::move(d));
  };

  auto agree = [&](const BruteMatch& a, const BruteMatch& b) {
    for (int pos = b.start; pos < a.end; ++pos) {
      if (a.phonemes[pos - a.start] != b.phonemes[pos - b.start]) return false;
    }
    return true;
  };

  // Chains start at a placement with start == 0 and finish at end == wl;
  // consecutive placements must strictly overlap and agree.
  std::function<void(const BruteMatch&)> extend = [&](const BruteMatch& last) {
    if (last.end == wl) record();
    for (const BruteMatch& next : placements) {
      if (!(last.start < next.start && next.start < last.end &&
            last.end < next.end))
        continue;
      if (mode == Mode::kOverlap1 && last.end - next.start != 1) continue;
      if (mode == Mode::kHeadTail &&
          !(last.start == 0 && next.end == wl && chain.size() == 1))
        continue;
      if (!agree(last, next)) continue;
      chain.push_back(&next);
      extend(next);
      chain.pop_back();
    }
  };

  for (const BruteMatch& first : placements) {
    if (first.start != 0) continue;
    chain.push_back(&first);
    extend(first);
    chain.pop_back();
  }
  return result;
}

// Exhaustive minimum-cost alignment by recursion: minimizes edit cost, then
// maximizes matches. Only for short strings.
inline std::pair<int, int> BruteAlign(const SymSeq& hyp, const SymSeq& ref,
                                      size_t i = 0, size_t j = 0) {
  if (i == hyp.size() && j == ref.size()) return {0, 0};
  std::pair<int, int> best = {1 << 20, 0};
  auto consider = [&best](std::pair<int, int> cand) {
    if (cand.first < best.first ||
        (cand.first == best.first && cand.second > best.second))
      best = cand;
  };
  if (i < hyp.size() && j < ref.size()) {
    bool eq = hyp[i] == ref[j];
    auto sub = BruteAlign(hyp, ref, i + 1, j + 1);
    consider({sub.first + (eq ? 0 : 1), sub.second + (eq ? 1 : 0)});
  }
  if (i < hyp.size()) {
    auto ins = BruteAlign(hyp, ref, i + 1, j);
    consider({ins.first + 1, ins.second});
  }
  if (j < ref.size()) {
    auto del = BruteAlign(hyp, ref, i, j + 1);
    consider({del.first + 1, del.second});
  }
  return best;
}

// ---------------------------------------------------------------------------
// Filesystem + subprocess helpers.

class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 1000; ++i) {
      auto candidate = base / ("pba_test_" + std::to_string(::getpid()) + "_" +
                               std::to_string(counter_++));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    std::abort();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path WriteFile(const std::string& name,
                                  const std::string& content) const {
    auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

inline std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct ToolResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the pba binary (path injected at compile time) with the given
// argument string.
inline ToolResult RunTool(const std::string& args) {
  static const char* tool = PBA_TOOL_PATH;
  TempDir dir;
  auto out_path = dir.path() / "out";
  auto err_path = dir.path() / "err";
  std::string cmd = std::string(tool) + " " + args + " > " +
                    out_path.string() + " 2> " + err_path.string();
  int status = std::system(cmd.c_str());
  ToolResult r;
  if (status == -1)
    r.exit_code = -1;
  else
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ReadFile(out_path);
  r.err = ReadFile(err_path);
  return r;
}

}  // namespace pba::test

#endif  // PBA_TESTS_TEST_SUPPORT_H_
