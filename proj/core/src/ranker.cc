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

#include "pba/ranker.h"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_set>

namespace pba {

namespace {

constexpr int32_t kNegInf = std::numeric_limits<int32_t>::min() / 2;
constexpr int32_t kSNode = -1;

// Suffix table of the layered DP. best[v][m] is the maximum additional total
// chunk length obtainable by appending m more chunks after node v and then
// reaching E (kNegInf when impossible); s_row[m] is the same from S, i.e.
// the maximum total over S->E paths with exactly m chunks.
struct SuffixTable {
  int word_len = 0;
  int stride = 0;
  std::vector<int32_t> best;
  std::vector<int32_t> s_row;

  int32_t At(int32_t node, int m) const { return best[node * stride + m]; }
  bool HasPath() const {
    return std::any_of(s_row.begin() + 1, s_row.end(),
                       [](int32_t v) { return v > kNegInf; });
  }
};

SuffixTable BuildSuffixTable(const Lattice& lat, RankStats* stats) {
  SuffixTable t;
  t.word_len = lat.word_len;
  t.stride = lat.word_len + 1;
  const int32_t node_count = static_cast<int32_t>(lat.nodes.size());
  t.best.assign(size_t(node_count) * t.stride, kNegInf);
  t.s_row.assign(t.stride, kNegInf);

  // Arcs always point to nodes later in the canonical order, so a single
  // reverse sweep sees every successor first.
  for (int32_t v = node_count - 1; v >= 0; --v) {
    int32_t* row = &t.best[size_t(v) * t.stride];
    if (lat.nodes[v].end == lat.word_len) row[0] = 0;
    for (auto [w, overlap] : lat.OutArcs(v)) {
      const int32_t* wrow = &t.best[size_t(w) * t.stride];
      const int32_t wlen = lat.nodes[w].length();
      for (int m = 1; m <= lat.word_len; ++m) {
        if (stats) ++stats->dp_transitions;
        if (wrow[m - 1] == kNegInf) continue;
        row[m] = std::max(row[m], wlen + wrow[m - 1]);
      }
    }
  }
  for (int32_t p : lat.start_nodes) {
    const int32_t* prow = &t.best[size_t(p) * t.stride];
    const int32_t plen = lat.nodes[p].length();
    for (int m = 1; m <= lat.word_len; ++m) {
      if (stats) ++stats->dp_transitions;
      if (prow[m - 1] == kNegInf) continue;
      t.s_row[m] = std::max(t.s_row[m], plen + prow[m - 1]);
    }
  }
  return t;
}

struct SearchEntry {
  Rational bound;  // exact best completion score; the score itself when
                   // complete
  uint64_t seq = 0;
  int32_t node = kSNode;
  bool complete = false;
  int32_t chunks = 0;
  int32_t total = 0;
  uint64_t freq_sum = 0;
  uint64_t freq_min = 0;
  int32_t parent = -1;
  int32_t item = -1;  // index into the completed-path side table
};

// A completed path gathered into the currently open score group.
struct GroupItem {
  uint64_t seq = 0;
  std::vector<int32_t> path;
  SymSeq merged;
  SymSeq surface;
  std::string surface_str;
  std::string merged_str;
  Rational score;
  int chunk_count = 0;
  int total_chunk_len = 0;
  uint64_t freq_sum = 0;
  uint64_t freq_min = 0;
};

// Best achievable completion score of a partial path standing at `node`
// with `chunks` chunks and `total` accumulated length. Exact: the suffix
// table rows are attained by real completions.
std::optional<Rational> CompletionBound(const SuffixTable& table,
                                        const Lattice& lat, int32_t node,
                                        int chunks, int total) {
  std::optional<Rational> best;
  const int l = lat.word_len;
  if (node == kSNode) {
    for (int m = 1; m <= l; ++m) {
      if (table.s_row[m] == kNegInf) continue;
      Rational r = Rational::Of(table.s_row[m], int64_t(m) * l);
      if (!best || r > *best) best = r;
    }
    return best;
  }
  for (int m = 0; chunks + m <= l; ++m) {
    int32_t suffix = table.At(node, m);
    if (suffix == kNegInf) continue;
    Rational r = Rational::Of(total + suffix, int64_t(chunks + m) * l);
    if (!best || r > *best) best = r;
  }
  return best;
}

uint64_t FreqKeyOf(const GroupItem& item, TieBreak tb) {
  switch (tb) {
    case TieBreak::kFreqSum:
      return item.freq_sum;
    case TieBreak::kFreqMin:
      return item.freq_min;
    case TieBreak::kNone:
      return 0;
  }
  return 0;
}

// Full search over S->E paths. Complete paths pop from the heap in exact
// nonincreasing score order (the bound is the attainable maximum), are
// gathered into equal-score groups, and each group is resolved by the
// frequency tie-break and the canonical order before anything is emitted.
std::vector<Candidate> RunSearch(const Lattice& lat, const ChunkIndex& index,
                                 const RankingPolicy& policy,
                                 size_t want, bool dedup_surfaces,
                                 RankStats* stats, const RankLimits& limits) {
  std::vector<Candidate> results;
  if (want == 0 || lat.word_len == 0) return results;

  SuffixTable table = BuildSuffixTable(lat, stats);
  if (!table.HasPath()) return results;

  std::vector<SearchEntry> arena;
  std::vector<GroupItem> items;
  auto worse = [&arena](int32_t a, int32_t b) {
    if (arena[a].bound != arena[b].bound) return arena[a].bound < arena[b].bound;
    return arena[a].seq > arena[b].seq;
  };
  std::priority_queue<int32_t, std::vector<int32_t>, decltype(worse)> heap(
      worse);
  uint64_t seq = 0, pops = 0, pushes = 0;

  {
    SearchEntry root;
    root.bound = *CompletionBound(table, lat, kSNode, 0, 0);
    root.seq = seq++;
    arena.push_back(root);
    heap.push(0);
    ++pushes;
  }

  bool group_open = false;
  Rational group_score;
  std::vector<size_t> group;  // item indices
  std::unordered_set<std::string> group_new_surfaces;
  std::unordered_set<std::string> seen_surfaces;

  auto needed = [&]() { return want - results.size(); };
  // True when flushing the open group is already guaranteed to satisfy the
  // request, so anything scoring strictly below it can be dropped.
  auto group_suffices = [&]() {
    if (!group_open) return false;
    size_t yield = dedup_surfaces ? group_new_surfaces.size() : group.size();
    return yield >= needed();
  };

  auto flush_group = [&]() {
    std::sort(group.begin(), group.end(), [&](size_t x, size_t y) {
      const GroupItem& a = items[x];
      const GroupItem& b = items[y];
      uint64_t fa = FreqKeyOf(a, policy.tie_break);
      uint64_t fb = FreqKeyOf(b, policy.tie_break);
      if (fa != fb) return fa > fb;
      if (a.surface_str != b.surface_str) return a.surface_str < b.surface_str;
      if (a.merged_str != b.merged_str) return a.merged_str < b.merged_str;
      if (a.path != b.path) return a.path < b.path;
      return a.seq < b.seq;
    });
    for (size_t idx : group) {
      if (results.size() >= want) break;
      GroupItem& item = items[idx];
      if (dedup_surfaces) {
        if (seen_surfaces.count(item.surface_str)) continue;
        seen_surfaces.insert(item.surface_str);
      }
      Candidate c;
      for (int32_t node_id : item.path) {
        const LatticeNode& n = lat.nodes[node_id];
        CandidateChunk chunk;
        chunk.start = n.start;
        chunk.end = n.end;
        chunk.graphemes.assign(lat.word.begin() + n.start,
                               lat.word.begin() + n.end);
        chunk.phonemes = n.phonemes;
        chunk.freq = n.freq;
        c.chunks.push_back(std::move(chunk));
      }
      c.path = std::move(item.path);
      c.merged = std::move(item.merged);
      c.surface = std::move(item.surface);
      c.score = item.score;
      c.chunk_count = item.chunk_count;
      c.total_chunk_len = item.total_chunk_len;
      c.freq_key = FreqKeyOf(item, policy.tie_break);
      results.push_back(std::move(c));
    }
    group.clear();
    group_new_surfaces.clear();
    group_open = false;
  };

  auto reconstruct = [&](int32_t arena_id) {
    std::vector<int32_t> path;
    for (int32_t cur = arena_id; cur >= 0; cur = arena[cur].parent) {
      if (!arena[cur].complete && arena[cur].node != kSNode)
        path.push_back(arena[cur].node);
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  while (!heap.empty()) {
    if (pops >= limits.max_pops || pushes >= limits.max_pushes) break;
    int32_t id = heap.top();
    if (group_open && arena[id].bound < group_score) {
      flush_group();
      if (results.size() >= want) return results;
    }
    heap.pop();
    ++pops;
    if (stats) ++stats->heap_pops;
    const SearchEntry e = arena[id];

    if (e.complete) {
      if (!group_open) {
        group_open = true;
        group_score = e.bound;
      }
      if (group.size() < limits.max_group) {
        group.push_back(static_cast<size_t>(e.item));
        const std::string& s = items[e.item].surface_str;
        if (!dedup_surfaces || !seen_surfaces.count(s))
          group_new_surfaces.insert(s);
      }
      continue;
    }

    // Close the path when it already ends at a suffix chunk.
    if (e.node != kSNode && lat.nodes[e.node].end == lat.word_len) {
      Rational score = ScoreFromTotals(e.total, e.chunks, lat.word_len);
      if (!(group_open && score < group_score && group_suffices())) {
        GroupItem item;
        item.seq = seq;
        item.path = reconstruct(id);
        item.merged = MergePathPhonemes(lat, item.path);
        item.surface = StripNulls(item.merged, index.null_sym());
        item.surface_str = index.RenderPhonemes(item.surface);
        item.merged_str = index.RenderPhonemes(item.merged);
        item.score = score;
        item.chunk_count = e.chunks;
        item.total_chunk_len = e.total;
        item.freq_sum = e.freq_sum;
        item.freq_min = e.freq_min;
        items.push_back(std::move(item));

        SearchEntry done;
        done.bound = score;
        done.seq = seq++;
        done.node = e.node;
        done.complete = true;
        done.chunks = e.chunks;
        done.total = e.total;
        done.freq_sum = e.freq_sum;
        done.freq_min = e.freq_min;
        done.parent = id;
        done.item = static_cast<int32_t>(items.size()) - 1;
        arena.push_back(done);
        heap.push(static_cast<int32_t>(arena.size()) - 1);
        ++pushes;
        if (stats) ++stats->heap_pushes;
      }
    }

    auto expand = [&](int32_t to) {
      const LatticeNode& n = lat.nodes[to];
      SearchEntry child;
      child.node = to;
      child.chunks = e.chunks + 1;
      child.total = e.total + n.length();
      child.freq_sum = e.freq_sum + n.freq;
      child.freq_min = e.node == kSNode ? n.freq : std::min(e.freq_min, n.freq);
      child.parent = id;
      auto bound = CompletionBound(table, lat, to, child.chunks, child.total);
      if (!bound) return;
      if (group_open && *bound < group_score && group_suffices()) return;
      child.bound = *bound;
      child.seq = seq++;
      arena.push_back(child);
      heap.push(static_cast<int32_t>(arena.size()) - 1);
      ++pushes;
      if (stats) ++stats->heap_pushes;
    };

    if (e.node == kSNode) {
      for (int32_t p : lat.start_nodes) expand(p);
    } else {
      for (auto [to, overlap] : lat.OutArcs(e.node)) expand(to);
    }
  }
  flush_group();
  return results;
}

}  // namespace

Rational ScoreFromTotals(int total_chunk_len, int chunk_count, int word_len) {
  return Rational::Of(total_chunk_len, int64_t(chunk_count) * word_len);
}

Rational ScorePath(const Lattice& lattice, std::span<const int32_t> path) {
  int total = 0;
  for (int32_t id : path) total += lattice.nodes.at(id).length();
  return ScoreFromTotals(total, static_cast<int>(path.size()),
                         lattice.word_len);
}

std::vector<int> LayerMaxTotals(const Lattice& lattice, RankStats* stats) {
  SuffixTable table = BuildSuffixTable(lattice, stats);
  std::vector<int> out(lattice.word_len + 1, -1);
  for (int m = 1; m <= lattice.word_len; ++m)
    if (table.s_row[m] > kNegInf) out[m] = table.s_row[m];
  return out;
}

std::vector<Candidate> BestCandidates(const Lattice& lattice,
                                      const ChunkIndex& index,
                                      const RankingPolicy& policy,
                                      RankStats* stats,
                                      const RankLimits& limits) {
  return RunSearch(lattice, index, policy,
                   static_cast<size_t>(std::max(policy.k, 1)),
                   /*dedup_surfaces=*/true, stats, limits);
}

std::vector<std::vector<int32_t>> EnumeratePaths(const Lattice& lattice,
                                                 const ChunkIndex& index,
                                                 size_t limit) {
  RankingPolicy policy;
  policy.mode = lattice.mode;
  std::vector<Candidate> all = RunSearch(lattice, index, policy, limit,
                                         /*dedup_surfaces=*/false, nullptr,
                                         RankLimits{});
  std::vector<std::vector<int32_t>> paths;
  paths.reserve(all.size());
  for (Candidate& c : all) paths.push_back(std::move(c.path));
  return paths;
}

Transcription TranscribeSyms(const ChunkIndex& index, const SymSeq& word,
                             const RankingPolicy& policy,
                             TranscribeStats* stats,
                             const RankLimits& limits) {
  Transcription t;
  t.word = index.RenderGraphemes(word);
  std::vector<ChunkMatch> matches =
      index.MatchWord(word, stats ? &stats->lookup : nullptr);
  Lattice lat = BuildLattice(word, matches, policy.mode,
                             stats ? &stats->lattice : nullptr);
  t.candidates = BestCandidates(lat, index, policy,
                                stats ? &stats->rank : nullptr, limits);
  t.silence = t.candidates.empty();
  return t;
}

Transcription Transcribe(const ChunkIndex& index, const std::string& word,
                         const RankingPolicy& policy, TranscribeStats* stats,
                         const RankLimits& limits) {
  Transcription t =
      TranscribeSyms(index, index.TokenizeWord(word), policy, stats, limits);
  t.word = word;  // keep unknown symbols as typed
  return t;
}

const char* ModeName(Mode mode) {
  switch (mode) {
    case Mode::kSmpa:
      return "smpa";
    case Mode::kOverlap1:
      return "overlap1";
    case Mode::kHeadTail:
      return "headtail";
  }
  return "smpa";
}

std::optional<Mode> ParseModeName(const std::string& name) {
  if (name == "smpa") return Mode::kSmpa;
  if (name == "overlap1" || name == "pronounce") return Mode::kOverlap1;
  if (name == "headtail") return Mode::kHeadTail;
  return std::nullopt;
}

const char* TieBreakName(TieBreak tb) {
  switch (tb) {
    case TieBreak::kFreqSum:
      return "freq_sum";
    case TieBreak::kFreqMin:
      return "freq_min";
    case TieBreak::kNone:
      return "none";
  }
  return "freq_sum";
}

std::optional<TieBreak> ParseTieBreakName(const std::string& name) {
  if (name == "freq_sum") return TieBreak::kFreqSum;
  if (name == "freq_min") return TieBreak::kFreqMin;
  if (name == "none") return TieBreak::kNone;
  return std::nullopt;
}

}  // namespace pba
