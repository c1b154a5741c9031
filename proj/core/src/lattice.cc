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

#include "pba/lattice.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pba {

namespace {

struct SpanGroup {
  int start;
  int end;
  int32_t first_node;  // nodes with this span are contiguous
  int32_t node_count;
};

bool PhonemesAgree(const LatticeNode& a, const LatticeNode& b, int lo, int hi,
                   LatticeStats* stats) {
  for (int pos = lo; pos < hi; ++pos) {
    if (stats) ++stats->symbol_comparisons;
    if (a.phonemes[pos - a.start] != b.phonemes[pos - b.start]) return false;
  }
  return true;
}

}  // namespace

Lattice BuildLattice(const SymSeq& word, std::span<const ChunkMatch> matches,
                     Mode mode, LatticeStats* stats) {
  Lattice lat;
  lat.word = word;
  lat.word_len = static_cast<int>(word.size());
  lat.mode = mode;

  lat.nodes.reserve(matches.size());
  for (const ChunkMatch& m : matches)
    lat.nodes.push_back({m.start, m.end, m.phonemes, m.freq});
  std::sort(lat.nodes.begin(), lat.nodes.end(),
            [](const LatticeNode& a, const LatticeNode& b) {
              if (a.start != b.start) return a.start < b.start;
              if (a.end != b.end) return a.end < b.end;
              return a.phonemes < b.phonemes;
            });

  std::vector<SpanGroup> spans;
  for (int32_t i = 0; i < static_cast<int32_t>(lat.nodes.size()); ++i) {
    if (spans.empty() || spans.back().start != lat.nodes[i].start ||
        spans.back().end != lat.nodes[i].end) {
      spans.push_back({lat.nodes[i].start, lat.nodes[i].end, i, 1});
    } else {
      ++spans.back().node_count;
    }
  }

  for (const SpanGroup& a : spans) {
    for (const SpanGroup& b : spans) {
      // Strict overlap: neither containment nor abutment.
      if (!(a.start < b.start && b.start < a.end && a.end < b.end)) continue;
      const int overlap = a.end - b.start;
      if (mode == Mode::kOverlap1 && overlap != 1) continue;
      if (mode == Mode::kHeadTail &&
          !(a.start == 0 && b.end == lat.word_len))
        continue;
      for (int32_t i = a.first_node; i < a.first_node + a.node_count; ++i) {
        for (int32_t j = b.first_node; j < b.first_node + b.node_count; ++j) {
          if (stats) ++stats->pair_checks;
          if (!PhonemesAgree(lat.nodes[i], lat.nodes[j], b.start, a.end,
                             stats))
            continue;
          lat.arcs.push_back({i, j, overlap});
          if (stats) ++stats->arcs_created;
        }
      }
    }
  }
  std::sort(lat.arcs.begin(), lat.arcs.end(),
            [](const LatticeArc& x, const LatticeArc& y) {
              if (x.from != y.from) return x.from < y.from;
              return x.to < y.to;
            });

  for (int32_t i = 0; i < static_cast<int32_t>(lat.nodes.size()); ++i) {
    if (lat.nodes[i].start == 0) lat.start_nodes.push_back(i);
    if (lat.nodes[i].end == lat.word_len) lat.end_nodes.push_back(i);
  }

  lat.adj_offsets.assign(lat.nodes.size() + 1, 0);
  for (const LatticeArc& arc : lat.arcs) ++lat.adj_offsets[arc.from + 1];
  for (size_t i = 1; i < lat.adj_offsets.size(); ++i)
    lat.adj_offsets[i] += lat.adj_offsets[i - 1];
  lat.adj.resize(lat.arcs.size());
  {
    std::vector<int32_t> cursor(lat.adj_offsets.begin(),
                                lat.adj_offsets.end() - 1);
    for (const LatticeArc& arc : lat.arcs)
      lat.adj[cursor[arc.from]++] = {arc.to, arc.overlap};
  }
  return lat;
}

SymSeq MergePathPhonemes(const Lattice& lattice,
                         std::span<const int32_t> path) {
  if (path.empty())
    throw std::logic_error("merge: empty path");
  if (lattice.nodes.at(path.front()).start != 0)
    throw std::logic_error("merge: path does not start at a prefix chunk");
  if (lattice.nodes.at(path.back()).end != lattice.word_len)
    throw std::logic_error("merge: path does not end at a suffix chunk");

  SymSeq merged(lattice.word_len, kNoSym);
  int prev_start = -1, prev_end = -1;
  for (int32_t id : path) {
    const LatticeNode& n = lattice.nodes.at(id);
    if (prev_start >= 0 &&
        !(prev_start < n.start && n.start < prev_end && prev_end < n.end))
      throw std::logic_error("merge: consecutive chunks do not strictly "
                             "overlap");
    for (int pos = n.start; pos < n.end; ++pos) {
      Sym s = n.phonemes[pos - n.start];
      if (merged[pos] != kNoSym && merged[pos] != s)
        throw std::logic_error("merge: phoneme disagreement at position " +
                               std::to_string(pos));
      merged[pos] = s;
    }
    prev_start = n.start;
    prev_end = n.end;
  }
  for (int pos = 0; pos < lattice.word_len; ++pos) {
    if (merged[pos] == kNoSym)
      throw std::logic_error("merge: position " + std::to_string(pos) +
                             " not covered");
  }
  return merged;
}

namespace {

std::string EscapeDot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string ExportDot(const Lattice& lattice, const ChunkIndex& index) {
  std::ostringstream out;
  out << "digraph pronunciation_lattice {\n";
  out << "  rankdir=LR;\n";
  out << "  S [shape=doublecircle];\n";
  out << "  E [shape=doublecircle];\n";
  for (size_t i = 0; i < lattice.nodes.size(); ++i) {
    const LatticeNode& n = lattice.nodes[i];
    SymSeq g(lattice.word.begin() + n.start, lattice.word.begin() + n.end);
    std::string label = index.RenderGraphemes(g) + "[" +
                        std::to_string(n.start) + "," + std::to_string(n.end) +
                        ")/" + index.RenderPhonemes(n.phonemes);
    out << "  n" << i << " [label=\"" << EscapeDot(label) << "\"];\n";
  }
  for (int32_t id : lattice.start_nodes) out << "  S -> n" << id << ";\n";
  for (const LatticeArc& arc : lattice.arcs)
    out << "  n" << arc.from << " -> n" << arc.to << " [label=\""
        << arc.overlap << "\"];\n";
  for (int32_t id : lattice.end_nodes) out << "  n" << id << " -> E;\n";
  out << "}\n";
  return out.str();
}

}  // namespace pba
