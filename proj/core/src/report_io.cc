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

#include "pba/report_io.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace pba {

namespace {

using nlohmann::json;

json FoldToJson(const FoldReport& fr) {
  json j;
  j["fold"] = fr.fold;
  j["train_size"] = fr.train_size;
  j["test_size"] = fr.test_size;
  j["correct_words"] = fr.correct_words;
  j["silent_words"] = fr.silent_words;
  j["word_accuracy"] = fr.word_accuracy;
  j["phoneme_accuracy"] = fr.phoneme_accuracy;
  j["phoneme_accuracy_nonsilent"] =
      fr.phoneme_accuracy_nonsilent
          ? json(*fr.phoneme_accuracy_nonsilent)
          : json(nullptr);
  j["silence_rate"] = fr.silence_rate;
  j["counts"] = {{"reference_phonemes", fr.ref_phonemes},
                 {"correct", fr.correct_phonemes},
                 {"substitutions", fr.substitutions},
                 {"insertions", fr.insertions},
                 {"deletions", fr.deletions}};
  return j;
}

json ReportToJson(const EvalReport& report) {
  json j;
  j["config"] = {{"mode", report.mode},
                 {"tie_break", report.tie_break},
                 {"min_chunk_len", report.min_chunk_len},
                 {"weight_by_word_freq", report.weight_by_word_freq},
                 {"folds", report.fold_count},
                 {"test_fraction", report.test_fraction},
                 {"seed", report.rng_seed},
                 {"lexicon_entries", report.lexicon_entries}};
  j["folds"] = json::array();
  for (const FoldReport& fr : report.folds) j["folds"].push_back(FoldToJson(fr));
  j["aggregate"] = {
      {"word_accuracy", report.word_accuracy},
      {"phoneme_accuracy", report.phoneme_accuracy},
      {"phoneme_accuracy_nonsilent",
       report.phoneme_accuracy_nonsilent
           ? json(*report.phoneme_accuracy_nonsilent)
           : json(nullptr)},
      {"silence_rate", report.silence_rate}};
  return j;
}

json TTestToJson(const PairedTTestResult& r) {
  json j;
  j["mean_diff"] = r.mean_diff;
  j["t"] = std::isfinite(r.t) ? json(r.t) : json(nullptr);
  j["df"] = r.df;
  j["p_value"] = r.p_value;
  return j;
}

std::string Pct(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << 100.0 * v;
  return out.str();
}

}  // namespace

std::string EvalRunJson(const EvalReport& report,
                        const EvalComparison* comparison) {
  json j = ReportToJson(report);
  j["schema_version"] = kEvalReportSchemaVersion;
  if (comparison) {
    j["comparison"] = ReportToJson(comparison->other);
    j["paired_t"] = {
        {"word_accuracy", TTestToJson(comparison->word_accuracy_test)},
        {"phoneme_accuracy", TTestToJson(comparison->phoneme_accuracy_test)}};
  }
  return j.dump(2) + "\n";
}

std::string EvalRunText(const EvalReport& report,
                        const EvalComparison* comparison) {
  std::ostringstream out;
  auto print_report = [&out](const EvalReport& r) {
    out << "mode " << r.mode << "  tie-break " << r.tie_break << "  folds "
        << r.fold_count << "  test-fraction " << r.test_fraction << "  seed "
        << r.rng_seed << "  entries " << r.lexicon_entries << "\n";
    out << std::left << std::setw(6) << "fold" << std::right << std::setw(8)
        << "train" << std::setw(7) << "test" << std::setw(10) << "words%"
        << std::setw(10) << "phon%" << std::setw(12) << "phon%(ns)"
        << std::setw(10) << "silence%" << "\n";
    for (const FoldReport& fr : r.folds) {
      out << std::left << std::setw(6) << fr.fold << std::right << std::setw(8)
          << fr.train_size << std::setw(7) << fr.test_size << std::setw(10)
          << Pct(fr.word_accuracy) << std::setw(10) << Pct(fr.phoneme_accuracy)
          << std::setw(12)
          << (fr.phoneme_accuracy_nonsilent
                  ? Pct(*fr.phoneme_accuracy_nonsilent)
                  : std::string("n/a"))
          << std::setw(10) << Pct(fr.silence_rate) << "\n";
    }
    out << std::left << std::setw(6) << "mean" << std::right << std::setw(8)
        << "" << std::setw(7) << "" << std::setw(10)
        << Pct(r.word_accuracy) << std::setw(10) << Pct(r.phoneme_accuracy)
        << std::setw(12)
        << (r.phoneme_accuracy_nonsilent ? Pct(*r.phoneme_accuracy_nonsilent)
                                         : std::string("n/a"))
        << std::setw(10) << Pct(r.silence_rate) << "\n";
  };
  print_report(report);
  if (comparison) {
    out << "\n";
    print_report(comparison->other);
    out << "\npaired two-tailed test (" << report.mode << " - "
        << comparison->other.mode << ", per-fold):\n";
    auto print_t = [&out](const char* name, const PairedTTestResult& r) {
      out << "  " << name << ": mean diff " << std::fixed
          << std::setprecision(4) << r.mean_diff << ", t=" << r.t
          << ", df=" << r.df << ", p=" << std::setprecision(6) << r.p_value
          << "\n";
    };
    print_t("word accuracy", comparison->word_accuracy_test);
    print_t("phoneme accuracy", comparison->phoneme_accuracy_test);
  }
  return out.str();
}

namespace {

json CandidateToJson(const ChunkIndex& index, const Candidate& c) {
  json j;
  j["surface"] = index.RenderPhonemes(c.surface);
  j["merged"] = index.RenderPhonemes(c.merged);
  j["score"] = c.score.ToString();
  j["score_decimal"] = c.score.ToDouble();
  j["chunk_count"] = c.chunk_count;
  j["total_chunk_len"] = c.total_chunk_len;
  j["freq"] = c.freq_key;
  j["chunks"] = json::array();
  for (const CandidateChunk& ch : c.chunks) {
    j["chunks"].push_back({{"start", ch.start},
                           {"end", ch.end},
                           {"graphemes", index.RenderGraphemes(ch.graphemes)},
                           {"phonemes", index.RenderPhonemes(ch.phonemes)},
                           {"freq", ch.freq}});
  }
  return j;
}

std::string Decimal3(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

}  // namespace

std::string TranscriptionsJson(const ChunkIndex& index,
                               const RankingPolicy& policy,
                               std::span<const Transcription> results) {
  json j;
  j["schema_version"] = kTranscriptionSchemaVersion;
  j["mode"] = ModeName(policy.mode);
  j["tie_break"] = TieBreakName(policy.tie_break);
  j["k"] = policy.k;
  j["results"] = json::array();
  for (const Transcription& t : results) {
    json r;
    r["word"] = t.word;
    r["silence"] = t.silence;
    r["candidates"] = json::array();
    for (const Candidate& c : t.candidates)
      r["candidates"].push_back(CandidateToJson(index, c));
    j["results"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string TranscriptionsText(const ChunkIndex& index,
                               std::span<const Transcription> results) {
  std::ostringstream out;
  for (const Transcription& t : results) {
    out << t.word << "\n";
    if (t.silence) {
      out << "  <silence>\n";
      continue;
    }
    for (size_t i = 0; i < t.candidates.size(); ++i) {
      const Candidate& c = t.candidates[i];
      out << "  " << (i + 1) << ". " << index.RenderPhonemes(c.surface)
          << "  score " << c.score.ToString() << " ("
          << Decimal3(c.score.ToDouble()) << ")  freq " << c.freq_key
          << "  chunks " << c.chunk_count << ":";
      for (size_t k = 0; k < c.chunks.size(); ++k) {
        const CandidateChunk& ch = c.chunks[k];
        out << (k ? " + " : " ") << index.RenderGraphemes(ch.graphemes) << "["
            << ch.start << "," << ch.end << ")/"
            << index.RenderPhonemes(ch.phonemes) << " x" << ch.freq;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace pba
