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

#ifndef PBA_REPORT_IO_H_
#define PBA_REPORT_IO_H_

#include <span>
#include <string>

#include "pba/chunk_index.h"
#include "pba/eval.h"
#include "pba/ranker.h"

namespace pba {

inline constexpr int kEvalReportSchemaVersion = 1;
inline constexpr int kTranscriptionSchemaVersion = 1;

// Optional mode-vs-mode comparison attached to an eval run (paired per-fold
// differences).
struct EvalComparison {
  EvalReport other;
  PairedTTestResult word_accuracy_test;
  PairedTTestResult phoneme_accuracy_test;
};

// Machine form; validates against schemas/eval_report.schema.json.
std::string EvalRunJson(const EvalReport& report,
                        const EvalComparison* comparison = nullptr);
// Human form: aligned columns, one row per fold plus the aggregate.
std::string EvalRunText(const EvalReport& report,
                        const EvalComparison* comparison = nullptr);

// Machine form; validates against schemas/transcription.schema.json.
std::string TranscriptionsJson(const ChunkIndex& index,
                               const RankingPolicy& policy,
                               std::span<const Transcription> results);
std::string TranscriptionsText(const ChunkIndex& index,
                               std::span<const Transcription> results);

}  // namespace pba

#endif  // PBA_REPORT_IO_H_
