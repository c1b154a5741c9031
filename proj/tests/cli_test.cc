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

// End-to-end checks of the pba binary: exit codes, output formats, cache
// behavior, schema validity.

#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "json_schema_check.h"
#include "test_support.h"

namespace pba {
namespace {

using nlohmann::json;
using test::Fig3LexiconText;
using test::ReadFile;
using test::RunTool;
using test::TempDir;
using test::ToolResult;

std::string SchemaText(const std::string& name) {
  return ReadFile(std::filesystem::path(PBA_SOURCE_DIR) / "schemas" / name);
}

TEST_CASE("build-index reports the brute-force chunk counts") {
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  auto idx = dir.path() / "fig3.idx";
  ToolResult r = RunTool("build-index " + lex.string() + " -o " + idx.string());
  CHECK(r.exit_code == 0);
  // Enumerating substrings of length >= 2 of the five entries by hand gives
  // 31 occurrences and 29 distinct aligned pairs.
  CHECK(r.out.find("29 distinct chunks") != std::string::npos);
  CHECK(r.out.find("31 occurrences") != std::string::npos);
  CHECK(std::filesystem::exists(idx));
}

TEST_CASE("missing lexicon file exits 2 and names the path") {
  ToolResult r = RunTool("build-index /nonexistent/lex.tsv -o /tmp/x.idx");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("/nonexistent/lex.tsv") != std::string::npos);
}

TEST_CASE("malformed line exits 1 with its line number") {
  TempDir dir;
  auto lex = dir.WriteFile("bad.tsv", "hot\th@t\nshop\tS@p\n");
  ToolResult r = RunTool("build-index " + lex.string() + " -o " +
                         (dir.path() / "bad.idx").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find(":2:") != std::string::npos);

  ToolResult skipped = RunTool("build-index " + lex.string() +
                               " --skip-bad-lines -o " +
                               (dir.path() / "ok.idx").string());
  CHECK(skipped.exit_code == 0);
}

TEST_CASE("transcribe prints the tied 5/8 scores") {
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  ToolResult r =
      RunTool("transcribe hope --mode smpa -k 3 -l " + lex.string());
  CHECK(r.exit_code == 0);
  size_t first = r.out.find("5/8 (0.625)");
  REQUIRE(first != std::string::npos);
  CHECK(r.out.find("5/8 (0.625)", first + 1) != std::string::npos);
  CHECK(r.out.find("1/2 (0.500)") != std::string::npos);
}

TEST_CASE("transcribe of a known word prints score 1") {
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  ToolResult r = RunTool("transcribe slope -l " + lex.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1 (1.000)") != std::string::npos);
  // Exactly one candidate under the default k=1.
  CHECK(r.out.find("2.") == std::string::npos);
}

TEST_CASE("silence prints a marker, an empty array in json, and exits 0") {
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  ToolResult text = RunTool("transcribe zzzz -l " + lex.string());
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("<silence>") != std::string::npos);

  ToolResult js =
      RunTool("transcribe zzzz --format json -l " + lex.string());
  CHECK(js.exit_code == 0);
  json out = json::parse(js.out);
  CHECK(out["results"][0]["silence"] == true);
  CHECK(out["results"][0]["candidates"].empty());
}

TEST_CASE("transcription json validates against the shipped schema") {
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  ToolResult r = RunTool(
      "transcribe hope slope zzzz --mode pronounce -k 3 --format json -l " +
      lex.string());
  CHECK(r.exit_code == 0);
  CHECK(test::ValidateJsonAgainstSchemaText(
            SchemaText("transcription.schema.json"), r.out) == "");
  json out = json::parse(r.out);
  CHECK(out["mode"] == "overlap1");  // the pronounce alias reports overlap1
  CHECK(out["schema_version"] == 1);
}

TEST_CASE("dot export writes a parseable lattice file") {
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  auto dot = dir.path() / "hope.dot";
  ToolResult r = RunTool("transcribe hope -l " + lex.string() + " --dot " +
                         dot.string());
  CHECK(r.exit_code == 0);
  std::string text = ReadFile(dot);
  CHECK(text.find("digraph") != std::string::npos);
  CHECK(text.find("S ->") != std::string::npos);
  CHECK(text.find("-> E") != std::string::npos);

  // --format dot prints the same lattice on stdout.
  ToolResult direct =
      RunTool("transcribe hope -l " + lex.string() + " --format dot");
  CHECK(direct.exit_code == 0);
  CHECK(direct.out == text);

  // --dot with several words is a usage error.
  ToolResult bad = RunTool("transcribe hope slope -l " + lex.string() +
                           " --dot " + dot.string());
  CHECK(bad.exit_code == 2);
  CHECK(RunTool("transcribe hope -l " + lex.string() + " --format bogus")
            .exit_code == 2);
}

TEST_CASE("index cache is reused and rebuilt on mismatch") {
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  auto idx = dir.path() / "fig3.idx";
  CHECK(RunTool("build-index " + lex.string() + " -o " + idx.string())
            .exit_code == 0);
  std::string cached = ReadFile(idx);

  // Index alone is enough to transcribe.
  ToolResult r = RunTool("transcribe hope -k 3 -i " + idx.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("5/8") != std::string::npos);

  // With a matching lexicon the cache is reused as-is.
  ToolResult reuse =
      RunTool("transcribe hope -l " + lex.string() + " -i " + idx.string());
  CHECK(reuse.exit_code == 0);
  CHECK(reuse.err.find("stale") == std::string::npos);
  CHECK(ReadFile(idx) == cached);

  // Changing the lexicon invalidates the embedded content hash.
  dir.WriteFile("fig3.tsv", Fig3LexiconText() + "hop\th@p\n");
  ToolResult stale =
      RunTool("transcribe hope -l " + lex.string() + " -i " + idx.string());
  CHECK(stale.exit_code == 0);
  CHECK(stale.err.find("stale") != std::string::npos);
  CHECK(ReadFile(idx) != cached);
}

TEST_CASE("eval json has one entry per fold and obeys the schema") {
  TempDir dir;
  std::string text;
  for (char a = 'a'; a <= 'j'; ++a)
    for (char b = 'a'; b <= 'e'; ++b)
      text += std::string(1, a) + std::string(1, b) + "ab\tpq-r\n";
  auto lex = dir.WriteFile("lex.tsv", text);

  ToolResult r = RunTool("eval " + lex.string() +
                         " --folds 10 --test-frac 0.1 --mode smpa --seed 42 "
                         "--threads 2 --format json");
  CHECK(r.exit_code == 0);
  CHECK(test::ValidateJsonAgainstSchemaText(
            SchemaText("eval_report.schema.json"), r.out) == "");
  json out = json::parse(r.out);
  CHECK(out["folds"].size() == 10);
  CHECK(out["config"]["mode"] == "smpa");
  CHECK(out["config"]["seed"] == 42);

  // Same flags, same bytes.
  ToolResult again = RunTool("eval " + lex.string() +
                             " --folds 10 --test-frac 0.1 --mode smpa "
                             "--seed 42 --threads 2 --format json");
  CHECK(again.out == r.out);

  // The pronounce alias reports the overlap1 label.
  ToolResult alias = RunTool("eval " + lex.string() +
                             " --folds 2 --test-frac 0.1 --mode pronounce "
                             "--format json");
  CHECK(alias.exit_code == 0);
  CHECK(json::parse(alias.out)["config"]["mode"] == "overlap1");
}

TEST_CASE("eval with compare-mode emits the paired test block") {
  TempDir dir;
  std::string text;
  for (char a = 'a'; a <= 'j'; ++a)
    for (char b = 'a'; b <= 'e'; ++b)
      text += std::string(1, a) + std::string(1, b) + "ab\tpq-r\n";
  auto lex = dir.WriteFile("lex.tsv", text);
  ToolResult r = RunTool("eval " + lex.string() +
                         " --folds 4 --test-frac 0.1 --mode smpa "
                         "--compare-mode headtail --format json");
  CHECK(r.exit_code == 0);
  CHECK(test::ValidateJsonAgainstSchemaText(
            SchemaText("eval_report.schema.json"), r.out) == "");
  json out = json::parse(r.out);
  REQUIRE(out.contains("comparison"));
  CHECK(out["comparison"]["config"]["mode"] == "headtail");
  REQUIRE(out.contains("paired_t"));
  CHECK(out["paired_t"]["word_accuracy"].contains("p_value"));

  // Silence dominance shows up between the two runs.
  double smpa_silence = out["aggregate"]["silence_rate"].get<double>();
  double ht_silence =
      out["comparison"]["aggregate"]["silence_rate"].get<double>();
  CHECK(ht_silence >= smpa_silence);
}

TEST_CASE("usage errors exit 2") {
  CHECK(RunTool("transcribe").exit_code == 2);          // missing words
  CHECK(RunTool("bogus-subcommand").exit_code == 2);
  CHECK(RunTool("eval /nonexistent.tsv").exit_code == 2);
  TempDir dir;
  auto lex = dir.WriteFile("fig3.tsv", Fig3LexiconText());
  CHECK(RunTool("transcribe hope -l " + lex.string() + " --mode bogus")
            .exit_code == 2);
  CHECK(RunTool("transcribe hope").exit_code == 2);  // no lexicon, no index
  CHECK(RunTool("transcribe hope -l " + lex.string() + " -k 0").exit_code ==
        2);
  CHECK(RunTool("transcribe hope -l " + lex.string() + " --min-chunk-len 0")
            .exit_code == 2);
  CHECK(RunTool("eval " + lex.string() + " --test-frac 1.5").exit_code == 2);
  CHECK(RunTool("eval " + lex.string() + " --folds 0").exit_code == 2);
}

TEST_CASE("eval data errors exit 1") {
  TempDir dir;
  auto lex = dir.WriteFile("tiny.tsv", "ab\tpq\n");
  // One entry cannot satisfy the fraction.
  ToolResult r = RunTool("eval " + lex.string() + " --folds 2");
  CHECK(r.exit_code == 1);
}

}  // namespace
}  // namespace pba
