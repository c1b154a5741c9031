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

#include "pba/lexicon.h"

#include <algorithm>

#include "doctest.h"
#include "test_support.h"

namespace pba {
namespace {

using test::Fig3Lexicon;
using test::Rng;

TEST_CASE("parse aligns hose with a trailing null") {
  ParseResult r = ParseLexicon("hose\thOz-\n");
  REQUIRE(r.lexicon.entries().size() == 1);
  const AlignedEntry& e = r.lexicon.entries()[0];
  CHECK(r.lexicon.WordString(e) == "hose");
  CHECK(r.lexicon.PhonemeString(e.phonemes) == "hOz-");
  CHECK(e.phonemes.back() == r.lexicon.null_sym());
  CHECK(e.graphemes.size() == e.phonemes.size());
  CHECK(e.word_freq == 1);
}

TEST_CASE("single-letter entry is valid") {
  ParseResult r = ParseLexicon("a\ta\n");
  REQUIRE(r.lexicon.entries().size() == 1);
  CHECK(r.lexicon.entries()[0].length() == 1);
  CHECK(r.diagnostics.empty());
}

TEST_CASE("misaligned entry is rejected with its line number") {
  ParseResult r = ParseLexicon("hot\th@t\nshop\tS@p\nhose\thOz-\n");
  CHECK(r.lexicon.entries().size() == 2);
  REQUIRE(r.HasRejectedLines());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].kind == ParseDiagnostic::Kind::kRejectedLine);
  CHECK(r.diagnostics[0].line == 2);
  CHECK(r.diagnostics[0].message.find("alignment") != std::string::npos);
  CHECK(r.RejectedLinesMessage("lex.tsv").find("lex.tsv:2:") !=
        std::string::npos);
}

TEST_CASE("strip_nulls removes alignment padding") {
  Lexicon lex = Fig3Lexicon();
  auto strip = [&lex](const std::string& phon) {
    ParseResult tmp = ParseLexicon("word\t" + phon + "\n" +
                                   test::Fig3LexiconText());
    // parse in a fresh lexicon so the symbols exist
    const AlignedEntry& e = tmp.lexicon.entries()[0];
    return tmp.lexicon.PhonemeString(tmp.lexicon.StripNulls(e.phonemes));
  };
  CHECK(strip("hOz-") == "hOz");
  CHECK(strip("S-@p") == "S@p");

  ParseResult all_null = ParseLexicon("abc\t---\n");
  const AlignedEntry& e = all_null.lexicon.entries()[0];
  CHECK(all_null.lexicon.StripNulls(e.phonemes).empty());
}

TEST_CASE("stripped pronunciations contain no null") {
  Rng rng(2024);
  for (int iter = 0; iter < 50; ++iter) {
    ParseResult r = ParseLexicon(test::RandomMicroLexiconText(rng));
    for (const AlignedEntry& e : r.lexicon.entries()) {
      SymSeq surface = r.lexicon.StripNulls(e.phonemes);
      CHECK(std::find(surface.begin(), surface.end(), r.lexicon.null_sym()) ==
            surface.end());
    }
  }
}

TEST_CASE("round trip through serialize") {
  Rng rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    std::string text = test::RandomMicroLexiconText(rng);
    Lexicon lex = ParseLexicon(text).lexicon;
    std::string canonical = lex.Serialize();
    Lexicon again = ParseLexicon(canonical).lexicon;
    // Identity on canonical text...
    CHECK(again.Serialize() == canonical);
    // ...and on content.
    REQUIRE(again.entries().size() == lex.entries().size());
    for (size_t i = 0; i < lex.entries().size(); ++i) {
      CHECK(lex.WordString(lex.entries()[i]) ==
            again.WordString(again.entries()[i]));
      CHECK(lex.PhonemeString(lex.entries()[i].phonemes) ==
            again.PhonemeString(again.entries()[i].phonemes));
      CHECK(lex.entries()[i].word_freq == again.entries()[i].word_freq);
    }
    CHECK(lex.ContentHash() == again.ContentHash());
  }
}

TEST_CASE("homographs are kept and flagged") {
  ParseResult r = ParseLexicon("lead\tlEd-\nlead\tl-ed\n");
  CHECK(r.lexicon.entries().size() == 2);
  bool warned = std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                            [](const ParseDiagnostic& d) {
                              return d.kind ==
                                         ParseDiagnostic::Kind::kWarning &&
                                     d.message.find("homograph") !=
                                         std::string::npos;
                            });
  CHECK(warned);
  // An identical duplicate is not a conflict.
  ParseResult dup = ParseLexicon("lead\tlEd-\nlead\tlEd-\n");
  CHECK(dup.lexicon.entries().size() == 2);
  CHECK(dup.diagnostics.empty());
}

TEST_CASE("empty input is an error") {
  CHECK_THROWS_AS(ParseLexicon(""), LexiconError);
  CHECK_THROWS_AS(ParseLexicon("# only a comment\n"), LexiconError);
  // A file with nothing but rejected lines is empty too.
  CHECK_THROWS_AS(ParseLexicon("shop\tS@p\n"), LexiconError);
}

TEST_CASE("frequency column") {
  ParseResult r = ParseLexicon("hot\th@t\t12\nhose\thOz-\t3\n");
  CHECK(r.lexicon.entries()[0].word_freq == 12);
  CHECK(r.lexicon.entries()[1].word_freq == 3);
  // Round trip keeps the column.
  Lexicon again = ParseLexicon(r.lexicon.Serialize()).lexicon;
  CHECK(again.entries()[0].word_freq == 12);

  ParseResult bad = ParseLexicon("hot\th@t\tmany\nhose\thOz-\n");
  REQUIRE(bad.HasRejectedLines());
  CHECK(bad.diagnostics[0].line == 1);
}

TEST_CASE("null symbol override header") {
  ParseResult r = ParseLexicon("#null=.\nshop\tS.@p\n");
  const Lexicon& lex = r.lexicon;
  CHECK(lex.phonemes().Token(lex.null_sym()) == ".");
  SymSeq surface = lex.StripNulls(lex.entries()[0].phonemes);
  CHECK(lex.PhonemeString(surface) == "S@p");
  // '-' is an ordinary phoneme under this header.
  ParseResult dash = ParseLexicon("#null=.\nab\tx-\n");
  CHECK(dash.lexicon.StripNulls(dash.lexicon.entries()[0].phonemes).size() ==
        2);
}

TEST_CASE("multichar phoneme tokens") {
  ParseResult r = ParseLexicon("#multichar=true\nshop\tSH - AA P\n");
  const Lexicon& lex = r.lexicon;
  REQUIRE(lex.entries().size() == 1);
  const AlignedEntry& e = lex.entries()[0];
  CHECK(e.length() == 4);
  CHECK(lex.PhonemeString(e.phonemes) == "SH - AA P");
  CHECK(lex.PhonemeString(lex.StripNulls(e.phonemes)) == "SH AA P");
  // Round trip keeps the header.
  Lexicon again = ParseLexicon(lex.Serialize()).lexicon;
  CHECK(again.multichar());
  CHECK(again.Serialize() == lex.Serialize());
}

TEST_CASE("utf8 letters count as single symbols") {
  ParseResult r = ParseLexicon("chanson\tf-ã-sõ-\n");
  REQUIRE_FALSE(r.HasRejectedLines());
  const AlignedEntry& e = r.lexicon.entries()[0];
  CHECK(e.length() == 7);
  CHECK(r.lexicon.PhonemeString(e.phonemes) == "f-ã-sõ-");
}

TEST_CASE("declared alphabets are enforced") {
  std::string text =
      "#graphemes=a b c\n#phonemes=- p q\nab\tpq\ncb\tp-\nzb\tpp\n";
  ParseResult r = ParseLexicon(text);
  CHECK(r.lexicon.alphabets_declared());
  CHECK(r.lexicon.entries().size() == 2);
  REQUIRE(r.HasRejectedLines());
  CHECK(r.diagnostics[0].line == 5);
  CHECK(r.diagnostics[0].message.find("not in declared alphabet") !=
        std::string::npos);
  // Declared alphabets survive the round trip.
  Lexicon again = ParseLexicon(r.lexicon.Serialize()).lexicon;
  CHECK(again.alphabets_declared());
  CHECK(again.Serialize() == r.lexicon.Serialize());
}

TEST_CASE("letters may not hold the null symbol") {
  ParseResult r = ParseLexicon("a-b\tpqr\nab\tpq\n");
  REQUIRE(r.HasRejectedLines());
  CHECK(r.diagnostics[0].line == 1);
  CHECK(r.diagnostics[0].message.find("null") != std::string::npos);
}

TEST_CASE("header after entries is ignored with a warning") {
  ParseResult r = ParseLexicon("ab\tpq\n#null=.\ncd\tp-\n");
  CHECK(r.lexicon.entries().size() == 2);
  CHECK(r.lexicon.phonemes().Token(r.lexicon.null_sym()) == "-");
  bool warned = std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                            [](const ParseDiagnostic& d) {
                              return d.message.find("after first entry") !=
                                     std::string::npos;
                            });
  CHECK(warned);
}

}  // namespace
}  // namespace pba
