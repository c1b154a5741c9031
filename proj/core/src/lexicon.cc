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
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "pba/hash.h"

namespace pba {

SymSeq StripNulls(const SymSeq& phonemes, Sym null_sym) {
  SymSeq out;
  out.reserve(phonemes.size());
  for (Sym s : phonemes) {
    if (s != null_sym) out.push_back(s);
  }
  return out;
}

SymSeq Lexicon::StripNulls(const SymSeq& phonemes) const {
  return pba::StripNulls(phonemes, null_sym_);
}

std::string Lexicon::Serialize() const {
  std::ostringstream out;
  if (multichar_) out << "#multichar=true\n";
  if (null_sym_ != kNoSym && phonemes_.Token(null_sym_) != "-")
    out << "#null=" << phonemes_.Token(null_sym_) << "\n";
  if (alphabets_declared_) {
    out << "#graphemes=";
    for (int i = 0; i < graphemes_.size(); ++i)
      out << (i ? " " : "") << graphemes_.Token(i);
    out << "\n#phonemes=";
    for (int i = 0; i < phonemes_.size(); ++i)
      out << (i ? " " : "") << phonemes_.Token(i);
    out << "\n";
  }
  bool any_freq = std::any_of(entries_.begin(), entries_.end(),
                              [](const AlignedEntry& e) {
                                return e.word_freq != 1;
                              });
  for (const AlignedEntry& e : entries_) {
    out << WordString(e) << '\t' << PhonemeString(e.phonemes);
    if (any_freq) out << '\t' << e.word_freq;
    out << '\n';
  }
  return out.str();
}

std::string Lexicon::ContentHash() const { return Sha256Hex(Serialize()); }

bool ParseResult::HasRejectedLines() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const ParseDiagnostic& d) {
                       return d.kind == ParseDiagnostic::Kind::kRejectedLine;
                     });
}

std::string ParseResult::RejectedLinesMessage(
    const std::string& source_name) const {
  std::string out;
  for (const ParseDiagnostic& d : diagnostics) {
    if (d.kind != ParseDiagnostic::Kind::kRejectedLine) continue;
    out += source_name + ":" + std::to_string(d.line) + ": " + d.message +
           "\n";
  }
  return out;
}

class LexiconParser {
 public:
  explicit LexiconParser(const LexiconFormat& format) : format_(format) {}

  ParseResult Run(std::istream& in) {
    ParseResult result;
    Lexicon& lex = result.lexicon;
    lex.multichar_ = format_.multichar;
    std::string null_token = format_.null_symbol;
    std::vector<std::string> declared_graphemes;
    std::vector<std::string> declared_phonemes;

    std::string line;
    int line_no = 0;
    bool saw_entry = false;
    // word string -> distinct phoneme sequences seen, for homograph warnings
    std::map<std::string, std::vector<SymSeq>> prons;

    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == '#') {
        std::string key, value;
        if (SplitHeader(line, &key, &value)) {
          if (saw_entry) {
            result.diagnostics.push_back(
                {ParseDiagnostic::Kind::kWarning, line_no,
                 "header '" + key + "' after first entry ignored"});
            continue;
          }
          if (key == "null") {
            if (value.empty() || HasSpace(value))
              throw LexiconError("line " + std::to_string(line_no) +
                                 ": invalid #null= header");
            null_token = value;
          } else if (key == "multichar") {
            lex.multichar_ = (value == "true" || value == "1");
          } else if (key == "graphemes") {
            declared_graphemes = SplitWhitespace(value);
          } else if (key == "phonemes") {
            declared_phonemes = SplitWhitespace(value);
          }
          // Unknown header keys are plain comments.
        }
        continue;
      }

      if (!saw_entry) {
        // Alphabets and null symbol are pinned by the first entry.
        lex.null_sym_ = lex.phonemes_.Intern(null_token);
        if (!declared_graphemes.empty() || !declared_phonemes.empty()) {
          lex.alphabets_declared_ = true;
          for (const std::string& t : declared_graphemes) {
            if (t == null_token)
              throw LexiconError(
                  "declared grapheme alphabet contains the null symbol '" +
                  null_token + "'");
            lex.graphemes_.Intern(t);
          }
          for (const std::string& t : declared_phonemes)
            lex.phonemes_.Intern(t);
        }
        saw_entry = true;
      }

      std::string error;
      AlignedEntry entry;
      if (!ParseEntryLine(line, lex, null_token, &entry, &error)) {
        result.diagnostics.push_back(
            {ParseDiagnostic::Kind::kRejectedLine, line_no, error});
        continue;
      }

      const std::string word = lex.WordString(entry);
      auto& seen = prons[word];
      bool conflict = !seen.empty() &&
                      std::find(seen.begin(), seen.end(), entry.phonemes) ==
                          seen.end();
      if (conflict) {
        result.diagnostics.push_back(
            {ParseDiagnostic::Kind::kWarning, line_no,
             "homograph: '" + word + "' already listed with a different "
             "pronunciation; keeping both"});
      }
      seen.push_back(entry.phonemes);
      lex.entries_.push_back(std::move(entry));
    }

    if (lex.entries_.empty()) {
      std::string msg = "empty lexicon: no entries parsed";
      int shown = 0;
      for (const ParseDiagnostic& d : result.diagnostics) {
        if (d.kind != ParseDiagnostic::Kind::kRejectedLine || shown >= 5)
          continue;
        msg += "\n  line " + std::to_string(d.line) + ": " + d.message;
        ++shown;
      }
      throw LexiconError(msg);
    }
    return result;
  }

 private:
  static bool HasSpace(const std::string& s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) {
      return std::isspace(c);
    });
  }

  // Recognizes `#key=value` headers; other '#' lines are comments.
  static bool SplitHeader(const std::string& line, std::string* key,
                          std::string* value) {
    size_t eq = line.find('=');
    if (eq == std::string::npos) return false;
    *key = line.substr(1, eq - 1);
    *value = line.substr(eq + 1);
    return !key->empty() &&
           std::all_of(key->begin(), key->end(), [](unsigned char c) {
             return std::isalnum(c) || c == '_' || c == '-';
           });
  }

  bool ParseEntryLine(const std::string& line, Lexicon& lex,
                      const std::string& null_token, AlignedEntry* entry,
                      std::string* error) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      *error = "expected 2 or 3 tab-separated fields, got " +
               std::to_string(fields.size());
      return false;
    }

    std::vector<std::string> letters = SplitUtf8(fields[0]);
    if (letters.empty()) {
      *error = "empty word field";
      return false;
    }
    std::vector<std::string> phones =
        lex.multichar_ ? SplitWhitespace(fields[1]) : SplitUtf8(fields[1]);
    if (letters.size() != phones.size()) {
      *error = "alignment error: " + std::to_string(letters.size()) +
               " letters vs " + std::to_string(phones.size()) + " phonemes";
      return false;
    }

    for (const std::string& t : letters) {
      if (t == null_token) {
        *error = "letter position holds the null symbol '" + null_token + "'";
        return false;
      }
      if (HasSpace(t)) {
        *error = "whitespace is not a legal grapheme symbol";
        return false;
      }
      if (lex.alphabets_declared_ && !lex.graphemes_.Contains(t)) {
        *error = "grapheme '" + t + "' not in declared alphabet";
        return false;
      }
    }
    for (const std::string& t : phones) {
      if (HasSpace(t)) {
        *error = "whitespace is not a legal phoneme symbol";
        return false;
      }
      if (lex.alphabets_declared_ && !lex.phonemes_.Contains(t)) {
        *error = "phoneme '" + t + "' not in declared alphabet";
        return false;
      }
    }

    uint64_t freq = 1;
    if (fields.size() == 3) {
      const std::string& f = fields[2];
      if (f.empty() || !std::all_of(f.begin(), f.end(), [](unsigned char c) {
            return std::isdigit(c);
          })) {
        *error = "frequency field is not a non-negative integer: '" + f + "'";
        return false;
      }
      try {
        freq = std::stoull(f);
      } catch (const std::out_of_range&) {
        *error = "frequency field out of range: '" + f + "'";
        return false;
      }
    }

    entry->graphemes.clear();
    entry->phonemes.clear();
    for (const std::string& t : letters)
      entry->graphemes.push_back(lex.graphemes_.Intern(t));
    for (const std::string& t : phones)
      entry->phonemes.push_back(lex.phonemes_.Intern(t));
    entry->word_freq = freq;
    return true;
  }

  LexiconFormat format_;
};

ParseResult ParseLexicon(std::istream& in, const LexiconFormat& format) {
  return LexiconParser(format).Run(in);
}

ParseResult ParseLexicon(const std::string& text,
                         const LexiconFormat& format) {
  std::istringstream in(text);
  return ParseLexicon(in, format);
}

ParseResult ParseLexiconFile(const std::string& path,
                             const LexiconFormat& format) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon file: " + path);
  return ParseLexicon(in, format);
}

}  // namespace pba
