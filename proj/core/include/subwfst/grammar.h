// grammar.h
//
// Copyright 2026 The subwfst Authors
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
//
// Declarative subword grammars and their compilation to transducers.
//
// A grammar lists, per word category, the ordered subword stages a word of
// that category passes through: stage 0 is the prefix list, then the infix
// groups, then the suffix groups.  Skip pairs (a, b) let a derivation jump
// from the junction before stage a to the junction before stage b,
// bypassing stages a..b-1.  When a category gives no "skips" key, every
// stage except the prefix stage is individually bypassable.
//
// The compiled SG-WFST has a single loop state that is both start and
// final; each category hangs off it as an epsilon-entered cascade of stage
// subgraphs, and each subword is a character chain that emits the whole
// subword on its last arc.  Because the loop state closes the graph, a
// word may be parsed as several category passes in sequence — that is what
// makes agglutinated compounds segmentable.

#ifndef SUBWFST_GRAMMAR_H_
#define SUBWFST_GRAMMAR_H_

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "subwfst/fst.h"

namespace subwfst {

enum class Category {
  kPastVerb,
  kPresentFutureVerb,
  kNoun,
  kPronoun,
  kNumber,
  kIndependent,
};

const std::string &CategoryName(Category category);

// Throws ParseError for anything outside the six known names.
Category CategoryFromName(const std::string &name);

// One word category: an ordered list of subword stages plus skip pairs.
struct CategorySpec {
  Category name = Category::kNoun;
  std::vector<std::string> prefixes;
  std::vector<std::vector<std::string>> infix_groups;
  std::vector<std::vector<std::string>> suffix_groups;
  // Resolved skip pairs (from-junction, to-junction), 0 <= from < to <=
  // NumStages().  Defaults already applied.
  std::vector<std::pair<int, int>> skips;

  // Stage count K: 1 (prefixes) + infix groups + suffix groups.
  int NumStages() const {
    return 1 + static_cast<int>(infix_groups.size()) +
           static_cast<int>(suffix_groups.size());
  }

  // Subword list of stage `index` (0 = prefixes).
  const std::vector<std::string> &Stage(int index) const;
};

struct GrammarSpec {
  std::string language;
  std::vector<CategorySpec> categories;
};

// Parses and fully validates the JSON grammar document (see README for the
// schema).  Rejects: malformed JSON, unknown keys, unknown category names,
// duplicate categories, empty stages, subwords with "+" or whitespace,
// out-of-range or non-increasing skip pairs, non-singleton structure in
// the independent category, and categories where the skip pairs alone
// connect entry to exit (an ε-only path).  Throws ParseError.
GrammarSpec ParseGrammar(const std::string &json_text);

// All characters (NFC code points) of all subwords, in first-appearance
// order over categories, stages, subwords, characters.
SymbolTablePtr BuildCharset(const GrammarSpec &spec);

// Compiles the SG-WFST.  `charset` must contain every character of every
// subword (it may be a superset — segmentation of words with characters
// the grammar never uses then fails softly instead of erroring).  The
// result's input table is `charset`; its output table holds the subword
// strings and is built here.  Throws Error on a missing character.
Fst BuildSgWfst(const GrammarSpec &spec, SymbolTablePtr charset);

// Builds the single-path word transducer: first arc carries the word
// symbol (added to `wordsyms`) as input, later arcs input ε; outputs are
// the word's characters in order.  Throws Error for an empty word, a "+"
// in the word, or a character missing from `charset`.
Fst BuildWWfst(const std::string &word, SymbolTablePtr charset,
               const std::shared_ptr<SymbolTable> &wordsyms);

// Pronunciation table: rendered marked subword -> phone sequence.
struct PronTable {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;

  // nullptr when absent.
  const std::vector<std::string> *Find(const std::string &subword) const;
};

// TSV rows `subword<TAB>phone phone ...`; duplicate subwords are a
// ParseError (one pronunciation per entry).
PronTable ParsePronTable(std::istream &in);
PronTable ReadPronTableFile(const std::string &path);

// Phone inventory of a table, in first-appearance order.
SymbolTablePtr BuildPhoneSet(const PronTable &pron);

}  // namespace subwfst

#endif  // SUBWFST_GRAMMAR_H_
