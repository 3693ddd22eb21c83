// segmenter.h
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
// Grammar-driven word segmentation and context markers.
//
// A word is segmented by composing its W-WFST with the grammar's SG-WFST
// and taking the first accepting path in the deterministic path order.
// The resulting subword sequence gets positional context markers: the
// first subword keeps its right edge open ("kee+"), the last its left
// edge ("+ta"), interior subwords both ("+ta+"), and a lone subword none.
// Markers are positional — they come from where a subword sits in the
// final sequence, never from which grammar stage produced it.

#ifndef SUBWFST_SEGMENTER_H_
#define SUBWFST_SEGMENTER_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subwfst/fst.h"

namespace subwfst {

enum class Role { kPrefix, kInfix, kSuffix, kSingleton };

// A subword with its positional role.  `text` never contains "+".
struct MarkedSubword {
  std::string text;
  Role role = Role::kSingleton;

  bool operator==(const MarkedSubword &o) const {
    return text == o.text && role == o.role;
  }
};

// prefix -> "text+", suffix -> "+text", infix -> "+text+", singleton ->
// "text".
std::string Render(const MarkedSubword &subword);

// Inverse of Render.  Throws ParseError when the stripped text is empty or
// contains an interior "+".
MarkedSubword ParseMarked(const std::string &rendered);

enum class Source { kGrammar, kFallback, kWholeWord };

const std::string &SourceName(Source source);
Source SourceFromName(const std::string &name);

// A segmented word.  Invariant: concatenating the segment texts yields
// `word`; a single segment is a singleton, otherwise roles run
// prefix, infix..., suffix.
struct Segmentation {
  std::string word;
  std::vector<MarkedSubword> segments;
  Source source = Source::kGrammar;
  Weight weight = weight::One();

  // Rendered segments in order.
  std::vector<std::string> Rendered() const;
};

// Assigns positional roles: one element -> singleton; otherwise first =
// prefix, last = suffix, middle = infix.  Throws Error on an empty list or
// an element containing "+".
std::vector<MarkedSubword> MarkSegments(
    const std::vector<std::string> &subwords);

// Result of one grammar segmentation attempt.  `segmentation` is empty
// when the grammar does not cover the word (including when the word uses
// characters the grammar's character set lacks — such words flow to the
// fallback, they are not errors).  `num_paths` counts the accepting paths
// of the composition, for auditing ambiguous grammars.
struct GrammarSegmentation {
  std::optional<Segmentation> segmentation;
  std::uint64_t num_paths = 0;
};

// Segments one word against a compiled SG-WFST (input table = characters,
// output table = subwords).  Throws Error only for malformed words: empty,
// containing "+", or containing whitespace.
GrammarSegmentation SegmentWord(const std::string &word, const Fst &sg);

// Vocabulary segmentation: partitions `vocab` into grammar-segmented words
// and unsegmented words (fallback candidates), preserving input order in
// both lists.  Malformed or duplicate words produce an entry in `errors`
// and land in neither list.  `jobs` > 1 segments words concurrently;
// results are identical to the sequential run.
struct VocabularySegmentation {
  std::vector<Segmentation> segmented;
  std::vector<std::string> unsegmented;
  std::vector<std::string> errors;
};

VocabularySegmentation SegmentVocabulary(const std::vector<std::string> &vocab,
                                         const Fst &sg, std::size_t jobs = 1);

// Segmentation TSV: `word<TAB>rendered segments space-separated<TAB>source`.
void WriteSegmentationTsv(const std::vector<Segmentation> &segmentations,
                          std::ostream &out);
std::vector<Segmentation> ReadSegmentationTsv(std::istream &in);

}  // namespace subwfst

#endif  // SUBWFST_SEGMENTER_H_
