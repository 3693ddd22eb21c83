// fallback.h
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
// Exception-word segmentation: the weighted unigram fallback.
//
// Words the grammar cannot parse are segmented against the U-WFST, a
// one-loop transducer holding every context-marked dictionary subword s
// with weight log10 φ(s) plus every character c of the character set with
// floor weight log10 δ.  Candidate paths then pass through four criteria:
//
//   1. contiguous runs of bare single characters are merged into one chunk;
//   2. paths whose interior segments of more than one character are not
//      infix-rendered ("+…+") are discarded;
//   3. the surviving path with the maximum pre-merge weight wins (the
//      deterministic path order breaks ties);
//   4. if nothing survives, the whole word becomes one singleton segment
//      and is queued for addition to the dictionary.

#ifndef SUBWFST_FALLBACK_H_
#define SUBWFST_FALLBACK_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subwfst/fst.h"
#include "subwfst/segmenter.h"

namespace subwfst {

// One dictionary entry: a context-marked subword with unigram probability
// and the categories it was observed in (empty when unknown).
struct DictEntry {
  MarkedSubword subword;
  double phi = 0.0;
  std::vector<std::string> categories;

  std::string Rendered() const { return Render(subword); }
};

// The context-marked subword dictionary 𝔻⁺ together with the character set
// ℂ and the floor probability δ — everything Eq-1-style fallback needs.
struct SubwordDict {
  std::vector<DictEntry> entries;  // insertion order is the build order
  SymbolTablePtr charset;          // ℂ; character symbols only
  double delta = 0.0001;

  // Index of the entry with this rendered form, or -1.
  std::ptrdiff_t FindRendered(const std::string &rendered) const;
};

// Throws Error when the dictionary is inconsistent: δ outside (0,1), any
// φ outside (0,1], Σφ differing from 1 by more than 1e-9 (only when there
// are entries; an empty dictionary is legal and falls back to characters
// alone), duplicate rendered forms, or a missing character set.
void ValidateDict(const SubwordDict &dict);

// Counts rendered marked-subword tokens: φ(s) = count(s)/total.  The
// character set is the set of characters appearing in any subword text.
// Throws Error on an empty stream, ParseError on a malformed token.
SubwordDict EstimateUnigrams(const std::vector<std::string> &tokens,
                             double delta = 0.0001);

// Builds the U-WFST: a single loop state (start and final, weight 0.0);
// per dictionary entry a character chain back to the loop whose last arc
// carries the rendered subword as output and log10 φ(s) as weight; per
// character a one-arc loop with output = the character and weight
// log10 δ.  Input table = dict.charset; output table is built here.
Fst BuildUWfst(const SubwordDict &dict);

// Criterion 1.  Merges maximal runs of consecutive bare single-character
// tokens (no markers, exactly one code point) into one unmarked chunk.
std::vector<std::string> MergeSingletonRuns(
    const std::vector<std::string> &segments);

struct FallbackOptions {
  // Hard cap on path enumeration; exceeding it is an error (loud failure
  // rather than a silently truncated search).
  std::size_t max_paths = 10000;
  // Criterion 2 normally constrains interior segments only.  With
  // strict_edges the first segment must not begin with "+" and the last
  // must not end with "+".
  bool strict_edges = false;
};

struct FallbackResult {
  Segmentation segmentation;  // source kFallback, or kWholeWord (Criterion 4)
  std::uint64_t num_paths = 0;
  std::vector<std::string> diagnostics;
};

// Criteria 1–4 applied to one word.  Characters outside ℂ mean no fallback
// path can exist, so such words go straight to Criterion 4.  Throws Error
// for malformed words and when the path cap is exceeded.
FallbackResult SelectSegmentation(const std::string &word, const Fst &u,
                                  const SubwordDict &dict,
                                  const FallbackOptions &options = {});

// Criterion 4 bookkeeping: adds each word as a singleton entry in the
// independent category, giving it the smallest φ observed before
// renormalization, then rescales so Σφ = 1.  Words already present are
// skipped with a warning (idempotent).  Returns the new dictionary; the
// input is not modified.
SubwordDict UpdateDictionary(const SubwordDict &dict,
                             const std::vector<std::string> &whole_words,
                             std::vector<std::string> *warnings = nullptr);

// Dictionary TSV: first line `#delta<TAB>value`, then one row per entry:
// `rendered<TAB>phi<TAB>categories` (comma-separated, possibly empty).
// The character set is implicit: characters of the entry texts.
void WriteDictTsv(const SubwordDict &dict, std::ostream &out);

// `delta_override`, when set, wins over the file header; with neither the
// default 0.0001 applies.  The result is validated.
SubwordDict ReadDictTsv(std::istream &in,
                        std::optional<double> delta_override = std::nullopt);

void WriteDictTsvFile(const SubwordDict &dict, const std::string &path);
SubwordDict ReadDictTsvFile(const std::string &path,
                            std::optional<double> delta_override =
                                std::nullopt);

}  // namespace subwfst

#endif  // SUBWFST_FALLBACK_H_
