// corpus.h
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
// Corpus ingestion, whole-corpus segmentation, and the inverse
// post-processing that turns recognized subword streams back into words.

#ifndef SUBWFST_CORPUS_H_
#define SUBWFST_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "subwfst/fallback.h"
#include "subwfst/fst.h"
#include "subwfst/segmenter.h"

namespace subwfst {

// Whitespace-tokenized text, one utterance per line.  Blank lines are
// empty utterances and are preserved (reference/hypothesis alignment
// depends on line positions).
struct Corpus {
  std::vector<std::vector<std::string>> utterances;

  std::uint64_t NumTokens() const;
  bool operator==(const Corpus &o) const { return utterances == o.utterances; }
};

// Reads line-per-utterance text: tokens are NFC-normalized and must not
// contain "+" (ParseError with the line number otherwise).  Set
// `allow_markers` when reading a segmented corpus, whose tokens are
// rendered marked subwords.
Corpus ReadCorpus(std::istream &in, bool allow_markers = false);
Corpus ReadCorpusFile(const std::string &path, bool allow_markers = false);
void WriteCorpus(const Corpus &corpus, std::ostream &out);
void WriteCorpusFile(const Corpus &corpus, const std::string &path);

// Deduplicated vocabulary with occurrence counts, ordered by count
// descending, then lexicographically.
std::vector<std::pair<std::string, std::uint64_t>> ExtractVocab(
    const Corpus &corpus);

// Whole-corpus segmentation.  Every token is replaced in place by its
// rendered marked-subword sequence: grammar parse first; the fallback
// criteria when a U-WFST and dictionary are supplied (pass nullptr to skip
// straight to whole-word); Criterion 4 otherwise.  Results are cached per
// word — segmentation is a pure function of the word, so the cache cannot
// change behavior.
struct SegmentedCorpus {
  Corpus corpus;  // tokens are rendered marked subwords
  // Per-source token counts over distinct words as they were segmented.
  std::uint64_t grammar_words = 0;
  std::uint64_t fallback_words = 0;
  std::uint64_t whole_word_words = 0;
  // Criterion-4 words in first-occurrence order (deduplicated): the queue
  // for update_dictionary.
  std::vector<std::string> whole_words;
  // "utterance U word W: message" entries for tokens that failed.  Failed
  // tokens are passed through unchanged.
  std::vector<std::string> errors;
  std::vector<std::string> diagnostics;
};

SegmentedCorpus SegmentCorpus(const Corpus &corpus, const Fst &sg,
                              const Fst *u, const SubwordDict *dict,
                              const FallbackOptions &options = {},
                              std::size_t jobs = 1);

// Inverse of segmentation on token streams.  Joins token t with its
// successor exactly when t ends with "+" and the successor starts with
// "+", then strips every "+".  Malformed marker sequences (a join edge
// with "+" on only one side, or markers facing the stream boundary) are
// reported with token positions and recovered by stripping anyway.
struct PostprocessResult {
  std::vector<std::string> words;
  std::vector<std::string> diagnostics;
};

PostprocessResult Postprocess(const std::vector<std::string> &tokens);

// Per-utterance Postprocess over a whole corpus; diagnostics gain
// utterance indices.
struct PostprocessedCorpus {
  Corpus corpus;
  std::vector<std::string> diagnostics;
};

PostprocessedCorpus PostprocessCorpus(const Corpus &segmented);

}  // namespace subwfst

#endif  // SUBWFST_CORPUS_H_
