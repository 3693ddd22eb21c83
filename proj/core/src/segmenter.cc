// segmenter.cc
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

#include "subwfst/segmenter.h"

#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "subwfst/compose.h"
#include "subwfst/error.h"
#include "subwfst/grammar.h"
#include "subwfst/parallel.h"
#include "subwfst/paths.h"
#include "subwfst/unicode.h"

namespace subwfst {

namespace {

void CheckWordShape(const std::string &word) {
  if (word.empty()) {
    throw Error("segment: word is empty");
  }
  if (word.find('+') != std::string::npos) {
    throw Error("segment: word \"" + word +
                "\" contains the reserved marker character \"+\"");
  }
  for (char c : word) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw Error("segment: word contains whitespace");
    }
  }
}

}  // namespace

std::string Render(const MarkedSubword &subword) {
  switch (subword.role) {
    case Role::kPrefix:
      return subword.text + "+";
    case Role::kSuffix:
      return "+" + subword.text;
    case Role::kInfix:
      return "+" + subword.text + "+";
    case Role::kSingleton:
      return subword.text;
  }
  throw Error("segment: unknown role");
}

MarkedSubword ParseMarked(const std::string &rendered) {
  std::string_view v = rendered;
  if (v.empty()) {
    throw ParseError("marked subword: empty token");
  }
  bool leading = v.front() == '+';
  if (leading) v.remove_prefix(1);
  bool trailing = !v.empty() && v.back() == '+';
  if (trailing) v.remove_suffix(1);
  if (v.empty() || v.find('+') != std::string_view::npos) {
    throw ParseError("marked subword: malformed token \"" + rendered + "\"");
  }
  MarkedSubword out;
  out.text = std::string(v);
  if (leading && trailing) {
    out.role = Role::kInfix;
  } else if (leading) {
    out.role = Role::kSuffix;
  } else if (trailing) {
    out.role = Role::kPrefix;
  } else {
    out.role = Role::kSingleton;
  }
  return out;
}

const std::string &SourceName(Source source) {
  static const std::string kGrammarName = "grammar";
  static const std::string kFallbackName = "fallback";
  static const std::string kWholeWordName = "whole_word";
  switch (source) {
    case Source::kGrammar:
      return kGrammarName;
    case Source::kFallback:
      return kFallbackName;
    case Source::kWholeWord:
      return kWholeWordName;
  }
  throw Error("segment: unknown source");
}

Source SourceFromName(const std::string &name) {
  if (name == "grammar") return Source::kGrammar;
  if (name == "fallback") return Source::kFallback;
  if (name == "whole_word") return Source::kWholeWord;
  throw ParseError("segmentation: unknown source \"" + name + "\"");
}

std::vector<std::string> Segmentation::Rendered() const {
  std::vector<std::string> out;
  out.reserve(segments.size());
  for (const MarkedSubword &s : segments) out.push_back(Render(s));
  return out;
}

std::vector<MarkedSubword> MarkSegments(
    const std::vector<std::string> &subwords) {
  if (subwords.empty()) {
    throw Error("segment: cannot mark an empty subword list");
  }
  std::vector<MarkedSubword> out;
  out.reserve(subwords.size());
  for (std::size_t i = 0; i < subwords.size(); ++i) {
    const std::string &text = subwords[i];
    if (text.empty() || text.find('+') != std::string::npos) {
      throw Error("segment: subword \"" + text + "\" cannot be marked");
    }
    Role role;
    if (subwords.size() == 1) {
      role = Role::kSingleton;
    } else if (i == 0) {
      role = Role::kPrefix;
    } else if (i + 1 == subwords.size()) {
      role = Role::kSuffix;
    } else {
      role = Role::kInfix;
    }
    out.push_back({text, role});
  }
  return out;
}

GrammarSegmentation SegmentWord(const std::string &word, const Fst &sg) {
  CheckWordShape(word);
  const SymbolTablePtr &charset = sg.InputSymbols();
  const SymbolTablePtr &subwords = sg.OutputSymbols();
  if (!charset || !subwords) {
    throw Error("segment: SG-WFST is missing its symbol tables");
  }
  // A character the grammar has never seen means "no grammar parse", not a
  // malformed word: such words go to the fallback.
  for (const std::string &ch : Codepoints(word)) {
    if (!charset->Contains(ch)) return {};
  }

  auto wordsyms = std::make_shared<SymbolTable>();
  Fst w = BuildWWfst(word, charset, wordsyms);
  Fst composed = Compose(w, sg);

  GrammarSegmentation result;
  result.num_paths = NumAcceptingPaths(composed);
  if (result.num_paths == 0) return result;

  std::optional<Path> best = BestPath(composed);
  if (!best) {
    throw Error("segment: path count and best-path search disagree");
  }
  Segmentation seg;
  seg.word = word;
  seg.segments = MarkSegments(OutputStrings(*best, *subwords));
  seg.source = Source::kGrammar;
  seg.weight = best->weight;

  std::string rebuilt;
  for (const MarkedSubword &s : seg.segments) rebuilt += s.text;
  if (rebuilt != word) {
    throw Error("segment: internal error: segments for \"" + word +
                "\" concatenate to \"" + rebuilt + "\"");
  }
  result.segmentation = std::move(seg);
  return result;
}

VocabularySegmentation SegmentVocabulary(const std::vector<std::string> &vocab,
                                         const Fst &sg, std::size_t jobs) {
  enum class Kind { kSegmented, kUnsegmented, kError };
  struct Slot {
    Kind kind = Kind::kError;
    Segmentation seg;
    std::string message;
  };
  std::vector<Slot> slots(vocab.size());

  // Duplicate detection is order-sensitive, so it runs before the parallel
  // phase; duplicate occurrences are errors and are not segmented again.
  std::unordered_set<std::string> seen;
  std::vector<char> duplicate(vocab.size(), 0);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (!seen.insert(vocab[i]).second) duplicate[i] = 1;
  }

  ParallelFor(vocab.size(), jobs, [&](std::size_t i) {
    Slot &slot = slots[i];
    if (duplicate[i]) {
      slot.kind = Kind::kError;
      slot.message = "duplicate word \"" + vocab[i] + "\"";
      return;
    }
    try {
      GrammarSegmentation result = SegmentWord(vocab[i], sg);
      if (result.segmentation) {
        slot.kind = Kind::kSegmented;
        slot.seg = std::move(*result.segmentation);
      } else {
        slot.kind = Kind::kUnsegmented;
      }
    } catch (const Error &e) {
      slot.kind = Kind::kError;
      slot.message = e.what();
    }
  });

  VocabularySegmentation out;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    Slot &slot = slots[i];
    switch (slot.kind) {
      case Kind::kSegmented:
        out.segmented.push_back(std::move(slot.seg));
        break;
      case Kind::kUnsegmented:
        out.unsegmented.push_back(vocab[i]);
        break;
      case Kind::kError:
        out.errors.push_back(std::move(slot.message));
        break;
    }
  }
  return out;
}

void WriteSegmentationTsv(const std::vector<Segmentation> &segmentations,
                          std::ostream &out) {
  for (const Segmentation &seg : segmentations) {
    out << seg.word << '\t';
    const auto rendered = seg.Rendered();
    for (std::size_t i = 0; i < rendered.size(); ++i) {
      if (i > 0) out << ' ';
      out << rendered[i];
    }
    out << '\t' << SourceName(seg.source) << '\n';
  }
}

std::vector<Segmentation> ReadSegmentationTsv(std::istream &in) {
  std::vector<Segmentation> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? std::string::npos
                                          : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos ||
        line.find('\t', tab2 + 1) != std::string::npos) {
      throw ParseError(
          "segmentation tsv: expected word<TAB>segments<TAB>source", lineno);
    }
    Segmentation seg;
    seg.word = line.substr(0, tab1);

    std::istringstream tokens(line.substr(tab1 + 1, tab2 - tab1 - 1));
    std::string token;
    std::string rebuilt;
    while (tokens >> token) {
      MarkedSubword sub;
      try {
        sub = ParseMarked(token);
      } catch (const ParseError &e) {
        throw ParseError(std::string(e.what()), lineno);
      }
      rebuilt += sub.text;
      seg.segments.push_back(std::move(sub));
    }
    if (seg.segments.empty()) {
      throw ParseError("segmentation tsv: no segments", lineno);
    }
    if (rebuilt != seg.word) {
      throw ParseError("segmentation tsv: segments concatenate to \"" +
                           rebuilt + "\", not \"" + seg.word + "\"",
                       lineno);
    }
    std::vector<std::string> texts;
    for (const auto &s : seg.segments) texts.push_back(s.text);
    std::vector<MarkedSubword> positional = MarkSegments(texts);
    for (std::size_t i = 0; i < positional.size(); ++i) {
      if (!(positional[i] == seg.segments[i])) {
        throw ParseError(
            "segmentation tsv: marker roles do not match segment positions",
            lineno);
      }
    }
    try {
      seg.source = SourceFromName(line.substr(tab2 + 1));
    } catch (const ParseError &e) {
      throw ParseError(std::string(e.what()), lineno);
    }
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace subwfst
