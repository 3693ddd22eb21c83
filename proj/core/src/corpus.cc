// corpus.cc
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

#include "subwfst/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "subwfst/error.h"
#include "subwfst/parallel.h"
#include "subwfst/unicode.h"

namespace subwfst {

std::uint64_t Corpus::NumTokens() const {
  std::uint64_t n = 0;
  for (const auto &utt : utterances) n += utt.size();
  return n;
}

Corpus ReadCorpus(std::istream &in, bool allow_markers) {
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tokens;
    std::istringstream split(line);
    std::string token;
    while (split >> token) {
      if (!allow_markers && token.find('+') != std::string::npos) {
        throw ParseError("corpus: token \"" + token +
                             "\" contains the reserved marker character "
                             "\"+\"",
                         lineno);
      }
      tokens.push_back(NormalizeNfc(token));
    }
    corpus.utterances.push_back(std::move(tokens));
  }
  return corpus;
}

Corpus ReadCorpusFile(const std::string &path, bool allow_markers) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return ReadCorpus(in, allow_markers);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const auto &utt : corpus.utterances) {
    for (std::size_t i = 0; i < utt.size(); ++i) {
      if (i > 0) out << ' ';
      out << utt[i];
    }
    out << '\n';
  }
}

void WriteCorpusFile(const Corpus &corpus, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  WriteCorpus(corpus, out);
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

std::vector<std::pair<std::string, std::uint64_t>> ExtractVocab(
    const Corpus &corpus) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto &utt : corpus.utterances) {
    for (const std::string &token : utt) ++counts[token];
  }
  std::vector<std::pair<std::string, std::uint64_t>> vocab(counts.begin(),
                                                           counts.end());
  std::sort(vocab.begin(), vocab.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return vocab;
}

namespace {

// One word's segmentation outcome, shared by every occurrence.
struct WordOutcome {
  std::vector<std::string> rendered;
  Source source = Source::kGrammar;
  std::vector<std::string> diagnostics;
  std::string error;  // non-empty when the word failed outright
};

WordOutcome SegmentOneWord(const std::string &word, const Fst &sg,
                           const Fst *u, const SubwordDict *dict,
                           const FallbackOptions &options) {
  WordOutcome out;
  try {
    GrammarSegmentation grammar = SegmentWord(word, sg);
    if (grammar.segmentation) {
      out.rendered = grammar.segmentation->Rendered();
      out.source = Source::kGrammar;
      return out;
    }
    if (u != nullptr && dict != nullptr) {
      FallbackResult fb = SelectSegmentation(word, *u, *dict, options);
      out.rendered = fb.segmentation.Rendered();
      out.source = fb.segmentation.source;
      out.diagnostics = std::move(fb.diagnostics);
      return out;
    }
    // No fallback machinery: Criterion 4 directly.
    out.rendered = {word};
    out.source = Source::kWholeWord;
  } catch (const Error &e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

SegmentedCorpus SegmentCorpus(const Corpus &corpus, const Fst &sg,
                              const Fst *u, const SubwordDict *dict,
                              const FallbackOptions &options,
                              std::size_t jobs) {
  // Distinct words in first-occurrence order; each is segmented once.
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> word_index;
  for (const auto &utt : corpus.utterances) {
    for (const std::string &token : utt) {
      auto [it, inserted] = word_index.emplace(token, words.size());
      (void)it;
      if (inserted) words.push_back(token);
    }
  }

  std::vector<WordOutcome> outcomes(words.size());
  ParallelFor(words.size(), jobs, [&](std::size_t i) {
    outcomes[i] = SegmentOneWord(words[i], sg, u, dict, options);
  });

  SegmentedCorpus result;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const WordOutcome &o = outcomes[i];
    if (!o.error.empty()) continue;
    switch (o.source) {
      case Source::kGrammar:
        ++result.grammar_words;
        break;
      case Source::kFallback:
        ++result.fallback_words;
        break;
      case Source::kWholeWord:
        ++result.whole_word_words;
        result.whole_words.push_back(words[i]);
        break;
    }
    for (const std::string &d : o.diagnostics) result.diagnostics.push_back(d);
  }

  result.corpus.utterances.reserve(corpus.utterances.size());
  for (std::size_t ui = 0; ui < corpus.utterances.size(); ++ui) {
    const auto &utt = corpus.utterances[ui];
    std::vector<std::string> segmented;
    for (std::size_t wi = 0; wi < utt.size(); ++wi) {
      const WordOutcome &o = outcomes[word_index.at(utt[wi])];
      if (!o.error.empty()) {
        result.errors.push_back("utterance " + std::to_string(ui) + " word " +
                                std::to_string(wi) + ": " + o.error);
        segmented.push_back(utt[wi]);  // pass the token through unchanged
        continue;
      }
      segmented.insert(segmented.end(), o.rendered.begin(), o.rendered.end());
    }
    result.corpus.utterances.push_back(std::move(segmented));
  }
  return result;
}

PostprocessResult Postprocess(const std::vector<std::string> &tokens) {
  PostprocessResult result;
  auto strip = [](const std::string &s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
      if (c != '+') out += c;
    }
    return out;
  };

  std::string current;
  bool open = false;  // previous token ended with "+", join pending
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string &token = tokens[i];
    if (token.empty()) {
      result.diagnostics.push_back("token " + std::to_string(i) +
                                   ": empty token");
      continue;
    }
    bool starts = token.front() == '+';
    bool ends = token.back() == '+' && token.size() > 1;
    if (token == "+") {
      // A lone marker is both dangling edges at once.
      result.diagnostics.push_back("token " + std::to_string(i) +
                                   ": bare marker token");
      starts = true;
      ends = false;
    }

    if (open && starts) {
      current += strip(token);  // both sides marked: join
    } else {
      if (open && !starts) {
        result.diagnostics.push_back(
            "token " + std::to_string(i) +
            ": previous token ends with \"+\" but this one does not start "
            "with it");
      }
      if (!open && starts) {
        result.diagnostics.push_back(
            "token " + std::to_string(i) +
            ": starts with \"+\" but the previous token does not end with "
            "it");
      }
      if (!current.empty()) result.words.push_back(current);
      current = strip(token);
    }
    open = ends;
  }
  if (open) {
    result.diagnostics.push_back("last token ends with a dangling \"+\"");
  }
  if (!current.empty()) result.words.push_back(current);
  return result;
}

PostprocessedCorpus PostprocessCorpus(const Corpus &segmented) {
  PostprocessedCorpus out;
  out.corpus.utterances.reserve(segmented.utterances.size());
  for (std::size_t ui = 0; ui < segmented.utterances.size(); ++ui) {
    PostprocessResult r = Postprocess(segmented.utterances[ui]);
    for (const std::string &d : r.diagnostics) {
      out.diagnostics.push_back("utterance " + std::to_string(ui) + ": " + d);
    }
    out.corpus.utterances.push_back(std::move(r.words));
  }
  return out;
}

}  // namespace subwfst
