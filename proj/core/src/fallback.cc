// fallback.cc
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

#include "subwfst/fallback.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "subwfst/compose.h"
#include "subwfst/error.h"
#include "subwfst/grammar.h"
#include "subwfst/paths.h"
#include "subwfst/text_io.h"
#include "subwfst/unicode.h"

namespace subwfst {

namespace {

constexpr double kPhiSumTolerance = 1e-9;

bool IsBareSingleChar(const std::string &token) {
  return token.find('+') == std::string::npos && CodepointCount(token) == 1;
}

bool IsInfixRendered(const std::string &token) {
  return token.size() >= 3 && token.front() == '+' && token.back() == '+';
}

// Criterion 2 (plus the optional strict-edges tightening), applied to a
// post-merge chunk sequence.
bool PassesCriterion2(const std::vector<std::string> &merged,
                      bool strict_edges) {
  for (std::size_t i = 1; i + 1 < merged.size(); ++i) {
    const std::string &token = merged[i];
    if (IsInfixRendered(token)) continue;
    MarkedSubword parsed = ParseMarked(token);
    if (CodepointCount(parsed.text) > 1) return false;
  }
  if (strict_edges && !merged.empty()) {
    if (merged.front().front() == '+') return false;
    if (merged.back().back() == '+') return false;
  }
  return true;
}

}  // namespace

std::ptrdiff_t SubwordDict::FindRendered(const std::string &rendered) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].Rendered() == rendered) {
      return static_cast<std::ptrdiff_t>(i);
    }
  }
  return -1;
}

void ValidateDict(const SubwordDict &dict) {
  if (!dict.charset) {
    throw Error("dict: no character set");
  }
  if (!(dict.delta > 0.0 && dict.delta < 1.0)) {
    throw Error("dict: delta must be in (0, 1)");
  }
  double sum = 0.0;
  std::unordered_set<std::string> seen;
  for (const DictEntry &entry : dict.entries) {
    std::string rendered = entry.Rendered();
    // Render/ParseMarked round trip enforces the marker rules.
    (void)ParseMarked(rendered);
    if (!seen.insert(rendered).second) {
      throw Error("dict: duplicate entry \"" + rendered + "\"");
    }
    if (!(entry.phi > 0.0 && entry.phi <= 1.0)) {
      throw Error("dict: entry \"" + rendered + "\" has phi outside (0, 1]");
    }
    sum += entry.phi;
  }
  if (!dict.entries.empty() && std::fabs(sum - 1.0) > kPhiSumTolerance) {
    throw Error("dict: unigram probabilities sum to " + FormatWeight(sum) +
                ", not 1");
  }
}

SubwordDict EstimateUnigrams(const std::vector<std::string> &tokens,
                             double delta) {
  if (tokens.empty()) {
    throw Error("estimate: empty token stream");
  }
  std::vector<std::string> order;
  std::unordered_map<std::string, std::uint64_t> counts;
  std::unordered_map<std::string, MarkedSubword> parsed;
  for (const std::string &token : tokens) {
    MarkedSubword sub = ParseMarked(token);  // rejects malformed tokens
    auto [it, inserted] = counts.emplace(token, 0);
    if (inserted) {
      order.push_back(token);
      parsed.emplace(token, std::move(sub));
    }
    ++it->second;
  }

  SubwordDict dict;
  dict.delta = delta;
  auto charset = std::make_shared<SymbolTable>();
  double total = static_cast<double>(tokens.size());
  for (const std::string &token : order) {
    DictEntry entry;
    entry.subword = parsed.at(token);
    entry.phi = static_cast<double>(counts.at(token)) / total;
    for (const std::string &ch : Codepoints(entry.subword.text)) {
      charset->AddSymbol(ch);
    }
    dict.entries.push_back(std::move(entry));
  }
  dict.charset = std::move(charset);
  ValidateDict(dict);
  return dict;
}

Fst BuildUWfst(const SubwordDict &dict) {
  ValidateDict(dict);
  auto osyms = std::make_shared<SymbolTable>();
  Fst fst(dict.charset, SymbolTablePtr());

  StateId loop = fst.AddState();
  fst.SetStart(loop);
  fst.SetFinal(loop, weight::One());

  for (const DictEntry &entry : dict.entries) {
    std::vector<std::string> chars = Codepoints(entry.subword.text);
    Label olabel = osyms->AddSymbol(entry.Rendered());
    Weight weight = std::log10(entry.phi);
    StateId src = loop;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      Label ilabel = dict.charset->Find(chars[i]);
      if (ilabel == SymbolTable::kNoLabel) {
        throw Error("u-wfst: character \"" + chars[i] + "\" of entry \"" +
                    entry.Rendered() + "\" is not in the character set");
      }
      bool last = i + 1 == chars.size();
      StateId dst = last ? loop : fst.AddState();
      fst.AddArc(src, {ilabel, last ? olabel : kEpsilon,
                       last ? weight : weight::One(), dst});
      src = dst;
    }
  }

  Weight floor = std::log10(dict.delta);
  for (Label c = 1; c < dict.charset->Size(); ++c) {
    Label olabel = osyms->AddSymbol(dict.charset->Find(c));
    fst.AddArc(loop, {c, olabel, floor, loop});
  }

  fst.SetOutputSymbols(std::move(osyms));
  return fst;
}

std::vector<std::string> MergeSingletonRuns(
    const std::vector<std::string> &segments) {
  std::vector<std::string> out;
  std::string run;
  for (const std::string &token : segments) {
    if (IsBareSingleChar(token)) {
      run += token;
      continue;
    }
    if (!run.empty()) {
      out.push_back(std::move(run));
      run.clear();
    }
    out.push_back(token);
  }
  if (!run.empty()) out.push_back(std::move(run));
  return out;
}

FallbackResult SelectSegmentation(const std::string &word, const Fst &u,
                                  const SubwordDict &dict,
                                  const FallbackOptions &options) {
  if (word.empty()) {
    throw Error("fallback: word is empty");
  }
  if (word.find('+') != std::string::npos) {
    throw Error("fallback: word \"" + word +
                "\" contains the reserved marker character \"+\"");
  }
  if (word.find_first_of(" \t\r\n") != std::string::npos) {
    throw Error("fallback: word contains whitespace");
  }
  ValidateDict(dict);

  FallbackResult result;
  auto whole_word = [&]() {
    result.segmentation.word = word;
    result.segmentation.segments = {{word, Role::kSingleton}};
    result.segmentation.source = Source::kWholeWord;
    result.segmentation.weight = weight::One();
    return result;
  };

  // Characters outside ℂ cannot be consumed by any fallback arc, so the
  // word is an exception of the exceptions: Criterion 4.
  for (const std::string &ch : Codepoints(word)) {
    if (!dict.charset->Contains(ch)) return whole_word();
  }

  auto wordsyms = std::make_shared<SymbolTable>();
  Fst w = BuildWWfst(word, dict.charset, wordsyms);
  Fst composed = Compose(w, u);
  PathSet paths = EnumeratePaths(composed, options.max_paths);
  if (paths.truncated) {
    throw Error("fallback: word \"" + word + "\" has more than " +
                std::to_string(options.max_paths) +
                " candidate paths (raise --max-paths)");
  }
  result.num_paths = paths.paths.size();

  const SymbolTablePtr &osyms = u.OutputSymbols();
  if (!osyms) {
    throw Error("fallback: U-WFST is missing its output symbol table");
  }

  // Paths arrive in the deterministic order (weight, then tie-break), so
  // the first survivor of Criterion 2 is Criterion 3's winner.
  const Path *winner = nullptr;
  std::vector<std::string> winner_merged;
  std::size_t equal_weight_collisions = 0;
  for (const Path &path : paths.paths) {
    std::vector<std::string> merged =
        MergeSingletonRuns(OutputStrings(path, *osyms));
    if (!PassesCriterion2(merged, options.strict_edges)) continue;
    if (winner == nullptr) {
      winner = &path;
      winner_merged = std::move(merged);
    } else if (path.weight == winner->weight) {
      ++equal_weight_collisions;
    }
  }
  if (winner == nullptr) return whole_word();

  if (equal_weight_collisions > 0) {
    result.diagnostics.push_back(
        "word \"" + word + "\": " +
        std::to_string(equal_weight_collisions) +
        " equal-weight surviving path(s) resolved by the deterministic "
        "tie-break");
  }

  std::vector<std::string> texts;
  texts.reserve(winner_merged.size());
  for (const std::string &chunk : winner_merged) {
    texts.push_back(ParseMarked(chunk).text);
  }
  result.segmentation.word = word;
  result.segmentation.segments = MarkSegments(texts);
  result.segmentation.source = Source::kFallback;
  result.segmentation.weight = winner->weight;

  std::string rebuilt;
  for (const MarkedSubword &s : result.segmentation.segments) {
    rebuilt += s.text;
  }
  if (rebuilt != word) {
    throw Error("fallback: internal error: segments for \"" + word +
                "\" concatenate to \"" + rebuilt + "\"");
  }
  return result;
}

SubwordDict UpdateDictionary(const SubwordDict &dict,
                             const std::vector<std::string> &whole_words,
                             std::vector<std::string> *warnings) {
  ValidateDict(dict);
  SubwordDict out = dict;

  double min_phi = std::numeric_limits<double>::infinity();
  for (const DictEntry &entry : out.entries) {
    min_phi = std::min(min_phi, entry.phi);
  }
  // An empty dictionary has no observed mass; unit mass per word then
  // renormalizes to uniform.
  if (out.entries.empty()) min_phi = 1.0;

  std::unordered_set<std::string> present;
  for (const DictEntry &entry : out.entries) present.insert(entry.Rendered());

  auto charset = std::make_shared<SymbolTable>(*out.charset);
  bool added = false;
  for (const std::string &word : whole_words) {
    if (word.empty() || word.find('+') != std::string::npos ||
        word.find_first_of(" \t\r\n") != std::string::npos) {
      throw Error("dict update: invalid word \"" + word + "\"");
    }
    if (!present.insert(word).second) {
      if (warnings) {
        warnings->push_back("dict update: \"" + word +
                            "\" is already a dictionary entry; skipped");
      }
      continue;
    }
    DictEntry entry;
    entry.subword = {word, Role::kSingleton};
    entry.phi = min_phi;
    entry.categories = {CategoryName(Category::kIndependent)};
    for (const std::string &ch : Codepoints(word)) charset->AddSymbol(ch);
    out.entries.push_back(std::move(entry));
    added = true;
  }
  if (added) out.charset = std::move(charset);

  double sum = 0.0;
  for (const DictEntry &entry : out.entries) sum += entry.phi;
  if (sum > 0.0) {
    for (DictEntry &entry : out.entries) entry.phi /= sum;
  }
  ValidateDict(out);
  return out;
}

void WriteDictTsv(const SubwordDict &dict, std::ostream &out) {
  out << "#delta\t" << FormatWeight(dict.delta) << '\n';
  for (const DictEntry &entry : dict.entries) {
    out << entry.Rendered() << '\t' << FormatWeight(entry.phi) << '\t';
    for (std::size_t i = 0; i < entry.categories.size(); ++i) {
      if (i > 0) out << ',';
      out << entry.categories[i];
    }
    out << '\n';
  }
}

SubwordDict ReadDictTsv(std::istream &in,
                        std::optional<double> delta_override) {
  SubwordDict dict;
  auto charset = std::make_shared<SymbolTable>();
  std::optional<double> header_delta;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("#delta\t", 0) == 0) {
      if (header_delta || !dict.entries.empty()) {
        throw ParseError("dict tsv: #delta must appear once, first", lineno);
      }
      header_delta = ParseWeight(line.substr(7), lineno);
      continue;
    }
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? std::string::npos
                                          : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos ||
        line.find('\t', tab2 + 1) != std::string::npos) {
      throw ParseError("dict tsv: expected rendered<TAB>phi<TAB>categories",
                       lineno);
    }
    DictEntry entry;
    try {
      entry.subword = ParseMarked(NormalizeNfc(line.substr(0, tab1)));
    } catch (const ParseError &e) {
      throw ParseError(std::string(e.what()), lineno);
    }
    entry.phi = ParseWeight(line.substr(tab1 + 1, tab2 - tab1 - 1), lineno);
    std::string cats = line.substr(tab2 + 1);
    std::size_t begin = 0;
    while (begin <= cats.size() && !cats.empty()) {
      std::size_t comma = cats.find(',', begin);
      std::string cat = cats.substr(
          begin, comma == std::string::npos ? std::string::npos
                                            : comma - begin);
      if (cat.empty()) {
        throw ParseError("dict tsv: empty category name", lineno);
      }
      entry.categories.push_back(std::move(cat));
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
    for (const std::string &ch : Codepoints(entry.subword.text)) {
      charset->AddSymbol(ch);
    }
    dict.entries.push_back(std::move(entry));
  }

  dict.charset = std::move(charset);
  if (delta_override) {
    dict.delta = *delta_override;
  } else if (header_delta) {
    dict.delta = *header_delta;
  }
  ValidateDict(dict);
  return dict;
}

void WriteDictTsvFile(const SubwordDict &dict, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  WriteDictTsv(dict, out);
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

SubwordDict ReadDictTsvFile(const std::string &path,
                            std::optional<double> delta_override) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return ReadDictTsv(in, delta_override);
}

}  // namespace subwfst
