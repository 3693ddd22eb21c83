// grammar.cc
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

#include "subwfst/grammar.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "subwfst/error.h"
#include "subwfst/unicode.h"

namespace subwfst {

namespace {

using nlohmann::json;

const std::vector<std::pair<Category, std::string>> &CategoryNames() {
  static const auto *names = new std::vector<std::pair<Category, std::string>>{
      {Category::kPastVerb, "past_verb"},
      {Category::kPresentFutureVerb, "present_future_verb"},
      {Category::kNoun, "noun"},
      {Category::kPronoun, "pronoun"},
      {Category::kNumber, "number"},
      {Category::kIndependent, "independent"},
  };
  return *names;
}

// Checks a subword string and returns it NFC-normalized.
std::string CheckSubword(const std::string &raw, const std::string &where) {
  if (raw.empty()) {
    throw ParseError("grammar: empty subword in " + where);
  }
  if (raw.find('+') != std::string::npos) {
    throw ParseError("grammar: subword \"" + raw + "\" in " + where +
                     " contains the reserved marker character \"+\"");
  }
  for (char c : raw) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw ParseError("grammar: subword \"" + raw + "\" in " + where +
                       " contains whitespace");
    }
  }
  return NormalizeNfc(raw);
}

std::vector<std::string> ParseStage(const json &j, const std::string &where) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("grammar: " + where +
                     " must be a non-empty array of subword strings");
  }
  std::vector<std::string> stage;
  std::unordered_set<std::string> seen;
  for (const auto &item : j) {
    if (!item.is_string()) {
      throw ParseError("grammar: non-string subword in " + where);
    }
    std::string subword = CheckSubword(item.get<std::string>(), where);
    if (!seen.insert(subword).second) {
      throw ParseError("grammar: duplicate subword \"" + subword + "\" in " +
                       where);
    }
    stage.push_back(std::move(subword));
  }
  return stage;
}

std::vector<std::vector<std::string>> ParseGroups(const json &j,
                                                  const std::string &where) {
  if (!j.is_array()) {
    throw ParseError("grammar: " + where + " must be an array of arrays");
  }
  std::vector<std::vector<std::string>> groups;
  for (std::size_t i = 0; i < j.size(); ++i) {
    groups.push_back(
        ParseStage(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return groups;
}

// True when the skip pairs alone connect junction 0 to junction K — every
// stage bypassed, i.e. an ε-only path through the category.
bool HasEpsilonOnlyPath(const CategorySpec &cat) {
  int k = cat.NumStages();
  std::vector<char> reach(static_cast<std::size_t>(k) + 1, 0);
  reach[0] = 1;
  // Skip pairs only go forward, so one forward sweep settles reachability.
  std::vector<std::pair<int, int>> sorted = cat.skips;
  std::sort(sorted.begin(), sorted.end());
  for (const auto &[from, to] : sorted) {
    if (reach[static_cast<std::size_t>(from)]) {
      reach[static_cast<std::size_t>(to)] = 1;
    }
  }
  return reach[static_cast<std::size_t>(k)] != 0;
}

CategorySpec ParseCategory(const json &j) {
  if (!j.is_object()) {
    throw ParseError("grammar: category entries must be objects");
  }
  static const std::set<std::string> kKnownKeys = {
      "name", "prefixes", "infix_groups", "suffix_groups", "skips"};
  for (const auto &[key, value] : j.items()) {
    (void)value;
    if (kKnownKeys.count(key) == 0) {
      throw ParseError("grammar: unknown category key \"" + key + "\"");
    }
  }
  if (!j.contains("name") || !j["name"].is_string()) {
    throw ParseError("grammar: category needs a string \"name\"");
  }
  CategorySpec cat;
  cat.name = CategoryFromName(j["name"].get<std::string>());
  const std::string &cname = CategoryName(cat.name);

  if (!j.contains("prefixes")) {
    throw ParseError("grammar: category \"" + cname + "\" needs \"prefixes\"");
  }
  cat.prefixes = ParseStage(j["prefixes"], cname + ".prefixes");
  if (j.contains("infix_groups")) {
    cat.infix_groups = ParseGroups(j["infix_groups"], cname + ".infix_groups");
  }
  if (j.contains("suffix_groups")) {
    cat.suffix_groups =
        ParseGroups(j["suffix_groups"], cname + ".suffix_groups");
  }

  int k = cat.NumStages();
  if (j.contains("skips")) {
    const json &skips = j["skips"];
    if (!skips.is_array()) {
      throw ParseError("grammar: " + cname +
                       ".skips must be an array of [from, to] pairs");
    }
    for (const auto &pair : skips) {
      if (!pair.is_array() || pair.size() != 2 ||
          !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
        throw ParseError("grammar: " + cname +
                         ".skips entries must be [from, to] integer pairs");
      }
      int from = pair[0].get<int>();
      int to = pair[1].get<int>();
      if (from < 0 || to > k || from >= to) {
        throw ParseError("grammar: " + cname + ".skips pair [" +
                         std::to_string(from) + ", " + std::to_string(to) +
                         "] out of range: need 0 <= from < to <= " +
                         std::to_string(k));
      }
      cat.skips.emplace_back(from, to);
    }
    std::sort(cat.skips.begin(), cat.skips.end());
    cat.skips.erase(std::unique(cat.skips.begin(), cat.skips.end()),
                    cat.skips.end());
  } else {
    // Default: every stage after the mandatory prefix stage is bypassable.
    for (int s = 1; s < k; ++s) cat.skips.emplace_back(s, s + 1);
  }

  if (cat.name == Category::kIndependent) {
    if (!cat.infix_groups.empty() || !cat.suffix_groups.empty() ||
        !cat.skips.empty()) {
      throw ParseError(
          "grammar: the independent category holds only singletons: one "
          "stage (prefixes), no skips");
    }
  }
  if (HasEpsilonOnlyPath(cat)) {
    throw ParseError("grammar: category \"" + cname +
                     "\" has an ε-only path: the skip pairs bypass every "
                     "stage");
  }
  return cat;
}

}  // namespace

const std::string &CategoryName(Category category) {
  for (const auto &[cat, name] : CategoryNames()) {
    if (cat == category) return name;
  }
  throw Error("grammar: unknown category enum value");
}

Category CategoryFromName(const std::string &name) {
  for (const auto &[cat, cname] : CategoryNames()) {
    if (cname == name) return cat;
  }
  throw ParseError("grammar: unknown category name \"" + name +
                   "\" (expected past_verb, present_future_verb, noun, "
                   "pronoun, number, or independent)");
}

const std::vector<std::string> &CategorySpec::Stage(int index) const {
  if (index == 0) return prefixes;
  int i = index - 1;
  if (i < static_cast<int>(infix_groups.size())) {
    return infix_groups[static_cast<std::size_t>(i)];
  }
  i -= static_cast<int>(infix_groups.size());
  if (i < static_cast<int>(suffix_groups.size())) {
    return suffix_groups[static_cast<std::size_t>(i)];
  }
  throw Error("grammar: stage index " + std::to_string(index) +
              " out of range");
}

GrammarSpec ParseGrammar(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("grammar: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("grammar: top level must be a JSON object");
  }
  static const std::set<std::string> kKnownKeys = {"language", "categories"};
  for (const auto &[key, value] : doc.items()) {
    (void)value;
    if (kKnownKeys.count(key) == 0) {
      throw ParseError("grammar: unknown top-level key \"" + key + "\"");
    }
  }

  GrammarSpec spec;
  if (doc.contains("language")) {
    if (!doc["language"].is_string()) {
      throw ParseError("grammar: \"language\" must be a string");
    }
    spec.language = doc["language"].get<std::string>();
  }
  if (!doc.contains("categories") || !doc["categories"].is_array() ||
      doc["categories"].empty()) {
    throw ParseError(
        "grammar: \"categories\" must be a non-empty array of categories");
  }
  std::unordered_set<std::string> seen_names;
  for (const auto &entry : doc["categories"]) {
    CategorySpec cat = ParseCategory(entry);
    if (!seen_names.insert(CategoryName(cat.name)).second) {
      throw ParseError("grammar: duplicate category \"" +
                       CategoryName(cat.name) + "\"");
    }
    spec.categories.push_back(std::move(cat));
  }
  return spec;
}

SymbolTablePtr BuildCharset(const GrammarSpec &spec) {
  auto charset = std::make_shared<SymbolTable>();
  for (const CategorySpec &cat : spec.categories) {
    for (int s = 0; s < cat.NumStages(); ++s) {
      for (const std::string &subword : cat.Stage(s)) {
        for (const std::string &ch : Codepoints(subword)) {
          charset->AddSymbol(ch);
        }
      }
    }
  }
  return charset;
}

Fst BuildSgWfst(const GrammarSpec &spec, SymbolTablePtr charset) {
  auto subwords = std::make_shared<SymbolTable>();
  Fst fst(charset, SymbolTablePtr());  // output table attached below

  StateId loop = fst.AddState();
  fst.SetStart(loop);
  fst.SetFinal(loop, weight::One());

  for (const CategorySpec &cat : spec.categories) {
    int k = cat.NumStages();
    // Junctions 0..K: junction s is the point before stage s; junction K
    // feeds the exit arc.
    StateId junction0 = fst.AddStates(k + 1);
    auto junction = [&](int s) { return junction0 + s; };

    fst.AddArc(loop, {kEpsilon, kEpsilon, weight::One(), junction(0)});
    for (int s = 0; s < k; ++s) {
      for (const std::string &subword : cat.Stage(s)) {
        std::vector<std::string> chars = Codepoints(subword);
        Label olabel = subwords->AddSymbol(subword);
        StateId src = junction(s);
        for (std::size_t i = 0; i < chars.size(); ++i) {
          Label ilabel = charset->Find(chars[i]);
          if (ilabel == SymbolTable::kNoLabel) {
            throw Error("grammar: character \"" + chars[i] + "\" of subword \"" +
                        subword + "\" missing from the character set");
          }
          bool last = i + 1 == chars.size();
          StateId dst = last ? junction(s + 1) : fst.AddState();
          fst.AddArc(src, {ilabel, last ? olabel : kEpsilon, weight::One(),
                           dst});
          src = dst;
        }
      }
    }
    for (const auto &[from, to] : cat.skips) {
      fst.AddArc(junction(from),
                 {kEpsilon, kEpsilon, weight::One(), junction(to)});
    }
    fst.AddArc(junction(k), {kEpsilon, kEpsilon, weight::One(), loop});
  }

  fst.SetOutputSymbols(std::move(subwords));
  return fst;
}

Fst BuildWWfst(const std::string &word, SymbolTablePtr charset,
               const std::shared_ptr<SymbolTable> &wordsyms) {
  if (word.empty()) {
    throw Error("w-wfst: word is empty");
  }
  if (word.find('+') != std::string::npos) {
    throw Error("w-wfst: word \"" + word +
                "\" contains the reserved marker character \"+\"");
  }
  if (!wordsyms) {
    throw Error("w-wfst: no word symbol table supplied");
  }
  std::vector<std::string> chars = Codepoints(word);
  Label word_label = wordsyms->AddSymbol(word);

  Fst fst(wordsyms, charset);
  StateId src = fst.AddState();
  fst.SetStart(src);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    Label olabel = charset->Find(chars[i]);
    if (olabel == SymbolTable::kNoLabel) {
      throw Error("w-wfst: character \"" + chars[i] + "\" of word \"" + word +
                  "\" is not in the character set");
    }
    StateId dst = fst.AddState();
    fst.AddArc(src, {i == 0 ? word_label : kEpsilon, olabel, weight::One(),
                     dst});
    src = dst;
  }
  fst.SetFinal(src, weight::One());
  return fst;
}

const std::vector<std::string> *PronTable::Find(
    const std::string &subword) const {
  for (const auto &[key, phones] : entries) {
    if (key == subword) return &phones;
  }
  return nullptr;
}

PronTable ParsePronTable(std::istream &in) {
  PronTable table;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("pron table: expected \"subword<TAB>phone phone ...\"",
                       lineno);
    }
    std::string subword = NormalizeNfc(line.substr(0, tab));
    if (!seen.insert(subword).second) {
      throw ParseError("pron table: duplicate entry \"" + subword + "\"",
                       lineno);
    }
    std::vector<std::string> phones;
    std::istringstream rest(line.substr(tab + 1));
    std::string phone;
    while (rest >> phone) phones.push_back(phone);
    if (phones.empty()) {
      throw ParseError("pron table: entry \"" + subword + "\" has no phones",
                       lineno);
    }
    table.entries.emplace_back(std::move(subword), std::move(phones));
  }
  return table;
}

PronTable ReadPronTableFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return ParsePronTable(in);
}

SymbolTablePtr BuildPhoneSet(const PronTable &pron) {
  auto phones = std::make_shared<SymbolTable>();
  for (const auto &[subword, phone_seq] : pron.entries) {
    (void)subword;
    for (const std::string &phone : phone_seq) phones->AddSymbol(phone);
  }
  return phones;
}

}  // namespace subwfst
