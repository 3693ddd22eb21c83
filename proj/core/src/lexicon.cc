// lexicon.cc
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

#include "subwfst/lexicon.h"

#include <array>
#include <map>
#include <unordered_set>

#include "subwfst/error.h"

namespace subwfst {

namespace {

constexpr const char kGeneralBucket[] = "general";

// Per-category stage lists: dict entry indices by marker role.
struct CascadeBucket {
  std::vector<std::size_t> prefixes;
  std::vector<std::size_t> infixes;
  std::vector<std::size_t> suffixes;
};

}  // namespace

Fst BuildLexiconWfst(const SubwordDict &dict, const PronTable &pron,
                     SymbolTablePtr phones) {
  ValidateDict(dict);
  if (!phones) {
    throw Error("lexicon: no phone symbol table supplied");
  }

  auto osyms = std::make_shared<SymbolTable>();
  std::vector<Label> olabels(dict.entries.size());
  std::vector<const std::vector<std::string> *> prons(dict.entries.size());
  for (std::size_t i = 0; i < dict.entries.size(); ++i) {
    std::string rendered = dict.entries[i].Rendered();
    olabels[i] = osyms->AddSymbol(rendered);
    prons[i] = pron.Find(rendered);
    if (prons[i] == nullptr) {
      throw Error("lexicon: no pronunciation for \"" + rendered + "\"");
    }
  }

  // Bucket entries: singletons form the independent subgraph; the rest go
  // into one cascade per provenance category (first-appearance order), or
  // the catch-all when no category was recorded.
  std::vector<std::size_t> singletons;
  std::vector<std::string> bucket_order;
  std::map<std::string, CascadeBucket> buckets;
  for (std::size_t i = 0; i < dict.entries.size(); ++i) {
    const DictEntry &entry = dict.entries[i];
    if (entry.subword.role == Role::kSingleton) {
      singletons.push_back(i);
      continue;
    }
    std::vector<std::string> cats = entry.categories;
    if (cats.empty()) cats.push_back(kGeneralBucket);
    std::unordered_set<std::string> dedup;
    for (const std::string &cat : cats) {
      if (!dedup.insert(cat).second) continue;
      auto [it, inserted] = buckets.emplace(cat, CascadeBucket{});
      if (inserted) bucket_order.push_back(cat);
      switch (entry.subword.role) {
        case Role::kPrefix:
          it->second.prefixes.push_back(i);
          break;
        case Role::kInfix:
          it->second.infixes.push_back(i);
          break;
        case Role::kSuffix:
          it->second.suffixes.push_back(i);
          break;
        case Role::kSingleton:
          break;  // handled above
      }
    }
  }

  Fst fst(phones, SymbolTablePtr());
  StateId loop = fst.AddState();
  fst.SetStart(loop);
  fst.SetFinal(loop, weight::One());

  auto add_chain = [&](StateId from, StateId to, std::size_t entry_index) {
    const std::vector<std::string> &phone_seq = *prons[entry_index];
    StateId src = from;
    for (std::size_t i = 0; i < phone_seq.size(); ++i) {
      Label ilabel = phones->Find(phone_seq[i]);
      if (ilabel == SymbolTable::kNoLabel) {
        throw Error("lexicon: phone \"" + phone_seq[i] + "\" of \"" +
                    dict.entries[entry_index].Rendered() +
                    "\" is not in the phone table");
      }
      bool last = i + 1 == phone_seq.size();
      StateId dst = last ? to : fst.AddState();
      fst.AddArc(src, {ilabel, last ? olabels[entry_index] : kEpsilon,
                       weight::One(), dst});
      src = dst;
    }
  };

  for (const std::string &cat : bucket_order) {
    const CascadeBucket &bucket = buckets.at(cat);
    // A word shape must start with a prefix; a category attested only
    // through interior or final subwords contributes no word shapes of its
    // own, so it gets no subgraph (its entries may still appear under
    // their other categories).
    if (bucket.prefixes.empty()) continue;

    std::vector<const std::vector<std::size_t> *> stages = {&bucket.prefixes};
    if (!bucket.infixes.empty()) stages.push_back(&bucket.infixes);
    if (!bucket.suffixes.empty()) stages.push_back(&bucket.suffixes);

    StateId junction0 =
        fst.AddStates(static_cast<StateId>(stages.size()) + 1);
    auto junction = [&](std::size_t s) {
      return junction0 + static_cast<StateId>(s);
    };

    fst.AddArc(loop, {kEpsilon, kEpsilon, weight::One(), junction(0)});
    for (std::size_t s = 0; s < stages.size(); ++s) {
      for (std::size_t entry_index : *stages[s]) {
        add_chain(junction(s), junction(s + 1), entry_index);
      }
    }
    // Every stage after the mandatory prefix stage is bypassable.
    for (std::size_t s = 1; s < stages.size(); ++s) {
      fst.AddArc(junction(s), {kEpsilon, kEpsilon, weight::One(),
                               junction(s + 1)});
    }
    fst.AddArc(junction(stages.size()),
               {kEpsilon, kEpsilon, weight::One(), loop});
  }

  if (!singletons.empty()) {
    // Independent subgraph: one single-stage cascade for the singletons.
    StateId entry_junction = fst.AddState();
    StateId exit_junction = fst.AddState();
    fst.AddArc(loop, {kEpsilon, kEpsilon, weight::One(), entry_junction});
    for (std::size_t entry_index : singletons) {
      add_chain(entry_junction, exit_junction, entry_index);
    }
    fst.AddArc(exit_junction, {kEpsilon, kEpsilon, weight::One(), loop});
  }

  fst.SetOutputSymbols(std::move(osyms));
  return fst;
}

}  // namespace subwfst
