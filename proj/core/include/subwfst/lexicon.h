// lexicon.h
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

#ifndef SUBWFST_LEXICON_H_
#define SUBWFST_LEXICON_H_

#include "subwfst/fallback.h"
#include "subwfst/fst.h"
#include "subwfst/grammar.h"

namespace subwfst {

// Builds the lexicon WFST: the SG-WFST template with phone chains instead
// of character chains.  Around one loop state (start and final):
//
//   - each category named in the dictionary's provenance sets gets a
//     cascade prefix stage -> infix stage -> suffix stage, with the infix
//     and suffix stages bypassable and the prefix stage mandatory; an
//     entry is placed by its marker role ("kee+" into the prefix stage of
//     each of its categories, "+ta+" infix, "+ta" suffix);
//   - singleton entries (no markers) form the independent subgraph: one
//     phone chain each, directly off the loop state, whatever their
//     provenance says — a bare word stands alone;
//   - non-singleton entries with no recorded provenance share one
//     catch-all cascade ("general").
//
// Chain arcs carry the entry's phones as inputs and the rendered marked
// subword as output on the last arc; all weights are the ⊗-identity 0.0.
// Input table = `phones`; the output table is built here.  Throws Error
// when an entry has no pronunciation or uses a phone missing from
// `phones`.
Fst BuildLexiconWfst(const SubwordDict &dict, const PronTable &pron,
                     SymbolTablePtr phones);

}  // namespace subwfst

#endif  // SUBWFST_LEXICON_H_
