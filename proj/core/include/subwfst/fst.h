// fst.h
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
// Weighted finite-state transducer over the (max, +) log10 semiring.
//
// A mutable adjacency-list transducer.  States are dense integers assigned
// by AddState(); arcs live in per-state vectors and are always iterated in
// insertion order, which keeps every downstream algorithm deterministic.
// Input and output alphabets are shared_ptr symbol tables so that machines
// built from one grammar can share a single table instance.

#ifndef SUBWFST_FST_H_
#define SUBWFST_FST_H_

#include <cstdint>
#include <vector>

#include "subwfst/symbol_table.h"
#include "subwfst/weight.h"

namespace subwfst {

using StateId = std::int32_t;

inline constexpr StateId kNoState = -1;

// One transition.  `ilabel`/`olabel` index the FST's symbol tables; 0 is
// epsilon on either side.
struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight = weight::One();
  StateId dst = kNoState;

  bool operator==(const Arc &o) const {
    return ilabel == o.ilabel && olabel == o.olabel && weight == o.weight &&
           dst == o.dst;
  }
};

class Fst {
 public:
  Fst() = default;
  Fst(SymbolTablePtr isyms, SymbolTablePtr osyms)
      : isyms_(std::move(isyms)), osyms_(std::move(osyms)) {}

  // Appends a fresh state with no arcs and returns its id.
  StateId AddState();

  // Adds `count` states and returns the id of the first.
  StateId AddStates(StateId count);

  // Appends an arc to `src`'s arc list.  `src` must exist; the destination
  // may be any value, including one that does not (yet) exist — Validate()
  // reports dangling destinations so they must be constructible here.
  void AddArc(StateId src, const Arc &arc);

  // Marks `state` as the (single) start state.
  void SetStart(StateId state);

  // Marks `state` final with the given weight.  Calling again overwrites.
  // Setting weight::Zero() removes finality.
  void SetFinal(StateId state, Weight weight);

  StateId Start() const { return start_; }

  // Final weight of `state`: weight::Zero() when not final.
  Weight Final(StateId state) const;
  bool IsFinal(StateId state) const { return !weight::IsZero(Final(state)); }

  StateId NumStates() const { return static_cast<StateId>(arcs_.size()); }
  std::size_t NumArcs() const;
  std::size_t NumArcs(StateId state) const { return ArcsOf(state).size(); }

  const std::vector<Arc> &ArcsOf(StateId state) const;

  const SymbolTablePtr &InputSymbols() const { return isyms_; }
  const SymbolTablePtr &OutputSymbols() const { return osyms_; }
  void SetInputSymbols(SymbolTablePtr syms) { isyms_ = std::move(syms); }
  void SetOutputSymbols(SymbolTablePtr syms) { osyms_ = std::move(syms); }

  // All final states in ascending id order (for reporting and iteration).
  std::vector<StateId> FinalStates() const;

 private:
  void CheckState(StateId state, const char *what) const;

  StateId start_ = kNoState;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<Weight> final_;  // parallel to arcs_; Zero() means non-final
  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
};

}  // namespace subwfst

#endif  // SUBWFST_FST_H_
