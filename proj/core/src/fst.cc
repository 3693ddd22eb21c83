// fst.cc
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

#include "subwfst/fst.h"

#include <string>

#include "subwfst/error.h"

namespace subwfst {

StateId Fst::AddState() {
  arcs_.emplace_back();
  final_.push_back(weight::Zero());
  return NumStates() - 1;
}

StateId Fst::AddStates(StateId count) {
  StateId first = NumStates();
  for (StateId i = 0; i < count; ++i) AddState();
  return first;
}

void Fst::AddArc(StateId src, const Arc &arc) {
  CheckState(src, "arc source");
  arcs_[static_cast<std::size_t>(src)].push_back(arc);
}

void Fst::SetStart(StateId state) {
  CheckState(state, "start state");
  start_ = state;
}

void Fst::SetFinal(StateId state, Weight weight) {
  CheckState(state, "final state");
  final_[static_cast<std::size_t>(state)] = weight;
}

Weight Fst::Final(StateId state) const {
  CheckState(state, "state");
  return final_[static_cast<std::size_t>(state)];
}

std::size_t Fst::NumArcs() const {
  std::size_t n = 0;
  for (const auto &a : arcs_) n += a.size();
  return n;
}

const std::vector<Arc> &Fst::ArcsOf(StateId state) const {
  CheckState(state, "state");
  return arcs_[static_cast<std::size_t>(state)];
}

std::vector<StateId> Fst::FinalStates() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < NumStates(); ++s) {
    if (IsFinal(s)) out.push_back(s);
  }
  return out;
}

void Fst::CheckState(StateId state, const char *what) const {
  if (state < 0 || state >= NumStates()) {
    throw Error(std::string("fst: ") + what + " " + std::to_string(state) +
                " out of range [0, " + std::to_string(NumStates()) + ")");
  }
}

}  // namespace subwfst
