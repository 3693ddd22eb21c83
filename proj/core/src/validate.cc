// validate.cc
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

#include "subwfst/validate.h"

#include <cmath>
#include <deque>

#include "subwfst/error.h"

namespace subwfst {

namespace {

std::string StateArcPrefix(StateId s, std::size_t arc_index) {
  return "state " + std::to_string(s) + " arc " + std::to_string(arc_index) +
         ": ";
}

// States unreachable from the start (empty when no usable start exists —
// that problem is reported separately).
std::vector<StateId> UnreachableStates(const Fst &fst) {
  if (fst.Start() < 0 || fst.Start() >= fst.NumStates()) return {};
  std::vector<char> seen(static_cast<std::size_t>(fst.NumStates()), 0);
  std::deque<StateId> queue = {fst.Start()};
  seen[static_cast<std::size_t>(fst.Start())] = 1;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const Arc &arc : fst.ArcsOf(s)) {
      if (arc.dst < 0 || arc.dst >= fst.NumStates()) continue;
      if (!seen[static_cast<std::size_t>(arc.dst)]) {
        seen[static_cast<std::size_t>(arc.dst)] = 1;
        queue.push_back(arc.dst);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (!seen[static_cast<std::size_t>(s)]) out.push_back(s);
  }
  return out;
}

// True when some cycle uses only input-ε arcs.  Iterative DFS over the
// ε-input subgraph; a back edge to a state on the current stack is a cycle.
bool HasEpsilonInputCycle(const Fst &fst) {
  enum Color : char { kWhite, kGray, kBlack };
  std::vector<Color> color(static_cast<std::size_t>(fst.NumStates()), kWhite);
  struct Frame {
    StateId state;
    std::size_t next_arc;
  };
  std::vector<Frame> stack;
  for (StateId root = 0; root < fst.NumStates(); ++root) {
    if (color[static_cast<std::size_t>(root)] != kWhite) continue;
    color[static_cast<std::size_t>(root)] = kGray;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      Frame &top = stack.back();
      const auto &arcs = fst.ArcsOf(top.state);
      bool pushed = false;
      while (top.next_arc < arcs.size()) {
        const Arc &arc = arcs[top.next_arc++];
        if (arc.ilabel != kEpsilon) continue;
        if (arc.dst < 0 || arc.dst >= fst.NumStates()) continue;
        Color &c = color[static_cast<std::size_t>(arc.dst)];
        if (c == kGray) return true;
        if (c == kWhite) {
          c = kGray;
          stack.push_back({arc.dst, 0});
          pushed = true;
          break;
        }
      }
      if (!pushed) {
        color[static_cast<std::size_t>(top.state)] = kBlack;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> Validate(const Fst &fst) {
  std::vector<std::string> issues;

  if (fst.Start() == kNoState) {
    issues.push_back("no start state set");
  } else if (fst.Start() < 0 || fst.Start() >= fst.NumStates()) {
    issues.push_back("start state " + std::to_string(fst.Start()) +
                     " out of range");
  }

  bool any_final = false;
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    Weight w = fst.Final(s);
    if (std::isnan(w)) {
      issues.push_back("state " + std::to_string(s) + ": final weight is NaN");
    } else if (!weight::IsZero(w)) {
      any_final = true;
    }
  }
  if (!any_final) issues.push_back("no final state");

  const SymbolTablePtr &isyms = fst.InputSymbols();
  const SymbolTablePtr &osyms = fst.OutputSymbols();
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    const auto &arcs = fst.ArcsOf(s);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc &arc = arcs[i];
      if (arc.dst < 0 || arc.dst >= fst.NumStates()) {
        issues.push_back(StateArcPrefix(s, i) + "dangling destination " +
                         std::to_string(arc.dst));
      }
      if (arc.ilabel < 0 || (isyms && !isyms->Contains(arc.ilabel))) {
        issues.push_back(StateArcPrefix(s, i) + "input label " +
                         std::to_string(arc.ilabel) +
                         " not in input symbol table");
      }
      if (arc.olabel < 0 || (osyms && !osyms->Contains(arc.olabel))) {
        issues.push_back(StateArcPrefix(s, i) + "output label " +
                         std::to_string(arc.olabel) +
                         " not in output symbol table");
      }
      if (std::isnan(arc.weight)) {
        issues.push_back(StateArcPrefix(s, i) + "weight is NaN");
      }
    }
  }

  for (StateId s : UnreachableStates(fst)) {
    issues.push_back("state " + std::to_string(s) +
                     " is unreachable from the start state");
  }
  if (HasEpsilonInputCycle(fst)) {
    issues.push_back("ε-input cycle: composition against this machine could "
                     "loop without consuming input");
  }
  return issues;
}

void ValidateOrThrow(const Fst &fst, const std::string &context) {
  auto issues = Validate(fst);
  if (issues.empty()) return;
  std::string msg = context + ": invalid fst: ";
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) msg += "; ";
    msg += issues[i];
  }
  throw Error(msg);
}

}  // namespace subwfst
