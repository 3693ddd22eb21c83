// compose.cc
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

#include "subwfst/compose.h"

#include <cstdint>
#include <deque>
#include <memory>
#include <unordered_map>
#include <vector>

#include "subwfst/error.h"

namespace subwfst {

namespace {

// Epsilon-sequencing filter.  kFree: last move was a match (or start).
// kAAlone: last move consumed an output-epsilon arc of a; b's input-epsilon
// moves are still allowed afterwards.  kBAlone: last move consumed an
// input-epsilon arc of b; a's output-epsilon moves are now blocked until
// the next match, which pins each epsilon block to the order "a's moves
// first, then b's".
enum Filter : std::int32_t { kFree = 0, kAAlone = 1, kBAlone = 2 };

struct Triple {
  StateId a;
  StateId b;
  std::int32_t f;
  bool operator==(const Triple &o) const {
    return a == o.a && b == o.b && f == o.f;
  }
};

struct TripleHash {
  std::size_t operator()(const Triple &t) const {
    std::uint64_t h = static_cast<std::uint32_t>(t.a);
    h = h * 1000003u + static_cast<std::uint32_t>(t.b);
    h = h * 1000003u + static_cast<std::uint32_t>(t.f);
    return static_cast<std::size_t>(h);
  }
};

// Arc indices of one state of b, grouped by input label in insertion order.
using ArcIndex = std::unordered_map<Label, std::vector<std::size_t>>;

const ArcIndex &IndexFor(const Fst &b, StateId s,
                         std::vector<std::unique_ptr<ArcIndex>> &cache) {
  auto &slot = cache[static_cast<std::size_t>(s)];
  if (!slot) {
    slot = std::make_unique<ArcIndex>();
    const auto &arcs = b.ArcsOf(s);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      (*slot)[arcs[i].ilabel].push_back(i);
    }
  }
  return *slot;
}

}  // namespace

Fst Compose(const Fst &a, const Fst &b) {
  if (a.Start() == kNoState || b.Start() == kNoState) {
    throw Error("compose: both operands need a start state");
  }
  const SymbolTablePtr &mid_a = a.OutputSymbols();
  const SymbolTablePtr &mid_b = b.InputSymbols();
  if (mid_a && mid_b && mid_a != mid_b && *mid_a != *mid_b) {
    throw Error(
        "compose: output symbols of the left operand do not match input "
        "symbols of the right operand");
  }

  Fst out(a.InputSymbols(), b.OutputSymbols());
  std::unordered_map<Triple, StateId, TripleHash> ids;
  std::vector<Triple> triples;
  std::deque<StateId> queue;

  auto intern = [&](Triple t) {
    auto [it, inserted] = ids.emplace(t, out.NumStates());
    if (inserted) {
      out.AddState();
      triples.push_back(t);
      queue.push_back(it->second);
    }
    return it->second;
  };

  std::vector<std::unique_ptr<ArcIndex>> b_index(
      static_cast<std::size_t>(b.NumStates()));

  StateId start = intern({a.Start(), b.Start(), kFree});
  out.SetStart(start);

  while (!queue.empty()) {
    StateId id = queue.front();
    queue.pop_front();
    Triple t = triples[static_cast<std::size_t>(id)];

    Weight fa = a.Final(t.a);
    Weight fb = b.Final(t.b);
    if (!weight::IsZero(fa) && !weight::IsZero(fb)) {
      out.SetFinal(id, weight::Times(fa, fb));
    }

    const auto &a_arcs = a.ArcsOf(t.a);
    const ArcIndex &b_by_ilabel = IndexFor(b, t.b, b_index);
    const auto &b_arcs = b.ArcsOf(t.b);

    for (const Arc &aa : a_arcs) {
      if (aa.olabel == kEpsilon) {
        // a-alone move.
        if (t.f != kBAlone) {
          out.AddArc(id, {aa.ilabel, kEpsilon, aa.weight,
                          intern({aa.dst, t.b, kAAlone})});
        }
      } else {
        // Matches.
        auto hit = b_by_ilabel.find(aa.olabel);
        if (hit == b_by_ilabel.end()) continue;
        for (std::size_t bi : hit->second) {
          const Arc &bb = b_arcs[bi];
          out.AddArc(id, {aa.ilabel, bb.olabel,
                          weight::Times(aa.weight, bb.weight),
                          intern({aa.dst, bb.dst, kFree})});
        }
      }
    }
    // b-alone moves: allowed from every filter state.
    for (const Arc &bb : b_arcs) {
      if (bb.ilabel != kEpsilon) continue;
      out.AddArc(id, {kEpsilon, bb.olabel, bb.weight,
                      intern({t.a, bb.dst, kBAlone})});
    }
  }
  return out;
}

}  // namespace subwfst
