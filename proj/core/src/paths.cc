// paths.cc
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

#include "subwfst/paths.h"

#include <algorithm>
#include <limits>

#include "subwfst/error.h"

namespace subwfst {

bool PathPrecedes(const Path &a, const Path &b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.arcs.size() != b.arcs.size()) return a.arcs.size() < b.arcs.size();
  for (std::size_t i = 0; i < a.arcs.size(); ++i) {
    if (a.arcs[i].olabel != b.arcs[i].olabel) {
      return a.arcs[i].olabel < b.arcs[i].olabel;
    }
  }
  return false;
}

std::vector<StateId> TopologicalOrder(const Fst &fst) {
  enum Color : char { kWhite, kGray, kBlack };
  std::vector<Color> color(static_cast<std::size_t>(fst.NumStates()), kWhite);
  std::vector<StateId> post;
  post.reserve(color.size());

  // Iterative DFS; a gray-to-gray edge is a cycle.
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
      if (top.next_arc < arcs.size()) {
        const Arc &arc = arcs[top.next_arc++];
        if (arc.dst < 0 || arc.dst >= fst.NumStates()) {
          throw Error("paths: fst has a dangling arc destination");
        }
        Color &c = color[static_cast<std::size_t>(arc.dst)];
        if (c == kGray) {
          throw Error("paths: fst is cyclic");
        }
        if (c == kWhite) {
          c = kGray;
          stack.push_back({arc.dst, 0});
        }
      } else {
        color[static_cast<std::size_t>(top.state)] = kBlack;
        post.push_back(top.state);
        stack.pop_back();
      }
    }
  }
  std::reverse(post.begin(), post.end());
  return post;
}

PathSet EnumeratePaths(const Fst &fst, std::size_t max_paths) {
  if (max_paths == 0) {
    throw Error("paths: max_paths must be positive");
  }
  (void)TopologicalOrder(fst);  // rejects cycles and dangling arcs
  PathSet result;
  if (fst.Start() == kNoState) return result;

  struct Frame {
    StateId state;
    std::size_t next_arc;
    Weight acc;  // weight accumulated from the start, left to right
  };
  std::vector<Frame> stack;
  std::vector<Arc> arcs_so_far;

  auto visit = [&](StateId s, Weight acc) -> bool {
    // Records the path ending here if `s` is final.  Returns false once the
    // cap is exceeded.
    if (fst.IsFinal(s)) {
      if (result.paths.size() == max_paths) {
        result.truncated = true;
        return false;
      }
      result.paths.push_back({arcs_so_far, weight::Times(acc, fst.Final(s))});
    }
    return true;
  };

  stack.push_back({fst.Start(), 0, weight::One()});
  bool keep_going = visit(fst.Start(), weight::One());
  while (keep_going && !stack.empty()) {
    Frame &top = stack.back();
    const auto &arcs = fst.ArcsOf(top.state);
    if (top.next_arc < arcs.size()) {
      const Arc &arc = arcs[top.next_arc++];
      Weight acc = weight::Times(top.acc, arc.weight);
      arcs_so_far.push_back(arc);
      stack.push_back({arc.dst, 0, acc});
      keep_going = visit(arc.dst, acc);
    } else {
      stack.pop_back();
      if (!arcs_so_far.empty()) arcs_so_far.pop_back();
    }
  }
  std::stable_sort(result.paths.begin(), result.paths.end(), PathPrecedes);
  return result;
}

std::optional<Path> BestPath(const Fst &fst) {
  std::vector<StateId> order = TopologicalOrder(fst);
  if (fst.Start() == kNoState) return std::nullopt;

  // dp[s] is the best start-to-s prefix under the path order.  The order is
  // right compatible with extension (equal arc counts keep label sequences
  // the same length), so the best full path extends some best prefix.
  std::vector<std::optional<Path>> dp(
      static_cast<std::size_t>(fst.NumStates()));
  dp[static_cast<std::size_t>(fst.Start())] = Path{{}, weight::One()};

  for (StateId s : order) {
    auto &entry = dp[static_cast<std::size_t>(s)];
    if (!entry) continue;
    for (const Arc &arc : fst.ArcsOf(s)) {
      Path candidate = *entry;
      candidate.arcs.push_back(arc);
      candidate.weight = weight::Times(candidate.weight, arc.weight);
      auto &slot = dp[static_cast<std::size_t>(arc.dst)];
      if (!slot || PathPrecedes(candidate, *slot)) {
        slot = std::move(candidate);
      }
    }
  }

  std::optional<Path> best;
  for (StateId s : fst.FinalStates()) {
    const auto &entry = dp[static_cast<std::size_t>(s)];
    if (!entry) continue;
    Path total = *entry;
    total.weight = weight::Times(total.weight, fst.Final(s));
    if (!best || PathPrecedes(total, *best)) best = std::move(total);
  }
  return best;
}

std::uint64_t NumAcceptingPaths(const Fst &fst) {
  std::vector<StateId> order = TopologicalOrder(fst);
  if (fst.Start() == kNoState) return 0;

  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto sat_add = [](std::uint64_t a, std::uint64_t b) {
    return a > kMax - b ? kMax : a + b;
  };

  std::vector<std::uint64_t> count(static_cast<std::size_t>(fst.NumStates()),
                                   0);
  count[static_cast<std::size_t>(fst.Start())] = 1;
  std::uint64_t total = 0;
  for (StateId s : order) {
    std::uint64_t c = count[static_cast<std::size_t>(s)];
    if (c == 0) continue;
    if (fst.IsFinal(s)) total = sat_add(total, c);
    for (const Arc &arc : fst.ArcsOf(s)) {
      auto &slot = count[static_cast<std::size_t>(arc.dst)];
      slot = sat_add(slot, c);
    }
  }
  return total;
}

std::vector<Label> OutputLabels(const Path &path) {
  std::vector<Label> out;
  for (const Arc &arc : path.arcs) {
    if (arc.olabel != kEpsilon) out.push_back(arc.olabel);
  }
  return out;
}

std::vector<std::string> OutputStrings(const Path &path,
                                       const SymbolTable &osyms) {
  std::vector<std::string> out;
  for (Label id : OutputLabels(path)) {
    out.push_back(osyms.Find(id));
  }
  return out;
}

}  // namespace subwfst
