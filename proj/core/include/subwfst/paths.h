// paths.h
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
// Accepting-path extraction for acyclic machines.
//
// All operations here require an acyclic FST (composition results in this
// toolkit are acyclic whenever the grammar passed validation) and report a
// cyclic input as an Error rather than looping or truncating silently.
//
// Paths are ordered deterministically: higher total weight first, then
// fewer arcs, then lexicographically smaller output-label id sequence
// (epsilons included; equal arc counts make the sequences equal length).
// The same order is used by best-path search and by exhaustive
// enumeration, so the two agree on path number one.

#ifndef SUBWFST_PATHS_H_
#define SUBWFST_PATHS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subwfst/fst.h"

namespace subwfst {

// One accepting path: the arcs from the start state to some final state,
// and the total weight (arc weights ⊗ final weight).
struct Path {
  std::vector<Arc> arcs;
  Weight weight = weight::One();
};

// Result of exhaustive enumeration.  `truncated` is set when more than
// `max_paths` accepting paths exist; the returned vector then holds the
// first `max_paths` in the deterministic order restricted to the paths
// that were visited before the cap was hit.
struct PathSet {
  std::vector<Path> paths;
  bool truncated = false;
};

// True when `a` precedes `b` in the deterministic path order described in
// the file comment.  A strict weak ordering over the (weight, arc count,
// output-label sequence) key.
bool PathPrecedes(const Path &a, const Path &b);

// States in a topological order (every arc goes forward).  Unreachable
// states are included.  Throws Error if the machine has a cycle.
std::vector<StateId> TopologicalOrder(const Fst &fst);

// All accepting paths, sorted by PathPrecedes, capped at `max_paths`.
// Throws Error on cyclic input or when max_paths == 0.
PathSet EnumeratePaths(const Fst &fst, std::size_t max_paths);

// The first accepting path in the deterministic order, found by dynamic
// programming over a topological order (no enumeration).  Empty when the
// machine accepts nothing.  Throws Error on cyclic input.
std::optional<Path> BestPath(const Fst &fst);

// Number of accepting paths, saturating at UINT64_MAX.  Throws Error on
// cyclic input.
std::uint64_t NumAcceptingPaths(const Fst &fst);

// Non-epsilon output labels of a path, in order.
std::vector<Label> OutputLabels(const Path &path);

// Non-epsilon output labels rendered through a symbol table.
std::vector<std::string> OutputStrings(const Path &path,
                                       const SymbolTable &osyms);

}  // namespace subwfst

#endif  // SUBWFST_PATHS_H_
