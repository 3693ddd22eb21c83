// compose.h
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

#ifndef SUBWFST_COMPOSE_H_
#define SUBWFST_COMPOSE_H_

#include "subwfst/fst.h"

namespace subwfst {

// Relational composition a ∘ b: the result transduces x to z with weight
// w1 ⊗ w2 whenever a transduces x to some y with weight w1 and b transduces
// y to z with weight w2.
//
// Epsilon handling uses a three-state sequencing filter.  Between two
// matched labels, all of a's output-epsilon moves are taken before any of
// b's input-epsilon moves (a canonical A*-then-B* order), so no weight of a
// shared path is combined twice in a way that could change the (max, +)
// result; max is idempotent, so residual equal-weight duplicates are
// harmless.
//
// Preconditions: both machines have a start state, and a's output symbol
// table matches b's input symbol table (same object or equal content).
// Throws Error otherwise.  The result carries a's input table and b's
// output table and contains exactly the states reachable from the composed
// start, numbered in discovery order.
Fst Compose(const Fst &a, const Fst &b);

}  // namespace subwfst

#endif  // SUBWFST_COMPOSE_H_
