// validate.h
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

#ifndef SUBWFST_VALIDATE_H_
#define SUBWFST_VALIDATE_H_

#include <string>
#include <vector>

#include "subwfst/fst.h"

namespace subwfst {

// Structural well-formedness checks.  Returns one human-readable diagnostic
// per problem found; an empty vector means the machine is well formed.
//
// Checked:
//   - a start state is set and in range;
//   - at least one final state exists;
//   - every arc destination refers to an existing state;
//   - every state is reachable from the start;
//   - no cycle consists solely of input-ε arcs (an ε-input cycle would let
//     composition loop without consuming anything);
//   - every arc label is in range for the corresponding symbol table
//     (only when that table is attached);
//   - no arc or final weight is NaN.
std::vector<std::string> Validate(const Fst &fst);

// Throws Error with all diagnostics joined by "; " if Validate() is
// non-empty.  Convenience for construction-time assertions.
void ValidateOrThrow(const Fst &fst, const std::string &context);

}  // namespace subwfst

#endif  // SUBWFST_VALIDATE_H_
