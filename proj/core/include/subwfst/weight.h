// weight.h
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
// The (max, +) semiring over base-10 log probabilities.
//
// A weight is a log10 probability stored as a double.  Combining two
// alternative paths keeps the more probable one (max); extending a path by
// an arc multiplies probabilities, i.e. adds their logs.  Impossible events
// are -infinity, which is absorbing under Times and neutral under Plus; IEEE
// arithmetic gives both properties for free, so no special-casing is needed
// anywhere weights are folded.

#ifndef SUBWFST_WEIGHT_H_
#define SUBWFST_WEIGHT_H_

#include <algorithm>
#include <cmath>
#include <limits>

namespace subwfst {

// Log10 probability.  Values are <= 0 for genuine probabilities, but the
// semiring itself places no such restriction.
using Weight = double;

namespace weight {

// Additive identity: the weight of "no path".
inline constexpr Weight Zero() {
  return -std::numeric_limits<double>::infinity();
}

// Multiplicative identity: probability 1.
inline constexpr Weight One() { return 0.0; }

// Path choice: keep the better (more probable) alternative.
inline Weight Plus(Weight a, Weight b) { return std::max(a, b); }

// Path extension: multiply probabilities.
inline Weight Times(Weight a, Weight b) { return a + b; }

// True for any value obtained from Zero(), i.e. -infinity.
inline bool IsZero(Weight w) { return std::isinf(w) && w < 0; }

// Weights compare exactly: callers that need tolerances apply them at the
// boundary (tests, acceptance checks), not inside the semiring.
inline bool ApproxEqual(Weight a, Weight b, double tol) {
  if (IsZero(a) || IsZero(b)) return IsZero(a) == IsZero(b);
  return std::fabs(a - b) <= tol;
}

}  // namespace weight
}  // namespace subwfst

#endif  // SUBWFST_WEIGHT_H_
