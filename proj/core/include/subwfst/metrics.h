// metrics.h
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

#ifndef SUBWFST_METRICS_H_
#define SUBWFST_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>

#include "subwfst/corpus.h"

namespace subwfst {

// Fraction of test-corpus word occurrences absent from the training
// vocabulary.  With `types` set, counts distinct words instead of
// occurrences.  Throws Error on an empty test corpus.
double OovRate(const std::unordered_set<std::string> &train_vocab,
               const Corpus &test, bool types = false);

// Word error rate under per-utterance minimum edit alignment with unit
// substitution/insertion/deletion costs, summed over utterances.
struct WerReport {
  std::uint64_t sub = 0;
  std::uint64_t ins = 0;
  std::uint64_t del = 0;
  std::uint64_t ref_tokens = 0;

  double Rate() const;  // (S+I+D)/N; 0 when both sides are empty
};

// Throws Error on utterance-count mismatch, or when the reference is empty
// while the hypothesis is not (the rate would be undefined).
WerReport Wer(const Corpus &reference, const Corpus &hypothesis);

// The JSON metrics report.  Fields not computed are emitted as null.
struct MetricsReport {
  std::optional<double> oov_rate;
  std::optional<WerReport> wer;
};

std::string MetricsToJson(const MetricsReport &report);

}  // namespace subwfst

#endif  // SUBWFST_METRICS_H_
