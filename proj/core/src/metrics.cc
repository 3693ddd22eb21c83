// metrics.cc
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

#include "subwfst/metrics.h"

#include <vector>

#include "json.hpp"
#include "subwfst/error.h"

namespace subwfst {

double OovRate(const std::unordered_set<std::string> &train_vocab,
               const Corpus &test, bool types) {
  std::uint64_t total = 0;
  std::uint64_t oov = 0;
  if (types) {
    std::unordered_set<std::string> seen;
    for (const auto &utt : test.utterances) {
      for (const std::string &token : utt) {
        if (!seen.insert(token).second) continue;
        ++total;
        if (train_vocab.count(token) == 0) ++oov;
      }
    }
  } else {
    for (const auto &utt : test.utterances) {
      for (const std::string &token : utt) {
        ++total;
        if (train_vocab.count(token) == 0) ++oov;
      }
    }
  }
  if (total == 0) {
    throw Error("oov: test corpus has no tokens");
  }
  return static_cast<double>(oov) / static_cast<double>(total);
}

double WerReport::Rate() const {
  std::uint64_t edits = sub + ins + del;
  if (ref_tokens == 0) {
    if (edits != 0) {
      throw Error("wer: empty reference with non-empty hypothesis");
    }
    return 0.0;
  }
  return static_cast<double>(edits) / static_cast<double>(ref_tokens);
}

namespace {

// Minimum-edit alignment of one utterance pair.  On cost ties the
// backtrace prefers diagonal moves, then deletions, then insertions, so
// the S/I/D split is deterministic (the total is unique regardless).
void AlignUtterance(const std::vector<std::string> &ref,
                    const std::vector<std::string> &hyp, WerReport *report) {
  std::size_t n = ref.size();
  std::size_t m = hyp.size();
  std::vector<std::vector<std::uint32_t>> d(n + 1,
                                            std::vector<std::uint32_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint32_t diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      std::uint32_t del = d[i - 1][j] + 1;
      std::uint32_t ins = d[i][j - 1] + 1;
      d[i][j] = std::min({diag, del, ins});
    }
  }

  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++report->sub;
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++report->del;
      --i;
    } else {
      ++report->ins;
      --j;
    }
  }
  report->ref_tokens += n;
}

}  // namespace

WerReport Wer(const Corpus &reference, const Corpus &hypothesis) {
  if (reference.utterances.size() != hypothesis.utterances.size()) {
    throw Error("wer: reference has " +
                std::to_string(reference.utterances.size()) +
                " utterances, hypothesis has " +
                std::to_string(hypothesis.utterances.size()));
  }
  WerReport report;
  for (std::size_t u = 0; u < reference.utterances.size(); ++u) {
    AlignUtterance(reference.utterances[u], hypothesis.utterances[u],
                   &report);
  }
  (void)report.Rate();  // surfaces the undefined-rate case early
  return report;
}

std::string MetricsToJson(const MetricsReport &report) {
  nlohmann::ordered_json j;  // keep the documented field order
  if (report.oov_rate) {
    j["oov_rate"] = *report.oov_rate;
  } else {
    j["oov_rate"] = nullptr;
  }
  if (report.wer) {
    j["wer"] = report.wer->Rate();
    j["sub"] = report.wer->sub;
    j["ins"] = report.wer->ins;
    j["del"] = report.wer->del;
    j["ref_tokens"] = report.wer->ref_tokens;
  } else {
    j["wer"] = nullptr;
    j["sub"] = nullptr;
    j["ins"] = nullptr;
    j["del"] = nullptr;
    j["ref_tokens"] = nullptr;
  }
  return j.dump();
}

}  // namespace subwfst
