// subwfst_bench.cc
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
// Microbenchmarks for the hot paths: composition, grammar segmentation,
// fallback selection, and WER alignment.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "subwfst/compose.h"
#include "subwfst/corpus.h"
#include "subwfst/fallback.h"
#include "subwfst/grammar.h"
#include "subwfst/metrics.h"
#include "subwfst/segmenter.h"

namespace subwfst {
namespace {

const char kGrammarJson[] = R"({
  "language": "toy",
  "categories": [
    {
      "name": "past_verb",
      "prefixes": ["kee", "paa", "nada"],
      "infix_groups": [["tt", "nth"]],
      "suffix_groups": [["a", "aan", "om"]]
    },
    {
      "name": "noun",
      "prefixes": ["isai", "mara", "pada"],
      "suffix_groups": [["kal"], ["ai", "in", "ukku"]]
    },
    {
      "name": "pronoun",
      "prefixes": ["en", "nam"],
      "suffix_groups": [["akku", "adhu", "il"]]
    }
  ]
})";

Fst BenchSg() {
  GrammarSpec spec = ParseGrammar(kGrammarJson);
  return BuildSgWfst(spec, BuildCharset(spec));
}

std::string BenchWord(int passes) {
  std::string word;
  const std::vector<std::string> cycle = {"keetta", "isaikalukku", "enakku",
                                          "nadanthom", "marakal"};
  for (int i = 0; i < passes; ++i) word += cycle[i % cycle.size()];
  return word;
}

void BM_Compose(benchmark::State &state) {
  Fst sg = BenchSg();
  std::string word = BenchWord(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto wordsyms = std::make_shared<SymbolTable>();
    Fst w = BuildWWfst(word, sg.InputSymbols(), wordsyms);
    Fst composed = Compose(w, sg);
    benchmark::DoNotOptimize(composed.NumStates());
  }
}
BENCHMARK(BM_Compose)->Arg(1)->Arg(4)->Arg(16);

void BM_SegmentWord(benchmark::State &state) {
  Fst sg = BenchSg();
  std::string word = BenchWord(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    GrammarSegmentation result = SegmentWord(word, sg);
    benchmark::DoNotOptimize(result.num_paths);
  }
}
BENCHMARK(BM_SegmentWord)->Arg(1)->Arg(4)->Arg(16);

SubwordDict BenchDict() {
  std::vector<std::string> tokens;
  for (int i = 0; i < 4; ++i) {
    tokens.push_back("ab+");
    tokens.push_back("+ab");
    tokens.push_back("a");
    tokens.push_back("b");
  }
  return EstimateUnigrams(tokens, 0.0001);
}

void BM_SelectSegmentation(benchmark::State &state) {
  SubwordDict dict = BenchDict();
  Fst u = BuildUWfst(dict);
  std::string word;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    word += (i % 2 == 0) ? 'a' : 'b';
  }
  FallbackOptions options;
  options.max_paths = 1 << 20;
  for (auto _ : state) {
    FallbackResult result = SelectSegmentation(word, u, dict, options);
    benchmark::DoNotOptimize(result.num_paths);
  }
}
BENCHMARK(BM_SelectSegmentation)->Arg(4)->Arg(6)->Arg(8);

void BM_Wer(benchmark::State &state) {
  const std::vector<std::string> alphabet = {"ka", "kee", "isai", "en",
                                             "nam"};
  Corpus ref;
  Corpus hyp;
  std::vector<std::string> ref_utt;
  std::vector<std::string> hyp_utt;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    ref_utt.push_back(alphabet[i % alphabet.size()]);
    hyp_utt.push_back(alphabet[(i + i / 7) % alphabet.size()]);
  }
  ref.utterances = {ref_utt};
  hyp.utterances = {hyp_utt};
  for (auto _ : state) {
    WerReport report = Wer(ref, hyp);
    benchmark::DoNotOptimize(report.sub);
  }
}
BENCHMARK(BM_Wer)->Arg(50)->Arg(200)->Arg(800);

}  // namespace
}  // namespace subwfst

BENCHMARK_MAIN();
