// fallback_test.cc
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

#include "subwfst/fallback.h"

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle/oracle.h"
#include "subwfst/error.h"

namespace subwfst {
namespace {

SubwordDict MakeDict(const std::vector<std::pair<std::string, double>> &rows,
                     const std::vector<std::string> &chars,
                     double delta = 0.0001) {
  SubwordDict dict;
  for (const auto &[rendered, phi] : rows) {
    DictEntry entry;
    entry.subword = ParseMarked(rendered);
    entry.phi = phi;
    dict.entries.push_back(std::move(entry));
  }
  auto charset = std::make_shared<SymbolTable>();
  for (const std::string &ch : chars) charset->AddSymbol(ch);
  dict.charset = std::move(charset);
  dict.delta = delta;
  return dict;
}

TEST_CASE("validate_dict rejects inconsistent dictionaries") {
  SubwordDict good = MakeDict({{"ab+", 0.5}, {"+c", 0.5}}, {"a", "b", "c"});
  CHECK_NOTHROW(ValidateDict(good));

  SUBCASE("missing character set") {
    good.charset.reset();
    CHECK_THROWS_AS(ValidateDict(good), Error);
  }
  SUBCASE("delta out of range") {
    good.delta = 0.0;
    CHECK_THROWS_AS(ValidateDict(good), Error);
    good.delta = 1.0;
    CHECK_THROWS_AS(ValidateDict(good), Error);
  }
  SUBCASE("phi out of range") {
    good.entries[0].phi = 0.0;
    CHECK_THROWS_AS(ValidateDict(good), Error);
    good.entries[0].phi = 1.5;
    CHECK_THROWS_AS(ValidateDict(good), Error);
  }
  SUBCASE("phi does not sum to one") {
    good.entries[0].phi = 0.25;
    CHECK_THROWS_WITH_AS(ValidateDict(good),
                         doctest::Contains("sum"), Error);
  }
  SUBCASE("duplicate rendered form") {
    SubwordDict dup =
        MakeDict({{"ab+", 0.5}, {"ab+", 0.5}}, {"a", "b"});
    CHECK_THROWS_WITH_AS(ValidateDict(dup),
                         doctest::Contains("duplicate"), Error);
  }
  SUBCASE("empty dictionary with a charset is legal") {
    SubwordDict empty = MakeDict({}, {"a"});
    CHECK_NOTHROW(ValidateDict(empty));
  }
}

TEST_CASE("estimate_unigrams counts rendered tokens") {
  SubwordDict dict = EstimateUnigrams({"ab+", "+c", "ab+", "+d"});
  REQUIRE(dict.entries.size() == 3);
  CHECK(dict.entries[0].Rendered() == "ab+");
  CHECK(dict.entries[0].phi == 0.5);
  CHECK(dict.entries[1].Rendered() == "+c");
  CHECK(dict.entries[1].phi == 0.25);
  CHECK(dict.entries[2].Rendered() == "+d");
  CHECK(dict.entries[2].phi == 0.25);
  CHECK(dict.delta == 0.0001);  // default floor
  // Character set in first-appearance order over the entry texts.
  REQUIRE(dict.charset->Size() == 5);
  CHECK(dict.charset->Find("a") == 1);
  CHECK(dict.charset->Find("b") == 2);
  CHECK(dict.charset->Find("c") == 3);
  CHECK(dict.charset->Find("d") == 4);
  CHECK(dict.entries[0].categories.empty());

  CHECK(EstimateUnigrams({"x"}, 0.05).delta == 0.05);
  CHECK_THROWS_AS(EstimateUnigrams({}), Error);
  CHECK_THROWS_AS(EstimateUnigrams({"a++b"}), ParseError);
}

TEST_CASE("u-wfst structure") {
  SubwordDict dict = MakeDict({{"ka+", 0.75}, {"a", 0.25}}, {"k", "a"}, 0.01);
  Fst u = BuildUWfst(dict);

  CHECK(u.NumStates() == 2);  // the loop plus one interior chain state
  CHECK(u.Start() == 0);
  CHECK(u.Final(0) == weight::One());
  CHECK(u.InputSymbols() == dict.charset);

  // Output ids: entries first in dictionary order, then characters, with
  // the singleton entry "a" sharing its id with the character "a".
  const SymbolTablePtr &osyms = u.OutputSymbols();
  REQUIRE(osyms != nullptr);
  CHECK(osyms->Size() == 4);
  CHECK(osyms->Find("ka+") == 1);
  CHECK(osyms->Find("a") == 2);
  CHECK(osyms->Find("k") == 3);

  // Loop arcs: the "ka+" chain head, the "a" entry, and the two character
  // floor loops.
  // Expected weights are computed from the dictionary's runtime values so
  // both sides go through the same libm call.
  const Weight log_ka = std::log10(dict.entries[0].phi);
  const Weight log_a = std::log10(dict.entries[1].phi);
  const Weight log_floor = std::log10(dict.delta);
  const std::vector<Arc> &loop_arcs = u.ArcsOf(0);
  REQUIRE(loop_arcs.size() == 4);
  CHECK(loop_arcs[0] == Arc{dict.charset->Find("k"), kEpsilon, weight::One(),
                            1});
  CHECK(loop_arcs[1] == Arc{dict.charset->Find("a"), 2, log_a, 0});
  CHECK(loop_arcs[2] == Arc{dict.charset->Find("k"), 3, log_floor, 0});
  CHECK(loop_arcs[3] == Arc{dict.charset->Find("a"), 2, log_floor, 0});

  // The chain tail carries the rendered subword and the full weight.
  const std::vector<Arc> &tail = u.ArcsOf(1);
  REQUIRE(tail.size() == 1);
  CHECK(tail[0] == Arc{dict.charset->Find("a"), 1, log_ka, 0});

  SUBCASE("entry characters must be in the character set") {
    SubwordDict bad = MakeDict({{"xy+", 1.0}}, {"x"});
    CHECK_THROWS_AS(BuildUWfst(bad), Error);
  }
}

TEST_CASE("merge_singleton_runs") {
  using V = std::vector<std::string>;
  CHECK(MergeSingletonRuns({"i", "k", "kaala+", "+thil"}) ==
        V{"ik", "kaala+", "+thil"});
  CHECK(MergeSingletonRuns({"a+", "+b"}) == V{"a+", "+b"});
  CHECK(MergeSingletonRuns({"x", "y", "z"}) == V{"xyz"});
  CHECK(MergeSingletonRuns({"+a+", "b", "c", "+d+", "e"}) ==
        V{"+a+", "bc", "+d+", "e"});
  CHECK(MergeSingletonRuns({}) == V{});
  // Multi-byte code points count as one character.
  CHECK(MergeSingletonRuns({"இ", "ச"}) == V{"இச"});
}

TEST_CASE("select_segmentation basics") {
  SubwordDict dict = MakeDict({{"ab+", 0.5}, {"+b", 0.5}}, {"a", "b"});
  Fst u = BuildUWfst(dict);

  SUBCASE("dictionary entry beats the character floor") {
    FallbackResult got = SelectSegmentation("ab", u, dict);
    CHECK(got.segmentation.Rendered() == std::vector<std::string>{"ab"});
    CHECK(got.segmentation.source == Source::kFallback);
    CHECK(got.segmentation.weight == std::log10(0.5));
    CHECK(got.num_paths == 3);  // [ab+], [a,+b], [a,b]
    CHECK(got.diagnostics.empty());
  }
  SUBCASE("unknown characters mean criterion 4, not an error") {
    FallbackResult got = SelectSegmentation("zzzz", u, dict);
    CHECK(got.segmentation.Rendered() == std::vector<std::string>{"zzzz"});
    CHECK(got.segmentation.source == Source::kWholeWord);
    CHECK(got.segmentation.weight == weight::One());
    CHECK(got.num_paths == 0);
  }
  SUBCASE("malformed words are errors") {
    CHECK_THROWS_AS(SelectSegmentation("", u, dict), Error);
    CHECK_THROWS_AS(SelectSegmentation("a+b", u, dict), Error);
    CHECK_THROWS_AS(SelectSegmentation("a b", u, dict), Error);
  }
  SUBCASE("path cap overflows loudly") {
    FallbackOptions options;
    options.max_paths = 2;
    CHECK_THROWS_WITH_AS(SelectSegmentation("ab", u, dict, options),
                         doctest::Contains("raise --max-paths"), Error);
  }
}

TEST_CASE("character floor alone segments anything over the charset") {
  SubwordDict dict = MakeDict({}, {"a"}, 0.01);
  Fst u = BuildUWfst(dict);
  FallbackResult got = SelectSegmentation("aa", u, dict);
  CHECK(got.segmentation.Rendered() == std::vector<std::string>{"aa"});
  CHECK(got.segmentation.source == Source::kFallback);
  CHECK(got.segmentation.weight ==
        doctest::Approx(2.0 * std::log10(0.01)).epsilon(1e-12));
  CHECK(got.num_paths == 1);
}

TEST_CASE("criterion 2 rejects non-infix interiors") {
  // The best-weight path [a+, +bc, +d] has the multi-character suffix
  // "+bc" in interior position and is discarded; the surviving winner
  // merges the floor characters into one chunk.
  SubwordDict dict =
      MakeDict({{"a+", 0.4}, {"+bc", 0.4}, {"+d", 0.2}},
               {"a", "b", "c", "d"});
  Fst u = BuildUWfst(dict);
  FallbackResult got = SelectSegmentation("abcd", u, dict);
  CHECK(got.segmentation.Rendered() ==
        std::vector<std::string>{"a+", "+bcd"});
  CHECK(got.segmentation.source == Source::kFallback);
  CHECK(got.segmentation.weight ==
        doctest::Approx(std::log10(0.4) + 3.0 * std::log10(0.0001))
            .epsilon(1e-12));
  CHECK(got.num_paths == 8);
}

TEST_CASE("equal-weight ties resolve deterministically and are reported") {
  SubwordDict dict = MakeDict(
      {{"ab+", 0.25}, {"+ab", 0.25}, {"a", 0.25}, {"b", 0.25}}, {"a", "b"});
  Fst u = BuildUWfst(dict);
  FallbackResult got = SelectSegmentation("abab", u, dict);
  // Four two-entry covers weigh exactly 2·log10(0.25); the output-label
  // tie-break picks [ab+, ab+], re-marked positionally.
  CHECK(got.segmentation.Rendered() ==
        std::vector<std::string>{"ab+", "+ab"});
  CHECK(got.segmentation.weight == std::log10(0.25) + std::log10(0.25));
  CHECK(got.num_paths == 36);
  REQUIRE(got.diagnostics.size() == 1);
  CHECK(got.diagnostics[0].find("3 equal-weight") != std::string::npos);
}

TEST_CASE("strict edges change the winner, not the interface") {
  SubwordDict dict = MakeDict({{"+ab", 1.0}}, {"a", "b"}, 0.0001);
  Fst u = BuildUWfst(dict);

  FallbackResult loose = SelectSegmentation("ab", u, dict);
  CHECK(loose.segmentation.Rendered() == std::vector<std::string>{"ab"});
  CHECK(loose.segmentation.weight == std::log10(1.0));

  FallbackOptions strict;
  strict.strict_edges = true;
  FallbackResult tight = SelectSegmentation("ab", u, dict, strict);
  CHECK(tight.segmentation.Rendered() == std::vector<std::string>{"ab"});
  CHECK(tight.segmentation.source == Source::kFallback);
  CHECK(tight.segmentation.weight ==
        doctest::Approx(2.0 * std::log10(0.0001)).epsilon(1e-12));
}

TEST_CASE("update_dictionary adds whole words and renormalizes") {
  SubwordDict dict = MakeDict({{"ab+", 0.5}, {"+c", 0.5}}, {"a", "b", "c"});

  SUBCASE("new words get the smallest observed mass") {
    SubwordDict updated = UpdateDictionary(dict, {"mane"});
    REQUIRE(updated.entries.size() == 3);
    CHECK(updated.entries[2].Rendered() == "mane");
    CHECK(updated.entries[2].subword.role == Role::kSingleton);
    CHECK(updated.entries[2].categories ==
          std::vector<std::string>{"independent"});
    for (const DictEntry &entry : updated.entries) {
      CHECK(entry.phi == doctest::Approx(0.5 / 1.5).epsilon(1e-12));
    }
    // The new word's characters join the character set.
    CHECK(updated.charset->Contains("m"));
    CHECK(updated.charset->Contains("e"));
    // The input is untouched.
    CHECK(dict.entries.size() == 2);
    CHECK_FALSE(dict.charset->Contains("m"));
  }
  SUBCASE("idempotent on repeats") {
    SubwordDict once = UpdateDictionary(dict, {"mane"});
    std::vector<std::string> warnings;
    SubwordDict twice = UpdateDictionary(once, {"mane"}, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("already") != std::string::npos);
    REQUIRE(twice.entries.size() == once.entries.size());
    for (std::size_t i = 0; i < once.entries.size(); ++i) {
      CHECK(twice.entries[i].phi == once.entries[i].phi);
    }
  }
  SUBCASE("empty dictionary becomes uniform") {
    SubwordDict empty = MakeDict({}, {"x"});
    SubwordDict updated = UpdateDictionary(empty, {"xx", "xxx"});
    REQUIRE(updated.entries.size() == 2);
    CHECK(updated.entries[0].phi == 0.5);
    CHECK(updated.entries[1].phi == 0.5);
  }
  SUBCASE("invalid words are errors") {
    CHECK_THROWS_AS(UpdateDictionary(dict, {"a+b"}), Error);
    CHECK_THROWS_AS(UpdateDictionary(dict, {""}), Error);
  }
}

TEST_CASE("dict tsv round trip") {
  SubwordDict dict = MakeDict({{"ab+", 0.125}, {"+c", 0.875}},
                              {"a", "b", "c"}, 0.05);
  dict.entries[0].categories = {"noun", "pronoun"};

  std::ostringstream out;
  WriteDictTsv(dict, out);
  CHECK(out.str().find("#delta\t0.05\n") == 0);
  CHECK(out.str().find("ab+\t0.125\tnoun,pronoun\n") != std::string::npos);
  CHECK(out.str().find("+c\t0.875\t\n") != std::string::npos);

  std::istringstream in(out.str());
  SubwordDict back = ReadDictTsv(in);
  CHECK(back.delta == 0.05);
  REQUIRE(back.entries.size() == 2);
  CHECK(back.entries[0].Rendered() == "ab+");
  CHECK(back.entries[0].phi == 0.125);  // bit-exact round trip
  CHECK(back.entries[0].categories ==
        std::vector<std::string>{"noun", "pronoun"});
  CHECK(back.entries[1].categories.empty());
  REQUIRE(back.charset->Size() == 4);
  CHECK(back.charset->Find("a") == 1);
  CHECK(back.charset->Find("c") == 3);
}

TEST_CASE("dict tsv delta precedence") {
  const std::string body = "ab+\t1\t\n";

  std::istringstream with_header("#delta\t0.05\n" + body);
  CHECK(ReadDictTsv(with_header).delta == 0.05);

  std::istringstream overridden("#delta\t0.05\n" + body);
  CHECK(ReadDictTsv(overridden, 0.3).delta == 0.3);

  std::istringstream bare(body);
  CHECK(ReadDictTsv(bare).delta == 0.0001);
}

TEST_CASE("dict tsv rejections carry line numbers") {
  auto reject = [](const std::string &text) {
    std::istringstream in(text);
    return ReadDictTsv(in);
  };
  CHECK_THROWS_WITH_AS(reject("#delta\t0.1\n#delta\t0.2\nab+\t1\t\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(reject("ab+\t1\t\n#delta\t0.1\n"), ParseError);
  CHECK_THROWS_AS(reject("ab+\t1\n"), ParseError);          // two fields
  CHECK_THROWS_AS(reject("ab+\t1\tx\ty\n"), ParseError);    // four fields
  CHECK_THROWS_AS(reject("ab+\t1\tnoun,,verb\n"), ParseError);
  CHECK_THROWS_WITH_AS(reject("++\t1\t\n"), doctest::Contains("line 1"),
                       ParseError);
  CHECK_THROWS_AS(reject("ab+\t0\t\n"), Error);              // phi = 0
  CHECK_THROWS_AS(reject("ab+\t0.5\t\n"), Error);            // sum != 1
  CHECK_THROWS_AS(reject("ab+\tmany\t\n"), ParseError);      // bad number
}

TEST_CASE("dict tsv normalizes rendered forms to nfc") {
  // "e" + combining acute composes to a single code point.
  std::istringstream in("e\xCC\x81+\t1\t\n");
  SubwordDict dict = ReadDictTsv(in);
  REQUIRE(dict.entries.size() == 1);
  CHECK(dict.entries[0].subword.text == "\xC3\xA9");
  CHECK(dict.charset->Contains("\xC3\xA9"));
}

TEST_CASE("random dictionaries agree with the tiling oracle") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> word_len(1, 6);
  std::uniform_int_distribution<int> coin(0, 1);

  for (int round = 0; round < 60; ++round) {
    oracle::PlainDict plain = oracle::RandomDict(rng, 6);

    SubwordDict dict;
    dict.delta = plain.delta;
    auto charset = std::make_shared<SymbolTable>();
    for (const std::string &ch : plain.chars) charset->AddSymbol(ch);
    dict.charset = std::move(charset);
    for (const oracle::PlainDictEntry &entry : plain.entries) {
      DictEntry converted;
      converted.subword = ParseMarked(entry.rendered);
      converted.phi = entry.phi;
      dict.entries.push_back(std::move(converted));
    }
    Fst u = BuildUWfst(dict);

    for (int w = 0; w < 4; ++w) {
      // Bias words toward entry texts so merges and rejections trigger.
      std::string word;
      int len = word_len(rng);
      while (static_cast<int>(oracle::Utf8Chars(word).size()) < len) {
        if (!plain.entries.empty() && coin(rng)) {
          std::uniform_int_distribution<std::size_t> pick(
              0, plain.entries.size() - 1);
          word += oracle::StripMarkers(plain.entries[pick(rng)].rendered);
        } else {
          std::uniform_int_distribution<std::size_t> pick(
              0, plain.chars.size() - 1);
          word += plain.chars[pick(rng)];
        }
      }
      // Trim overshoot so the candidate count stays under the path cap.
      std::vector<std::string> chars = oracle::Utf8Chars(word);
      word.clear();
      for (int i = 0; i < len; ++i) word += chars[i];
      if (round % 10 == 9) word += "Z";  // unknown character path

      bool strict = coin(rng) == 1;
      FallbackOptions options;
      options.max_paths = 200000;
      options.strict_edges = strict;
      FallbackResult got = SelectSegmentation(word, u, dict, options);
      oracle::TilingOutcome want =
          oracle::SelectByTiling(plain, word, strict, options.max_paths);

      CAPTURE(round);
      CAPTURE(word);
      CAPTURE(strict);
      CHECK(got.segmentation.Rendered() == want.tokens);
      CHECK(SourceName(got.segmentation.source) == want.source);
      CHECK(got.num_paths == want.num_paths);
      if (want.source == "fallback") {
        CHECK(got.segmentation.weight == want.weight);
      }
      if (want.collisions > 0) {
        REQUIRE(got.diagnostics.size() == 1);
        CHECK(got.diagnostics[0].find(std::to_string(want.collisions) +
                                      " equal-weight") != std::string::npos);
      } else {
        CHECK(got.diagnostics.empty());
      }
    }
  }
}

}  // namespace
}  // namespace subwfst
