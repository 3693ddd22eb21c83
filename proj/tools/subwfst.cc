// subwfst.cc
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
// Command-line pipeline driver.  Each stage is one subcommand connected to
// the next by plain files, so full-scale grammars, dictionaries, and
// corpora can be swapped in without touching code:
//
//   build-grammar   grammar JSON -> SG-WFST (+ symbol tables)
//   segment         vocabulary -> segmentation TSV (grammar + fallback)
//   build-fallback  segmentation TSV -> subword dictionary + U-WFST
//   segment-corpus  corpus -> corpus of rendered marked subwords
//   postprocess     recognized subword stream -> words
//   metrics         OOV rate and WER as a JSON report
//   make-lexicon    dictionary + pronunciations -> lexicon WFST
//
// Exit status: 0 on success (warnings included), 2 for malformed input
// documents and validation failures, 1 for I/O and internal errors.
// Diagnostics go to standard error; data goes to files or standard output.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "subwfst/corpus.h"
#include "subwfst/error.h"
#include "subwfst/fallback.h"
#include "subwfst/grammar.h"
#include "subwfst/lexicon.h"
#include "subwfst/metrics.h"
#include "subwfst/parallel.h"
#include "subwfst/segmenter.h"
#include "subwfst/text_io.h"
#include "subwfst/unicode.h"
#include "subwfst/validate.h"

namespace subwfst {
namespace {

std::string ReadWholeFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// The three files a compiled transducer lives in.
struct TrioPaths {
  std::string fst;
  std::string isyms;
  std::string osyms;
};

TrioPaths Trio(const std::string &prefix) {
  return {prefix + ".fst", prefix + ".isyms", prefix + ".osyms"};
}

void WriteFstTrio(const Fst &fst, const std::string &prefix) {
  TrioPaths paths = Trio(prefix);
  WriteFstTextFile(fst, paths.fst);
  WriteSymbolTableFile(*fst.InputSymbols(), paths.isyms);
  WriteSymbolTableFile(*fst.OutputSymbols(), paths.osyms);
}

Fst ReadFstTrio(const std::string &prefix) {
  TrioPaths paths = Trio(prefix);
  auto isyms = std::make_shared<SymbolTable>(ReadSymbolTableFile(paths.isyms));
  auto osyms = std::make_shared<SymbolTable>(ReadSymbolTableFile(paths.osyms));
  return ReadFstTextFile(paths.fst, isyms, osyms);
}

std::vector<std::string> ReadVocabFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  std::vector<std::string> vocab;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream split(line);
    std::string word;
    if (!(split >> word)) continue;  // blank line
    std::string extra;
    if (split >> extra) {
      throw ParseError("vocab: more than one word on the line", lineno);
    }
    vocab.push_back(NormalizeNfc(word));
  }
  return vocab;
}

void PrintValidation(const Fst &fst, const std::string &what) {
  std::vector<std::string> report = Validate(fst);
  if (report.empty()) {
    std::cerr << what << ": validation clean ("
              << fst.NumStates() << " states, " << fst.NumArcs()
              << " arcs)\n";
    return;
  }
  for (const std::string &issue : report) {
    std::cerr << what << ": " << issue << '\n';
  }
  throw ParseError(what + ": validation failed with " +
                   std::to_string(report.size()) + " finding(s)");
}

// ---------------------------------------------------------------------------
// build-grammar

int RunBuildGrammar(const std::string &spec_path, const std::string &out) {
  GrammarSpec spec = ParseGrammar(ReadWholeFile(spec_path));
  SymbolTablePtr charset = BuildCharset(spec);
  Fst sg = BuildSgWfst(spec, charset);
  PrintValidation(sg, "sg-wfst");
  WriteFstTrio(sg, out);
  std::cerr << "wrote " << Trio(out).fst << ", " << Trio(out).isyms << ", "
            << Trio(out).osyms << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// segment

struct SegmentFlags {
  std::string grammar;
  std::string fallback_dict;  // empty = no fallback machinery
  std::string vocab;
  std::string out;
  std::optional<double> delta;
  std::size_t max_paths = 10000;
  bool strict_edges = false;
  std::size_t jobs = 1;
};

int RunSegment(const SegmentFlags &flags) {
  Fst sg = ReadFstTrio(flags.grammar);

  std::optional<SubwordDict> dict;
  std::optional<Fst> u;
  if (!flags.fallback_dict.empty()) {
    dict = ReadDictTsvFile(flags.fallback_dict, flags.delta);
    u = BuildUWfst(*dict);
  }
  FallbackOptions options;
  options.max_paths = flags.max_paths;
  options.strict_edges = flags.strict_edges;

  std::vector<std::string> vocab = ReadVocabFile(flags.vocab);

  // Per-word outcome slots keep the output in input order under --jobs.
  struct Slot {
    std::optional<Segmentation> seg;
    std::vector<std::string> notes;
    std::string error;
  };
  std::vector<Slot> slots(vocab.size());

  std::unordered_set<std::string> seen;
  std::vector<char> duplicate(vocab.size(), 0);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (!seen.insert(vocab[i]).second) duplicate[i] = 1;
  }

  ParallelFor(vocab.size(), flags.jobs, [&](std::size_t i) {
    Slot &slot = slots[i];
    if (duplicate[i]) {
      slot.error = "duplicate word \"" + vocab[i] + "\"";
      return;
    }
    try {
      GrammarSegmentation grammar = SegmentWord(vocab[i], sg);
      if (grammar.segmentation) {
        slot.seg = std::move(grammar.segmentation);
        return;
      }
      if (dict) {
        FallbackResult fb = SelectSegmentation(vocab[i], *u, *dict, options);
        slot.seg = std::move(fb.segmentation);
        slot.notes = std::move(fb.diagnostics);
        return;
      }
      Segmentation whole;
      whole.word = vocab[i];
      whole.segments = {{vocab[i], Role::kSingleton}};
      whole.source = Source::kWholeWord;
      slot.seg = std::move(whole);
    } catch (const Error &e) {
      slot.error = e.what();
    }
  });

  std::vector<Segmentation> rows;
  std::size_t counts[3] = {0, 0, 0};
  std::ofstream diag(flags.out + ".diag");
  if (!diag) throw Error("cannot open for writing: " + flags.out + ".diag");
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    Slot &slot = slots[i];
    if (!slot.error.empty()) {
      diag << vocab[i] << '\t' << slot.error << '\n';
      continue;
    }
    for (const std::string &note : slot.notes) {
      diag << vocab[i] << '\t' << note << '\n';
    }
    ++counts[static_cast<int>(slot.seg->source)];
    rows.push_back(std::move(*slot.seg));
  }

  std::ofstream out(flags.out);
  if (!out) throw Error("cannot open for writing: " + flags.out);
  WriteSegmentationTsv(rows, out);
  out.flush();
  if (!out) throw Error("write failed: " + flags.out);

  std::cerr << "grammar=" << counts[static_cast<int>(Source::kGrammar)]
            << " fallback=" << counts[static_cast<int>(Source::kFallback)]
            << " whole_word="
            << counts[static_cast<int>(Source::kWholeWord)] << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// build-fallback

int RunBuildFallback(const std::string &segments_path, double delta,
                     const std::string &out,
                     const std::string &grammar_prefix) {
  std::ifstream in(segments_path);
  if (!in) throw Error("cannot open: " + segments_path);
  std::vector<Segmentation> rows = ReadSegmentationTsv(in);

  std::vector<std::string> tokens;
  for (const Segmentation &row : rows) {
    for (const std::string &rendered : row.Rendered()) {
      tokens.push_back(rendered);
    }
  }
  SubwordDict dict = EstimateUnigrams(tokens, delta);

  // Provenance enrichment.  Whole-word rows are Criterion-4 singletons and
  // belong to the independent category; with a grammar at hand, any entry
  // whose text appears in a category's stages is credited to it.
  std::unordered_set<std::string> whole_word_texts;
  for (const Segmentation &row : rows) {
    if (row.source == Source::kWholeWord) whole_word_texts.insert(row.word);
  }
  std::optional<GrammarSpec> spec;
  if (!grammar_prefix.empty()) {
    spec = ParseGrammar(ReadWholeFile(grammar_prefix));
  }
  for (DictEntry &entry : dict.entries) {
    std::unordered_set<std::string> cats;
    if (entry.subword.role == Role::kSingleton &&
        whole_word_texts.count(entry.subword.text)) {
      if (cats.insert(CategoryName(Category::kIndependent)).second) {
        entry.categories.push_back(CategoryName(Category::kIndependent));
      }
    }
    if (spec) {
      for (const CategorySpec &cat : spec->categories) {
        for (int s = 0; s < cat.NumStages(); ++s) {
          const auto &stage = cat.Stage(s);
          if (std::find(stage.begin(), stage.end(), entry.subword.text) !=
                  stage.end() &&
              cats.insert(CategoryName(cat.name)).second) {
            entry.categories.push_back(CategoryName(cat.name));
          }
        }
      }
    }
  }

  Fst u = BuildUWfst(dict);
  PrintValidation(u, "u-wfst");
  WriteDictTsvFile(dict, out + ".dict.tsv");
  WriteFstTrio(u, out);

  double sum = 0.0;
  for (const DictEntry &entry : dict.entries) sum += entry.phi;
  std::cerr << "entries=" << dict.entries.size() << " characters="
            << (dict.charset->Size() - 1) << " phi_sum=" << FormatWeight(sum)
            << " delta=" << FormatWeight(dict.delta) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// segment-corpus

struct SegmentCorpusFlags {
  std::string corpus;
  std::string grammar;
  std::string fallback_dict;
  std::string out;
  std::string updated_dict;  // optional output
  std::optional<double> delta;
  std::size_t max_paths = 10000;
  bool strict_edges = false;
  std::size_t jobs = 1;
};

int RunSegmentCorpus(const SegmentCorpusFlags &flags) {
  Fst sg = ReadFstTrio(flags.grammar);
  Corpus corpus = ReadCorpusFile(flags.corpus);

  std::optional<SubwordDict> dict;
  std::optional<Fst> u;
  if (!flags.fallback_dict.empty()) {
    dict = ReadDictTsvFile(flags.fallback_dict, flags.delta);
    u = BuildUWfst(*dict);
  }
  FallbackOptions options;
  options.max_paths = flags.max_paths;
  options.strict_edges = flags.strict_edges;

  SegmentedCorpus result =
      SegmentCorpus(corpus, sg, u ? &*u : nullptr, dict ? &*dict : nullptr,
                    options, flags.jobs);
  WriteCorpusFile(result.corpus, flags.out);

  std::ofstream diag(flags.out + ".diag");
  if (!diag) throw Error("cannot open for writing: " + flags.out + ".diag");
  for (const std::string &e : result.errors) diag << e << '\n';
  for (const std::string &d : result.diagnostics) diag << d << '\n';

  if (!result.whole_words.empty()) {
    std::ofstream ww(flags.out + ".whole_words");
    if (!ww) {
      throw Error("cannot open for writing: " + flags.out + ".whole_words");
    }
    for (const std::string &w : result.whole_words) ww << w << '\n';
  }
  if (!flags.updated_dict.empty()) {
    if (!dict) {
      throw Error("--updated-dict needs --fallback");
    }
    std::vector<std::string> warnings;
    SubwordDict updated =
        UpdateDictionary(*dict, result.whole_words, &warnings);
    for (const std::string &w : warnings) std::cerr << w << '\n';
    WriteDictTsvFile(updated, flags.updated_dict);
  }

  std::cerr << "grammar=" << result.grammar_words
            << " fallback=" << result.fallback_words
            << " whole_word=" << result.whole_word_words
            << " errors=" << result.errors.size() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// postprocess

int RunPostprocess(const std::string &in_path, const std::string &out_path) {
  Corpus segmented = ReadCorpusFile(in_path, /*allow_markers=*/true);
  PostprocessedCorpus result = PostprocessCorpus(segmented);
  WriteCorpusFile(result.corpus, out_path);
  for (const std::string &d : result.diagnostics) std::cerr << d << '\n';
  std::cerr << "utterances=" << result.corpus.utterances.size()
            << " flagged=" << result.diagnostics.size() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// metrics

struct MetricsFlags {
  std::string train;
  std::string test;
  std::string ref;
  std::string hyp;
  std::string out;  // empty = stdout
  bool types = false;
};

int RunMetrics(const MetricsFlags &flags) {
  MetricsReport report;
  if (!flags.train.empty()) {
    Corpus train = ReadCorpusFile(flags.train);
    Corpus test = ReadCorpusFile(flags.test);
    std::unordered_set<std::string> vocab;
    for (const auto &utt : train.utterances) {
      vocab.insert(utt.begin(), utt.end());
    }
    report.oov_rate = OovRate(vocab, test, flags.types);
  }
  if (!flags.ref.empty()) {
    Corpus ref = ReadCorpusFile(flags.ref);
    Corpus hyp = ReadCorpusFile(flags.hyp);
    report.wer = Wer(ref, hyp);
  }
  if (!report.oov_rate && !report.wer) {
    throw Error("metrics: nothing to compute; give --train/--test and/or "
                "--ref/--hyp");
  }
  std::string json = MetricsToJson(report);
  if (flags.out.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream out(flags.out);
    if (!out) throw Error("cannot open for writing: " + flags.out);
    out << json << '\n';
    out.flush();
    if (!out) throw Error("write failed: " + flags.out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// make-lexicon

int RunMakeLexicon(const std::string &dict_path, const std::string &pron_path,
                   const std::string &out, std::optional<double> delta) {
  SubwordDict dict = ReadDictTsvFile(dict_path, delta);
  PronTable pron = ReadPronTableFile(pron_path);
  SymbolTablePtr phones = BuildPhoneSet(pron);
  Fst lexicon = BuildLexiconWfst(dict, pron, phones);
  PrintValidation(lexicon, "lexicon");
  WriteFstTrio(lexicon, out);
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{
      "subwfst: knowledge-driven subword segmentation with weighted "
      "finite-state transducers"};
  app.require_subcommand(1);

  // build-grammar ------------------------------------------------------
  std::string bg_spec;
  std::string bg_out;
  CLI::App *bg = app.add_subcommand(
      "build-grammar", "Compile a grammar JSON file into an SG-WFST");
  bg->add_option("--spec", bg_spec, "Grammar specification (JSON)")
      ->required();
  bg->add_option("--out", bg_out,
                 "Output prefix; writes <out>.fst, <out>.isyms, <out>.osyms")
      ->required();

  // segment ------------------------------------------------------------
  SegmentFlags sf;
  double sf_delta = 0.0001;
  CLI::App *seg = app.add_subcommand(
      "segment", "Segment a vocabulary; writes a segmentation TSV");
  seg->add_option("--grammar", sf.grammar, "SG-WFST prefix from build-grammar")
      ->required();
  seg->add_option("--fallback", sf.fallback_dict,
                  "Subword dictionary TSV enabling the weighted fallback");
  seg->add_option("--vocab", sf.vocab, "Word list, one word per line")
      ->required();
  seg->add_option("--out", sf.out,
                  "Output TSV; per-word diagnostics go to <out>.diag")
      ->required();
  CLI::Option *seg_delta =
      seg->add_option("--delta", sf_delta,
                      "Character floor probability (overrides the "
                      "dictionary header)");
  seg->add_option("--max-paths", sf.max_paths,
                  "Fallback path enumeration cap (exceeding it is an error)");
  seg->add_flag("--strict-edges", sf.strict_edges,
                "Also require an unmarked left edge on the first fallback "
                "segment and an unmarked right edge on the last");
  seg->add_option("--jobs", sf.jobs, "Worker threads");

  // build-fallback -----------------------------------------------------
  std::string bf_segments;
  std::string bf_out;
  std::string bf_grammar;
  double bf_delta = 0.0001;
  CLI::App *bf = app.add_subcommand(
      "build-fallback",
      "Estimate subword unigrams from a segmentation TSV and build the "
      "U-WFST");
  bf->add_option("--segments", bf_segments, "Segmentation TSV from `segment`")
      ->required();
  bf->add_option("--delta", bf_delta,
                 "Character floor probability (default 0.0001)");
  bf->add_option("--out", bf_out,
                 "Output prefix; writes <out>.dict.tsv and the U-WFST trio")
      ->required();
  bf->add_option("--grammar", bf_grammar,
                 "Grammar JSON for category provenance enrichment");

  // segment-corpus -----------------------------------------------------
  SegmentCorpusFlags scf;
  double scf_delta = 0.0001;
  CLI::App *sc = app.add_subcommand(
      "segment-corpus",
      "Replace every corpus token by its marked subword sequence");
  sc->add_option("--corpus", scf.corpus, "Input corpus, one utterance per "
                                         "line")
      ->required();
  sc->add_option("--grammar", scf.grammar, "SG-WFST prefix")->required();
  sc->add_option("--fallback", scf.fallback_dict, "Subword dictionary TSV");
  sc->add_option("--out", scf.out, "Output corpus path")->required();
  sc->add_option("--updated-dict", scf.updated_dict,
                 "Write the dictionary updated with Criterion-4 words here");
  CLI::Option *sc_delta = sc->add_option(
      "--delta", scf_delta, "Character floor probability override");
  sc->add_option("--max-paths", scf.max_paths, "Fallback enumeration cap");
  sc->add_flag("--strict-edges", scf.strict_edges,
               "Strict fallback edge handling (see `segment --help`)");
  sc->add_option("--jobs", scf.jobs, "Worker threads");

  // postprocess --------------------------------------------------------
  std::string pp_in;
  std::string pp_out;
  CLI::App *pp = app.add_subcommand(
      "postprocess", "Join marked subword streams back into words");
  pp->add_option("--in", pp_in, "Segmented corpus (or decoder output)")
      ->required();
  pp->add_option("--out", pp_out, "Output word corpus")->required();

  // metrics ------------------------------------------------------------
  MetricsFlags mf;
  CLI::App *mt = app.add_subcommand(
      "metrics", "OOV rate and/or WER as a JSON report");
  CLI::Option *mt_train =
      mt->add_option("--train", mf.train, "Training corpus (for OOV)");
  CLI::Option *mt_test =
      mt->add_option("--test", mf.test, "Test corpus (for OOV)");
  CLI::Option *mt_ref =
      mt->add_option("--ref", mf.ref, "Reference corpus (for WER)");
  CLI::Option *mt_hyp =
      mt->add_option("--hyp", mf.hyp, "Hypothesis corpus (for WER)");
  mt->add_flag("--types", mf.types,
               "Count OOV over distinct words instead of occurrences");
  mt->add_option("--out", mf.out, "Write the JSON here instead of stdout");
  mt_train->needs(mt_test);
  mt_test->needs(mt_train);
  mt_ref->needs(mt_hyp);
  mt_hyp->needs(mt_ref);

  // make-lexicon -------------------------------------------------------
  std::string ml_dict;
  std::string ml_pron;
  std::string ml_out;
  double ml_delta = 0.0001;
  CLI::App *ml = app.add_subcommand(
      "make-lexicon",
      "Build the phone-level lexicon WFST from a dictionary and "
      "pronunciations");
  ml->add_option("--dict", ml_dict, "Subword dictionary TSV")->required();
  ml->add_option("--pron", ml_pron,
                 "Pronunciation TSV: subword<TAB>phone phone ...")
      ->required();
  ml->add_option("--out", ml_out, "Output prefix for the lexicon trio")
      ->required();
  CLI::Option *ml_delta_opt = ml->add_option(
      "--delta", ml_delta, "Character floor probability override");

  CLI11_PARSE(app, argc, argv);

  if (bg->parsed()) return RunBuildGrammar(bg_spec, bg_out);
  if (seg->parsed()) {
    if (seg_delta->count() > 0) sf.delta = sf_delta;
    return RunSegment(sf);
  }
  if (bf->parsed()) return RunBuildFallback(bf_segments, bf_delta, bf_out,
                                            bf_grammar);
  if (sc->parsed()) {
    if (sc_delta->count() > 0) scf.delta = scf_delta;
    return RunSegmentCorpus(scf);
  }
  if (pp->parsed()) return RunPostprocess(pp_in, pp_out);
  if (mt->parsed()) return RunMetrics(mf);
  if (ml->parsed()) {
    std::optional<double> delta;
    if (ml_delta_opt->count() > 0) delta = ml_delta;
    return RunMakeLexicon(ml_dict, ml_pron, ml_out, delta);
  }
  return 1;
}

}  // namespace
}  // namespace subwfst

int main(int argc, char **argv) {
  try {
    return subwfst::Main(argc, argv);
  } catch (const subwfst::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const subwfst::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
