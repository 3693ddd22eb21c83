// text_io.cc
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

#include "subwfst/text_io.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "subwfst/error.h"

namespace subwfst {

namespace {

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    std::size_t tab = line.find('\t', begin);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

StateId ParseStateId(const std::string &text, std::size_t lineno) {
  StateId value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    throw ParseError("fst text: malformed state id \"" + text + "\"", lineno);
  }
  return value;
}

Label ResolveSymbol(const std::string &text, const SymbolTablePtr &table,
                    const char *side, std::size_t lineno) {
  if (!table) {
    throw ParseError(std::string("fst text: no ") + side +
                         " symbol table supplied",
                     lineno);
  }
  Label id = table->Find(text);
  if (id == SymbolTable::kNoLabel) {
    throw ParseError(std::string("fst text: unknown ") + side + " symbol \"" +
                         text + "\"",
                     lineno);
  }
  return id;
}

}  // namespace

std::string FormatWeight(Weight w) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  if (ec != std::errc()) {
    throw Error("fst text: failed to format weight");
  }
  return std::string(buf, ptr);
}

Weight ParseWeight(const std::string &text, std::size_t lineno) {
  if (text.empty()) {
    throw ParseError("fst text: empty weight field", lineno);
  }
  const char *begin = text.c_str();
  char *end = nullptr;
  double value = std::strtod(begin, &end);
  if (end != begin + text.size()) {
    throw ParseError("fst text: malformed weight \"" + text + "\"", lineno);
  }
  return value;
}

void WriteFstText(const Fst &fst, std::ostream &out) {
  if (fst.Start() == kNoState) {
    throw Error("fst text: cannot write a machine with no start state");
  }
  const SymbolTablePtr &isyms = fst.InputSymbols();
  const SymbolTablePtr &osyms = fst.OutputSymbols();
  if (!isyms || !osyms) {
    throw Error("fst text: cannot write a machine without symbol tables");
  }
  out << "#start\t" << fst.Start() << '\n';
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    for (const Arc &arc : fst.ArcsOf(s)) {
      out << s << '\t' << arc.dst << '\t' << isyms->Find(arc.ilabel) << '\t'
          << osyms->Find(arc.olabel) << '\t' << FormatWeight(arc.weight)
          << '\n';
    }
  }
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (fst.IsFinal(s)) {
      out << s << '\t' << FormatWeight(fst.Final(s)) << '\n';
    }
  }
}

Fst ReadFstText(std::istream &in, SymbolTablePtr isyms, SymbolTablePtr osyms) {
  struct TextArc {
    StateId src;
    Arc arc;
  };
  std::vector<TextArc> arcs;
  std::vector<std::pair<StateId, Weight>> finals;
  StateId start = kNoState;
  StateId max_state = kNoState;
  bool saw_start = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields[0] == "#start") {
      if (saw_start) {
        throw ParseError("fst text: duplicate #start line", lineno);
      }
      if (fields.size() != 2) {
        throw ParseError("fst text: #start needs exactly one field", lineno);
      }
      start = ParseStateId(fields[1], lineno);
      max_state = std::max(max_state, start);
      saw_start = true;
      continue;
    }
    if (!saw_start) {
      throw ParseError("fst text: first line must be #start", lineno);
    }
    if (fields.size() == 5) {
      TextArc ta;
      ta.src = ParseStateId(fields[0], lineno);
      ta.arc.dst = ParseStateId(fields[1], lineno);
      ta.arc.ilabel = ResolveSymbol(fields[2], isyms, "input", lineno);
      ta.arc.olabel = ResolveSymbol(fields[3], osyms, "output", lineno);
      ta.arc.weight = ParseWeight(fields[4], lineno);
      max_state = std::max({max_state, ta.src, ta.arc.dst});
      arcs.push_back(ta);
    } else if (fields.size() == 2) {
      StateId s = ParseStateId(fields[0], lineno);
      Weight w = ParseWeight(fields[1], lineno);
      max_state = std::max(max_state, s);
      finals.emplace_back(s, w);
    } else {
      throw ParseError("fst text: expected 2 fields (final) or 5 (arc), got " +
                           std::to_string(fields.size()),
                       lineno);
    }
  }
  if (!saw_start) {
    throw ParseError("fst text: missing #start line", lineno);
  }

  Fst fst(std::move(isyms), std::move(osyms));
  fst.AddStates(max_state + 1);
  fst.SetStart(start);
  for (const auto &ta : arcs) fst.AddArc(ta.src, ta.arc);
  for (const auto &[s, w] : finals) fst.SetFinal(s, w);
  return fst;
}

void WriteFstTextFile(const Fst &fst, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  WriteFstText(fst, out);
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

Fst ReadFstTextFile(const std::string &path, SymbolTablePtr isyms,
                    SymbolTablePtr osyms) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return ReadFstText(in, std::move(isyms), std::move(osyms));
}

void WriteSymbolTableFile(const SymbolTable &table, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  table.Write(out);
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

SymbolTable ReadSymbolTableFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return SymbolTable::Read(in);
}

}  // namespace subwfst
