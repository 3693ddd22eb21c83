// text_io.h
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
// Line-oriented text serialization.
//
// FST text format, tab separated:
//
//   #start<TAB>STATE                 exactly once, first line
//   SRC<TAB>DST<TAB>ISYM<TAB>OSYM<TAB>WEIGHT   one line per arc
//   STATE<TAB>WEIGHT                 one line per final state
//
// Labels are written as symbol strings ("<eps>" for epsilon), weights as
// shortest round-tripping decimals ("-inf" for the zero weight).  Arcs are
// written per state in state order, then final lines in state order, so
// writing is deterministic.  On read the state count is the largest state
// id mentioned plus one; states that neither carry arcs nor appear as a
// destination, start, or final are therefore not representable, which no
// machine built by this library produces.

#ifndef SUBWFST_TEXT_IO_H_
#define SUBWFST_TEXT_IO_H_

#include <iosfwd>
#include <string>

#include "subwfst/fst.h"

namespace subwfst {

// Formats a weight as the shortest decimal that parses back to the same
// double ("-inf" for weight::Zero()).
std::string FormatWeight(Weight w);

// Parses what FormatWeight produces (and anything std::strtod accepts).
// Throws ParseError on trailing junk or empty input.
Weight ParseWeight(const std::string &text, std::size_t lineno = 0);

void WriteFstText(const Fst &fst, std::ostream &out);

// Reads the text format.  The given tables resolve symbol strings; a symbol
// not present in the corresponding table is a ParseError.  The tables are
// attached to the returned machine.
Fst ReadFstText(std::istream &in, SymbolTablePtr isyms, SymbolTablePtr osyms);

// File wrappers; throw Error when the file cannot be opened.
void WriteFstTextFile(const Fst &fst, const std::string &path);
Fst ReadFstTextFile(const std::string &path, SymbolTablePtr isyms,
                    SymbolTablePtr osyms);
void WriteSymbolTableFile(const SymbolTable &table, const std::string &path);
SymbolTable ReadSymbolTableFile(const std::string &path);

}  // namespace subwfst

#endif  // SUBWFST_TEXT_IO_H_
