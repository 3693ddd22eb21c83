// symbol_table.cc
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

#include "subwfst/symbol_table.h"

#include <istream>
#include <ostream>

#include "subwfst/error.h"

namespace subwfst {

SymbolTable::SymbolTable() {
  id_to_symbol_.emplace_back(kEpsilonSymbol);
  symbol_to_id_.emplace(kEpsilonSymbol, kEpsilon);
}

Label SymbolTable::AddSymbol(std::string_view symbol) {
  if (symbol.empty()) {
    throw Error("symbol table: cannot add an empty symbol");
  }
  if (symbol == kEpsilonSymbol) {
    throw Error("symbol table: \"<eps>\" is reserved for id 0");
  }
  auto it = symbol_to_id_.find(std::string(symbol));
  if (it != symbol_to_id_.end()) return it->second;
  Label id = Size();
  id_to_symbol_.emplace_back(symbol);
  symbol_to_id_.emplace(id_to_symbol_.back(), id);
  return id;
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = symbol_to_id_.find(std::string(symbol));
  return it == symbol_to_id_.end() ? kNoLabel : it->second;
}

const std::string &SymbolTable::Find(Label id) const {
  if (!Contains(id)) {
    throw Error("symbol table: no symbol with id " + std::to_string(id));
  }
  return id_to_symbol_[static_cast<std::size_t>(id)];
}

bool SymbolTable::Contains(std::string_view symbol) const {
  return symbol_to_id_.count(std::string(symbol)) != 0;
}

void SymbolTable::Write(std::ostream &out) const {
  for (Label id = 0; id < Size(); ++id) {
    out << id_to_symbol_[static_cast<std::size_t>(id)] << '\t' << id << '\n';
  }
}

SymbolTable SymbolTable::Read(std::istream &in) {
  SymbolTable table;
  std::string line;
  std::size_t lineno = 0;
  Label expected = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw ParseError("symbol table: expected \"symbol<TAB>id\"", lineno);
    }
    std::string symbol = line.substr(0, tab);
    Label id;
    try {
      std::size_t used = 0;
      id = static_cast<Label>(std::stol(line.substr(tab + 1), &used));
      if (used != line.size() - tab - 1) throw std::invalid_argument("");
    } catch (const std::exception &) {
      throw ParseError("symbol table: malformed id field", lineno);
    }
    if (id != expected) {
      throw ParseError("symbol table: ids must be dense and ascending; got " +
                           std::to_string(id) + ", expected " +
                           std::to_string(expected),
                       lineno);
    }
    if (expected == 0) {
      if (symbol != kEpsilonSymbol) {
        throw ParseError("symbol table: id 0 must be \"<eps>\"", lineno);
      }
    } else {
      if (table.Contains(symbol)) {
        throw ParseError("symbol table: duplicate symbol \"" + symbol + "\"",
                         lineno);
      }
      table.AddSymbol(symbol);
    }
    ++expected;
  }
  return table;
}

}  // namespace subwfst
