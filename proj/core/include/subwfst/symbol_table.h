// symbol_table.h
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

#ifndef SUBWFST_SYMBOL_TABLE_H_
#define SUBWFST_SYMBOL_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subwfst {

// Label identifier used on arcs.  0 is reserved for epsilon in every table.
using Label = std::int32_t;

inline constexpr Label kEpsilon = 0;

// Printed name of the epsilon symbol in text formats.
inline constexpr const char kEpsilonSymbol[] = "<eps>";

// Bidirectional mapping between symbol strings and dense integer ids.
//
// Id 0 is always "<eps>".  Ids are assigned in insertion order, so two
// tables built from the same symbol sequence are interchangeable (the
// composition precondition checks content equality, not identity).
class SymbolTable {
 public:
  // Creates a table containing only the reserved epsilon entry.
  SymbolTable();

  // Returns the id for `symbol`, inserting it if absent.  Inserting "<eps>"
  // or an empty string throws Error: epsilon is reserved and the text
  // formats cannot represent empty symbols.
  Label AddSymbol(std::string_view symbol);

  // Returns the id for `symbol`, or kNoLabel if absent.
  Label Find(std::string_view symbol) const;

  // Returns the symbol for `id`; throws Error if out of range.
  const std::string &Find(Label id) const;

  bool Contains(std::string_view symbol) const;
  bool Contains(Label id) const { return id >= 0 && id < Size(); }

  // Number of entries including epsilon.
  Label Size() const { return static_cast<Label>(id_to_symbol_.size()); }

  // Two tables are equal when they map exactly the same symbols to the same
  // ids.  With insertion-order ids this reduces to sequence equality.
  bool operator==(const SymbolTable &other) const {
    return id_to_symbol_ == other.id_to_symbol_;
  }
  bool operator!=(const SymbolTable &other) const { return !(*this == other); }

  // Sentinel returned by Find(string) for unknown symbols.
  static constexpr Label kNoLabel = -1;

  // Text format: one "symbol<TAB>id" line per entry, in id order, starting
  // with "<eps>\t0".  Read() validates density (ids 0..n-1, no gaps or
  // duplicates) and throws ParseError otherwise.
  void Write(std::ostream &out) const;
  static SymbolTable Read(std::istream &in);

 private:
  std::vector<std::string> id_to_symbol_;
  std::unordered_map<std::string, Label> symbol_to_id_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

}  // namespace subwfst

#endif  // SUBWFST_SYMBOL_TABLE_H_
