// error.h
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

#ifndef SUBWFST_ERROR_H_
#define SUBWFST_ERROR_H_

#include <stdexcept>
#include <string>

namespace subwfst {

// Base error for all library failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed input document (grammar spec, symbol table, FST text, TSV).
// Carries a 1-based line number when the source location is known; 0 means
// "no line information".
class ParseError : public Error {
 public:
  ParseError(const std::string &msg, std::size_t line = 0)
      : Error(line == 0 ? msg : "line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace subwfst

#endif  // SUBWFST_ERROR_H_
