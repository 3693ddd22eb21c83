// unicode.h
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
// UTF-8 helpers.  Text enters the toolkit as UTF-8, is normalized to NFC at
// the ingestion boundary (grammar specs, word lists, corpora, dictionaries),
// and is handled as a sequence of Unicode code points from then on — the
// "characters" on FST arcs are NFC code points, not bytes.

#ifndef SUBWFST_UNICODE_H_
#define SUBWFST_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

namespace subwfst {

// Canonical-composition normalization (NFC) via ICU.  Throws ParseError on
// invalid UTF-8.
std::string NormalizeNfc(std::string_view utf8);

// Splits into code points, each returned as its UTF-8 byte sequence.
// Validates the encoding (rejects overlong forms, surrogates, and values
// past U+10FFFF) and throws ParseError with the byte offset on bad input.
std::vector<std::string> Codepoints(std::string_view utf8);

// Number of code points; validates like Codepoints().
std::size_t CodepointCount(std::string_view utf8);

}  // namespace subwfst

#endif  // SUBWFST_UNICODE_H_
