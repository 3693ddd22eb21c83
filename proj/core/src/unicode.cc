// unicode.cc
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

#include "subwfst/unicode.h"

#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utypes.h>

#include <cstdint>

#include "subwfst/error.h"

namespace subwfst {

namespace {

[[noreturn]] void BadUtf8(std::size_t offset) {
  throw ParseError("invalid UTF-8 at byte offset " + std::to_string(offset));
}

// Decodes one code point starting at `i`; advances `i` past it.  Rejects
// everything RFC 3629 rejects.
char32_t DecodeOne(std::string_view s, std::size_t &i) {
  auto byte = [&](std::size_t k) { return static_cast<std::uint8_t>(s[k]); };
  std::uint8_t b0 = byte(i);
  std::size_t len;
  char32_t cp;
  if (b0 < 0x80) {
    len = 1;
    cp = b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    BadUtf8(i);
  }
  if (i + len > s.size()) BadUtf8(i);
  for (std::size_t k = 1; k < len; ++k) {
    std::uint8_t b = byte(i + k);
    if ((b & 0xC0) != 0x80) BadUtf8(i);
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong encodings, surrogates, and out-of-range values are invalid.
  static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len]) BadUtf8(i);
  if (cp >= 0xD800 && cp <= 0xDFFF) BadUtf8(i);
  if (cp > 0x10FFFF) BadUtf8(i);
  i += len;
  return cp;
}

}  // namespace

std::string NormalizeNfc(std::string_view utf8) {
  (void)CodepointCount(utf8);  // uniform validation errors before ICU sees it

  UErrorCode status = U_ZERO_ERROR;
  const UNormalizer2 *nfc = unorm2_getNFCInstance(&status);
  if (U_FAILURE(status)) {
    throw Error("icu: unorm2_getNFCInstance failed: " + std::string(
        u_errorName(status)));
  }

  // UTF-8 -> UTF-16.
  std::vector<UChar> u16(utf8.size() + 1);
  std::int32_t u16_len = 0;
  status = U_ZERO_ERROR;
  u_strFromUTF8(u16.data(), static_cast<std::int32_t>(u16.size()), &u16_len,
                utf8.data(), static_cast<std::int32_t>(utf8.size()), &status);
  if (U_FAILURE(status)) {
    throw ParseError("invalid UTF-8 input");
  }

  // Normalize; retry once if the first buffer guess is too small.
  std::vector<UChar> norm(static_cast<std::size_t>(u16_len) + 16);
  status = U_ZERO_ERROR;
  std::int32_t norm_len =
      unorm2_normalize(nfc, u16.data(), u16_len, norm.data(),
                       static_cast<std::int32_t>(norm.size()), &status);
  if (status == U_BUFFER_OVERFLOW_ERROR) {
    norm.resize(static_cast<std::size_t>(norm_len) + 1);
    status = U_ZERO_ERROR;
    norm_len = unorm2_normalize(nfc, u16.data(), u16_len, norm.data(),
                                static_cast<std::int32_t>(norm.size()),
                                &status);
  }
  if (U_FAILURE(status)) {
    throw Error("icu: unorm2_normalize failed: " + std::string(
        u_errorName(status)));
  }

  // UTF-16 -> UTF-8.
  std::string out(static_cast<std::size_t>(norm_len) * 4 + 4, '\0');
  std::int32_t out_len = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(out.data(), static_cast<std::int32_t>(out.size()), &out_len,
              norm.data(), norm_len, &status);
  if (U_FAILURE(status)) {
    throw Error("icu: u_strToUTF8 failed: " + std::string(
        u_errorName(status)));
  }
  out.resize(static_cast<std::size_t>(out_len));
  return out;
}

std::vector<std::string> Codepoints(std::string_view utf8) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < utf8.size()) {
    std::size_t begin = i;
    (void)DecodeOne(utf8, i);
    out.emplace_back(utf8.substr(begin, i - begin));
  }
  return out;
}

std::size_t CodepointCount(std::string_view utf8) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < utf8.size()) {
    (void)DecodeOne(utf8, i);
    ++n;
  }
  return n;
}

}  // namespace subwfst
