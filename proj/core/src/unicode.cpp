/* Copyright 2026 The htg-eval Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "htg_eval/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || norm == nullptr) {
    fail(ErrorCode::kIoError, "ICU NFC normalizer unavailable");
  }
  return *norm;
}

icu::UnicodeString normalized(std::string_view utf8) {
  const auto src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc_instance().normalize(src, status);
  if (U_FAILURE(status)) fail(ErrorCode::kSchemaError, "NFC normalization failed");
  return out;
}

}  // namespace

std::string nfc(std::string_view utf8) {
  // Pure ASCII is already in NFC.
  bool ascii = true;
  for (unsigned char c : utf8) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return std::string(utf8);
  std::string out;
  normalized(utf8).toUTF8String(out);
  return out;
}

std::u32string nfc_codepoints(std::string_view utf8) {
  std::u32string out;
  bool ascii = true;
  for (unsigned char c : utf8) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    out.reserve(utf8.size());
    for (unsigned char c : utf8) out.push_back(c);
    return out;
  }
  const icu::UnicodeString s = normalized(utf8);
  out.reserve(static_cast<size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    const UChar32 cp = s.char32At(i);
    out.push_back(static_cast<char32_t>(cp));
    i = s.moveIndex32(i, 1);
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace htg
