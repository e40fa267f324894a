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

#ifndef HTG_EVAL_UNICODE_HPP_
#define HTG_EVAL_UNICODE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace htg {

// Unicode NFC of a UTF-8 string. Ill-formed sequences become U+FFFD.
std::string nfc(std::string_view utf8);

// Codepoints of nfc(utf8).
std::u32string nfc_codepoints(std::string_view utf8);

// Splits on runs of Unicode-agnostic ASCII whitespace; empty tokens dropped.
std::vector<std::string> split_whitespace(std::string_view text);

}  // namespace htg

#endif  // HTG_EVAL_UNICODE_HPP_
