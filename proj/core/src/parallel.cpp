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

#include "htg_eval/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace htg {

std::optional<ThreadCount> parse_thread_count(const char* text) {
  if (text == nullptr) return std::nullopt;
  unsigned value = 0;
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return std::nullopt;
  return ThreadCount{value};
}

ThreadCount default_thread_count() {
  if (auto env = parse_thread_count(std::getenv("HTG_EVAL_THREADS"))) return *env;
  const unsigned hw = std::thread::hardware_concurrency();
  return ThreadCount{hw == 0 ? 1u : hw};
}

}  // namespace htg
