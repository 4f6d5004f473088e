// Copyright 2026 The QAC Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the parsers and emitters.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qac::text {

/// Shortest decimal form that parses back to exactly `value`.
std::string format_number(double value);

/// Whole-token numeric parse; no leading/trailing garbage accepted.
std::optional<double> parse_number(std::string_view token);
std::optional<std::int64_t> parse_integer(std::string_view token);

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

/// Whitespace-separated tokens with their 1-based columns.
std::vector<Token> tokenize(std::string_view line);

std::string_view trim(std::string_view s);

} // namespace qac::text
