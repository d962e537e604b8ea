// include/csasr/util.h
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

#ifndef CSASR_UTIL_H_
#define CSASR_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace csasr {

// Splits on every tab; empty fields are kept.
std::vector<std::string> SplitTabs(std::string_view line);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value);

// Full-string parse; throws ParseError (with line) on garbage.
double ParseDouble(std::string_view text, std::size_t line = 0);
long ParseInt(std::string_view text, std::size_t line = 0);

// Lines of a text blob with trailing '\r' removed. A final newline does not
// produce an empty trailing line.
std::vector<std::string> SplitLines(std::string_view text);

bool IsBlankOrComment(std::string_view line);

// UTF-8 code point sequence; invalid bytes come through as single-byte units.
std::vector<std::string> Utf8Chars(std::string_view text);
char32_t DecodeUtf8(std::string_view ch);

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view contents);

}  // namespace csasr

#endif  // CSASR_UTIL_H_
