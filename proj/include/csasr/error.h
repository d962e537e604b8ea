// include/csasr/error.h
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

#ifndef CSASR_ERROR_H_
#define CSASR_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csasr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments, symbol-table mismatches, violated preconditions.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. line() is 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace csasr

#endif  // CSASR_ERROR_H_
