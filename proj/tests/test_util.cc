// tests/test_util.cc
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

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "csasr/error.h"
#include "csasr/parallel.h"
#include "csasr/util.h"
#include "doctest.h"

using namespace csasr;

TEST_CASE("splitting keeps empty tab fields and drops whitespace runs") {
  CHECK(SplitTabs("a\t\tb") == std::vector<std::string>{"a", "", "b"});
  CHECK(SplitTabs("") == std::vector<std::string>{""});
  CHECK(SplitWhitespace("  OU  W\tEI ") == std::vector<std::string>{"OU", "W", "EI"});
  CHECK(SplitWhitespace("   ").empty());
  CHECK(Join({"a", "b", "c"}, " ") == "a b c");
  CHECK(SplitLines("a\r\nb\n") == std::vector<std::string>{"a", "b"});
  CHECK(SplitLines("").empty());
}

TEST_CASE("comments and blanks") {
  CHECK(IsBlankOrComment(""));
  CHECK(IsBlankOrComment("   "));
  CHECK(IsBlankOrComment("  # note"));
  CHECK_FALSE(IsBlankOrComment("a # b"));
}

TEST_CASE("doubles print in shortest round-trip form") {
  CHECK(FormatDouble(0.5) == "0.5");
  CHECK(FormatDouble(-0.0) == "0");
  CHECK(FormatDouble(3.0) == "3");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    double v = u(rng);
    CHECK(ParseDouble(FormatDouble(v)) == v);
  }
  CHECK(ParseDouble("+1.5") == 1.5);
  CHECK(ParseDouble("inf") == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(ParseDouble("1.5x", 4), ParseError);
  CHECK_THROWS_AS(ParseDouble(""), ParseError);
  CHECK(ParseInt("-12") == -12);
  try {
    ParseInt("7a", 3);
    FAIL("expected an error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).rfind("line 3: ", 0) == 0);
  }
}

TEST_CASE("UTF-8 characters split and decode") {
  CHECK(Utf8Chars("打ab") == std::vector<std::string>{"打", "a", "b"});
  CHECK(DecodeUtf8("打") == U'打');
  CHECK(DecodeUtf8("a") == U'a');
  CHECK(DecodeUtf8("\xF0\x9F\x98\x80") == 0x1F600);
  // A stray continuation byte stands alone rather than swallowing input.
  CHECK(Utf8Chars("\x80" "a").size() == 2);
}

TEST_CASE("file helpers raise I/O errors") {
  CHECK_THROWS_AS(ReadFile("/nonexistent/dir/file.txt"), IoError);
  CHECK_THROWS_AS(WriteFile("/nonexistent/dir/file.txt", "x"), IoError);
  auto path = std::filesystem::temp_directory_path() / "csasr_util_test.txt";
  WriteFile(path.string(), "我们\n");
  CHECK(ReadFile(path.string()) == "我们\n");
  std::filesystem::remove(path);
}

TEST_CASE("parallel index loop agrees with the serial kernel") {
  std::vector<long> serial(1000), parallel(1000);
  ForEachIndexSerial(serial.size(), [&](std::size_t i) { serial[i] = static_cast<long>(i * i % 97); });
  ForEachIndex(parallel.size(), 4, [&](std::size_t i) { parallel[i] = static_cast<long>(i * i % 97); });
  CHECK(serial == parallel);
}

TEST_CASE("parallel index loop rethrows the lowest failing index") {
  auto body = [](std::size_t i) {
    if (i == 7 || i == 500) throw ConfigError("index " + std::to_string(i));
  };
  for (int jobs : {1, 4}) {
    try {
      ForEachIndex(1000, jobs, body);
      FAIL("expected an error");
    } catch (const ConfigError &e) {
      CHECK(std::string(e.what()) == "index 7");
    }
  }
}
