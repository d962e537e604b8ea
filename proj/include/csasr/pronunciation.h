// include/csasr/pronunciation.h
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

#ifndef CSASR_PRONUNCIATION_H_
#define CSASR_PRONUNCIATION_H_

#include <string>
#include <string_view>
#include <vector>

namespace csasr {

// Phonemes of the native phoneme set, in order.
using PhonemeSequence = std::vector<std::string>;

struct ScoredPronunciation {
  PhonemeSequence phonemes;
  double score = 0.0;

  bool operator==(const ScoredPronunciation &) const = default;
};

// Throws ConfigError when empty or when a token is empty/epsilon/has spaces.
void ValidatePhonemeSequence(const PhonemeSequence &seq);

// Space-separated text form.
std::string PhonemesToString(const PhonemeSequence &seq);
PhonemeSequence ParsePhonemes(std::string_view text);

}  // namespace csasr

#endif  // CSASR_PRONUNCIATION_H_
