// include/csasr/parallel.h
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

#ifndef CSASR_PARALLEL_H_
#define CSASR_PARALLEL_H_

#include <cstddef>
#include <exception>
#include <vector>

#ifdef CSASR_HAVE_OPENMP
#include <omp.h>
#endif

namespace csasr {

// Reference kernel: body(i) for i in [0, n), in order.
template <typename Body>
void ForEachIndexSerial(std::size_t n, Body &&body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

// OpenMP kernel. Iterations must write only to their own output slot. The
// exception of the lowest failing index is rethrown, which matches what the
// serial kernel would report.
template <typename Body>
void ForEachIndexParallel(std::size_t n, int jobs, Body &&body) {
#ifdef CSASR_HAVE_OPENMP
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr &e : errors)
    if (e) std::rethrow_exception(e);
#else
  (void)jobs;
  ForEachIndexSerial(n, body);
#endif
}

template <typename Body>
void ForEachIndex(std::size_t n, int jobs, Body &&body) {
  if (jobs <= 1 || n <= 1)
    ForEachIndexSerial(n, body);
  else
    ForEachIndexParallel(n, jobs, body);
}

inline bool HaveOpenMp() {
#ifdef CSASR_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace csasr

#endif  // CSASR_PARALLEL_H_
