// Copyright 2026 The ptsem Authors
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

#ifndef PTSEM_ERRORS_HPP_
#define PTSEM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptsem {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the text-format readers; `position` is a byte offset into the
// input.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

// A value failed its structural invariants (tree shape, discharge maps, ...).
struct ValidationError : Error {
  using Error::Error;
};

// An operation was applied outside its declared domain or precondition.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace ptsem

#endif  // PTSEM_ERRORS_HPP_
