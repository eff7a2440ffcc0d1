// Copyright 2026 The hemirobin Authors.
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

#ifndef HEMIROBIN_ERRORS_HPP_
#define HEMIROBIN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hemirobin {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iterative procedure (series, root finder) did not meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A monotone bracket did not show the expected sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too few samples for a statistic.
class SampleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hemirobin

#endif  // HEMIROBIN_ERRORS_HPP_
