// Copyright 2026 The adaptlin Authors. All rights reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace adaptlin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument (cone parameters, tolerances, ...) failed.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An explicitly enumerated sequence was queried past its end.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Cone membership asked of a source without a declared support bound.
class UndecidableMembership : public Error {
 public:
  using Error::Error;
};

/// A scan over n = 0, 1, ... ran past the N_max guard.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A block scan j = 1, 2, ... ran past the J_max guard.
class NonTermination : public Error {
 public:
  using Error::Error;
};

/// The partition does not fit a construction (for example n0 == 0).
class UnsupportedPartition : public Error {
 public:
  using Error::Error;
};

/// The fooling-function constraint system has no solution.
class InfeasibleConstraints : public Error {
 public:
  using Error::Error;
};

}  // namespace adaptlin
