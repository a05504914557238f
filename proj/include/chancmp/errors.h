// Copyright 2026 The chancmp Authors
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

#ifndef CHANCMP_ERRORS_H
#define CHANCMP_ERRORS_H

#include <stdexcept>
#include <string>

namespace chancmp {

/// Raised when two objects that must be composed or compared have incompatible sizes.
class DimensionMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a value fails its type invariant (normalization, positivity, ...).
class InvariantViolation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by iterative solvers that exhaust their iteration budget.
class IterationLimit : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a channel expected to have commuting (classical) output does not.
class NotClassicalOutput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A comparison whose two independent routes could not be reconciled.
///
/// `detail` carries a human-readable diagnostic dump of both routes.
class AmbiguousVerdict : public std::runtime_error {
   public:
    AmbiguousVerdict(const std::string &what, std::string detail)
        : std::runtime_error(what), detail(std::move(detail)) {
    }
    std::string detail;
};

}  // namespace chancmp

#endif
