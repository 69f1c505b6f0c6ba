// Copyright 2026 The causaldistill Authors
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

#ifndef CDIST_ERRORS_HPP_
#define CDIST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cdist {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A precondition on an input value was violated (e.g. unnormalized state).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A postselected branch has zero probability; no output state exists.
class DegenerateOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed form and its oracle disagree, or an identity check failed.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cdist

#endif  // CDIST_ERRORS_HPP_
