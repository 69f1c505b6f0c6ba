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

// Randomized cross-validation of the closed forms against the oracle.

#ifndef CDIST_VERIFY_HPP_
#define CDIST_VERIFY_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cdist/bell.hpp"
#include "cdist/protocols.hpp"

namespace cdist {

/// Uniform over the probability simplex.
BellVector random_bell_vector(std::mt19937_64& rng);

enum class VerifyLevel { Quick, Full };

VerifyLevel parse_verify_level(const std::string& s);

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  std::uint64_t seed = 7;
  /// Three-pair tensor under test; the cached one when null.
  const ThreePairTensor* tensor = nullptr;
};

struct SuiteResult {
  std::string name;
  int cases = 0;
  double max_residual = 0;
  double tolerance = 0;
  std::string worst_case;  // JSON inputs of the worst case, for replay

  bool passed() const { return max_residual <= tolerance; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  std::string to_json() const;
};

int trials_for(VerifyLevel level);

SuiteResult verify_dejmps_suite(int trials, std::uint64_t seed);
SuiteResult verify_three_pair_suite(int trials, std::uint64_t seed,
                                    const ThreePairTensor& tensor);
SuiteResult verify_switch_suite(int trials, std::uint64_t seed);
SuiteResult verify_ordering_suite(int trials, std::uint64_t seed);
SuiteResult verify_quantum_switch_suite(int trials, std::uint64_t seed);
SuiteResult verify_teleport_suite(int trials, std::uint64_t seed);

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace cdist

#endif  // CDIST_VERIFY_HPP_
