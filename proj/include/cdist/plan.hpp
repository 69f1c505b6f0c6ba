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

// Protocol plans over four input pairs and the three competing protocol
// sets: definite-order DEJMPS arrangements (G), arrangements that also use
// the three-pair protocol (J), and the controlled-order protocol (S).
//
// String grammar:
//   "(2)"              keep pair 2
//   "(0,1)"            DEJMPS of pairs 0 and 1
//   "((0,1),(2,3))"    nested DEJMPS (recurrence)
//   "((0,1),2,3)"      three-pair protocol, slots in order
//   "S[0|12|3]"        control 0 swaps 1 and 2, target 3

#ifndef CDIST_PLAN_HPP_
#define CDIST_PLAN_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdist/bell.hpp"
#include "cdist/protocols.hpp"

namespace cdist {

inline constexpr int kNumInputs = 4;
using InputSet = std::array<BellVector, kNumInputs>;

enum class PlanKind { Keep, Dejmps, ThreePair, Switch };

class ProtocolPlan {
 public:
  static ProtocolPlan keep(int leaf);
  /// DEJMPS is symmetric, so children are stored ordered by smallest leaf.
  static ProtocolPlan dejmps(ProtocolPlan a, ProtocolPlan b);
  static ProtocolPlan three_pair(ProtocolPlan a, ProtocolPlan b, ProtocolPlan c);
  static ProtocolPlan switched(int control, int swap_a, int swap_b, int target);

  /// Parses the string grammar above; throws DomainError on malformed text.
  static ProtocolPlan parse(std::string_view text);

  PlanKind kind() const { return kind_; }
  int leaf() const { return leaf_; }
  const std::vector<ProtocolPlan>& children() const { return children_; }
  /// (control, swap_a, swap_b, target) with swap_a < swap_b.
  const std::array<int, 4>& switch_roles() const { return roles_; }

  std::vector<int> leaves() const;
  int min_leaf() const;
  std::string encode() const;

  friend bool operator==(const ProtocolPlan& a, const ProtocolPlan& b) {
    return a.encode() == b.encode();
  }

 private:
  ProtocolPlan() = default;
  void encode_into(std::string& out, bool top) const;
  void validate() const;

  PlanKind kind_ = PlanKind::Keep;
  int leaf_ = 0;
  std::vector<ProtocolPlan> children_;
  std::array<int, 4> roles_{};
};

/// Success probability is the product of all step probabilities; Keep has 1.
DistillOutcome evaluate(const ProtocolPlan& plan, const InputSet& inputs);

std::vector<ProtocolPlan> enumerate_G();
std::vector<ProtocolPlan> enumerate_J();
std::vector<ProtocolPlan> enumerate_S();

struct BestPlan {
  ProtocolPlan plan;
  DistillOutcome outcome;
};

/// Highest output fidelity; ties go to the higher probability, then to the
/// lexicographically smallest encoding. Zero-probability plans are skipped.
BestPlan best_of(std::span<const ProtocolPlan> plans, const InputSet& inputs);

/// The plan lists are immutable; these return shared instances.
const std::vector<ProtocolPlan>& plans_G();
const std::vector<ProtocolPlan>& plans_J();
const std::vector<ProtocolPlan>& plans_S();

InputSet werner_inputs(const std::array<double, 4>& fidelities);

}  // namespace cdist

#endif  // CDIST_PLAN_HPP_
