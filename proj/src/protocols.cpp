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

#include "cdist/protocols.hpp"

#include <algorithm>

#include "cdist/oracle.hpp"

namespace cdist {

namespace {

// Tiny negative weights from cancellation in the assembled switch output are
// rounding noise; anything larger means the closed form is wrong.
constexpr double kAssemblyTolerance = 1e-12;

bool lex_less(const BellVector& a, const BellVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + 4, b.data(), b.data() + 4);
}

}  // namespace

DistillOutcome make_outcome(const BellVector& unnormalized) {
  const auto n = normalize(unnormalized);
  return {n.state, n.trace};
}

DistillOutcome dejmps(const BellVector& x, const BellVector& y) {
  return make_outcome(dejmps_unnormalized(x, y));
}

BellVector ThreePairTensor::contract(const BellVector& x0, const BellVector& x1,
                                     const BellVector& x2) const {
  BellVector out = BellVector::Zero();
  for (int i = 0; i < 4; ++i) {
    if (x0(i) == 0.0) continue;
    for (int j = 0; j < 4; ++j) {
      const double wij = x0(i) * x1(j);
      if (wij == 0.0) continue;
      for (int k = 0; k < 4; ++k) out += (wij * x2(k)) * at(i, j, k);
    }
  }
  return out;
}

const ThreePairTensor& ThreePairTensor::cached() {
  static const ThreePairTensor tensor = three_pair_transfer_tensor();
  return tensor;
}

DistillOutcome three_pair(const BellVector& x0, const BellVector& x1, const BellVector& x2,
                          const ThreePairTensor& tensor) {
  return make_outcome(tensor.contract(x0, x1, x2));
}

DistillOutcome switch_protocol(const BellVector& x0, const BellVector& x1,
                               const BellVector& x2, const BellVector& x3) {
  // The output is symmetric in the swapped pair; fixing their order makes it
  // bit-identical too, so set-level maxima are exactly permutation invariant.
  const bool ordered = !lex_less(x2, x1);
  const SwitchComponents c =
      ordered ? switch_components(x1, x2, x3) : switch_components(x2, x1, x3);
  BellVector rho = switch_assemble(x0, c, true);
  if (rho.minCoeff() < -kAssemblyTolerance) {
    throw ContractViolation("switch_protocol: assembled output has a negative Bell weight");
  }
  rho = rho.cwiseMax(0.0);
  DistillOutcome out = make_outcome(rho);
  out.prob *= kSwitchBranchWeight;
  return out;
}

}  // namespace cdist
