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

#ifndef CDIST_BELL_HPP_
#define CDIST_BELL_HPP_

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "cdist/errors.hpp"

namespace cdist {

// A Bell-diagonal two-qubit state is stored as its four weights over
// (|Phi+>, |Psi->, |Psi+>, |Phi->), in that order. Vectors may be
// unnormalized: protocol outputs carry their success probability as trace.
template <typename Scalar>
using BellVec = Eigen::Matrix<Scalar, 4, 1>;

using BellVector = BellVec<double>;

/// Slot indices into a BellVector.
enum BellSlot : int { kPhiPlus = 0, kPsiMinus = 1, kPsiPlus = 2, kPhiMinus = 3 };

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kFidelityTraceTolerance = 1e-9;

/// (parity, sign) label of a Bell state: |beta_{a,b}>, a = parity, b = sign.
struct BellLabel {
  int parity = 0;
  int sign = 0;

  friend constexpr bool operator==(BellLabel, BellLabel) = default;
};

constexpr int slot_of(BellLabel l) {
  // (0,0)->Phi+, (1,1)->Psi-, (1,0)->Psi+, (0,1)->Phi-
  constexpr int table[2][2] = {{kPhiPlus, kPhiMinus}, {kPsiPlus, kPsiMinus}};
  return table[l.parity & 1][l.sign & 1];
}

constexpr BellLabel label_of(int slot) {
  constexpr BellLabel table[4] = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  return table[slot & 3];
}

/// Weight of the component labelled (parity, sign).
template <typename Derived>
typename Derived::Scalar weight(const Eigen::MatrixBase<Derived>& x, int parity, int sign) {
  return x(slot_of({parity, sign}));
}

template <typename Scalar>
BellVec<Scalar> werner(Scalar fidelity) {
  if (!(fidelity > Scalar(0) && fidelity <= Scalar(1))) {
    throw DomainError("werner: fidelity must lie in (0, 1]");
  }
  const Scalar e = (Scalar(1) - fidelity) / Scalar(3);
  return BellVec<Scalar>(fidelity, e, e, e);
}

enum class PauliAxis { X, Y, Z };

std::string to_string(PauliAxis axis);
PauliAxis parse_axis(const std::string& s);

/// Bell slot populated by a single-qubit Pauli flip applied to |Phi+>.
constexpr int flip_slot(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return kPsiPlus;
    case PauliAxis::Y: return kPsiMinus;
    case PauliAxis::Z: return kPhiMinus;
  }
  return kPhiPlus;
}

struct NoiseBias {
  PauliAxis axis = PauliAxis::Z;
  double degree = 1.0 / 3.0;
  double fidelity = 1.0;
};

/// |Phi+> sent through a Pauli channel biased towards `axis` with degree r:
/// identity weight F, biased flip r(1-F), the other two flips (1-r)(1-F)/2.
template <typename Scalar>
BellVec<Scalar> biased_state(Scalar fidelity, PauliAxis axis, Scalar degree) {
  if (!(fidelity > Scalar(0) && fidelity <= Scalar(1))) {
    throw DomainError("biased_state: fidelity must lie in (0, 1]");
  }
  if (!(degree >= Scalar(0) && degree <= Scalar(1))) {
    throw DomainError("biased_state: bias degree must lie in [0, 1]");
  }
  const Scalar err = Scalar(1) - fidelity;
  const Scalar rest = (Scalar(1) - degree) * err / Scalar(2);
  BellVec<Scalar> x = BellVec<Scalar>::Constant(rest);
  x(kPhiPlus) = fidelity;
  x(flip_slot(axis)) = degree * err;
  return x;
}

inline BellVector biased_state(const NoiseBias& bias) {
  return biased_state(bias.fidelity, bias.axis, bias.degree);
}

/// Maximum overlap with any Bell state. Requires a normalized vector.
template <typename Derived>
typename Derived::Scalar fidelity(const Eigen::MatrixBase<Derived>& x) {
  using std::abs;
  if (abs(x.sum() - typename Derived::Scalar(1)) > kFidelityTraceTolerance) {
    throw ContractViolation("fidelity: Bell vector is not normalized");
  }
  return x.maxCoeff();
}

template <typename Scalar>
struct Normalized {
  BellVec<Scalar> state;
  Scalar trace;
};

template <typename Derived>
Normalized<typename Derived::Scalar> normalize(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if ((x.array() < Scalar(0)).any()) {
    throw DomainError("normalize: negative Bell weight");
  }
  const Scalar tr = x.sum();
  if (!(tr > Scalar(0))) {
    throw DegenerateOutcome("normalize: zero-trace Bell vector (branch of probability 0)");
  }
  return {x / tr, tr};
}

template <typename Derived>
bool is_normalized(const Eigen::MatrixBase<Derived>& x,
                   double tol = kNormTolerance) {
  using std::abs;
  return (x.array() >= 0).all() && abs(x.sum() - 1) <= tol;
}

/// Renders as a JSON array "[a, b, c, d]" with round-trippable precision.
std::string to_json(const BellVector& x);
/// Parses a JSON array of four numbers in (A, B, C, D) order.
BellVector bell_from_json(const std::string& text);

}  // namespace cdist

#endif  // CDIST_BELL_HPP_
