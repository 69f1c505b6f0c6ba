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

// Closed-form Bell-vector arithmetic for the distillation steps:
// DEJMPS, the three-pair <IZZ, XXX> code protocol, and the protocol that
// runs two DEJMPS steps under a coherently controlled order.

#ifndef CDIST_PROTOCOLS_HPP_
#define CDIST_PROTOCOLS_HPP_

#include <array>

#include "cdist/bell.hpp"

namespace cdist {

/// Normalized output state of a protocol and the probability that every
/// postselection along the way succeeded.
struct DistillOutcome {
  BellVector state = BellVector(1, 0, 0, 0);
  double prob = 1.0;

  double fidelity() const { return state.maxCoeff(); }
};

/// Normalizes an unnormalized protocol output; trace becomes the probability.
DistillOutcome make_outcome(const BellVector& unnormalized);

/// Unnormalized DEJMPS output; its trace is the success probability.
/// Exactly symmetric in (x, y), including in floating point.
template <typename DX, typename DY>
BellVec<typename DX::Scalar> dejmps_unnormalized(const Eigen::MatrixBase<DX>& x,
                                                 const Eigen::MatrixBase<DY>& y) {
  using S = typename DX::Scalar;
  return BellVec<S>(x(0) * y(0) + x(1) * y(1),
                    x(3) * y(2) + x(2) * y(3),
                    x(2) * y(2) + x(3) * y(3),
                    x(1) * y(0) + x(0) * y(1));
}

DistillOutcome dejmps(const BellVector& x, const BellVector& y);

/// Transfer tensor of the three-pair protocol: entry (i, j, k) is the
/// unnormalized output for the basis input |beta_i>|beta_j>|beta_k>.
/// Positions are significant.
class ThreePairTensor {
 public:
  ThreePairTensor() { entries_.fill(BellVector::Zero()); }

  BellVector& at(int i, int j, int k) { return entries_[index(i, j, k)]; }
  const BellVector& at(int i, int j, int k) const { return entries_[index(i, j, k)]; }

  BellVector contract(const BellVector& x0, const BellVector& x1, const BellVector& x2) const;

  /// The tensor derived from the density-matrix oracle, built once on first
  /// use and read-only afterwards.
  static const ThreePairTensor& cached();

 private:
  static constexpr int index(int i, int j, int k) { return (i * 4 + j) * 4 + k; }
  std::array<BellVector, 64> entries_;
};

DistillOutcome three_pair(const BellVector& x0, const BellVector& x1, const BellVector& x2,
                          const ThreePairTensor& tensor = ThreePairTensor::cached());

/// Unnormalized mixture terms of the controlled-order protocol output, for
/// swapped pair (x1, x2) and sequential target x3. `l` may carry negative
/// weights; only the assembled state is a valid Bell vector.
template <typename Scalar>
struct SwitchComponentsT {
  BellVec<Scalar> n1, n2, m, t, l;
};
using SwitchComponents = SwitchComponentsT<double>;

template <typename Scalar>
SwitchComponentsT<Scalar> switch_components(const BellVec<Scalar>& x1,
                                            const BellVec<Scalar>& x2,
                                            const BellVec<Scalar>& x3) {
  SwitchComponentsT<Scalar> c;
  // Both definite orders are two chained DEJMPS steps with x3 as the
  // running target.
  c.n1 = dejmps_unnormalized(x1, dejmps_unnormalized(x2, x3));
  c.n2 = dejmps_unnormalized(x2, dejmps_unnormalized(x1, x3));

  // Interference term; the R rotation exchanges the Psi- and Phi- labels.
  const BellVec<Scalar> prod = x1.cwiseProduct(x2).cwiseProduct(x3);
  c.m = BellVec<Scalar>(prod(kPhiPlus), prod(kPhiMinus), prod(kPsiPlus), prod(kPsiMinus));

  // Row s: x3 label shift (da, db) and the sign exponent for the L term.
  struct Row {
    int slot, da, db;
    int (*sign)(int a, int b, int c, int d);
  };
  static constexpr Row rows[4] = {
      {kPhiPlus, 0, 0, [](int a, int b, int c, int d) { return (a & (1 ^ d)) ^ (c & (1 ^ b)) ^ b ^ d; }},
      {kPsiMinus, 0, 1, [](int a, int b, int c, int d) { return ((a ^ 1) & d) ^ ((c ^ 1) & b); }},
      {kPsiPlus, 1, 0, [](int a, int b, int c, int d) { return (a & (1 ^ d)) ^ (c & (1 ^ b)); }},
      {kPhiMinus, 1, 1, [](int a, int b, int c, int d) { return (a & d) ^ (c & b); }},
  };
  c.t.setZero();
  c.l.setZero();
  for (const Row& row : rows) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int cc = 0; cc < 2; ++cc)
          for (int d = 0; d < 2; ++d) {
            const Scalar w = weight(x1, a, b) * weight(x2, cc, d) *
                             weight(x3, a ^ cc ^ row.da, b ^ d ^ row.db);
            c.t(row.slot) += w;
            c.l(row.slot) += row.sign(a, b, cc, d) ? -w : w;
          }
  }
  c.t /= Scalar(4);
  c.l /= Scalar(4);
  return c;
}

/// Unnormalized even-parity output rho+ for control x0 (odd: rho-).
template <typename Scalar>
BellVec<Scalar> switch_assemble(const BellVec<Scalar>& x0, const SwitchComponentsT<Scalar>& c,
                                bool even = true) {
  const Scalar sgn = even ? Scalar(1) : Scalar(-1);
  const Scalar a = x0(kPhiPlus), b = x0(kPsiMinus), cc = x0(kPsiPlus), d = x0(kPhiMinus);
  return (a + d) / Scalar(2) * (c.n1 + c.n2) + sgn * (a - d) * c.m + (b + cc) * c.t +
         sgn * (cc - b) * c.l;
}

/// Fraction of tr(rho+/-) that is the physical branch probability.
inline constexpr double kSwitchBranchWeight = 0.5;

/// Control x0 C-SWAPs x1 and x2, then x3 is distilled with the pair in the
/// second slot and afterwards with the first; the control is read out in the
/// Fourier basis and even parity is kept.
DistillOutcome switch_protocol(const BellVector& x0, const BellVector& x1,
                               const BellVector& x2, const BellVector& x3);

}  // namespace cdist

#endif  // CDIST_PROTOCOLS_HPP_
