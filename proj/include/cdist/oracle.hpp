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

// Gate-by-gate density-matrix simulation of the distillation circuits. This
// is the ground truth the closed forms in protocols.hpp are checked against;
// the simulations never call into the closed forms.
//
// Wire layout: pair p occupies wires (2p, 2p+1) = (pA, pB).

#ifndef CDIST_ORACLE_HPP_
#define CDIST_ORACLE_HPP_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cdist/bell.hpp"
#include "cdist/density.hpp"
#include "cdist/protocols.hpp"

namespace cdist {

/// Called with a stage name and the state after that stage; used to dump
/// intermediate density matrices.
using Observer = std::function<void(std::string_view stage, const DensityMatrix& rho)>;

/// A surviving pair read back in the Bell basis.
struct OracleOutcome {
  BellVector unnormalized = BellVector::Zero();  // trace = branch probability
  double residual = 0.0;                         // off-diagonal Bell-basis magnitude

  double prob() const { return unnormalized.sum(); }
  /// Normalized outcome; throws DegenerateOutcome on a zero-probability branch.
  DistillOutcome outcome() const;
};

enum class ParityBranch { Both, Only00, Only11 };

/// DEJMPS on pairs (kept = x, measured = y).
OracleOutcome simulate_dejmps(const BellVector& x, const BellVector& y,
                              ParityBranch branch = ParityBranch::Both,
                              const Observer& observer = nullptr);

/// Three-pair <IZZ, XXX> protocol; the middle pair survives.
OracleOutcome simulate_three_pair(const BellVector& x0, const BellVector& x1,
                                  const BellVector& x2, const Observer& observer = nullptr);

struct SwitchBranches {
  OracleOutcome even;         // control read out as |00>/|11> after the Hadamards
  OracleOutcome odd;
  double checks_passed = 0.0;  // probability that both DEJMPS parity checks passed
};

SwitchBranches simulate_switch(const BellVector& x0, const BellVector& x1,
                               const BellVector& x2, const BellVector& x3,
                               const Observer& observer = nullptr);

/// 64 oracle runs over basis triples.
ThreePairTensor three_pair_transfer_tensor();

// ---------------------------------------------------------------------------
// Kraus operators of the controlled-order protocol. Pairs carry their circuit
// labels (1, 2, 3); the input space is always ordered by ascending label and
// surviving wires keep their relative order.

enum class KrausLabel { O, P, F, Q1, Q2 };

std::string to_string(KrausLabel label);
KrausLabel parse_kraus_label(const std::string& s);

struct KrausOp {
  KrausLabel label;
  int outcome = 0;               // parity outcome projected onto (0: |00>, 1: |11>)
  std::vector<int> pairs_in;     // pair labels of the input space
  std::vector<int> pairs_out;
  CMatrix matrix;                // 4^|out| x 4^|in|
};

/// O^i, P^i act on pairs {1,2,3}; F^j on {1,2}. Q1 acts on {1,2,3} by
/// default or on {2,3} when `after_other` is set (i.e. it is the second
/// factor); likewise Q2 on {1,2,3} or {1,3}.
KrausOp build_kraus(KrausLabel label, int outcome = 0, bool after_other = false);

/// after * before, with a pair-label compatibility check.
KrausOp compose(const KrausOp& after, const KrausOp& before);

/// Q2 Q1 (Q1 first) and Q1 Q2 as 4 x 64 matrices over pairs {1,2,3}.
CMatrix q2_after_q1();
CMatrix q1_after_q2();

/// K rho L^dagger.
CMatrix sandwich(const CMatrix& k, const CMatrix& rho, const CMatrix& l);

struct OrderingReport {
  double n1_direct = 0;         // sum_ij F^j O^i rho O^i+ F^j+  vs closed form N1
  double n2_direct = 0;
  double m1_direct = 0;         // sum_ij F^j P^i rho O^i+ F^j+  vs closed form M
  double m2_direct = 0;
  double n1_kraus = 0;          // Q2 Q1 rho (Q2 Q1)+  vs closed form N1
  double n2_kraus = 0;
  double m1_kraus = 0;          // Q1 Q2 rho (Q2 Q1)+  vs closed form M
  double m2_kraus = 0;
  double projection_00_11 = 0;  // first-step 00 vs 11 outcome equivalence
  double projection_second = 0; // second-step F^00 vs F^11 equivalence
  double commutator_identity = 0;  // M = (N1 + N2 - C rho C+)/2, C = Q2Q1 - Q1Q2
  double bell_offdiagonal = 0;
  double commutator_max_entry = 0;  // max |[Q2, Q1]|, expected well above 0

  double max_residual() const;
  bool passed(double tol = 1e-9) const { return max_residual() <= tol; }
  std::string to_json() const;
};

OrderingReport verify_kraus_ordering(const BellVector& x1, const BellVector& x2,
                                     const BellVector& x3);

// ---------------------------------------------------------------------------
// Generic quantum switch of two channels.

using KrausSet = std::vector<CMatrix>;

/// max |sum K^+ K - 1|.
double completeness_residual(const KrausSet& kraus);

/// D(rho_c, rho) = sum_ij W_ij (rho_c (x) rho) W_ij^+ with
/// W_ij = |0><0| (x) M_j N_i + |1><1| (x) N_i M_j. The control is wire 0.
DensityMatrix quantum_switch(const KrausSet& m, const KrausSet& n, const CMatrix& control,
                             const DensityMatrix& target);

/// Unnormalized target states for the control found in |+> and |->.
struct FourierBranches {
  DensityMatrix plus;
  DensityMatrix minus;
};

FourierBranches fourier_branches(const DensityMatrix& joint);

/// 1/4 sum_ij X_ij rho X_ij^+ with X_ij = M_j N_i + s N_i M_j, s = +1 or -1:
/// the |+> (s = 1) or |-> (s = -1) branch for a control prepared in |+>.
DensityMatrix switch_branch_formula(const KrausSet& m, const KrausSet& n,
                                    const DensityMatrix& target, int sign);

}  // namespace cdist

#endif  // CDIST_ORACLE_HPP_
