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

// Two noisy teleportations, one after the other or in an order controlled by
// a qubit in |+>. With identical pure resource pairs the switched order
// brings no noise reduction; this module checks that claim both from the
// Pauli-channel algebra and from a gate-level simulation.
//
// Pauli index m: 0 = I, 1 = X, 2 = Y, 3 = Z.

#ifndef CDIST_TELSWITCH_HPP_
#define CDIST_TELSWITCH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cdist {

using Qubit = Eigen::Vector2cd;
using Qubit2 = Eigen::Matrix2cd;
using Joint2 = Eigen::Matrix4cd;

const std::array<Eigen::Matrix2cd, 4>& paulis();

/// A(n, i) = +1 if sigma_n and sigma_i commute, -1 otherwise.
int pauli_commutation_sign(int n, int i);

/// A pure resource |chi> = sum_m u_m (1 (x) sigma_m)|Phi+>.
class PureResourcePair {
 public:
  /// Throws DomainError unless sum |u_m|^2 = 1 within 1e-12.
  explicit PureResourcePair(const Eigen::Vector4cd& u);

  static PureResourcePair perfect();
  /// Throws DomainError for a mixed (rank > 1) two-qubit state.
  static PureResourcePair from_density(const Eigen::Matrix4cd& rho);

  const Eigen::Vector4cd& amplitudes() const { return u_; }
  PureResourcePair with_phase(double phi) const;
  /// Computational-basis state vector over (|00>, |01>, |10>, |11>).
  Eigen::Vector4cd state_vector() const;

 private:
  Eigen::Vector4cd u_;
};

/// sum_mn q_mm s_nn sigma_n sigma_m |psi><psi| sigma_m sigma_n, with chi
/// used first (q) and xi second (s).
Qubit2 sequential_teleport(const Qubit& psi, const PureResourcePair& chi,
                           const PureResourcePair& xi);

/// Joint control (x) target state after the order of the two teleportations
/// is controlled by |+>: q_mm s_nn on the diagonal blocks, q_mn s_nm off it.
Joint2 switched_teleport(const Qubit& psi, const PureResourcePair& chi,
                         const PureResourcePair& xi);

/// Gate-level versions: Bell measurements deferred and summed over outcomes.
Qubit2 sequential_teleport_circuit(const Qubit& psi, const PureResourcePair& chi,
                                   const PureResourcePair& xi);
Joint2 switched_teleport_circuit(const Qubit& psi, const PureResourcePair& chi,
                                 const PureResourcePair& xi);

struct TeleportRecord {
  Qubit2 sequential_out;
  Joint2 switched_joint;
  double factorization_residual = 0;  // max |R - |+><+| (x) rho'|
};

TeleportRecord teleport_record(const Qubit& psi, const PureResourcePair& chi,
                               const PureResourcePair& xi);

struct TeleportTrial {
  double sequential_fidelity = 0;
  double switched_fidelity = 0;  // after postselecting the control on |+>
  double phase = 0;
};

struct NoAdvantageReport {
  std::vector<TeleportTrial> trials;
  double max_deviation = 0;             // |switched - sequential| fidelity
  double max_factorization_residual = 0;
  double max_circuit_residual = 0;      // algebra vs gate-level simulation
  double max_identity_residual = 0;     // |q_mn s_nm - q_mm s_nn|

  double max_residual() const;
  bool passed(double tol = 1e-9) const { return max_residual() <= tol; }
  std::string to_json() const;
};

/// Random target states; xi = chi up to a random global phase. When `chi`
/// is not given, every trial draws a fresh random resource.
NoAdvantageReport verify_no_advantage(int trials, std::uint64_t seed,
                                      const PureResourcePair* chi = nullptr);

/// max over n, m of |1/4 sum_i A(n,i) A(i,m) - delta_nm|.
double pauli_phase_identity_residual();

}  // namespace cdist

#endif  // CDIST_TELSWITCH_HPP_
