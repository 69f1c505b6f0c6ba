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


#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "cdist/errors.hpp"
#include "cdist/telswitch.hpp"

namespace cdist {
namespace {

using C = std::complex<double>;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Qubit ket(C a, C b) {
  Qubit q(a, b);
  return q.normalized();
}

PureResourcePair skewed() {
  Eigen::Vector4cd u(C(0.8, 0), C(0, 0.36), C(0.3, -0.2), C(0.1, 0.25));
  return PureResourcePair(u.normalized());
}

TEST(Teleport, PaulisAndCommutationTable) {
  const auto& s = paulis();
  for (int n = 0; n < 4; ++n)
    for (int i = 0; i < 4; ++i) {
      const Eigen::Matrix2cd ab = s[n] * s[i], ba = s[i] * s[n];
      const int sign = pauli_commutation_sign(n, i);
      EXPECT_LT(max_abs(ab - double(sign) * ba), 1e-15) << n << i;
    }
  EXPECT_LT(pauli_phase_identity_residual(), 1e-15);
}

TEST(Teleport, ResourceValidation) {
  EXPECT_THROW(PureResourcePair(Eigen::Vector4cd(1, 1, 0, 0)), DomainError);
  const PureResourcePair p = PureResourcePair::perfect();
  const Eigen::Vector4cd v = p.state_vector();
  EXPECT_NEAR(v(0).real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(v(3).real(), M_SQRT1_2, 1e-15);
  const Eigen::Vector4cd w = skewed().state_vector();
  const PureResourcePair back = PureResourcePair::from_density(w * w.adjoint());
  const Eigen::Matrix4cd d1 = back.state_vector() * back.state_vector().adjoint();
  EXPECT_LT(max_abs(d1 - w * w.adjoint()), 1e-12);
  EXPECT_THROW(PureResourcePair::from_density(Eigen::Matrix4cd::Identity() / 4), DomainError);
}

TEST(Teleport, PerfectPairsTeleportExactly) {
  const Qubit psi = ket(C(0.6, 0), C(0, 0.8));
  const auto e = PureResourcePair::perfect();
  const Qubit2 want = psi * psi.adjoint();
  EXPECT_LT(max_abs(sequential_teleport(psi, e, e) - want), 1e-15);
  EXPECT_LT(max_abs(sequential_teleport_circuit(psi, e, e) - want), 1e-12);
  Eigen::Matrix2cd plus = Eigen::Matrix2cd::Constant(0.5);
  Joint2 joint;
  joint << plus(0, 0) * want, plus(0, 1) * want, plus(1, 0) * want, plus(1, 1) * want;
  EXPECT_LT(max_abs(switched_teleport(psi, e, e) - joint), 1e-15);
}

TEST(Teleport, BitFlipResourceRegression) {
  // u = (sqrt 0.9, sqrt 0.1, 0, 0): each teleport flips with probability 0.1.
  const PureResourcePair chi(Eigen::Vector4cd(std::sqrt(0.9), std::sqrt(0.1), 0, 0));
  const Qubit psi(1, 0);
  const Qubit2 circuit = sequential_teleport_circuit(psi, chi, chi);
  EXPECT_NEAR(circuit(0, 0).real(), 0.82, 1e-12);
  EXPECT_NEAR(circuit(1, 1).real(), 0.18, 1e-12);
  EXPECT_LT(max_abs(sequential_teleport(psi, chi, chi) - circuit), 1e-12);
}

TEST(Teleport, CircuitMatchesAlgebra) {
  const Qubit psi = ket(C(0.3, 0.1), C(-0.5, 0.7));
  const PureResourcePair chi = skewed();
  const PureResourcePair xi(Eigen::Vector4cd(C(0.5, 0), C(0.5, 0), C(0, 0.5), C(-0.5, 0)));
  EXPECT_LT(max_abs(sequential_teleport_circuit(psi, chi, xi) - sequential_teleport(psi, chi, xi)),
            1e-12);
  EXPECT_LT(max_abs(switched_teleport_circuit(psi, chi, xi) - switched_teleport(psi, chi, xi)),
            1e-12);
}

TEST(Teleport, IdenticalPairsFactorize) {
  const Qubit psi = ket(C(0.2, 0.4), C(0.9, -0.1));
  const PureResourcePair chi = skewed();
  const TeleportRecord r = teleport_record(psi, chi, chi.with_phase(1.234));
  EXPECT_LT(r.factorization_residual, 1e-12);
  EXPECT_NEAR(r.switched_joint.trace().real(), 1.0, 1e-12);
}

TEST(Teleport, DistinctPairsNeedNotFactorize) {
  const Qubit psi = ket(C(1, 0), C(1, 0));
  const PureResourcePair chi = skewed();
  const PureResourcePair xi(Eigen::Vector4cd(C(0.6, 0), C(0, 0), C(0, 0), C(0.8, 0)));
  EXPECT_GT(teleport_record(psi, chi, xi).factorization_residual, 1e-3);
}

TEST(Teleport, NoAdvantageOverRandomTrials) {
  const NoAdvantageReport rep = verify_no_advantage(25, 99);
  EXPECT_EQ(rep.trials.size(), 25u);
  EXPECT_LT(rep.max_deviation, 1e-10);
  EXPECT_TRUE(rep.passed());
  const PureResourcePair chi = skewed();
  EXPECT_TRUE(verify_no_advantage(10, 5, &chi).passed());
}

}  // namespace
}  // namespace cdist
