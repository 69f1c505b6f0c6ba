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
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cdist/density.hpp"
#include "cdist/oracle.hpp"
#include "cdist/protocols.hpp"
#include "cdist/verify.hpp"

namespace cdist {
namespace {

double max_gap(const BellVector& a, const BellVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

TEST(Density, GatesAreUnitary) {
  for (GateKind k : {GateKind::R, GateKind::RDagger, GateKind::H, GateKind::X, GateKind::Y,
                     GateKind::Z, GateKind::CNOT, GateKind::SWAP, GateKind::CSWAP}) {
    const CMatrix& u = gate_matrix(k);
    EXPECT_EQ(u.rows(), 1 << gate_arity(k));
    EXPECT_LT((u * u.adjoint() - CMatrix::Identity(u.rows(), u.rows())).cwiseAbs().maxCoeff(),
              1e-15);
  }
}

TEST(Density, BellBasisIsOrthonormal) {
  const Eigen::Matrix4cd& b = bell_basis();
  EXPECT_LT((b.adjoint() * b - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  // Phi+ = (|00> + |11>)/sqrt2, Psi- = (|01> - |10>)/sqrt2.
  EXPECT_NEAR(b(0, 0).real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(b(3, 0).real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(b(1, 1).real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(b(2, 1).real(), -M_SQRT1_2, 1e-15);
}

TEST(Density, WireZeroIsMostSignificant) {
  CVector psi = CVector::Zero(4);
  psi(0) = 1;
  DensityMatrix rho = DensityMatrix::pure(psi);
  rho.apply(GateKind::X, {0});
  EXPECT_NEAR(rho.matrix()(2, 2).real(), 1.0, 1e-15);
}

TEST(Density, PartialTraceOfProductState) {
  const DensityMatrix a = DensityMatrix::bell_diagonal(werner(0.7));
  const DensityMatrix b = DensityMatrix::bell_diagonal(BellVector(0.4, 0.3, 0.2, 0.1));
  const DensityMatrix ab = a.kron(b);
  EXPECT_LT((ab.partial_trace({2, 3}).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((ab.partial_trace({0, 1}).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(ab.trace().real(), 1.0, 1e-15);
  EXPECT_LT(ab.hermiticity_residual(), 1e-15);
  EXPECT_GT(ab.min_eigenvalue(), -1e-15);
}

TEST(Density, BellDecompositionRoundTrip) {
  const BellVector x(0.4, 0.3, 0.2, 0.1);
  const BellDecomposition d = bell_decompose(DensityMatrix::bell_diagonal(x));
  EXPECT_LT(max_gap(d.weights, x), 1e-15);
  EXPECT_LT(d.residual, 1e-15);
}

TEST(Density, RejectsBadShapes) {
  EXPECT_THROW(DensityMatrix(9), std::invalid_argument);
  DensityMatrix rho(2);
  EXPECT_THROW(rho.apply(GateKind::CNOT, {0}), std::invalid_argument);
  EXPECT_THROW(rho.apply(GateKind::H, {5}), std::out_of_range);
}

TEST(Density, JsonDump) {
  const auto j = nlohmann::json::parse(to_json(DensityMatrix::bell_diagonal(werner(1.0))));
  EXPECT_EQ(j["qubits"], 2);
  EXPECT_EQ(j["re"].size(), 4u);
  EXPECT_NEAR(j["re"][0][3].get<double>(), 0.5, 1e-15);
}

TEST(Oracle, DejmpsMatchesClosedForm) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const BellVector x = random_bell_vector(rng), y = random_bell_vector(rng);
    const OracleOutcome sim = simulate_dejmps(x, y);
    const DistillOutcome cf = dejmps(x, y);
    EXPECT_LT(max_gap(sim.outcome().state, cf.state), 1e-10);
    EXPECT_NEAR(sim.prob(), cf.prob, 1e-10);
    EXPECT_LT(sim.residual, 1e-10);
  }
}

TEST(Oracle, ParityBranchesAgree) {
  std::mt19937_64 rng(22);
  const BellVector x = random_bell_vector(rng), y = random_bell_vector(rng);
  const BellVector a = simulate_dejmps(x, y, ParityBranch::Only00).unnormalized;
  const BellVector b = simulate_dejmps(x, y, ParityBranch::Only11).unnormalized;
  EXPECT_LT(max_gap(a, b), 1e-14);
  EXPECT_LT(max_gap(a + b, simulate_dejmps(x, y).unnormalized), 1e-14);
}

TEST(Oracle, ThreePairMatchesClosedForm) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const BellVector a = random_bell_vector(rng), b = random_bell_vector(rng),
                     c = random_bell_vector(rng);
    const OracleOutcome sim = simulate_three_pair(a, b, c);
    const DistillOutcome cf = three_pair(a, b, c);
    EXPECT_LT(max_gap(sim.outcome().state, cf.state), 1e-10);
    EXPECT_NEAR(sim.prob(), cf.prob, 1e-10);
  }
}

TEST(Oracle, SwitchMatchesClosedForm) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 100; ++t) {
    BellVector x[4];
    for (auto& v : x) v = random_bell_vector(rng);
    const SwitchBranches sim = simulate_switch(x[0], x[1], x[2], x[3]);
    const DistillOutcome cf = switch_protocol(x[0], x[1], x[2], x[3]);
    EXPECT_LT(max_gap(sim.even.outcome().state, cf.state), 1e-10);
    EXPECT_NEAR(sim.even.prob(), cf.prob, 1e-10);
  }
}

TEST(Oracle, ObserverSeesEveryStage) {
  int stages = 0;
  simulate_switch(werner(0.9), werner(0.8), werner(0.8), werner(0.7),
                  [&](std::string_view, const DensityMatrix& rho) {
                    ++stages;
                    EXPECT_LT(rho.hermiticity_residual(), 1e-12);
                  });
  EXPECT_GE(stages, 4);
}

TEST(Kraus, ShapesAndLabels) {
  const KrausOp o = build_kraus(KrausLabel::O, 0);
  EXPECT_EQ(o.matrix.rows(), 16);
  EXPECT_EQ(o.matrix.cols(), 64);
  EXPECT_EQ(build_kraus(KrausLabel::F, 1).matrix.cols(), 16);
  EXPECT_EQ(parse_kraus_label(to_string(KrausLabel::Q2)), KrausLabel::Q2);
  EXPECT_THROW(parse_kraus_label("Z"), DomainError);
  EXPECT_THROW(build_kraus(KrausLabel::O, 2), DomainError);
  EXPECT_THROW(compose(build_kraus(KrausLabel::O), build_kraus(KrausLabel::O)), DomainError);
  EXPECT_EQ(q2_after_q1().rows(), 4);
  EXPECT_EQ(q2_after_q1().cols(), 64);
}

TEST(Kraus, OrdersDoNotCommute) {
  EXPECT_GT((q2_after_q1() - q1_after_q2()).cwiseAbs().maxCoeff(), 0.1);
}

TEST(KrausOrdering, HoldsOnRandomTriples) {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 20; ++t) {
    const BellVector a = random_bell_vector(rng), b = random_bell_vector(rng),
                     c = random_bell_vector(rng);
    const OrderingReport rep = verify_kraus_ordering(a, b, c);
    EXPECT_TRUE(rep.passed()) << rep.to_json();
    EXPECT_GT(rep.commutator_max_entry, 0.1);
  }
}

KrausSet dephase(double p) {
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return {std::sqrt(p) * CMatrix::Identity(2, 2), std::sqrt(1 - p) * z};
}

KrausSet bit_flip(double p) {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return {std::sqrt(p) * CMatrix::Identity(2, 2), std::sqrt(1 - p) * x};
}

TEST(QuantumSwitch, CommutingChannelsCollapse) {
  CVector psi(2);
  psi << std::complex<double>(0.6, 0), std::complex<double>(0, 0.8);
  const DensityMatrix target = DensityMatrix::pure(psi);
  const CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  const KrausSet m = dephase(0.3), n = dephase(0.8);
  EXPECT_LT(completeness_residual(m), 1e-15);
  const FourierBranches br = fourier_branches(quantum_switch(m, n, plus, target));
  EXPECT_LT(std::abs(br.minus.trace()), 1e-12);
  EXPECT_NEAR(br.plus.trace().real(), 1.0, 1e-12);
}

TEST(QuantumSwitch, AnticommutingFlipsPopulateMinusBranch) {
  CVector psi(2);
  psi << 1, 0;
  const DensityMatrix target = DensityMatrix::pure(psi);
  const CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  const double p = 0.2, q = 0.4;
  const FourierBranches br = fourier_branches(quantum_switch(dephase(p), bit_flip(q), plus, target));
  // Only the (Z, X) Kraus pair anticommutes; ZX - XZ = 2ZX gives weight (1-p)(1-q).
  EXPECT_NEAR(br.minus.trace().real(), (1 - p) * (1 - q), 1e-12);
  const DensityMatrix formula = switch_branch_formula(dephase(p), bit_flip(q), target, -1);
  EXPECT_LT((formula.matrix() - br.minus.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace cdist
