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

#include "cdist/telswitch.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "cdist/density.hpp"
#include "cdist/errors.hpp"

namespace cdist {

namespace {

using namespace std::complex_literals;

constexpr double kPureTolerance = 1e-12;

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Eigen::Matrix2cd projector(const Qubit& psi) { return psi * psi.adjoint(); }

// Teleports wire `src` onto wire `dst` through the resource on (mid, dst);
// Bell measurement and corrections deferred into CNOT/CZ.
void teleport(DensityMatrix& rho, int src, int mid, int dst) {
  rho.apply(GateKind::CNOT, {src, mid});
  rho.apply(GateKind::H, {src});
  rho.apply(GateKind::CNOT, {mid, dst});
  rho.apply(GateKind::H, {dst});
  rho.apply(GateKind::CNOT, {src, dst});  // CZ(src, dst)
  rho.apply(GateKind::H, {dst});
}

Qubit normalized(const Qubit& psi) {
  const double n = psi.norm();
  if (!(n > 0)) throw DomainError("teleport: zero target state");
  return psi / n;
}

// sigma_a sigma_b rho sigma_b sigma_a, summed with the given weights.
Qubit2 pauli_mix(const Qubit2& rho, const Eigen::Matrix4cd& w, bool m_first) {
  const auto& s = paulis();
  Qubit2 out = Qubit2::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const Eigen::Matrix2cd e = m_first ? Eigen::Matrix2cd(s[n] * s[m]) : Eigen::Matrix2cd(s[m] * s[n]);
      out += w(m, n) * e * rho * e.adjoint();
    }
  return out;
}

Qubit random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Qubit psi;
  for (int i = 0; i < 2; ++i) psi(i) = {g(rng), g(rng)};
  return psi.normalized();
}

PureResourcePair random_resource(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector4cd u;
  for (int i = 0; i < 4; ++i) u(i) = {g(rng), g(rng)};
  return PureResourcePair(u.normalized());
}

}  // namespace

const std::array<Eigen::Matrix2cd, 4>& paulis() {
  static const std::array<Eigen::Matrix2cd, 4> s = [] {
    std::array<Eigen::Matrix2cd, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -1i, 1i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return s;
}

int pauli_commutation_sign(int n, int i) {
  static constexpr int table[4][4] = {
      {1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  return table[n & 3][i & 3];
}

double pauli_phase_identity_residual() {
  double worst = 0;
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      int sum = 0;
      for (int i = 0; i < 4; ++i) sum += pauli_commutation_sign(n, i) * pauli_commutation_sign(i, m);
      worst = std::max(worst, std::abs(sum / 4.0 - (n == m ? 1.0 : 0.0)));
    }
  return worst;
}

PureResourcePair::PureResourcePair(const Eigen::Vector4cd& u) : u_(u) {
  if (std::abs(u.squaredNorm() - 1.0) > kPureTolerance) {
    throw DomainError("PureResourcePair: amplitudes must have unit norm");
  }
}

PureResourcePair PureResourcePair::perfect() {
  return PureResourcePair(Eigen::Vector4cd(1, 0, 0, 0));
}

PureResourcePair PureResourcePair::from_density(const Eigen::Matrix4cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho + rho.adjoint()));
  const auto& ev = es.eigenvalues();
  if (std::abs(ev(3) - 1.0) > 1e-10 || ev.head<3>().cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("PureResourcePair: mixed resource states are not supported");
  }
  const Eigen::Vector4cd psi = es.eigenvectors().col(3);
  // Amplitudes in the Pauli-indexed Bell basis.
  Eigen::Vector4cd u;
  const Eigen::Vector4cd phi(1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0));
  for (int m = 0; m < 4; ++m) {
    Eigen::Matrix4cd op = Eigen::Matrix4cd::Zero();
    op.topLeftCorner<2, 2>() = paulis()[m];
    op.bottomRightCorner<2, 2>() = paulis()[m];
    u(m) = (op * phi).dot(psi);
  }
  return PureResourcePair(u.normalized());
}

PureResourcePair PureResourcePair::with_phase(double phi) const {
  return PureResourcePair(Eigen::Vector4cd(u_ * std::exp(1i * phi)));
}

Eigen::Vector4cd PureResourcePair::state_vector() const {
  const Eigen::Vector4cd phi(1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0));
  Eigen::Vector4cd out = Eigen::Vector4cd::Zero();
  for (int m = 0; m < 4; ++m) {
    Eigen::Matrix4cd op = Eigen::Matrix4cd::Zero();  // 1 (x) sigma_m
    op.topLeftCorner<2, 2>() = paulis()[m];
    op.bottomRightCorner<2, 2>() = paulis()[m];
    out += u_(m) * (op * phi);
  }
  return out;
}

Qubit2 sequential_teleport(const Qubit& psi, const PureResourcePair& chi,
                           const PureResourcePair& xi) {
  const Eigen::Vector4d q = chi.amplitudes().cwiseAbs2(), s = xi.amplitudes().cwiseAbs2();
  const Eigen::Matrix4cd w = (q * s.transpose()).cast<Complex>();
  return pauli_mix(projector(normalized(psi)), w, true);
}

Joint2 switched_teleport(const Qubit& psi, const PureResourcePair& chi,
                         const PureResourcePair& xi) {
  const Qubit2 rho = projector(normalized(psi));
  const Eigen::Vector4cd& v = chi.amplitudes();
  const Eigen::Vector4cd& u = xi.amplitudes();
  Eigen::Matrix4cd diag, coh;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      diag(m, n) = std::norm(v(m)) * std::norm(u(n));          // q_mm s_nn
      coh(m, n) = v(m) * std::conj(v(n)) * u(n) * std::conj(u(m));  // q_mn s_nm
    }
  Joint2 r;
  r.topLeftCorner<2, 2>() = 0.5 * pauli_mix(rho, diag, true);
  r.bottomRightCorner<2, 2>() = 0.5 * pauli_mix(rho, diag, false);
  r.topRightCorner<2, 2>() = 0.5 * pauli_mix(rho, coh, true);
  r.bottomLeftCorner<2, 2>() = r.topRightCorner<2, 2>().adjoint();
  return r;
}

Qubit2 sequential_teleport_circuit(const Qubit& psi, const PureResourcePair& chi,
                                   const PureResourcePair& xi) {
  const CVector state = kron(kron(normalized(psi), chi.state_vector()), xi.state_vector());
  DensityMatrix rho = DensityMatrix::pure(state);
  teleport(rho, 0, 1, 2);
  teleport(rho, 2, 3, 4);
  return rho.partial_trace({4}).matrix();
}

Joint2 switched_teleport_circuit(const Qubit& psi, const PureResourcePair& chi,
                                 const PureResourcePair& xi) {
  const CVector plus = CVector::Constant(2, 1 / std::sqrt(2.0));
  const CVector state =
      kron(kron(kron(plus, normalized(psi)), chi.state_vector()), xi.state_vector());
  DensityMatrix rho = DensityMatrix::pure(state);
  rho.apply(GateKind::CSWAP, {0, 2, 4});
  rho.apply(GateKind::CSWAP, {0, 3, 5});
  teleport(rho, 1, 2, 3);
  teleport(rho, 3, 4, 5);
  return rho.partial_trace({0, 5}).matrix();
}

TeleportRecord teleport_record(const Qubit& psi, const PureResourcePair& chi,
                               const PureResourcePair& xi) {
  TeleportRecord r;
  r.sequential_out = sequential_teleport(psi, chi, xi);
  r.switched_joint = switched_teleport(psi, chi, xi);
  Eigen::Matrix2cd plus = Eigen::Matrix2cd::Constant(0.5);
  Joint2 factored;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) factored.block<2, 2>(2 * a, 2 * b) = plus(a, b) * r.sequential_out;
  r.factorization_residual = (r.switched_joint - factored).cwiseAbs().maxCoeff();
  return r;
}

double NoAdvantageReport::max_residual() const {
  return std::max({max_deviation, max_factorization_residual, max_circuit_residual,
                   max_identity_residual});
}

std::string NoAdvantageReport::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& trial : trials) {
    t.push_back({{"sequential_fidelity", trial.sequential_fidelity},
                 {"switched_fidelity", trial.switched_fidelity},
                 {"phase", trial.phase}});
  }
  nlohmann::json j{{"trials", std::move(t)},
                   {"max_deviation", max_deviation},
                   {"max_factorization_residual", max_factorization_residual},
                   {"max_circuit_residual", max_circuit_residual},
                   {"max_identity_residual", max_identity_residual}};
  return j.dump();
}

NoAdvantageReport verify_no_advantage(int trials, std::uint64_t seed,
                                      const PureResourcePair* chi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  NoAdvantageReport rep;
  for (int t = 0; t < trials; ++t) {
    const Qubit psi = random_state(rng);
    const PureResourcePair c = chi ? *chi : random_resource(rng);
    const double phi = angle(rng);
    const PureResourcePair x = c.with_phase(phi);

    const TeleportRecord rec = teleport_record(psi, c, x);
    const Joint2& r = rec.switched_joint;
    const Qubit2 plus_branch = 0.5 * (r.topLeftCorner<2, 2>() + r.topRightCorner<2, 2>() +
                                      r.bottomLeftCorner<2, 2>() + r.bottomRightCorner<2, 2>());
    TeleportTrial trial;
    trial.phase = phi;
    trial.sequential_fidelity = (psi.adjoint() * rec.sequential_out * psi)(0).real();
    trial.switched_fidelity =
        (psi.adjoint() * plus_branch * psi)(0).real() / plus_branch.trace().real();
    rep.max_deviation =
        std::max(rep.max_deviation, std::abs(trial.switched_fidelity - trial.sequential_fidelity));
    rep.max_factorization_residual =
        std::max(rep.max_factorization_residual, rec.factorization_residual);

    const double circ =
        std::max((sequential_teleport_circuit(psi, c, x) - rec.sequential_out).cwiseAbs().maxCoeff(),
                 (switched_teleport_circuit(psi, c, x) - r).cwiseAbs().maxCoeff());
    rep.max_circuit_residual = std::max(rep.max_circuit_residual, circ);

    const Eigen::Vector4cd& v = c.amplitudes();
    const Eigen::Vector4cd& u = x.amplitudes();
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        const Complex lhs = v(m) * std::conj(v(n)) * u(n) * std::conj(u(m));
        const Complex rhs = std::norm(v(m)) * std::norm(u(n));
        rep.max_identity_residual = std::max(rep.max_identity_residual, std::abs(lhs - rhs));
      }
    rep.trials.push_back(trial);
  }
  return rep;
}

}  // namespace cdist
