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

#include "cdist/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace cdist {

namespace {

constexpr double kRoundoff = 1e-12;

int wire_a(int pair) { return 2 * pair; }
int wire_b(int pair) { return 2 * pair + 1; }

void notify(const Observer& observer, std::string_view stage, const DensityMatrix& rho) {
  if (observer) observer(stage, rho);
}

OracleOutcome read_pair(const DensityMatrix& two_qubit) {
  const BellDecomposition d = bell_decompose(two_qubit);
  return {d.weights, d.residual};
}

// Local rotations and bilateral CNOTs of one DEJMPS step (control pair kept,
// target pair measured).
void dejmps_unitary(DensityMatrix& rho, int control, int target) {
  rho.apply(GateKind::R, {wire_a(control)});
  rho.apply(GateKind::R, {wire_a(target)});
  rho.apply(GateKind::RDagger, {wire_b(control)});
  rho.apply(GateKind::RDagger, {wire_b(target)});
  rho.apply(GateKind::CNOT, {wire_a(control), wire_a(target)});
  rho.apply(GateKind::CNOT, {wire_b(control), wire_b(target)});
}

std::vector<int> wires_without(int num_qubits, std::initializer_list<int> drop) {
  std::vector<int> keep;
  for (int w = 0; w < num_qubits; ++w) {
    if (std::find(drop.begin(), drop.end(), w) == drop.end()) keep.push_back(w);
  }
  return keep;
}

// ---------------------------------------------------------------------------
// Kraus-operator plumbing.

CMatrix identity(int num_qubits) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  return CMatrix::Identity(d, d);
}

void left(CMatrix& u, GateKind kind, std::initializer_list<int> wires, int num_qubits) {
  const std::vector<int> w(wires);
  apply_left(u, gate_matrix(kind), w, num_qubits);
}

// Rows of `u` whose `wires` hold bit value `bit`, indexed by the remaining
// wires in order: <bb|_wires u.
CMatrix project_out(const CMatrix& u, std::initializer_list<int> wires, int bit,
                    int num_qubits) {
  const int kept = num_qubits - static_cast<int>(wires.size());
  CMatrix out(Eigen::Index{1} << kept, u.cols());
  for (Eigen::Index row = 0; row < u.rows(); ++row) {
    bool match = true;
    Eigen::Index r = 0;
    for (int w = 0; w < num_qubits; ++w) {
      const int b = static_cast<int>((row >> (num_qubits - 1 - w)) & 1);
      if (std::find(wires.begin(), wires.end(), w) != wires.end()) {
        match = match && b == bit;
      } else {
        r = (r << 1) | b;
      }
    }
    if (match) out.row(r) = u.row(row);
  }
  return out;
}

// One DEJMPS step on `num_pairs` pairs (local indices), optionally followed
// by SWAPs of the two pairs, projected onto outcome |ii> of `measured`.
CMatrix dejmps_kraus(int num_pairs, int control, int target, bool swap, int outcome) {
  const int n = 2 * num_pairs;
  CMatrix u = identity(n);
  left(u, GateKind::R, {wire_a(control)}, n);
  left(u, GateKind::R, {wire_a(target)}, n);
  left(u, GateKind::RDagger, {wire_b(control)}, n);
  left(u, GateKind::RDagger, {wire_b(target)}, n);
  left(u, GateKind::CNOT, {wire_a(control), wire_a(target)}, n);
  left(u, GateKind::CNOT, {wire_b(control), wire_b(target)}, n);
  if (swap) {
    left(u, GateKind::SWAP, {wire_a(control), wire_a(target)}, n);
    left(u, GateKind::SWAP, {wire_b(control), wire_b(target)}, n);
  }
  const int measured = swap ? control : target;
  return project_out(u, {wire_a(measured), wire_b(measured)}, outcome, n);
}

CMatrix pair_swap(int num_pairs, int p, int q) {
  const int n = 2 * num_pairs;
  CMatrix u = identity(n);
  left(u, GateKind::SWAP, {wire_a(p), wire_a(q)}, n);
  left(u, GateKind::SWAP, {wire_b(p), wire_b(q)}, n);
  return u;
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double bell_gap(const CMatrix& two_qubit, const BellVector& expected, double& offdiag) {
  const BellDecomposition d = bell_decompose(two_qubit);
  offdiag = std::max(offdiag, d.residual);
  return (d.weights - expected).cwiseAbs().maxCoeff();
}

}  // namespace

DistillOutcome OracleOutcome::outcome() const {
  if (unnormalized.minCoeff() < -kRoundoff) {
    throw ContractViolation("oracle: negative Bell weight in a simulated branch");
  }
  return make_outcome(unnormalized.cwiseMax(0.0));
}

OracleOutcome simulate_dejmps(const BellVector& x, const BellVector& y, ParityBranch branch,
                              const Observer& observer) {
  const std::array<BellVector, 2> pairs{x, y};
  DensityMatrix rho = DensityMatrix::bell_pairs(pairs);
  notify(observer, "input", rho);
  dejmps_unitary(rho, 0, 1);
  notify(observer, "cnots", rho);
  const GateKind proj = branch == ParityBranch::Both     ? GateKind::ProjectEven
                        : branch == ParityBranch::Only00 ? GateKind::Project00
                                                         : GateKind::Project11;
  rho.apply(proj, {2, 3});
  notify(observer, "postselected", rho);
  const DensityMatrix out = rho.partial_trace({0, 1});
  notify(observer, "output", out);
  return read_pair(out);
}

OracleOutcome simulate_three_pair(const BellVector& x0, const BellVector& x1,
                                  const BellVector& x2, const Observer& observer) {
  const std::array<BellVector, 3> pairs{x0, x1, x2};
  DensityMatrix rho = DensityMatrix::bell_pairs(pairs);
  notify(observer, "input", rho);
  for (int p = 0; p < 3; ++p) {
    rho.apply(GateKind::R, {wire_a(p)});
    rho.apply(GateKind::RDagger, {wire_b(p)});
  }
  // Decoder of the <IZZ, XXX> code, run by both parties on their halves.
  for (int side = 0; side < 2; ++side) {
    const int w0 = side, w1 = 2 + side, w2 = 4 + side;
    rho.apply(GateKind::CNOT, {w1, w2});
    rho.apply(GateKind::CNOT, {w0, w1});
    rho.apply(GateKind::H, {w0});
  }
  notify(observer, "decoded", rho);
  rho.apply(GateKind::ProjectEven, {wire_a(0), wire_b(0)});
  rho.apply(GateKind::ProjectEven, {wire_a(2), wire_b(2)});
  notify(observer, "postselected", rho);
  const DensityMatrix out = rho.partial_trace({wire_a(1), wire_b(1)});
  notify(observer, "output", out);
  return read_pair(out);
}

SwitchBranches simulate_switch(const BellVector& x0, const BellVector& x1,
                               const BellVector& x2, const BellVector& x3,
                               const Observer& observer) {
  const std::array<BellVector, 4> pairs{x0, x1, x2, x3};
  DensityMatrix rho = DensityMatrix::bell_pairs(pairs);
  notify(observer, "input", rho);

  rho.apply(GateKind::CSWAP, {wire_a(0), wire_a(1), wire_a(2)});
  rho.apply(GateKind::CSWAP, {wire_b(0), wire_b(1), wire_b(2)});
  notify(observer, "cswap", rho);

  // First DEJMPS: pair 2 kept, pair 3 measured and discarded.
  dejmps_unitary(rho, 2, 3);
  rho.apply(GateKind::ProjectEven, {wire_a(3), wire_b(3)});
  rho = rho.partial_trace(wires_without(8, {wire_a(3), wire_b(3)}));
  notify(observer, "first_step", rho);

  // Second DEJMPS: pair 1 kept, pair 2 measured and discarded.
  dejmps_unitary(rho, 1, 2);
  rho.apply(GateKind::ProjectEven, {wire_a(2), wire_b(2)});
  rho = rho.partial_trace({0, 1, 2, 3});
  notify(observer, "second_step", rho);

  SwitchBranches out;
  out.checks_passed = rho.trace().real();

  rho.apply(GateKind::H, {wire_a(0)});
  rho.apply(GateKind::H, {wire_b(0)});
  notify(observer, "hadamard", rho);

  DensityMatrix even = rho, odd = rho;
  even.apply(GateKind::ProjectEven, {wire_a(0), wire_b(0)});
  odd.apply(GateKind::ProjectOdd, {wire_a(0), wire_b(0)});
  const DensityMatrix even_pair = even.partial_trace({wire_a(1), wire_b(1)});
  const DensityMatrix odd_pair = odd.partial_trace({wire_a(1), wire_b(1)});
  notify(observer, "even", even_pair);
  notify(observer, "odd", odd_pair);
  out.even = read_pair(even_pair);
  out.odd = read_pair(odd_pair);
  return out;
}

ThreePairTensor three_pair_transfer_tensor() {
  ThreePairTensor t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const BellVector ei = BellVector::Unit(i), ej = BellVector::Unit(j),
                         ek = BellVector::Unit(k);
        t.at(i, j, k) = simulate_three_pair(ei, ej, ek).unnormalized;
      }
  return t;
}

// ---------------------------------------------------------------------------

std::string to_string(KrausLabel label) {
  switch (label) {
    case KrausLabel::O: return "O";
    case KrausLabel::P: return "P";
    case KrausLabel::F: return "F";
    case KrausLabel::Q1: return "Q1";
    case KrausLabel::Q2: return "Q2";
  }
  return "?";
}

KrausLabel parse_kraus_label(const std::string& s) {
  for (KrausLabel l : {KrausLabel::O, KrausLabel::P, KrausLabel::F, KrausLabel::Q1,
                       KrausLabel::Q2}) {
    if (to_string(l) == s) return l;
  }
  throw DomainError("unknown Kraus operator label '" + s + "'");
}

KrausOp build_kraus(KrausLabel label, int outcome, bool after_other) {
  if (outcome != 0 && outcome != 1) throw DomainError("build_kraus: outcome must be 0 or 1");
  const double root2 = std::sqrt(2.0);
  KrausOp op{label, outcome, {}, {}, {}};
  switch (label) {
    case KrausLabel::O:
      op.pairs_in = {1, 2, 3};
      op.pairs_out = {1, 2};
      op.matrix = dejmps_kraus(3, 1, 2, false, outcome);
      break;
    case KrausLabel::P:
      op.pairs_in = {1, 2, 3};
      op.pairs_out = {1, 2};
      op.matrix = dejmps_kraus(3, 1, 2, false, outcome) * pair_swap(3, 0, 1);
      break;
    case KrausLabel::F:
      op.pairs_in = {1, 2};
      op.pairs_out = {1};
      op.matrix = dejmps_kraus(2, 0, 1, false, outcome);
      break;
    case KrausLabel::Q1:
      if (after_other) {
        op.pairs_in = {2, 3};
        op.pairs_out = {3};
        op.matrix = root2 * dejmps_kraus(2, 0, 1, true, outcome);
      } else {
        op.pairs_in = {1, 2, 3};
        op.pairs_out = {1, 3};
        op.matrix = root2 * dejmps_kraus(3, 1, 2, true, outcome);
      }
      break;
    case KrausLabel::Q2:
      if (after_other) {
        op.pairs_in = {1, 3};
        op.pairs_out = {3};
        op.matrix = root2 * dejmps_kraus(2, 0, 1, true, outcome);
      } else {
        op.pairs_in = {1, 2, 3};
        op.pairs_out = {2, 3};
        op.matrix = root2 * dejmps_kraus(3, 0, 2, true, outcome);
      }
      break;
  }
  return op;
}

KrausOp compose(const KrausOp& after, const KrausOp& before) {
  if (after.pairs_in != before.pairs_out) {
    throw DomainError("compose: output pairs of " + to_string(before.label) +
                      " do not match the input pairs of " + to_string(after.label));
  }
  return {after.label, after.outcome, before.pairs_in, after.pairs_out,
          after.matrix * before.matrix};
}

CMatrix q2_after_q1() {
  return compose(build_kraus(KrausLabel::Q2, 0, true), build_kraus(KrausLabel::Q1)).matrix;
}

CMatrix q1_after_q2() {
  return compose(build_kraus(KrausLabel::Q1, 0, true), build_kraus(KrausLabel::Q2)).matrix;
}

CMatrix sandwich(const CMatrix& k, const CMatrix& rho, const CMatrix& l) {
  return k * rho * l.adjoint();
}

double OrderingReport::max_residual() const {
  return std::max({n1_direct, n2_direct, m1_direct, m2_direct, n1_kraus, n2_kraus, m1_kraus,
                   m2_kraus, projection_00_11, projection_second, commutator_identity,
                   bell_offdiagonal});
}

std::string OrderingReport::to_json() const {
  nlohmann::json j{{"n1_direct", n1_direct},
                   {"n2_direct", n2_direct},
                   {"m1_direct", m1_direct},
                   {"m2_direct", m2_direct},
                   {"n1_kraus", n1_kraus},
                   {"n2_kraus", n2_kraus},
                   {"m1_kraus", m1_kraus},
                   {"m2_kraus", m2_kraus},
                   {"projection_00_11", projection_00_11},
                   {"projection_second", projection_second},
                   {"commutator_identity", commutator_identity},
                   {"bell_offdiagonal", bell_offdiagonal},
                   {"commutator_max_entry", commutator_max_entry},
                   {"max_residual", max_residual()}};
  return j.dump();
}

OrderingReport verify_kraus_ordering(const BellVector& x1, const BellVector& x2,
                                     const BellVector& x3) {
  const std::array<BellVector, 3> pairs{x1, x2, x3};
  const CMatrix rho = DensityMatrix::bell_pairs(pairs).matrix();
  const SwitchComponents expected = switch_components(x1, x2, x3);

  OrderingReport r;

  // Kraus operators before the 00/11 reduction.
  std::array<CMatrix, 2> o, p, f;
  for (int i = 0; i < 2; ++i) {
    o[i] = build_kraus(KrausLabel::O, i).matrix;
    p[i] = build_kraus(KrausLabel::P, i).matrix;
    f[i] = build_kraus(KrausLabel::F, i).matrix;
  }
  CMatrix n1 = CMatrix::Zero(4, 4), n2 = n1, m1 = n1, m2 = n1;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const CMatrix fo = f[j] * o[i], fp = f[j] * p[i];
      n1 += sandwich(fo, rho, fo);
      n2 += sandwich(fp, rho, fp);
      m1 += sandwich(fp, rho, fo);
      m2 += sandwich(fo, rho, fp);
    }
  }
  r.n1_direct = bell_gap(n1, expected.n1, r.bell_offdiagonal);
  r.n2_direct = bell_gap(n2, expected.n2, r.bell_offdiagonal);
  r.m1_direct = bell_gap(m1, expected.m, r.bell_offdiagonal);
  r.m2_direct = bell_gap(m2, expected.m, r.bell_offdiagonal);

  // Both parity outcomes act identically, first and second step.
  const std::array<const std::array<CMatrix, 2>*, 2> omega{&o, &p};
  for (const auto* a : omega) {
    for (const auto* b : omega) {
      r.projection_00_11 = std::max(
          r.projection_00_11,
          max_abs(sandwich((*a)[0], rho, (*b)[0]) - sandwich((*a)[1], rho, (*b)[1])));
      for (int i = 0; i < 2; ++i) {
        const CMatrix inner = sandwich((*a)[i], rho, (*b)[i]);
        r.projection_second = std::max(
            r.projection_second,
            max_abs(sandwich(f[0], inner, f[0]) - sandwich(f[1], inner, f[1])));
      }
    }
  }

  const CMatrix q21 = q2_after_q1(), q12 = q1_after_q2();
  const CMatrix n1k = sandwich(q21, rho, q21), n2k = sandwich(q12, rho, q12);
  r.n1_kraus = bell_gap(n1k, expected.n1, r.bell_offdiagonal);
  r.n2_kraus = bell_gap(n2k, expected.n2, r.bell_offdiagonal);
  r.m1_kraus = bell_gap(sandwich(q12, rho, q21), expected.m, r.bell_offdiagonal);
  r.m2_kraus = bell_gap(sandwich(q21, rho, q12), expected.m, r.bell_offdiagonal);

  const CMatrix c = q21 - q12;
  r.commutator_identity =
      bell_gap(0.5 * (n1k + n2k - sandwich(c, rho, c)), expected.m, r.bell_offdiagonal);
  r.commutator_max_entry = max_abs(c);
  return r;
}

// ---------------------------------------------------------------------------

double completeness_residual(const KrausSet& kraus) {
  if (kraus.empty()) throw DomainError("completeness_residual: empty Kraus set");
  CMatrix sum = CMatrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const CMatrix& k : kraus) sum += k.adjoint() * k;
  return max_abs(sum - CMatrix::Identity(sum.rows(), sum.cols()));
}

namespace {

void check_channel(const KrausSet& kraus, Eigen::Index dim, const char* name) {
  if (kraus.empty()) throw DomainError(std::string("quantum_switch: empty Kraus set ") + name);
  for (const CMatrix& k : kraus) {
    if (k.rows() != dim || k.cols() != dim) {
      throw std::invalid_argument(std::string("quantum_switch: Kraus operator of ") + name +
                                  " does not match the target dimension");
    }
  }
}

}  // namespace

DensityMatrix quantum_switch(const KrausSet& m, const KrausSet& n, const CMatrix& control,
                             const DensityMatrix& target) {
  const Eigen::Index d = target.dim();
  check_channel(m, d, "M");
  check_channel(n, d, "N");
  if (control.rows() != 2 || control.cols() != 2) {
    throw std::invalid_argument("quantum_switch: control must be a 2x2 density matrix");
  }
  const DensityMatrix joint_in = DensityMatrix(1, control).kron(target);
  CMatrix out = CMatrix::Zero(2 * d, 2 * d);
  CMatrix w = CMatrix::Zero(2 * d, 2 * d);
  for (const CMatrix& ni : n) {
    for (const CMatrix& mj : m) {
      w.topLeftCorner(d, d) = mj * ni;
      w.bottomRightCorner(d, d) = ni * mj;
      out += w * joint_in.matrix() * w.adjoint();
    }
  }
  return DensityMatrix(joint_in.num_qubits(), std::move(out));
}

FourierBranches fourier_branches(const DensityMatrix& joint) {
  if (joint.num_qubits() < 1) throw std::invalid_argument("fourier_branches: no control");
  const Eigen::Index d = joint.dim() / 2;
  const CMatrix& j = joint.matrix();
  const CMatrix diag = j.topLeftCorner(d, d) + j.bottomRightCorner(d, d);
  const CMatrix coh = j.topRightCorner(d, d) + j.bottomLeftCorner(d, d);
  const int n = joint.num_qubits() - 1;
  return {DensityMatrix(n, 0.5 * (diag + coh)), DensityMatrix(n, 0.5 * (diag - coh))};
}

DensityMatrix switch_branch_formula(const KrausSet& m, const KrausSet& n,
                                    const DensityMatrix& target, int sign) {
  const Eigen::Index d = target.dim();
  check_channel(m, d, "M");
  check_channel(n, d, "N");
  CMatrix out = CMatrix::Zero(d, d);
  for (const CMatrix& ni : n) {
    for (const CMatrix& mj : m) {
      const CMatrix x = mj * ni + double(sign) * (ni * mj);
      out += x * target.matrix() * x.adjoint();
    }
  }
  return DensityMatrix(target.num_qubits(), 0.25 * out);
}

}  // namespace cdist
