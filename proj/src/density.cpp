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

#include "cdist/density.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace cdist {

namespace {

using namespace std::complex_literals;

CMatrix make(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMatrix m(rows.size(), rows.begin()->size());
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (Complex v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

CMatrix permutation_gate(int arity, int (*map)(int)) {
  const int d = 1 << arity;
  CMatrix m = CMatrix::Zero(d, d);
  for (int b = 0; b < d; ++b) m(map(b), b) = 1.0;
  return m;
}

CMatrix diagonal_projector(std::initializer_list<int> keep) {
  CMatrix m = CMatrix::Zero(4, 4);
  for (int b : keep) m(b, b) = 1.0;
  return m;
}

// Offsets of the 2^k basis states spanned by `wires`, in the gate's own
// little-endian-within-gate order (first wire is the gate's MSB).
std::vector<Eigen::Index> wire_offsets(std::span<const int> wires, int num_qubits) {
  const int k = static_cast<int>(wires.size());
  std::vector<Eigen::Index> off(std::size_t{1} << k, 0);
  for (int t = 0; t < (1 << k); ++t) {
    Eigen::Index o = 0;
    for (int s = 0; s < k; ++s) {
      if ((t >> (k - 1 - s)) & 1) o |= Eigen::Index{1} << (num_qubits - 1 - wires[s]);
    }
    off[t] = o;
  }
  return off;
}

Eigen::Index wire_mask(std::span<const int> wires, int num_qubits) {
  Eigen::Index mask = 0;
  for (int w : wires) {
    if (w < 0 || w >= num_qubits) throw std::out_of_range("gate wire out of range");
    mask |= Eigen::Index{1} << (num_qubits - 1 - w);
  }
  return mask;
}

void check_op(const CMatrix& op, std::span<const int> wires) {
  const Eigen::Index d = Eigen::Index{1} << wires.size();
  if (op.rows() != d || op.cols() != d) {
    throw std::invalid_argument("operator size does not match wire count");
  }
}

}  // namespace

const CMatrix& gate_matrix(GateKind kind) {
  static const std::array<CMatrix, 13> table = [] {
    const double s = 1.0 / std::sqrt(2.0);
    std::array<CMatrix, 13> t;
    t[int(GateKind::R)] = make({{s, -1i * s}, {-1i * s, s}});
    t[int(GateKind::RDagger)] = make({{s, 1i * s}, {1i * s, s}});
    t[int(GateKind::H)] = make({{s, s}, {s, -s}});
    t[int(GateKind::X)] = make({{0, 1}, {1, 0}});
    t[int(GateKind::Y)] = make({{0, -1i}, {1i, 0}});
    t[int(GateKind::Z)] = make({{1, 0}, {0, -1}});
    t[int(GateKind::CNOT)] = permutation_gate(2, [](int b) { return (b & 2) ? b ^ 1 : b; });
    t[int(GateKind::SWAP)] =
        permutation_gate(2, [](int b) { return ((b & 1) << 1) | ((b >> 1) & 1); });
    t[int(GateKind::CSWAP)] = permutation_gate(3, [](int b) {
      if (!(b & 4)) return b;
      return 4 | ((b & 1) << 1) | ((b >> 1) & 1);
    });
    t[int(GateKind::Project00)] = diagonal_projector({0});
    t[int(GateKind::Project11)] = diagonal_projector({3});
    t[int(GateKind::ProjectEven)] = diagonal_projector({0, 3});
    t[int(GateKind::ProjectOdd)] = diagonal_projector({1, 2});
    return t;
  }();
  return table[static_cast<int>(kind)];
}

int gate_arity(GateKind kind) {
  const auto rows = gate_matrix(kind).rows();
  return rows == 2 ? 1 : rows == 4 ? 2 : 3;
}

const Eigen::Matrix4cd& bell_basis() {
  static const Eigen::Matrix4cd b = [] {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    // columns: Phi+, Psi-, Psi+, Phi-; rows: |00>, |01>, |10>, |11>
    m(0, kPhiPlus) = s;  m(3, kPhiPlus) = s;
    m(1, kPsiMinus) = s; m(2, kPsiMinus) = -s;
    m(1, kPsiPlus) = s;  m(2, kPsiPlus) = s;
    m(0, kPhiMinus) = s; m(3, kPhiMinus) = -s;
    return m;
  }();
  return b;
}

void apply_left(CMatrix& m, const CMatrix& op, std::span<const int> wires, int num_qubits) {
  check_op(op, wires);
  const Eigen::Index mask = wire_mask(wires, num_qubits);
  const auto off = wire_offsets(wires, num_qubits);
  const Eigen::Index k = static_cast<Eigen::Index>(off.size());
  CVector in(k), out(k);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index base = 0; base < m.rows(); ++base) {
      if (base & mask) continue;
      for (Eigen::Index t = 0; t < k; ++t) in(t) = m(base | off[t], c);
      out.noalias() = op * in;
      for (Eigen::Index t = 0; t < k; ++t) m(base | off[t], c) = out(t);
    }
  }
}

void apply_right_adjoint(CMatrix& m, const CMatrix& op, std::span<const int> wires,
                         int num_qubits) {
  check_op(op, wires);
  const Eigen::Index mask = wire_mask(wires, num_qubits);
  const auto off = wire_offsets(wires, num_qubits);
  const Eigen::Index k = static_cast<Eigen::Index>(off.size());
  const CMatrix opc = op.conjugate();
  for (Eigen::Index base = 0; base < m.cols(); ++base) {
    if (base & mask) continue;
    CMatrix block(m.rows(), k);
    for (Eigen::Index t = 0; t < k; ++t) block.col(t) = m.col(base | off[t]);
    // (M op^dagger)_{r,t} = sum_s M_{r,s} conj(op_{t,s})
    const CMatrix res = block * opc.transpose();
    for (Eigen::Index t = 0; t < k; ++t) m.col(base | off[t]) = res.col(t);
  }
}

DensityMatrix::DensityMatrix(int num_qubits)
    : DensityMatrix(num_qubits, CMatrix::Zero(Eigen::Index{1} << num_qubits,
                                              Eigen::Index{1} << num_qubits)) {}

DensityMatrix::DensityMatrix(int num_qubits, CMatrix entries)
    : num_qubits_(num_qubits), entries_(std::move(entries)) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("DensityMatrix: qubit count out of range");
  }
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::invalid_argument("DensityMatrix: entries do not match qubit count");
  }
}

DensityMatrix DensityMatrix::bell_diagonal(const BellVector& x) {
  const Eigen::Matrix4cd& b = bell_basis();
  CMatrix rho = b * x.cast<Complex>().asDiagonal() * b.adjoint();
  return DensityMatrix(2, std::move(rho));
}

DensityMatrix DensityMatrix::bell_pairs(std::span<const BellVector> pairs) {
  if (pairs.empty()) throw std::invalid_argument("bell_pairs: no pairs");
  DensityMatrix rho = bell_diagonal(pairs[0]);
  for (std::size_t i = 1; i < pairs.size(); ++i) rho = rho.kron(bell_diagonal(pairs[i]));
  return rho;
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  int n = 0;
  while ((Eigen::Index{1} << n) < psi.size()) ++n;
  if ((Eigen::Index{1} << n) != psi.size()) {
    throw std::invalid_argument("pure: dimension is not a power of two");
  }
  return DensityMatrix(n, psi * psi.adjoint());
}

DensityMatrix& DensityMatrix::apply(const CMatrix& op, std::span<const int> wires) {
  apply_left(entries_, op, wires, num_qubits_);
  apply_right_adjoint(entries_, op, wires, num_qubits_);
  return *this;
}

DensityMatrix& DensityMatrix::apply(const GateOp& gate) {
  if (static_cast<int>(gate.wires.size()) != gate_arity(gate.kind)) {
    throw std::invalid_argument("gate applied to the wrong number of wires");
  }
  return apply(gate_matrix(gate.kind), gate.wires);
}

DensityMatrix& DensityMatrix::apply(GateKind kind, std::initializer_list<int> wires) {
  return apply(GateOp{kind, std::vector<int>(wires)});
}

DensityMatrix DensityMatrix::partial_trace(std::span<const int> keep) const {
  const int k = static_cast<int>(keep.size());
  const Eigen::Index keep_mask = wire_mask(keep, num_qubits_);
  const Eigen::Index full = (Eigen::Index{1} << num_qubits_) - 1;
  const Eigen::Index traced_mask = full & ~keep_mask;
  auto reduced_index = [&](Eigen::Index i) {
    Eigen::Index r = 0;
    for (int s = 0; s < k; ++s) {
      r = (r << 1) | ((i >> (num_qubits_ - 1 - keep[s])) & 1);
    }
    return r;
  };
  CMatrix out = CMatrix::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);
  for (Eigen::Index j = 0; j < dim(); ++j) {
    const Eigen::Index rj = reduced_index(j);
    for (Eigen::Index i = 0; i < dim(); ++i) {
      if ((i & traced_mask) != (j & traced_mask)) continue;
      out(reduced_index(i), rj) += entries_(i, j);
    }
  }
  return DensityMatrix(k, std::move(out));
}

DensityMatrix DensityMatrix::kron(const DensityMatrix& other) const {
  const Eigen::Index da = dim(), db = other.dim();
  CMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = entries_(i, j) * other.entries_;
  return DensityMatrix(num_qubits_ + other.num_qubits_, std::move(out));
}

double DensityMatrix::hermiticity_residual() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

BellDecomposition bell_decompose(const CMatrix& two_qubit) {
  if (two_qubit.rows() != 4 || two_qubit.cols() != 4) {
    throw std::invalid_argument("bell_decompose: expected a 4x4 operator");
  }
  const Eigen::Matrix4cd& b = bell_basis();
  const Eigen::Matrix4cd in_bell = b.adjoint() * two_qubit * b;
  BellDecomposition out{in_bell.diagonal().real(), 0.0};
  for (int i = 0; i < 4; ++i) {
    out.residual = std::max(out.residual, std::abs(in_bell(i, i).imag()));
    for (int j = 0; j < 4; ++j) {
      if (i != j) out.residual = std::max(out.residual, std::abs(in_bell(i, j)));
    }
  }
  return out;
}

std::string to_json(const DensityMatrix& rho) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    nlohmann::json r = nlohmann::json::array(), c = nlohmann::json::array();
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      r.push_back(rho.matrix()(i, j).real());
      c.push_back(rho.matrix()(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  nlohmann::json j{{"qubits", rho.num_qubits()}, {"re", std::move(re)}, {"im", std::move(im)}};
  return j.dump();
}

}  // namespace cdist
