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

// Dense complex density matrices over a handful of qubits, with gate
// application on arbitrary wires. Wire 0 is the most significant bit of the
// computational-basis index.

#ifndef CDIST_DENSITY_HPP_
#define CDIST_DENSITY_HPP_

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cdist/bell.hpp"

namespace cdist {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 8;

enum class GateKind {
  R,          // exp(-i pi/4 X)
  RDagger,
  H,
  X,
  Y,
  Z,
  CNOT,       // wires (control, target)
  SWAP,
  CSWAP,      // wires (control, a, b)
  Project00,  // |00><00| on two wires
  Project11,
  ProjectEven,  // |00><00| + |11><11|
  ProjectOdd,   // |01><01| + |10><10|
};

struct GateOp {
  GateKind kind;
  std::vector<int> wires;
};

/// Matrix of a gate on its own wires (2x2, 4x4 or 8x8).
const CMatrix& gate_matrix(GateKind kind);
int gate_arity(GateKind kind);

/// Bell states as columns (Phi+, Psi-, Psi+, Phi-) over |00>,|01>,|10>,|11>.
const Eigen::Matrix4cd& bell_basis();

/// M <- op M, with `op` acting on `wires` of an n-qubit row index.
void apply_left(CMatrix& m, const CMatrix& op, std::span<const int> wires, int num_qubits);
/// M <- M op^dagger, with `op` acting on `wires` of an n-qubit column index.
void apply_right_adjoint(CMatrix& m, const CMatrix& op, std::span<const int> wires,
                         int num_qubits);

class DensityMatrix {
 public:
  explicit DensityMatrix(int num_qubits);
  DensityMatrix(int num_qubits, CMatrix entries);

  static DensityMatrix bell_diagonal(const BellVector& x);
  /// Tensor product of Bell-diagonal pairs; pair p sits on wires (2p, 2p+1).
  static DensityMatrix bell_pairs(std::span<const BellVector> pairs);
  static DensityMatrix pure(const CVector& psi);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& matrix() const { return entries_; }
  CMatrix& matrix() { return entries_; }

  Complex trace() const { return entries_.trace(); }

  /// rho <- U rho U^dagger (U need not be unitary; projectors are fine).
  DensityMatrix& apply(const CMatrix& op, std::span<const int> wires);
  DensityMatrix& apply(const GateOp& gate);
  DensityMatrix& apply(GateKind kind, std::initializer_list<int> wires);

  DensityMatrix partial_trace(std::span<const int> keep) const;
  DensityMatrix partial_trace(std::initializer_list<int> keep) const {
    return partial_trace(std::span<const int>(keep.begin(), keep.size()));
  }
  DensityMatrix kron(const DensityMatrix& other) const;

  double hermiticity_residual() const;
  double min_eigenvalue() const;

 private:
  int num_qubits_;
  CMatrix entries_;
};

/// Bell-basis weights of a two-qubit operator plus the largest off-diagonal
/// (or imaginary-diagonal) magnitude in that basis.
struct BellDecomposition {
  BellVector weights;
  double residual;
};

BellDecomposition bell_decompose(const CMatrix& two_qubit);
inline BellDecomposition bell_decompose(const DensityMatrix& rho) {
  return bell_decompose(rho.matrix());
}

/// {"qubits": n, "re": [[...]], "im": [[...]]}
std::string to_json(const DensityMatrix& rho);

}  // namespace cdist

#endif  // CDIST_DENSITY_HPP_
