// Copyright 2026 The fhqetu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fhqetu/linalg.hpp"

namespace fhqetu {

enum class GateKind : std::uint8_t {
  // native
  kX,
  kY,
  kRz,      // (lambda)
  kSqrtX,
  kSqrtY,
  kCPhase,  // (lambda)
  kISwap,   // (theta, eta)
  // abstract
  kRzz,             // (theta) exp(-i theta/2 ZZ)
  kFSwap,
  kControlledPauli,  // qubits[0] controls on |0>, letters act on qubits[1..]
  kHoppingXY,       // (theta) exp(i theta/4 (XX + YY))
  kBasisU,
  kPrepPlus,   // Ry(pi/2): |0> -> |+>
  kPrepMinus,  // Ry(-pi/2): |0> -> |->
  kCNOT,
  kHadamard,
  kXRotation,  // (phi) exp(i phi X)
  kUnitary,    // dense matrix, kept opaque by lowering
};

bool is_native(GateKind kind);
std::string_view gate_name(GateKind kind);

struct Gate {
  GateKind kind = GateKind::kX;
  std::vector<int> qubits;
  std::vector<double> params;
  std::string letters;                   // kControlledPauli only
  std::shared_ptr<const Matrix> matrix;  // kUnitary only

  std::size_t arity() const { return qubits.size(); }
};

namespace gates {
Gate x(int q);
Gate y(int q);
Gate rz(int q, double lambda);
Gate sqrt_x(int q);
Gate sqrt_y(int q);
Gate cphase(int a, int b, double lambda);
Gate iswap(int a, int b, double theta, double eta = 0.0);
Gate rzz(int a, int b, double theta);
Gate fswap(int a, int b);
/// Applies `letters` to `targets` when `control` is |0>.
Gate controlled_pauli(int control, std::vector<int> targets, std::string letters);
Gate hopping_xy(int a, int b, double theta);
Gate basis_u(int a, int b);
Gate prep_plus(int q);
Gate prep_minus(int q);
Gate cnot(int control, int target);
Gate hadamard(int q);
Gate x_rotation(int q, double phi);
Gate unitary(std::vector<int> qubits, Matrix m);
}  // namespace gates

/// Local 2^k x 2^k matrix; qubits[0] is the most significant factor.
Matrix gate_matrix(const Gate& g);

/// Inverse gate. Throws std::invalid_argument for kinds whose inverse is not
/// expressible in the same kind (SqrtX, SqrtY, BasisU, PrepPlus, PrepMinus).
Gate inverse(const Gate& g);

/// Native sequence equal to g up to a global phase. Native gates map to
/// themselves. Throws std::invalid_argument for kUnitary.
std::vector<Gate> decompose_to_native(const Gate& g);

}  // namespace fhqetu
