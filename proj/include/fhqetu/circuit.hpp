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

#include <iosfwd>
#include <vector>

#include "fhqetu/gate.hpp"

namespace fhqetu {

/// Ordered gate list over a fixed register. The ancilla-bearing circuits of
/// this project use 9 qubits.
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  /// Throws std::out_of_range for a qubit index outside the register and
  /// std::invalid_argument for repeated qubits.
  void add(Gate g);
  void append(const Circuit& other);

  bool is_native() const;

 private:
  std::size_t num_qubits_;
  std::vector<Gate> ops_;
};

/// Reversed op list with every gate inverted.
Circuit inverse(const Circuit& c);

/// Every abstract gate replaced by its native sequence; kUnitary is kept.
/// Runs of Rz on a qubit are merged and zero rotations dropped.
Circuit lower(const Circuit& c);

/// Applies a k-qubit local matrix to every column of a column-major block of
/// 2^n-dimensional states. qubits[0] is the most significant local factor.
void apply_local(cplx* data, std::size_t n, Eigen::Index cols, const Matrix& local,
                 const std::vector<int>& qubits);

inline constexpr std::size_t kMaxUnitaryQubits = 10;

/// Ordered product of all gate embeddings; num_qubits <= 10.
Matrix circuit_unitary(const Circuit& c);

/// ASAP layering depth in which Rz occupies no layer. Throws
/// std::invalid_argument on any non-native gate.
int depth_excluding_rz(const Circuit& c);

/// True iff min over unit phases phi of ||u - phi v||_max <= tol, phi taken
/// from the ratio at the largest-magnitude entry of v.
bool phase_equivalent(const Matrix& u, const Matrix& v, double tol);

/// Line format `GATE q0 [q1 ...] [param ...]`, angles with 17 significant
/// digits. C0PAULI ends with its letter string; UNITARY is not serializable.
void write_circuit(std::ostream& out, const Circuit& c);
Circuit read_circuit(std::istream& in, std::size_t num_qubits);

}  // namespace fhqetu
