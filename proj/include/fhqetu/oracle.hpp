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

#include "fhqetu/fermi_hubbard.hpp"
#include "fhqetu/linalg.hpp"

namespace fhqetu {

/// Annihilation operator of canonical mode k as a 2^8 occupation-basis matrix,
/// carrying the sign (-1)^(number of occupied modes before k).
Matrix fock_annihilator(int mode);

/// Hubbard Hamiltonian assembled from fermionic operators in the occupation
/// basis, independent of any Pauli-string bookkeeping.
Matrix fock_hamiltonian(const ModelParams& p);

/// As fock_hamiltonian, but the 1-3 bond of both spins is multiplied by
/// -(-1)^N: the operator realized by the swap-network circuit.
Matrix fock_network_hamiltonian(const ModelParams& p);

struct Spectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // column k belongs to eigenvalues(k)

  double ground_energy() const { return eigenvalues(0); }
  Vector ground_state() const { return eigenvectors.col(0); }
  /// Smallest eigenvalue exceeding the ground energy by more than tol.
  double first_excited_energy(double tol = 1e-9) const;
};

/// Full Hermitian eigendecomposition. Each eigenvector is rescaled so that its
/// largest-magnitude component is real and positive.
Spectrum exact_spectrum(const Matrix& h);

/// exp(-i tau H) for Hermitian H.
Matrix dense_expm(const Matrix& h, double tau);

/// f applied to the eigenvalues of Hermitian H.
template <typename F>
Matrix hermitian_function(const Matrix& h, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix& q = es.eigenvectors();
  Vector d(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = f(es.eigenvalues()(k));
  return q * d.asDiagonal() * q.adjoint();
}

}  // namespace fhqetu
