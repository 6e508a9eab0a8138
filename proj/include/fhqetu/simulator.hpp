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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fhqetu/circuit.hpp"
#include "fhqetu/pauli.hpp"
#include "fhqetu/rng.hpp"

namespace fhqetu {

struct StateVector {
  std::size_t num_qubits = 0;
  Vector amplitudes;

  /// |0...0> on n qubits.
  static StateVector zero(std::size_t n);
  static StateVector from(Vector amplitudes);
};

struct DensityMatrix {
  std::size_t num_qubits = 0;
  Matrix entries;

  static DensityMatrix zero(std::size_t n);
  static DensityMatrix pure(const StateVector& psi);
};

inline constexpr std::size_t kMaxDensityQubits = 9;

/// Depolarizing probabilities per gate class plus a symmetric readout flip.
/// Rz carries no noise.
struct NoiseModel {
  double p1q = 0.0;
  double p2q = 0.0;
  double pmeas = 0.0;

  /// p1q = p2q / 10, pmeas = 10 p2q.
  static NoiseModel from_p2q(double p2q);
  bool is_noiseless() const { return p1q == 0.0 && p2q == 0.0 && pmeas == 0.0; }
  /// Throws std::invalid_argument unless every probability lies in [0, 1].
  void validate() const;
  /// Depolarizing probability after gate g (0 for Rz).
  double gate_error(const Gate& g) const;
};

enum class NoiseBackend { kDensity, kTrajectory };

/// Histogram over computational basis states; index bit order follows the
/// qubit convention (qubit 0 is the leftmost character of a bitstring).
struct Counts {
  std::size_t num_qubits = 0;
  std::vector<std::uint64_t> histogram;

  explicit Counts(std::size_t n = 0) : num_qubits(n), histogram(std::size_t{1} << n, 0) {}
  std::uint64_t total() const;
  std::uint64_t operator[](std::uint64_t index) const { return histogram.at(index); }
  Counts& operator+=(const Counts& other);
};

std::string bitstring(std::uint64_t index, std::size_t n);

/// Rows `bitstring,count` for every non-zero entry in index order, with header.
void write_counts_csv(std::ostream& out, const Counts& counts);

/// Applies native gates and dense kUnitary gates. Throws std::invalid_argument
/// for abstract gates or a width mismatch.
StateVector apply_circuit(StateVector state, const Circuit& c);

/// Applies each gate as its unitary followed by the depolarizing channel of
/// `noise` on the gate's qubits.
void apply_circuit(DensityMatrix& rho, const Circuit& c, const NoiseModel& noise);

/// Noisy evolution of |0...0>.
DensityMatrix run_density(const Circuit& c, const NoiseModel& noise);

/// rho -> (1 - p) rho + p (I/2^k (x) Tr_qubits rho).
void depolarize(DensityMatrix& rho, const std::vector<int>& qubits, double p);

/// Measurement distribution of all qubits, before readout error.
RealVector probabilities(const StateVector& psi);
RealVector probabilities(const DensityMatrix& rho);

/// Distribution after independent symmetric bit flips with probability p.
RealVector apply_readout_error(RealVector probs, std::size_t n, double p);

/// Exact distribution of measured bitstrings from |0...0>: density matrix
/// for depolarizing noise, statevector otherwise, then readout flips.
RealVector outcome_distribution(const Circuit& c, const NoiseModel& noise);

/// `shots` draws from `probs` (multinomial via conditional binomials).
Counts sample_distribution(const RealVector& probs, std::size_t n, std::uint64_t shots,
                           SplitMix64& rng);

/// Shots of the circuit from |0...0>, all qubits measured. Noiseless runs
/// sample the statevector; noisy runs use the density matrix or Pauli
/// trajectories (one substream per shot). Readout flips use pmeas.
Counts sample(const Circuit& c, std::uint64_t shots, const NoiseModel& noise,
              std::uint64_t seed, NoiseBackend backend = NoiseBackend::kDensity);

/// <psi|O|psi>. Throws std::invalid_argument for a non-Hermitian observable
/// or a width mismatch.
double expectation(const StateVector& psi, const PauliSum& obs);

}  // namespace fhqetu
