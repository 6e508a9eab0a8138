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
#include <string>
#include <string_view>
#include <vector>

#include "fhqetu/linalg.hpp"

namespace fhqetu {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Signed Pauli string i^k * P_0 (x) P_1 (x) ... (x) P_{n-1}.
///
/// Qubit 0 is the leftmost Kronecker factor; in a basis index it is the most
/// significant bit. Every module in the project shares this convention.
class PauliString {
 public:
  explicit PauliString(std::size_t num_qubits = 0);

  /// Parses "XIZY", optionally prefixed by a sign: "+", "-", "+i", "-i", "i".
  static PauliString parse(std::string_view text);

  /// Identity on all qubits except `letter` on `qubit`.
  static PauliString single(std::size_t num_qubits, std::size_t qubit,
                            Pauli letter);

  std::size_t num_qubits() const { return axes_.size(); }
  Pauli at(std::size_t qubit) const { return axes_.at(qubit); }
  void set(std::size_t qubit, Pauli letter) { axes_.at(qubit) = letter; }

  /// Phase is i^exponent, exponent in {0,1,2,3}.
  int phase_exponent() const { return phase_; }
  void set_phase_exponent(int k) { phase_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4); }
  cplx phase() const;
  bool is_hermitian() const { return phase_ % 2 == 0; }

  /// Number of non-identity letters.
  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }

  /// Letters only, e.g. "XIZ".
  std::string letters() const;
  /// Letters with sign prefix, e.g. "-iXIZ"; "+" is written explicitly.
  std::string to_string() const;

  /// Bit masks over qubits in basis-index order (qubit q <-> bit n-1-q).
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> axes_;
  std::uint8_t phase_ = 0;
};

/// Exact Pauli-group product a*b, phase tracked in {+1, +i, -1, -i}.
PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff ab = -ba.
bool anticommutes(const PauliString& a, const PauliString& b);

/// Maximum qubit count accepted by the dense realizations.
inline constexpr std::size_t kMaxDenseQubits = 12;

Matrix to_matrix(const PauliString& p);

struct PauliTerm {
  double coefficient;
  PauliString string;
};

/// Real-weighted sum of signed Pauli strings over a fixed qubit count.
class PauliSum {
 public:
  explicit PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  void add(double coefficient, PauliString string);
  void add(double coefficient, std::string_view text) {
    add(coefficient, PauliString::parse(text));
  }
  void append(const PauliSum& other);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Holds when every string carries a real phase (coefficients are real).
  bool is_hermitian() const;

  PauliSum scaled(double factor) const;
  friend PauliSum operator+(PauliSum a, const PauliSum& b) {
    a.append(b);
    return a;
  }

 private:
  std::size_t num_qubits_;
  std::vector<PauliTerm> terms_;
};

/// Dense 2^n x 2^n realization; n <= kMaxDenseQubits.
Matrix to_matrix(const PauliSum& h);

/// Re-indexes every string onto a larger register: qubit q goes to
/// `placement[q]`, all other qubits carry identity.
PauliString relabel(const PauliString& p, std::size_t num_qubits,
                    const std::vector<int>& placement);
PauliSum relabel(const PauliSum& h, std::size_t num_qubits,
                 const std::vector<int>& placement);

}  // namespace fhqetu
