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

#include "fhqetu/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace fhqetu {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

PauliString::PauliString(std::size_t num_qubits) : axes_(num_qubits, Pauli::I) {}

PauliString PauliString::parse(std::string_view text) {
  int k = 0;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    if (text.front() == '-') k = 2;
    text.remove_prefix(1);
  }
  if (!text.empty() && text.front() == 'i') {
    k += 1;
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) p.axes_[q] = pauli_from_char(text[q]);
  p.set_phase_exponent(k);
  return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit,
                                Pauli letter) {
  PauliString p(num_qubits);
  p.set(qubit, letter);
  return p;
}

cplx PauliString::phase() const {
  static constexpr cplx kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kUnits[phase_];
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (Pauli a : axes_) w += (a != Pauli::I);
  return w;
}

std::string PauliString::letters() const {
  std::string s;
  s.reserve(axes_.size());
  for (Pauli a : axes_) s.push_back(to_char(a));
  return s;
}

std::string PauliString::to_string() const {
  static const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  return kPrefix[phase_] + letters();
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = axes_.size();
  for (std::size_t q = 0; q < n; ++q)
    if (axes_[q] == Pauli::X || axes_[q] == Pauli::Y) m |= 1ULL << (n - 1 - q);
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = axes_.size();
  for (std::size_t q = 0; q < n; ++q)
    if (axes_[q] == Pauli::Z || axes_[q] == Pauli::Y) m |= 1ULL << (n - 1 - q);
  return m;
}

namespace {

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("Pauli strings act on different qubit counts");
}

}  // namespace

PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  PauliString c(a.num_qubits());
  int k = a.phase_exponent() + b.phase_exponent();
  for (std::size_t q = 0; q < a.num_qubits(); ++q) {
    const int x = static_cast<int>(a.at(q));
    const int y = static_cast<int>(b.at(q));
    c.set(q, static_cast<Pauli>(x ^ y));
    if (x != 0 && y != 0 && x != y) {
      // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
      k += ((y - x + 3) % 3 == 1) ? 1 : 3;
    }
  }
  c.set_phase_exponent(k);
  return c;
}

bool anticommutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::size_t clashes = 0;
  for (std::size_t q = 0; q < a.num_qubits(); ++q) {
    const Pauli x = a.at(q);
    const Pauli y = b.at(q);
    clashes += (x != Pauli::I && y != Pauli::I && x != y);
  }
  return clashes % 2 == 1;
}

namespace {

void require_dense(std::size_t n) {
  if (n > kMaxDenseQubits)
    throw std::length_error("too many qubits for a dense matrix: " +
                            std::to_string(n));
}

// Adds weight * p into m. Each column of a Pauli string has exactly one
// non-zero entry: P|j> = phase(j) |j ^ xmask>.
void accumulate(Matrix& m, const PauliString& p, cplx weight) {
  const std::uint64_t xm = p.x_mask();
  const std::uint64_t zm = p.z_mask();
  std::size_t num_y = 0;
  for (std::size_t q = 0; q < p.num_qubits(); ++q) num_y += (p.at(q) == Pauli::Y);
  // Y = i * X * Z, so each Y contributes a factor i on top of the XZ action.
  static constexpr cplx kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx base = weight * p.phase() * kUnits[num_y % 4];
  const std::uint64_t dim = std::uint64_t{1} << p.num_qubits();
  for (std::uint64_t col = 0; col < dim; ++col) {
    const bool odd = __builtin_popcountll(col & zm) & 1;
    m(static_cast<Eigen::Index>(col ^ xm), static_cast<Eigen::Index>(col)) +=
        odd ? -base : base;
  }
}

}  // namespace

Matrix to_matrix(const PauliString& p) {
  require_dense(p.num_qubits());
  const auto dim = Eigen::Index{1} << p.num_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  accumulate(m, p, 1.0);
  return m;
}

void PauliSum::add(double coefficient, PauliString string) {
  if (string.num_qubits() != num_qubits_)
    throw std::invalid_argument("term acts on " +
                                std::to_string(string.num_qubits()) +
                                " qubits, sum on " + std::to_string(num_qubits_));
  if (!std::isfinite(coefficient))
    throw std::invalid_argument("non-finite Pauli coefficient");
  terms_.push_back({coefficient, std::move(string)});
}

void PauliSum::append(const PauliSum& other) {
  for (const auto& t : other.terms()) add(t.coefficient, t.string);
}

bool PauliSum::is_hermitian() const {
  for (const auto& t : terms_)
    if (!t.string.is_hermitian()) return false;
  return true;
}

PauliSum PauliSum::scaled(double factor) const {
  PauliSum out(num_qubits_);
  for (const auto& t : terms_) out.add(factor * t.coefficient, t.string);
  return out;
}

Matrix to_matrix(const PauliSum& h) {
  require_dense(h.num_qubits());
  const auto dim = Eigen::Index{1} << h.num_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : h.terms()) accumulate(m, t.string, t.coefficient);
  return m;
}

PauliString relabel(const PauliString& p, std::size_t num_qubits,
                    const std::vector<int>& placement) {
  if (placement.size() != p.num_qubits())
    throw std::invalid_argument("placement size does not match string");
  PauliString out(num_qubits);
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    const int target = placement[q];
    if (target < 0 || static_cast<std::size_t>(target) >= num_qubits)
      throw std::out_of_range("placement index out of range");
    out.set(static_cast<std::size_t>(target), p.at(q));
  }
  out.set_phase_exponent(p.phase_exponent());
  return out;
}

PauliSum relabel(const PauliSum& h, std::size_t num_qubits,
                 const std::vector<int>& placement) {
  PauliSum out(num_qubits);
  for (const auto& t : h.terms())
    out.add(t.coefficient, relabel(t.string, num_qubits, placement));
  return out;
}

}  // namespace fhqetu
