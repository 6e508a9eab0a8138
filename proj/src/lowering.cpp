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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fhqetu/circuit.hpp"

namespace fhqetu {

namespace {

constexpr double kPi = std::numbers::pi;

using Seq = std::vector<Gate>;

void push(Seq& s, Gate g) { s.push_back(std::move(g)); }

// Hadamard up to phase: Z then sqrt(Y).
void hadamard_native(Seq& s, int q) {
  push(s, gates::rz(q, kPi));
  push(s, gates::sqrt_y(q));
}

// exp(-i a X / 2)
void rx_native(Seq& s, int q, double a) {
  push(s, gates::rz(q, kPi));
  push(s, gates::sqrt_y(q));
  push(s, gates::rz(q, a + kPi));
  push(s, gates::sqrt_y(q));
}

// exp(-i a Y / 2) = Rz(pi/2) Rx(a) Rz(-pi/2)
void ry_native(Seq& s, int q, double a) {
  push(s, gates::rz(q, -kPi / 2));
  rx_native(s, q, a);
  push(s, gates::rz(q, kPi / 2));
}

void cz_native(Seq& s, int a, int b) { push(s, gates::cphase(a, b, kPi)); }

void cnot_native(Seq& s, int control, int target) {
  hadamard_native(s, target);
  cz_native(s, control, target);
  hadamard_native(s, target);
}

void zero_controlled(Seq& s, int control, int target, char letter) {
  switch (letter) {
    case 'Z':
      push(s, gates::rz(target, kPi));
      push(s, gates::cphase(control, target, kPi));
      return;
    case 'X':
      push(s, gates::rz(control, kPi));
      push(s, gates::sqrt_y(target));
      push(s, gates::cphase(control, target, -kPi));
      push(s, gates::sqrt_y(target));
      push(s, gates::rz(target, kPi));
      return;
    case 'Y':
      push(s, gates::rz(target, -kPi / 2));
      zero_controlled(s, control, target, 'X');
      push(s, gates::rz(target, kPi / 2));
      return;
    default:
      throw std::invalid_argument("bad Pauli letter in controlled string");
  }
}

}  // namespace

std::vector<Gate> decompose_to_native(const Gate& g) {
  if (is_native(g.kind)) return {g};
  Seq s;
  const auto& q = g.qubits;
  switch (g.kind) {
    case GateKind::kRzz: {
      const double theta = g.params.at(0);
      push(s, gates::rz(q[0], theta));
      push(s, gates::rz(q[1], theta));
      push(s, gates::cphase(q[0], q[1], -2 * theta));
      break;
    }
    case GateKind::kFSwap:
      push(s, gates::iswap(q[0], q[1], kPi, 0.0));
      push(s, gates::rz(q[0], -kPi / 2));
      push(s, gates::rz(q[1], -kPi / 2));
      break;
    case GateKind::kControlledPauli:
      for (std::size_t i = 0; i < g.letters.size(); ++i)
        zero_controlled(s, q[0], q[i + 1], g.letters[i]);
      break;
    case GateKind::kHoppingXY:
      push(s, gates::iswap(q[0], q[1], g.params.at(0), 0.0));
      break;
    case GateKind::kBasisU:
      // CNOT(a->b), controlled-H(b->a), CNOT(a->b)
      cnot_native(s, q[0], q[1]);
      ry_native(s, q[0], -kPi / 4);
      cz_native(s, q[1], q[0]);
      ry_native(s, q[0], kPi / 4);
      cnot_native(s, q[0], q[1]);
      break;
    case GateKind::kPrepPlus:
      push(s, gates::sqrt_y(q[0]));
      break;
    case GateKind::kPrepMinus:
      push(s, gates::rz(q[0], kPi));
      push(s, gates::sqrt_y(q[0]));
      push(s, gates::rz(q[0], kPi));
      break;
    case GateKind::kCNOT:
      cnot_native(s, q[0], q[1]);
      break;
    case GateKind::kHadamard:
      hadamard_native(s, q[0]);
      break;
    case GateKind::kXRotation:
      rx_native(s, q[0], -2 * g.params.at(0));
      break;
    default:
      throw std::invalid_argument("no native rule for " + std::string(gate_name(g.kind)));
  }
  return s;
}

Circuit lower(const Circuit& c) {
  Circuit out(c.num_qubits());
  std::vector<double> pending(c.num_qubits(), 0.0);
  const auto flush = [&](int q) {
    double a = std::remainder(pending[q], 4 * kPi);
    pending[q] = 0.0;
    if (std::abs(std::remainder(a, 2 * kPi)) < 1e-15) return;
    out.add(gates::rz(q, a));
  };
  for (const Gate& g : c.ops()) {
    const auto natives =
        g.kind == GateKind::kUnitary ? std::vector<Gate>{g} : decompose_to_native(g);
    for (const Gate& n : natives) {
      if (n.kind == GateKind::kRz) {
        pending[n.qubits[0]] += n.params[0];
        continue;
      }
      for (int q : n.qubits) flush(q);
      out.add(n);
    }
  }
  for (std::size_t q = 0; q < c.num_qubits(); ++q) flush(static_cast<int>(q));
  return out;
}

}  // namespace fhqetu
