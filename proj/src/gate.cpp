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

#include "fhqetu/gate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fhqetu/pauli.hpp"

namespace fhqetu {

bool is_native(GateKind kind) {
  switch (kind) {
    case GateKind::kX:
    case GateKind::kY:
    case GateKind::kRz:
    case GateKind::kSqrtX:
    case GateKind::kSqrtY:
    case GateKind::kCPhase:
    case GateKind::kISwap:
      return true;
    default:
      return false;
  }
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kX: return "X";
    case GateKind::kY: return "Y";
    case GateKind::kRz: return "RZ";
    case GateKind::kSqrtX: return "SX";
    case GateKind::kSqrtY: return "SY";
    case GateKind::kCPhase: return "CPHASE";
    case GateKind::kISwap: return "ISWAP";
    case GateKind::kRzz: return "RZZ";
    case GateKind::kFSwap: return "FSWAP";
    case GateKind::kControlledPauli: return "C0PAULI";
    case GateKind::kHoppingXY: return "HOPXY";
    case GateKind::kBasisU: return "BASISU";
    case GateKind::kPrepPlus: return "PREPPLUS";
    case GateKind::kPrepMinus: return "PREPMINUS";
    case GateKind::kCNOT: return "CNOT";
    case GateKind::kHadamard: return "H";
    case GateKind::kXRotation: return "XROT";
    case GateKind::kUnitary: return "UNITARY";
  }
  return "?";
}

namespace gates {

namespace {
Gate make(GateKind kind, std::vector<int> qubits, std::vector<double> params = {}) {
  Gate g;
  g.kind = kind;
  g.qubits = std::move(qubits);
  g.params = std::move(params);
  return g;
}
}  // namespace

Gate x(int q) { return make(GateKind::kX, {q}); }
Gate y(int q) { return make(GateKind::kY, {q}); }
Gate rz(int q, double lambda) { return make(GateKind::kRz, {q}, {lambda}); }
Gate sqrt_x(int q) { return make(GateKind::kSqrtX, {q}); }
Gate sqrt_y(int q) { return make(GateKind::kSqrtY, {q}); }
Gate cphase(int a, int b, double lambda) {
  return make(GateKind::kCPhase, {a, b}, {lambda});
}
Gate iswap(int a, int b, double theta, double eta) {
  return make(GateKind::kISwap, {a, b}, {theta, eta});
}
Gate rzz(int a, int b, double theta) { return make(GateKind::kRzz, {a, b}, {theta}); }
Gate fswap(int a, int b) { return make(GateKind::kFSwap, {a, b}); }

Gate controlled_pauli(int control, std::vector<int> targets, std::string letters) {
  if (targets.size() != letters.size() || targets.empty())
    throw std::invalid_argument("controlled Pauli needs one letter per target");
  for (char c : letters)
    if (c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("controlled Pauli letters must be X, Y or Z");
  std::vector<int> qubits{control};
  qubits.insert(qubits.end(), targets.begin(), targets.end());
  Gate g = make(GateKind::kControlledPauli, std::move(qubits));
  g.letters = std::move(letters);
  return g;
}

Gate hopping_xy(int a, int b, double theta) {
  return make(GateKind::kHoppingXY, {a, b}, {theta});
}
Gate basis_u(int a, int b) { return make(GateKind::kBasisU, {a, b}); }
Gate prep_plus(int q) { return make(GateKind::kPrepPlus, {q}); }
Gate prep_minus(int q) { return make(GateKind::kPrepMinus, {q}); }
Gate cnot(int control, int target) { return make(GateKind::kCNOT, {control, target}); }
Gate hadamard(int q) { return make(GateKind::kHadamard, {q}); }
Gate x_rotation(int q, double phi) { return make(GateKind::kXRotation, {q}, {phi}); }

Gate unitary(std::vector<int> qubits, Matrix m) {
  const auto dim = Eigen::Index{1} << qubits.size();
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("unitary size does not match its qubit count");
  Gate g = make(GateKind::kUnitary, std::move(qubits));
  g.matrix = std::make_shared<const Matrix>(std::move(m));
  return g;
}

}  // namespace gates

namespace {

constexpr cplx kI{0.0, 1.0};

Matrix m2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix diag4(cplx a, cplx b, cplx c, cplx d) {
  Matrix m = Matrix::Zero(4, 4);
  m.diagonal() << a, b, c, d;
  return m;
}

}  // namespace

Matrix gate_matrix(const Gate& g) {
  const double r = 1.0 / std::numbers::sqrt2;
  const auto p = [&](std::size_t k) { return g.params.at(k); };
  switch (g.kind) {
    case GateKind::kX: return m2(0, 1, 1, 0);
    case GateKind::kY: return m2(0, -kI, kI, 0);
    case GateKind::kRz:
      return m2(std::polar(1.0, -p(0) / 2), 0, 0, std::polar(1.0, p(0) / 2));
    case GateKind::kSqrtX:
      return 0.5 * m2(1.0 + kI, 1.0 - kI, 1.0 - kI, 1.0 + kI);
    case GateKind::kSqrtY:
      return 0.5 * m2(1.0 + kI, -1.0 - kI, 1.0 + kI, 1.0 + kI);
    case GateKind::kCPhase: return diag4(1, 1, 1, std::polar(1.0, p(0)));
    case GateKind::kISwap:
    case GateKind::kHoppingXY: {
      const double theta = p(0);
      const double eta = g.kind == GateKind::kISwap ? p(1) : 0.0;
      Matrix m = Matrix::Identity(4, 4);
      m(1, 1) = m(2, 2) = std::cos(theta / 2);
      m(1, 2) = kI * std::polar(1.0, eta) * std::sin(theta / 2);
      m(2, 1) = kI * std::polar(1.0, -eta) * std::sin(theta / 2);
      return m;
    }
    case GateKind::kRzz: {
      const cplx a = std::polar(1.0, -p(0) / 2);
      const cplx b = std::polar(1.0, p(0) / 2);
      return diag4(a, b, b, a);
    }
    case GateKind::kFSwap: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = -1;
      return m;
    }
    case GateKind::kControlledPauli: {
      PauliString s = PauliString::parse(g.letters);
      const Matrix ps = to_matrix(s);
      const auto half = ps.rows();
      Matrix m = Matrix::Zero(2 * half, 2 * half);
      m.topLeftCorner(half, half) = ps;
      m.bottomRightCorner(half, half) = Matrix::Identity(half, half);
      return m;
    }
    case GateKind::kBasisU: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 1) = r;
      m(1, 2) = r;
      m(2, 1) = r;
      m(2, 2) = -r;
      m(3, 3) = 1;
      return m;
    }
    case GateKind::kPrepPlus: return m2(r, -r, r, r);
    case GateKind::kPrepMinus: return m2(r, r, -r, r);
    case GateKind::kCNOT: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      return m;
    }
    case GateKind::kHadamard: return m2(r, r, r, -r);
    case GateKind::kXRotation:
      return m2(std::cos(p(0)), kI * std::sin(p(0)), kI * std::sin(p(0)), std::cos(p(0)));
    case GateKind::kUnitary: return *g.matrix;
  }
  throw std::logic_error("unhandled gate kind");
}

Gate inverse(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::kX:
    case GateKind::kY:
    case GateKind::kFSwap:
    case GateKind::kControlledPauli:
    case GateKind::kCNOT:
    case GateKind::kHadamard:
      return out;
    case GateKind::kRz:
    case GateKind::kCPhase:
    case GateKind::kRzz:
    case GateKind::kHoppingXY:
    case GateKind::kXRotation:
      out.params[0] = -g.params[0];
      return out;
    case GateKind::kISwap:
      out.params[0] = -g.params[0];
      return out;
    case GateKind::kUnitary:
      out.matrix = std::make_shared<const Matrix>(g.matrix->adjoint());
      return out;
    default:
      throw std::invalid_argument("no same-kind inverse for " +
                                  std::string(gate_name(g.kind)));
  }
}

}  // namespace fhqetu
