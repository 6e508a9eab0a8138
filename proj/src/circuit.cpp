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

#include "fhqetu/circuit.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fhqetu {

void Circuit::add(Gate g) {
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    const int q = g.qubits[i];
    if (q < 0 || static_cast<std::size_t>(q) >= num_qubits_)
      throw std::out_of_range("gate qubit " + std::to_string(q) + " outside register");
    for (std::size_t j = 0; j < i; ++j)
      if (g.qubits[j] == q) throw std::invalid_argument("gate repeats a qubit");
  }
  ops_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits() != num_qubits_)
    throw std::invalid_argument("appending a circuit of different width");
  ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
}

bool Circuit::is_native() const {
  return std::all_of(ops_.begin(), ops_.end(),
                     [](const Gate& g) { return fhqetu::is_native(g.kind); });
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) out.add(inverse(*it));
  return out;
}

void apply_local(cplx* data, std::size_t n, Eigen::Index cols, const Matrix& local,
                 const std::vector<int>& qubits) {
  const std::size_t k = qubits.size();
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> bit(k);
  for (std::size_t i = 0; i < k; ++i) bit[i] = std::uint64_t{1} << (n - 1 - qubits[i]);

  if (k <= 2 && local.isDiagonal(0.0)) {
    cplx d[4];
    for (Eigen::Index j = 0; j < local.rows(); ++j) d[j] = local(j, j);
    const std::uint64_t b0 = bit[0];
    const std::uint64_t b1 = k == 2 ? bit[1] : 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      cplx* v = data + c * static_cast<Eigen::Index>(dim);
      for (std::uint64_t i = 0; i < dim; ++i)
        v[i] *= k == 1 ? d[(i & b0) ? 1 : 0] : d[((i & b0) ? 2 : 0) | ((i & b1) ? 1 : 0)];
    }
    return;
  }

  if (k == 1) {
    const std::uint64_t b = bit[0];
    const cplx u00 = local(0, 0), u01 = local(0, 1), u10 = local(1, 0), u11 = local(1, 1);
    for (Eigen::Index c = 0; c < cols; ++c) {
      cplx* v = data + c * static_cast<Eigen::Index>(dim);
      for (std::uint64_t hi = 0; hi < dim; hi += 2 * b) {
        for (std::uint64_t i = hi; i < hi + b; ++i) {
          const cplx a0 = v[i];
          const cplx a1 = v[i | b];
          v[i] = u00 * a0 + u01 * a1;
          v[i | b] = u10 * a0 + u11 * a1;
        }
      }
    }
    return;
  }

  const std::uint64_t local_dim = std::uint64_t{1} << k;
  std::uint64_t mask = 0;
  for (auto b : bit) mask |= b;
  // offset[j]: global bit pattern of local basis index j
  std::vector<std::uint64_t> offset(local_dim, 0);
  for (std::uint64_t j = 0; j < local_dim; ++j)
    for (std::size_t i = 0; i < k; ++i)
      if (j & (std::uint64_t{1} << (k - 1 - i))) offset[j] |= bit[i];

  if (k == 2) {
    cplx u[4][4];
    for (int r = 0; r < 4; ++r)
      for (int j = 0; j < 4; ++j) u[r][j] = local(r, j);
    const std::uint64_t big = std::max(bit[0], bit[1]);
    const std::uint64_t small = std::min(bit[0], bit[1]);
    const std::uint64_t o1 = offset[1], o2 = offset[2], o3 = offset[3];
    for (Eigen::Index c = 0; c < cols; ++c) {
      cplx* v = data + c * static_cast<Eigen::Index>(dim);
      for (std::uint64_t h = 0; h < dim; h += 2 * big)
        for (std::uint64_t m = h; m < h + big; m += 2 * small)
          for (std::uint64_t base = m; base < m + small; ++base) {
            const cplx a0 = v[base], a1 = v[base | o1], a2 = v[base | o2], a3 = v[base | o3];
            v[base] = u[0][0] * a0 + u[0][1] * a1 + u[0][2] * a2 + u[0][3] * a3;
            v[base | o1] = u[1][0] * a0 + u[1][1] * a1 + u[1][2] * a2 + u[1][3] * a3;
            v[base | o2] = u[2][0] * a0 + u[2][1] * a1 + u[2][2] * a2 + u[2][3] * a3;
            v[base | o3] = u[3][0] * a0 + u[3][1] * a1 + u[3][2] * a2 + u[3][3] * a3;
          }
    }
    return;
  }

  // Larger gates: gather every (column, base) slice, one dense product, scatter.
  std::vector<std::uint64_t> bases;
  for (std::uint64_t base = 0; base < dim; ++base)
    if (!(base & mask)) bases.push_back(base);
  const auto slices = static_cast<Eigen::Index>(bases.size()) * cols;
  Matrix block(static_cast<Eigen::Index>(local_dim), slices);
  Eigen::Index s = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    const cplx* v = data + c * static_cast<Eigen::Index>(dim);
    for (std::uint64_t base : bases) {
      for (std::uint64_t j = 0; j < local_dim; ++j)
        block(static_cast<Eigen::Index>(j), s) = v[base | offset[j]];
      ++s;
    }
  }
  const Matrix result = local * block;
  s = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    cplx* v = data + c * static_cast<Eigen::Index>(dim);
    for (std::uint64_t base : bases) {
      for (std::uint64_t j = 0; j < local_dim; ++j)
        v[base | offset[j]] = result(static_cast<Eigen::Index>(j), s);
      ++s;
    }
  }
}

Matrix circuit_unitary(const Circuit& c) {
  if (c.num_qubits() > kMaxUnitaryQubits)
    throw std::length_error("too many qubits for a dense unitary");
  const auto dim = Eigen::Index{1} << c.num_qubits();
  Matrix u = Matrix::Identity(dim, dim);
  for (const Gate& g : c.ops())
    apply_local(u.data(), c.num_qubits(), dim, gate_matrix(g), g.qubits);
  return u;
}

int depth_excluding_rz(const Circuit& c) {
  std::vector<int> level(c.num_qubits(), 0);
  int depth = 0;
  for (const Gate& g : c.ops()) {
    if (!is_native(g.kind))
      throw std::invalid_argument("depth of a non-native gate: " +
                                  std::string(gate_name(g.kind)));
    if (g.kind == GateKind::kRz) continue;
    int start = 0;
    for (int q : g.qubits) start = std::max(start, level[q]);
    for (int q : g.qubits) level[q] = start + 1;
    depth = std::max(depth, start + 1);
  }
  return depth;
}

bool phase_equivalent(const Matrix& u, const Matrix& v, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("phase_equivalent: dimension mismatch");
  if (v.size() == 0) return true;
  Eigen::Index r = 0, col = 0;
  v.cwiseAbs().maxCoeff(&r, &col);
  if (std::abs(v(r, col)) == 0.0) return max_abs(u) <= tol;
  cplx phase = u(r, col) / v(r, col);
  if (std::abs(phase) == 0.0) return false;
  phase /= std::abs(phase);
  return max_abs(u - phase * v) <= tol;
}

void write_circuit(std::ostream& out, const Circuit& c) {
  std::ostringstream line;
  line << std::setprecision(17);
  for (const Gate& g : c.ops()) {
    if (g.kind == GateKind::kUnitary)
      throw std::invalid_argument("dense unitaries cannot be serialized");
    line.str("");
    line << gate_name(g.kind);
    for (int q : g.qubits) line << ' ' << q;
    for (double p : g.params) line << ' ' << p;
    if (g.kind == GateKind::kControlledPauli) line << ' ' << g.letters;
    out << line.str() << '\n';
  }
}

namespace {

struct Arity {
  GateKind kind;
  int qubits;  // -1: variable
  int params;
};

constexpr Arity kArities[] = {
    {GateKind::kX, 1, 0},         {GateKind::kY, 1, 0},
    {GateKind::kRz, 1, 1},        {GateKind::kSqrtX, 1, 0},
    {GateKind::kSqrtY, 1, 0},     {GateKind::kCPhase, 2, 1},
    {GateKind::kISwap, 2, 2},     {GateKind::kRzz, 2, 1},
    {GateKind::kFSwap, 2, 0},     {GateKind::kControlledPauli, -1, 0},
    {GateKind::kHoppingXY, 2, 1}, {GateKind::kBasisU, 2, 0},
    {GateKind::kPrepPlus, 1, 0},  {GateKind::kPrepMinus, 1, 0},
    {GateKind::kCNOT, 2, 0},      {GateKind::kHadamard, 1, 0},
    {GateKind::kXRotation, 1, 1},
};

}  // namespace

Circuit read_circuit(std::istream& in, std::size_t num_qubits) {
  Circuit c(num_qubits);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string name;
    if (!(tokens >> name) || name.front() == '#') continue;
    const auto fail = [&](const std::string& why) {
      return std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
    };
    const Arity* arity = nullptr;
    for (const auto& a : kArities)
      if (gate_name(a.kind) == name) arity = &a;
    if (!arity) throw fail("unknown gate " + name);

    std::vector<std::string> rest;
    for (std::string t; tokens >> t;) rest.push_back(t);
    const auto integer = [&](const std::string& t) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(t, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used == 0 || used != t.size()) throw fail("bad qubit index " + t);
      return v;
    };
    const auto real = [&](const std::string& t) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(t, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used == 0 || used != t.size()) throw fail("bad angle " + t);
      return v;
    };

    Gate g;
    g.kind = arity->kind;
    if (arity->qubits < 0) {
      if (rest.size() < 3) throw fail("C0PAULI needs control, targets and letters");
      std::vector<int> targets;
      for (std::size_t i = 1; i + 1 < rest.size(); ++i) targets.push_back(integer(rest[i]));
      g = gates::controlled_pauli(integer(rest[0]), targets, rest.back());
    } else {
      if (rest.size() != static_cast<std::size_t>(arity->qubits + arity->params))
        throw fail("wrong operand count for " + name);
      std::size_t pos = 0;
      for (int i = 0; i < arity->qubits; ++i) g.qubits.push_back(integer(rest[pos++]));
      for (int i = 0; i < arity->params; ++i) g.params.push_back(real(rest[pos++]));
    }
    c.add(std::move(g));
  }
  return c;
}

}  // namespace fhqetu
