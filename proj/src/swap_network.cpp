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

#include "fhqetu/swap_network.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "fhqetu/oracle.hpp"

namespace fhqetu {

bool GridLayout::adjacent(int a, int b) {
  if (a < 0 || b < 0 || a >= kNumCells || b >= kNumCells) return false;
  const int dr = std::abs(a / kSide - b / kSide);
  const int dc = std::abs(a % kSide - b % kSide);
  return dr + dc == 1;
}

std::vector<std::pair<int, int>> GridLayout::edges() {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < kNumCells; ++a)
    for (int b = a + 1; b < kNumCells; ++b)
      if (adjacent(a, b)) out.emplace_back(a, b);
  return out;
}

int ModeMapping::cell_of(const SpinOrbital& o) const {
  for (int c = 0; c < GridLayout::kNumCells; ++c)
    if (cell[c] && *cell[c] == o) return c;
  throw std::out_of_range("orbital " + to_string(o) + " not mapped");
}

int ModeMapping::ancilla_cell() const {
  for (int c = 0; c < GridLayout::kNumCells; ++c)
    if (!cell[c]) return c;
  throw std::logic_error("mapping without ancilla");
}

namespace {

std::array<std::pair<int, int>, 4> ring_pairs(int offset) {
  std::array<std::pair<int, int>, 4> out;
  for (int j = 0; j < 4; ++j)
    out[j] = {kRingCells[(2 * j + offset) % 8], kRingCells[(2 * j + offset + 1) % 8]};
  return out;
}

ModeMapping start_mapping() {
  ModeMapping m;
  for (std::size_t k = 0; k < kNumModes; ++k) m.cell[kRingCells[k]] = kCanonicalOrder[k];
  return m;
}

}  // namespace

std::array<std::pair<int, int>, 4> onsite_cell_pairs() { return ring_pairs(0); }
std::array<std::pair<int, int>, 4> hopping_cell_pairs() { return ring_pairs(1); }

ModeMapping exchanged(const ModeMapping& m, const std::array<std::pair<int, int>, 4>& pairs) {
  ModeMapping out = m;
  for (auto [a, b] : pairs) std::swap(out.cell[a], out.cell[b]);
  return out;
}

ModeMapping mapping_at_config(int stage) {
  if (stage < 1 || stage > 7) throw std::out_of_range("stage must lie in 1..7");
  const ModeMapping start = start_mapping();
  return (stage >= 3 && stage <= 5) ? exchanged(start, onsite_cell_pairs()) : start;
}

std::vector<int> system_placement() {
  return std::vector<int>(kRingCells.begin(), kRingCells.end());
}

namespace {

struct PartTimes {
  double onsite_half;  // tau of the outer onsite exponentials
  double near_half;    // tau of the outer hopping exponentials
  double far_full;     // tau of the central hopping exponential
};

PartTimes part_times(const TrotterPlan& plan) {
  if (plan.n_steps < 1) throw std::invalid_argument("n_steps must be positive");
  if (!(plan.dt >= 0.0)) throw std::invalid_argument("dt must be non-negative");
  const double tau = plan.hamiltonian_time() / plan.n_steps;
  return {tau / 2, tau / 2, tau};
}

// exp(-i tau u/4 ZZ) on every onsite pair
void onsite_layer(Circuit& c, const ModelParams& p, double tau) {
  for (auto [a, b] : onsite_cell_pairs()) c.add(gates::rzz(a, b, p.u * tau / 2));
}

// exp(-i tau (-t/2)(XX + YY)) on every hopping pair
void hopping_layer(Circuit& c, const ModelParams& p, double tau) {
  for (auto [a, b] : hopping_cell_pairs()) c.add(gates::hopping_xy(a, b, 2 * p.t * tau));
}

void fswap_layer(Circuit& c) {
  for (auto [a, b] : onsite_cell_pairs()) c.add(gates::fswap(a, b));
}

Gate dense_part(const PauliSum& part, double tau) {
  return gates::unitary(system_placement(), dense_expm(to_matrix(part), tau));
}

enum class Segment { kOnsite, kHopping };

struct SegmentSpec {
  Segment kind;
  int multiplier;       // onsite half steps folded into this segment
  bool open_control;    // emit the leading controlled K
  bool close_control;   // emit the trailing controlled K
};

std::vector<SegmentSpec> segments(int n, StepMerging merging) {
  std::vector<SegmentSpec> out;
  for (int s = 0; s < n; ++s) {
    const bool first = s == 0;
    const bool last = s + 1 == n;
    if (first || merging == StepMerging::kNone) {
      out.push_back({Segment::kOnsite, 1, true, true});
    } else if (merging == StepMerging::kControls) {
      out.push_back({Segment::kOnsite, 1, false, true});
    }
    out.push_back({Segment::kHopping, 1, true, true});
    if (last || merging == StepMerging::kNone) {
      out.push_back({Segment::kOnsite, 1, true, true});
    } else if (merging == StepMerging::kControls) {
      out.push_back({Segment::kOnsite, 1, true, false});
    } else {
      out.push_back({Segment::kOnsite, 2, true, true});
    }
  }
  return out;
}

void emit_segment(Circuit& c, Segment seg, int multiplier, const TrotterPlan& plan,
                  const PartTimes& t, EvolutionBlocks blocks) {
  const ModelParams& p = plan.params;
  if (blocks == EvolutionBlocks::kExactParts) {
    const HamiltonianSplit split = split_hamiltonian(p);
    if (seg == Segment::kOnsite) {
      c.add(dense_part(split.onsite, multiplier * t.onsite_half));
    } else {
      c.add(dense_part(split.near_hopping, t.near_half));
      c.add(dense_part(split.far_hopping, t.far_full));
      c.add(dense_part(split.near_hopping, t.near_half));
    }
    return;
  }
  if (seg == Segment::kOnsite) {
    onsite_layer(c, p, multiplier * t.onsite_half);
  } else {
    hopping_layer(c, p, t.near_half);
    fswap_layer(c);
    hopping_layer(c, p, t.far_full);
    fswap_layer(c);
    hopping_layer(c, p, t.near_half);
  }
}

// Targets of K1/K2 in the order their controlled gates are emitted.
std::vector<int> control_targets() {
  const ModeMapping m = start_mapping();
  return {m.cell_of({2, Spin::kUp}), m.cell_of({3, Spin::kUp}),
          m.cell_of({1, Spin::kDown}), m.cell_of({4, Spin::kDown})};
}

}  // namespace

Circuit build_trotter_step(const TrotterPlan& plan) {
  Circuit c(GridLayout::kNumCells);
  const PartTimes t = part_times(plan);
  for (const SegmentSpec& seg : segments(1, plan.merging))
    emit_segment(c, seg.kind, seg.multiplier, plan, t, EvolutionBlocks::kTrotter);
  return c;
}

Circuit build_trotter_evolution(const TrotterPlan& plan) {
  Circuit c(GridLayout::kNumCells);
  const PartTimes t = part_times(plan);
  for (const SegmentSpec& seg : segments(plan.n_steps, plan.merging))
    emit_segment(c, seg.kind, seg.multiplier, plan, t, EvolutionBlocks::kTrotter);
  return c;
}

Circuit build_controlled_v(const TrotterPlan& plan, EvolutionBlocks blocks) {
  if (!plan.shift) throw std::invalid_argument("controlled V needs shift coefficients");
  if (blocks == EvolutionBlocks::kExactEvolution) {
    const Matrix h = to_matrix(build_network_hamiltonian(plan.params));
    const Matrix h_sh = plan.shift->c1 * h + plan.shift->c2 * Matrix::Identity(h.rows(), h.cols());
    std::vector<int> all(GridLayout::kNumCells);
    std::iota(all.begin(), all.end(), 0);
    Circuit c(GridLayout::kNumCells);
    c.add(gates::unitary(all, embed_controlled(dense_expm(h_sh, -plan.dt),
                                               dense_expm(h_sh, plan.dt))));
    return c;
  }
  const PartTimes t = part_times(plan);
  const int anc = GridLayout::kAncilla;
  const std::vector<int> targets = control_targets();
  const Gate k1 = gates::controlled_pauli(anc, targets, "XXXX");
  const Gate k2 = gates::controlled_pauli(anc, targets, "ZZZZ");

  Circuit c(GridLayout::kNumCells);
  c.add(gates::rz(anc, -2.0 * plan.shift->c2 * plan.dt));
  for (const SegmentSpec& seg : segments(plan.n_steps, plan.merging)) {
    const Gate& k = seg.kind == Segment::kOnsite ? k1 : k2;
    if (seg.open_control) c.add(k);
    emit_segment(c, seg.kind, seg.multiplier, plan, t, blocks);
    if (seg.close_control) c.add(k);
  }
  return c;
}

Circuit prepare_initial_state_circuit() {
  const ModeMapping m = start_mapping();
  Circuit c(GridLayout::kNumCells);
  c.add(gates::x(m.cell_of({1, Spin::kUp})));
  c.add(gates::x(m.cell_of({4, Spin::kUp})));
  c.add(gates::prep_minus(m.cell_of({1, Spin::kDown})));
  c.add(gates::prep_minus(m.cell_of({2, Spin::kDown})));
  c.add(gates::prep_plus(m.cell_of({3, Spin::kDown})));
  c.add(gates::prep_plus(m.cell_of({4, Spin::kDown})));
  return c;
}

std::uint64_t register_index(std::uint64_t system, int ancilla) {
  constexpr int n = GridLayout::kNumCells;
  std::uint64_t out = ancilla ? std::uint64_t{1} << (n - 1 - GridLayout::kAncilla) : 0;
  for (std::size_t k = 0; k < kNumModes; ++k)
    if (system & (std::uint64_t{1} << (kNumModes - 1 - k)))
      out |= std::uint64_t{1} << (n - 1 - kRingCells[k]);
  return out;
}

Vector embed_system_state(const Vector& system, int ancilla) {
  if (system.size() != (1 << kNumModes)) throw std::invalid_argument("expected 256 amplitudes");
  Vector out = Vector::Zero(1 << GridLayout::kNumCells);
  for (Eigen::Index s = 0; s < system.size(); ++s)
    out(static_cast<Eigen::Index>(register_index(static_cast<std::uint64_t>(s), ancilla))) = system(s);
  return out;
}

Vector system_component(const Vector& state, int ancilla) {
  if (state.size() != (1 << GridLayout::kNumCells))
    throw std::invalid_argument("expected 512 amplitudes");
  Vector out(1 << kNumModes);
  for (Eigen::Index s = 0; s < out.size(); ++s)
    out(s) = state(static_cast<Eigen::Index>(register_index(static_cast<std::uint64_t>(s), ancilla)));
  return out;
}

Matrix system_block(const Matrix& u, int row_ancilla, int col_ancilla) {
  const Eigen::Index dim = 1 << kNumModes;
  Matrix out(dim, dim);
  std::vector<Eigen::Index> rows(dim), cols(dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    rows[s] = static_cast<Eigen::Index>(register_index(static_cast<std::uint64_t>(s), row_ancilla));
    cols[s] = static_cast<Eigen::Index>(register_index(static_cast<std::uint64_t>(s), col_ancilla));
  }
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) out(i, j) = u(rows[i], cols[j]);
  return out;
}

Matrix embed_controlled(const Matrix& block0, const Matrix& block1) {
  const Eigen::Index dim = 1 << GridLayout::kNumCells;
  Matrix out = Matrix::Zero(dim, dim);
  for (int a = 0; a < 2; ++a) {
    const Matrix& b = a == 0 ? block0 : block1;
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i)
        out(static_cast<Eigen::Index>(register_index(static_cast<std::uint64_t>(i), a)),
            static_cast<Eigen::Index>(register_index(static_cast<std::uint64_t>(j), a))) =
            b(i, j);
  }
  return out;
}

Matrix embed_system_operator(const Matrix& system) {
  return embed_controlled(system, system);
}

}  // namespace fhqetu
