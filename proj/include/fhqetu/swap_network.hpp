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

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "fhqetu/circuit.hpp"
#include "fhqetu/fermi_hubbard.hpp"

namespace fhqetu {

/// 3x3 grid, cell = 3*row + col, 4-neighbour couplings. Circuit qubit indices
/// are grid cells.
struct GridLayout {
  static constexpr int kSide = 3;
  static constexpr int kNumCells = 9;
  static constexpr int kAncilla = 4;

  static bool adjacent(int a, int b);
  static std::vector<std::pair<int, int>> edges();
};

/// Occupant of each grid cell; std::nullopt marks the ancilla.
struct ModeMapping {
  std::array<std::optional<SpinOrbital>, GridLayout::kNumCells> cell;

  int cell_of(const SpinOrbital& o) const;
  int ancilla_cell() const;
  friend bool operator==(const ModeMapping&, const ModeMapping&) = default;
};

/// Cells around the ancilla, clockwise from the top-left corner. In the start
/// configuration ring position k holds canonical mode k.
inline constexpr std::array<int, 8> kRingCells = {0, 1, 2, 5, 8, 7, 6, 3};

/// Stage 1..7 of one Trotter step: 1,2,6,7 use the start mapping, 3,4,5 the
/// mapping with every onsite pair exchanged.
ModeMapping mapping_at_config(int stage);

/// Cell pairs exchanged by the fSWAP layers (ring positions 2j, 2j+1), which
/// are also the onsite pairs of the start mapping.
std::array<std::pair<int, int>, 4> onsite_cell_pairs();
/// Cell pairs carrying the hopping layers (ring positions 2j+1, 2j+2).
std::array<std::pair<int, int>, 4> hopping_cell_pairs();

/// Applies the fSWAP exchanges of `pairs` to a mapping.
ModeMapping exchanged(const ModeMapping& m, const std::array<std::pair<int, int>, 4>& pairs);

/// Grid cell of each canonical mode in the start mapping; the placement that
/// embeds 8-mode operators into the 9-qubit register.
std::vector<int> system_placement();

/// How consecutive Trotter steps are joined.
enum class StepMerging {
  kNone,      // steps emitted back to back
  kControls,  // the two K1 layers between steps cancel
  kFull,      // additionally the two onsite half steps become one layer
};

struct TrotterPlan {
  int n_steps = 1;
  /// Evolution time per V application, in units of the shifted Hamiltonian.
  double dt = 0.5;
  ModelParams params;
  std::optional<ShiftCoefficients> shift;
  StepMerging merging = StepMerging::kNone;

  /// Time applied to the unshifted Hamiltonian: c1 * dt, or dt without shift.
  double hamiltonian_time() const { return shift ? shift->c1 * dt : dt; }
};

/// One symmetric second-order step of exp(-i T H_net / n), T the plan's
/// hamiltonian_time: Rzz, hop, fSWAP, hop, fSWAP, hop, Rzz. Ancilla untouched.
Circuit build_trotter_step(const TrotterPlan& plan);

/// All n steps of build_trotter_step.
Circuit build_trotter_evolution(const TrotterPlan& plan);

enum class EvolutionBlocks {
  kTrotter,  // native-lowerable gates
  kExactParts,      // each part exponential as one dense 8-qubit gate
  kExactEvolution,  // the whole controlled evolution as one dense gate
};

/// Controlled forward/backward evolution: ancilla |0> receives
/// exp(+i dt H_sh), ancilla |1> exp(-i dt H_sh), up to Trotter error.
/// Throws std::invalid_argument when the plan has no shift.
Circuit build_controlled_v(const TrotterPlan& plan,
                           EvolutionBlocks blocks = EvolutionBlocks::kTrotter);

/// Product state: spin-up sites 1..4 in |1>,|0>,|0>,|1>; spin-down sites in
/// |->,|->,|+>,|+>; ancilla untouched.
Circuit prepare_initial_state_circuit();

/// Index of the 9-qubit basis state holding 8-mode basis state `system`
/// (canonical order) and ancilla bit `ancilla`.
std::uint64_t register_index(std::uint64_t system, int ancilla);

/// 8-mode state embedded with the ancilla in |ancilla>.
Vector embed_system_state(const Vector& system, int ancilla);
/// Unnormalized system component with the ancilla in |ancilla>.
Vector system_component(const Vector& state, int ancilla);
/// 256 x 256 block <row_ancilla| U |col_ancilla> in canonical mode order.
Matrix system_block(const Matrix& u, int row_ancilla, int col_ancilla);
/// 8-mode operator embedded on the register, identity on the ancilla.
Matrix embed_system_operator(const Matrix& system);
/// |0><0| (x) block0 + |1><1| (x) block1 on the register.
Matrix embed_controlled(const Matrix& block0, const Matrix& block1);

}  // namespace fhqetu
