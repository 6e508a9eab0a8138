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

#include "fhqetu/fermi_hubbard.hpp"
#include "fhqetu/simulator.hpp"

namespace fhqetu {

/// Which energy rows are emitted: herald-only (mitigated=0), herald plus
/// particle-number post-selection (mitigated=1), or both.
enum class PostSelectRows { kBoth, kOn, kOff };

struct ExperimentConfig {
  double u = 1.0;
  double t = 1.0;
  double eta = kDefaultEta;
  double c = 0.999;
  std::vector<int> degrees = {30};
  std::vector<int> steps = {1};
  std::vector<double> noise = {0.0};
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  /// Directory for CSV, circuit dumps and gnuplot scripts; empty writes the
  /// CSV to the caller's stream only.
  std::string out_dir;
  PostSelectRows postselect = PostSelectRows::kBoth;
  /// Also require the ground-state spin-down count.
  bool postselect_sector = false;
  NoiseBackend backend = NoiseBackend::kDensity;
  bool dump_circuit = false;
  bool gnuplot = false;

  ModelParams params() const { return {u, t}; }
  /// Throws std::invalid_argument for empty lists, odd or non-positive
  /// degrees, non-positive step counts, noise outside [0, 0.1], zero shots,
  /// c outside (0, 1) or eta outside (0, pi/2).
  void validate() const;
};

/// Rows skipped because a solver or post-selection failed.
struct ExperimentReport {
  int flagged_rows = 0;
  int convergence_failures = 0;
};

/// `quantity,value`: lambda0, lambda1, mu, delta, gamma, c1, c2 of the
/// network Hamiltonian; gamma = |<psi0|psi_init>|.
ExperimentReport cmd_spectrum(const ExperimentConfig& cfg, std::ostream& out);

/// `n_steps,l2_error,depth_excl_rz` of the lowered controlled V against the
/// exact controlled evolution, one row per step count.
ExperimentReport cmd_trotter(const ExperimentConfig& cfg, std::ostream& out);

/// `degree,overlap_sq,success_prob` of the Trotterized QETU state with
/// cfg.steps.front() steps. Low-degree filters are accepted with a warning
/// on `log`; rows whose phases do not converge hold nan.
ExperimentReport cmd_overlap(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);

/// `degree,p2q,shots,mitigated,energy,abs_error` over degrees x noise, rows
/// sorted by that key. The ancilla herald is always applied; mitigated=1
/// adds particle-number post-selection. Empty post-selections hold nan.
ExperimentReport cmd_energy(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);

/// Companion script plotting `<command>.csv` into `<command>.png`.
void write_gnuplot_script(std::ostream& out, const std::string& command);

}  // namespace fhqetu
