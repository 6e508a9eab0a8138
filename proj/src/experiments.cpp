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

#include "fhqetu/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "fhqetu/csv.hpp"
#include "fhqetu/measurement.hpp"
#include "fhqetu/oracle.hpp"
#include "fhqetu/qetu.hpp"

namespace fhqetu {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxP2q = 0.1;

struct NetworkSpectrum {
  Matrix h;
  Spectrum spectrum;
  ShiftCoefficients shift;
};

NetworkSpectrum network_spectrum(const ExperimentConfig& cfg) {
  NetworkSpectrum n;
  n.h = to_matrix(build_network_hamiltonian(cfg.params()));
  n.spectrum = exact_spectrum(n.h);
  const RealVector& ev = n.spectrum.eigenvalues;
  n.shift = shift_coefficients(ev(0), ev(ev.size() - 1), cfg.eta);
  return n;
}

Vector initial_system_state() {
  const StateVector init =
      apply_circuit(StateVector::zero(GridLayout::kNumCells), lower(prepare_initial_state_circuit()));
  return system_component(init.amplitudes, 0);
}

QetuOptions qetu_options(const ExperimentConfig& cfg) {
  QetuOptions o;
  o.eta = cfg.eta;
  o.c = cfg.c;
  o.n_steps = cfg.steps.front();
  o.seed = cfg.seed;
  o.allow_infeasible = true;
  return o;
}

void warn_if_infeasible(const QetuProgram& program, int d, std::ostream& log) {
  if (!program.target.feasible())
    log << "warning: degree " << d << " filter band error "
        << format_real(program.target.band_error()) << " exceeds "
        << format_real(kMaxBandError) << "\n";
}

std::filesystem::path out_path(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / name;
}

void dump_circuit(const ExperimentConfig& cfg, const std::string& name, const Circuit& c) {
  if (!cfg.dump_circuit || cfg.out_dir.empty()) return;
  std::ofstream f(out_path(cfg, name));
  if (!f) throw std::runtime_error("cannot write " + name);
  write_circuit(f, c);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (degrees.empty() || steps.empty() || noise.empty())
    throw std::invalid_argument("degree, step and noise lists must be non-empty");
  for (int d : degrees)
    if (d < 2 || d % 2 != 0)
      throw std::invalid_argument("degree " + std::to_string(d) + " is not a positive even number");
  for (int n : steps)
    if (n < 1) throw std::invalid_argument("Trotter step count must be positive");
  for (double p : noise)
    if (!(p >= 0.0 && p <= kMaxP2q))
      throw std::invalid_argument("p2q " + format_real(p) + " outside [0, 0.1]");
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
  if (!(eta > 0.0 && eta < std::numbers::pi / 2))
    throw std::invalid_argument("eta must lie in (0, pi/2)");
  if (!std::isfinite(u) || !std::isfinite(t) || (u == 0.0 && t == 0.0))
    throw std::invalid_argument("u and t must be finite and not both zero");
}

ExperimentReport cmd_spectrum(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const NetworkSpectrum n = network_spectrum(cfg);
  const double l0 = n.spectrum.ground_energy();
  const double l1 = n.spectrum.first_excited_energy();
  const double gamma = std::abs(n.spectrum.ground_state().dot(initial_system_state()));
  out << "quantity,value\n";
  out << "lambda0," << format_real(l0) << "\n";
  out << "lambda1," << format_real(l1) << "\n";
  out << "mu," << format_real((l0 + l1) / 2) << "\n";
  out << "delta," << format_real(l1 - l0) << "\n";
  out << "gamma," << format_real(gamma) << "\n";
  out << "c1," << format_real(n.shift.c1) << "\n";
  out << "c2," << format_real(n.shift.c2) << "\n";
  return {};
}

ExperimentReport cmd_trotter(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const NetworkSpectrum n = network_spectrum(cfg);
  const Matrix shifted = n.shift.c1 * n.h + n.shift.c2 * Matrix::Identity(n.h.rows(), n.h.cols());
  std::vector<int> steps = cfg.steps;
  std::sort(steps.begin(), steps.end());
  out << "n_steps,l2_error,depth_excl_rz\n";
  for (int s : steps) {
    TrotterPlan plan;
    plan.n_steps = s;
    plan.params = cfg.params();
    plan.shift = n.shift;
    const Circuit v = lower(build_controlled_v(plan));
    const Matrix exact =
        embed_controlled(dense_expm(shifted, -plan.dt), dense_expm(shifted, plan.dt));
    const double err = phase_aligned_distance(circuit_unitary(v), exact);
    dump_circuit(cfg, "controlled_v_n" + std::to_string(s) + ".txt", v);
    out << s << "," << format_real(err) << "," << depth_excluding_rz(v) << "\n";
  }
  return {};
}

ExperimentReport cmd_overlap(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  const NetworkSpectrum n = network_spectrum(cfg);
  const Vector psi0 = n.spectrum.ground_state();
  std::vector<int> degrees = cfg.degrees;
  std::sort(degrees.begin(), degrees.end());
  ExperimentReport report;
  out << "degree,overlap_sq,success_prob\n";
  for (int d : degrees) {
    double overlap = kNaN;
    double success = kNaN;
    try {
      const QetuProgram program = compile_qetu(cfg.params(), d, qetu_options(cfg));
      warn_if_infeasible(program, d, log);
      dump_circuit(cfg, "qetu_d" + std::to_string(d) + ".txt", program.circuit);
      const PreparedState st = run_qetu(program);
      overlap = std::norm(psi0.dot(st.system));
      success = st.success_probability;
    } catch (const ConvergenceError& e) {
      log << "degree " << d << ": " << e.what() << "\n";
      ++report.flagged_rows;
      ++report.convergence_failures;
    }
    out << d << "," << format_real(overlap) << "," << format_real(success) << "\n";
  }
  return report;
}

ExperimentReport cmd_energy(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  const NetworkSpectrum n = network_spectrum(cfg);
  const double l0 = n.spectrum.ground_energy();
  const std::pair<int, int> sector = ground_state_sector(cfg.params());

  std::vector<int> mitigations;
  if (cfg.postselect != PostSelectRows::kOn) mitigations.push_back(0);
  if (cfg.postselect != PostSelectRows::kOff) mitigations.push_back(1);

  std::vector<int> degrees = cfg.degrees;
  std::sort(degrees.begin(), degrees.end());
  std::vector<double> noise = cfg.noise;
  std::sort(noise.begin(), noise.end());

  ExperimentReport report;
  out << "degree,p2q,shots,mitigated,energy,abs_error\n";
  for (int d : degrees) {
    std::optional<QetuProgram> program;
    try {
      program = compile_qetu(cfg.params(), d, qetu_options(cfg));
      warn_if_infeasible(*program, d, log);
    } catch (const ConvergenceError& e) {
      log << "degree " << d << ": " << e.what() << "\n";
      ++report.convergence_failures;
    }
    std::optional<std::array<MeasurementPlan, 3>> plans;
    if (program) {
      plans = build_measurement_circuits(program->circuit);
      dump_circuit(cfg, "qetu_d" + std::to_string(d) + ".txt", program->circuit);
    }

    for (double p2q : noise) {
      std::optional<std::array<Counts, 3>> counts;
      if (plans) {
        const NoiseModel model = NoiseModel::from_p2q(p2q);
        counts = cfg.backend == NoiseBackend::kDensity
                     ? sample_measurements(measurement_distributions(*plans, model), cfg.shots,
                                           cfg.seed)
                     : sample_measurements(*plans, cfg.shots, model, cfg.seed,
                                           NoiseBackend::kTrajectory);
      }
      for (int m : mitigations) {
        double energy = kNaN;
        if (counts) {
          PostSelectionFilter filter;
          if (m == 1) {
            filter.n_up = sector.first;
            if (cfg.postselect_sector) filter.n_down = sector.second;
          }
          try {
            std::array<Counts, 3> kept;
            for (std::size_t k = 0; k < kept.size(); ++k)
              kept[k] = post_select((*counts)[k], filter, kMeasurementVariants[k]).counts;
            energy = estimate_energy(kept, cfg.params());
          } catch (const EmptySampleError& e) {
            log << "degree " << d << ", p2q " << format_real(p2q) << ": " << e.what() << "\n";
          }
        }
        if (std::isnan(energy)) ++report.flagged_rows;
        out << d << "," << format_real(p2q) << "," << cfg.shots << "," << m << ","
            << format_real(energy) << "," << format_real(std::abs(energy - l0)) << "\n";
      }
    }
  }
  return report;
}

void write_gnuplot_script(std::ostream& out, const std::string& command) {
  out << "set datafile separator ','\n"
      << "set terminal pngcairo size 800,600\n"
      << "set output '" << command << ".png'\n"
      << "set key autotitle columnhead\n";
  if (command == "spectrum") {
    out << "set style data histograms\n"
        << "plot 'spectrum.csv' using 2:xtic(1)\n";
  } else if (command == "trotter") {
    out << "set logscale x\nset logscale y\nset y2tics\nset ytics nomirror\n"
        << "set xlabel 'Trotter steps'\n"
        << "plot 'trotter.csv' using 1:2 with linespoints, "
        << "'' using 1:3 axes x1y2 with linespoints\n";
  } else if (command == "overlap") {
    out << "set xlabel 'degree'\nset yrange [0:1]\n"
        << "plot 'overlap.csv' using 1:2 with linespoints, '' using 1:3 with linespoints\n";
  } else if (command == "energy") {
    out << "set logscale y\nset xlabel 'degree'\nset ylabel '|E - E0|'\n"
        << "plot 'energy.csv' using 1:($4 == 0 ? $6 : 1/0) with points title 'herald only', "
        << "'' using 1:($4 == 1 ? $6 : 1/0) with points title 'post-selected'\n";
  } else {
    throw std::invalid_argument("unknown command " + command);
  }
}

}  // namespace fhqetu
