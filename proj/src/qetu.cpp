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

#include "fhqetu/qetu.hpp"

#include <cmath>
#include <istream>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fhqetu/csv.hpp"
#include "fhqetu/oracle.hpp"
#include "fhqetu/simulator.hpp"

namespace fhqetu {

Circuit build_qetu_circuit(const PhaseSequence& phi, const Circuit& v, int ancilla) {
  if (phi.empty()) throw std::invalid_argument("empty phase sequence");
  if ((phi.size() - 1) % 2 != 0)
    throw std::invalid_argument("QETU needs an even number of V blocks, got " +
                                std::to_string(phi.size() - 1));
  const Circuit v_dag = inverse(v);
  Circuit c(v.num_qubits());
  c.add(gates::x_rotation(ancilla, phi[0]));
  for (std::size_t j = 1; j < phi.size(); ++j) {
    c.append(j % 2 == 1 ? v : v_dag);
    c.add(gates::x_rotation(ancilla, phi[j]));
  }
  return c;
}

Matrix matrix_function_oracle(const Matrix& h, const TargetPolynomial& target, double s) {
  return hermitian_function(h, [&](double lambda) { return target(std::cos(s * lambda)); });
}

namespace {

Matrix shifted_network_hamiltonian(const TrotterPlan& plan) {
  const Matrix h = to_matrix(build_network_hamiltonian(plan.params));
  return plan.shift->c1 * h +
         plan.shift->c2 * Matrix::Identity(h.rows(), h.cols());
}

const PhaseSequence kProbePhases = {0.3, 0.7, 0.3};

}  // namespace

double calibrate_cosine_scaling(const TrotterPlan& plan) {
  if (!plan.shift) throw std::invalid_argument("calibration needs a shifted plan");
  const Spectrum spectrum = exact_spectrum(shifted_network_hamiltonian(plan));
  Eigen::Index probe = 0;
  for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k)
    if (std::abs(spectrum.eigenvalues(k) - std::numbers::pi / 2) <
        std::abs(spectrum.eigenvalues(probe) - std::numbers::pi / 2))
      probe = k;
  const double lambda = spectrum.eigenvalues(probe);
  const Vector v = spectrum.eigenvectors.col(probe);

  const Circuit qetu =
      lower(build_qetu_circuit(kProbePhases, build_controlled_v(plan, EvolutionBlocks::kExactEvolution)));
  const StateVector out = apply_circuit(StateVector::from(embed_system_state(v, 0)), qetu);
  // lowering drops global phases; the probe polynomial is positive on [0, 1]
  const double amplitude = std::abs(v.dot(system_component(out.amplitudes, 0)));

  // degree 2 and even: p(x) = p(0) + (p(1) - p(0)) x^2
  const double p0 = qsp_eval(kProbePhases, 0.0);
  const double p1 = qsp_eval(kProbePhases, 1.0);
  const double x2 = (amplitude - p0) / (p1 - p0);
  if (!(x2 >= 0.0 && x2 <= 1.0 + 1e-12))
    throw ConvergenceError("cosine calibration probe left [0, 1]");
  return std::acos(std::min(1.0, std::sqrt(x2))) / lambda;
}

QetuProgram compile_qetu(const ModelParams& params, int degree, const QetuOptions& options) {
  QetuProgram program;
  program.params = params;
  const Spectrum spectrum = exact_spectrum(to_matrix(build_network_hamiltonian(params)));
  const Eigen::Index last = spectrum.eigenvalues.size() - 1;
  program.shift =
      shift_coefficients(spectrum.eigenvalues(0), spectrum.eigenvalues(last), options.eta);

  program.plan.n_steps = options.n_steps;
  program.plan.params = params;
  program.plan.shift = program.shift;
  program.plan.merging = options.merging;

  const double s = options.cosine_scaling ? *options.cosine_scaling
                                          : calibrate_cosine_scaling(program.plan);
  program.spec = build_step_spec(program.shift.apply(spectrum.ground_energy()),
                                 program.shift.apply(spectrum.first_excited_energy()),
                                 options.eta, options.c, options.eps, s);
  program.target = fit_target_polynomial(program.spec, degree, options.allow_infeasible);
  program.phases = solve_phases(program.target, options.seed);

  program.circuit = lower(prepare_initial_state_circuit());
  program.circuit.append(
      lower(build_qetu_circuit(program.phases.phases,
                               build_controlled_v(program.plan, options.blocks))));
  return program;
}

PreparedState run_qetu(const QetuProgram& program) {
  const StateVector out = apply_circuit(StateVector::zero(9), program.circuit);
  PreparedState prepared;
  prepared.system = system_component(out.amplitudes, 0);
  prepared.success_probability = prepared.system.squaredNorm();
  if (prepared.success_probability < 1e-12)
    throw ConvergenceError("ancilla success probability vanished");
  prepared.system /= std::sqrt(prepared.success_probability);
  return prepared;
}

PreparedState prepare_ground_state(const ModelParams& params, int degree,
                                   const QetuOptions& options) {
  return run_qetu(compile_qetu(params, degree, options));
}

PreparedState prepare_ground_state(const ModelParams& params, double eta, double c,
                                   int degree, int n_steps, std::uint64_t seed) {
  QetuOptions options;
  options.eta = eta;
  options.c = c;
  options.n_steps = n_steps;
  options.seed = seed;
  return prepare_ground_state(params, degree, options);
}

void write_indexed_csv(std::ostream& out, const std::vector<double>& values) {
  out << "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) out << i << ',' << format_real(values[i]) << '\n';
}

std::vector<double> read_indexed_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "index,value")
    throw std::invalid_argument("expected header index,value");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    std::istringstream index_in(fields.empty() ? "" : fields[0]);
    std::istringstream value_in(fields.size() == 2 ? fields[1] : "");
    value_in.imbue(std::locale::classic());
    std::size_t index = 0;
    double value = 0.0;
    if (fields.size() != 2 || !(index_in >> index) || !index_in.eof() || !(value_in >> value) ||
        !value_in.eof())
      throw std::invalid_argument("malformed row: " + line);
    if (index != values.size())
      throw std::invalid_argument("row index " + std::to_string(index) + " out of sequence");
    values.push_back(value);
  }
  return values;
}

}  // namespace fhqetu
