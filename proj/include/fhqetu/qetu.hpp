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
#include <optional>
#include <vector>

#include "fhqetu/circuit.hpp"
#include "fhqetu/errors.hpp"
#include "fhqetu/fermi_hubbard.hpp"
#include "fhqetu/linalg.hpp"
#include "fhqetu/swap_network.hpp"

namespace fhqetu {

inline constexpr double kDefaultPlateau = 0.999;
inline constexpr double kDefaultBandError = 1e-2;
/// Band error above which a filter is rejected as too low in degree.
inline constexpr double kMaxBandError = 0.5;

/// Step function in the cosine domain x = cos(s * lambda): close to c on
/// [sigma_plus, sigma_max] (ground state), close to 0 on
/// [sigma_min, sigma_minus] (excited states).
struct StepFunctionSpec {
  double mu = 0.0;
  double delta = 0.0;
  double eta = kDefaultEta;
  double c = kDefaultPlateau;
  double eps = kDefaultBandError;
  double s = 0.5;
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

/// Throws std::domain_error unless eta <= lambda0 < lambda1 <= pi - eta and
/// 0 < c < 1.
StepFunctionSpec build_step_spec(double lambda0, double lambda1,
                                 double eta = kDefaultEta,
                                 double c = kDefaultPlateau,
                                 double eps = kDefaultBandError, double s = 0.5);

/// Even polynomial in the Chebyshev basis; odd coefficients are zero.
struct TargetPolynomial {
  std::vector<double> coefficients;
  /// max |F| on the low band, max |F - c| on the high band.
  double low_band_error = 0.0;
  double high_band_error = 0.0;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double band_error() const;
  bool feasible() const { return band_error() <= kMaxBandError; }
  double operator()(double x) const;
};

/// Clenshaw evaluation of sum_k c_k T_k(x).
double chebyshev_eval(const std::vector<double>& coefficients, double x);

/// Least squares fit of the two-plateau target on Chebyshev nodes of both
/// bands; |F| <= 1 is enforced by adding violating grid points with clamped
/// targets until none remain. Throws std::invalid_argument for odd or
/// non-positive d, ConvergenceError when the bound cannot be enforced or
/// (unless allow_infeasible) the band error exceeds kMaxBandError.
TargetPolynomial fit_target_polynomial(const StepFunctionSpec& spec, int d,
                                       bool allow_infeasible = false);

/// phi_0 .. phi_d, symmetric for solved sequences.
using PhaseSequence = std::vector<double>;

/// Re <0| e^{i phi_0 X} W e^{i phi_1 X} W^dag ... e^{i phi_d X} |0> with
/// W = exp(i arccos(x) Z): the ancilla amplitude of the QETU circuit on an
/// eigenvector whose controlled evolution phase is arccos(x).
double qsp_eval(const PhaseSequence& phi, double x);

struct PhaseSolution {
  PhaseSequence phases;
  /// Sum of squared deviations from the target over the fit nodes.
  double residual = 0.0;
  int restarts = 0;
};

inline constexpr double kPhaseTolerance = 1e-10;
inline constexpr double kPhaseFailure = 1e-6;

/// Levenberg-Marquardt on the ceil((d+1)/2) free angles of a symmetric
/// sequence, continued in the target scale from
/// (pi/4, pi/2, ..., pi/2, 0, pi/2, ..., pi/2, pi/4): there the encoded
/// polynomial vanishes and the Jacobian has full rank, unlike at
/// (pi/4, 0, ..., 0, pi/4). Restarts from seeded perturbations of that
/// point; throws ConvergenceError when no attempt reaches kPhaseFailure.
PhaseSolution solve_phases(const TargetPolynomial& target,
                           std::uint64_t seed = 0);

/// e^{i phi_0 X}, V, e^{i phi_1 X}, V^dag, ..., V^dag, e^{i phi_d X} on the
/// ancilla. V^dag is inverse(v), so v must consist of invertible gates.
/// Throws std::invalid_argument for an empty or odd-degree sequence.
Circuit build_qetu_circuit(const PhaseSequence& phi, const Circuit& v,
                           int ancilla = GridLayout::kAncilla);

/// Q F(cos(s Lambda)) Q^dag for Hermitian h = Q Lambda Q^dag.
Matrix matrix_function_oracle(const Matrix& h, const TargetPolynomial& target,
                              double s);

/// Measures s in ancilla amplitude = F(cos(s * lambda_sh)) from a degree-2
/// QETU circuit around the exact controlled evolution of the plan, probed
/// on the eigenvector with shifted eigenvalue closest to pi/2.
double calibrate_cosine_scaling(const TrotterPlan& plan);

struct QetuOptions {
  double eta = kDefaultEta;
  double c = kDefaultPlateau;
  double eps = kDefaultBandError;
  int n_steps = 1;
  StepMerging merging = StepMerging::kNone;
  EvolutionBlocks blocks = EvolutionBlocks::kTrotter;
  std::uint64_t seed = 0;
  bool allow_infeasible = false;
  /// Skips calibration when set.
  std::optional<double> cosine_scaling;
};

/// Everything that defines a ground-state preparation run.
struct QetuProgram {
  ModelParams params;
  ShiftCoefficients shift;
  StepFunctionSpec spec;
  TargetPolynomial target;
  PhaseSolution phases;
  TrotterPlan plan;
  /// Initial-state preparation followed by the QETU sequence; native gates
  /// except for dense blocks in the exact evolution modes.
  Circuit circuit{9};
};

QetuProgram compile_qetu(const ModelParams& params, int degree,
                         const QetuOptions& options = {});

struct PreparedState {
  Vector system;
  double success_probability = 0.0;
};

/// Ancilla-0 branch of the program's output, renormalized. Throws
/// ConvergenceError when its probability is below 1e-12.
PreparedState run_qetu(const QetuProgram& program);

PreparedState prepare_ground_state(const ModelParams& params, int degree,
                                   const QetuOptions& options = {});
PreparedState prepare_ground_state(const ModelParams& params, double eta,
                                   double c, int degree, int n_steps,
                                   std::uint64_t seed);

/// `index,value` rows with 17 significant digits.
void write_indexed_csv(std::ostream& out, const std::vector<double>& values);
/// Throws std::invalid_argument on a malformed header, row or index gap.
std::vector<double> read_indexed_csv(std::istream& in);

}  // namespace fhqetu
