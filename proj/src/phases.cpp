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
#include <limits>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "fhqetu/qetu.hpp"
#include "fhqetu/rng.hpp"

namespace fhqetu {

namespace {

using Su2 = Eigen::Matrix2cd;

Su2 x_rotation(double phi) {
  Su2 r;
  r << std::cos(phi), cplx(0.0, std::sin(phi)), cplx(0.0, std::sin(phi)), std::cos(phi);
  return r;
}

// W for odd positions, W^dag for even positions.
Su2 signal(double theta, int position) {
  const double a = position % 2 == 1 ? theta : -theta;
  return Eigen::Vector2cd(std::polar(1.0, a), std::polar(1.0, -a)).asDiagonal();
}

double checked_angle(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw std::domain_error("qsp_eval needs x in [-1, 1]");
  return std::acos(x);
}

// Residuals at the fit nodes and their derivatives in the free angles of a
// symmetric sequence.
struct PhaseFunctor : Eigen::DenseFunctor<double> {
  int d;
  std::vector<double> nodes;
  std::vector<double> targets;

  PhaseFunctor(int degree, std::vector<double> x, std::vector<double> f)
      : Eigen::DenseFunctor<double>(degree / 2 + 1, static_cast<int>(x.size())),
        d(degree),
        nodes(std::move(x)),
        targets(std::move(f)) {}

  PhaseSequence expand(const InputType& free) const {
    PhaseSequence phi(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d / 2; ++k)
      phi[static_cast<std::size_t>(k)] = phi[static_cast<std::size_t>(d - k)] = free(k);
    return phi;
  }

  int operator()(const InputType& free, ValueType& r) const {
    const PhaseSequence phi = expand(free);
    for (std::size_t j = 0; j < nodes.size(); ++j)
      r(static_cast<Eigen::Index>(j)) = qsp_eval(phi, nodes[j]) - targets[j];
    return 0;
  }

  int df(const InputType& free, JacobianType& jac) const {
    const PhaseSequence phi = expand(free);
    const auto n = static_cast<std::size_t>(d) + 1;
    std::vector<Su2> left(n);
    std::vector<Su2> right(n);
    jac.setZero();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double theta = checked_angle(nodes[j]);
      // left[m]: everything before R(phi_m); right[m]: everything after it
      left[0] = Su2::Identity();
      for (std::size_t m = 1; m < n; ++m)
        left[m] = left[m - 1] * x_rotation(phi[m - 1]) * signal(theta, static_cast<int>(m));
      right[n - 1] = Su2::Identity();
      for (std::size_t m = n - 1; m-- > 0;)
        right[m] = signal(theta, static_cast<int>(m) + 1) * x_rotation(phi[m + 1]) * right[m + 1];
      for (std::size_t m = 0; m < n; ++m) {
        const Su2 dr = x_rotation(phi[m] + std::numbers::pi / 2);
        const double g = (left[m] * dr * right[m])(0, 0).real();
        const auto k = static_cast<Eigen::Index>(std::min(m, n - 1 - m));
        jac(static_cast<Eigen::Index>(j), k) += g;
      }
    }
    return 0;
  }
};

constexpr int kMaxAttempts = 8;
constexpr int kMaxEvaluations = 2000;
constexpr int kContinuationStages = 20;
constexpr double kRestartSpread = 0.1;

}  // namespace

double qsp_eval(const PhaseSequence& phi, double x) {
  if (phi.empty()) throw std::invalid_argument("empty phase sequence");
  const double theta = checked_angle(x);
  Su2 u = x_rotation(phi[0]);
  for (std::size_t j = 1; j < phi.size(); ++j)
    u = u * signal(theta, static_cast<int>(j)) * x_rotation(phi[j]);
  return u(0, 0).real();
}

PhaseSolution solve_phases(const TargetPolynomial& target, std::uint64_t seed) {
  const int d = target.degree();
  if (d < 0 || d % 2 != 0)
    throw std::invalid_argument("phase solving needs an even-degree target");
  if (d == 0) {
    const double f = target.coefficients[0];
    if (std::abs(f) > 1.0) throw std::invalid_argument("constant target exceeds 1");
    return {{std::acos(f)}, 0.0, 0};
  }

  std::vector<double> nodes;
  std::vector<double> values;
  for (int j = 0; j <= d; ++j) {
    nodes.push_back(std::cos((2 * j + 1) * std::numbers::pi / (2 * (d + 1))));
    values.push_back(target(nodes.back()));
  }
  const auto residual_of = [&](const PhaseFunctor& f, const Eigen::VectorXd& free) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(nodes.size()));
    f(free, r);
    return r.squaredNorm();
  };
  const auto minimize = [&](PhaseFunctor f, Eigen::VectorXd& free) {
    Eigen::LevenbergMarquardt<PhaseFunctor> lm(f);
    lm.setMaxfev(kMaxEvaluations);
    lm.setFtol(1e-16);
    lm.setXtol(1e-16);
    lm.setGtol(0.0);
    lm.minimize(free);
  };

  PhaseFunctor functor(d, nodes, values);
  PhaseSolution best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Eigen::VectorXd free = Eigen::VectorXd::Constant(d / 2 + 1, std::numbers::pi / 2);
    free(0) = std::numbers::pi / 4;
    free(d / 2) = 0.0;
    if (attempt > 0) {
      SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(attempt));
      for (Eigen::Index k = 0; k < free.size(); ++k)
        free(k) += kRestartSpread * (2.0 * rng.uniform() - 1.0);
    }
    // continuation in the target scale, warm-starting each stage
    for (int stage = 1; stage <= kContinuationStages; ++stage) {
      const double scale = static_cast<double>(stage) / kContinuationStages;
      std::vector<double> scaled = values;
      for (double& v : scaled) v *= scale;
      minimize(PhaseFunctor(d, nodes, scaled), free);
    }
    const double residual = residual_of(functor, free);
    if (residual < best.residual) best = {functor.expand(free), residual, attempt};
    if (best.residual <= kPhaseTolerance) break;
  }
  if (!(best.residual <= kPhaseFailure))
    throw ConvergenceError("phase solver stalled at residual " + std::to_string(best.residual) +
                           " for degree " + std::to_string(d));
  return best;
}

}  // namespace fhqetu
