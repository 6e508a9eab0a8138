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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fhqetu/qetu.hpp"

namespace fhqetu {

StepFunctionSpec build_step_spec(double lambda0, double lambda1, double eta,
                                 double c, double eps, double s) {
  if (!(c > 0.0 && c < 1.0)) throw std::domain_error("plateau c must lie in (0, 1)");
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  if (!(lambda0 < lambda1)) throw std::domain_error("need lambda0 < lambda1");
  constexpr double slack = 1e-12;
  if (lambda0 < eta - slack || lambda1 > std::numbers::pi - eta + slack)
    throw std::domain_error("spectrum outside [eta, pi - eta]");
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("cosine scaling s must lie in (0, 1]");

  StepFunctionSpec spec;
  spec.mu = 0.5 * (lambda0 + lambda1);
  spec.delta = lambda1 - lambda0;
  spec.eta = eta;
  spec.c = c;
  spec.eps = eps;
  spec.s = s;
  spec.sigma_plus = std::cos(s * (spec.mu - spec.delta / 2));
  spec.sigma_minus = std::cos(s * (spec.mu + spec.delta / 2));
  spec.sigma_min = std::cos(s * (std::numbers::pi - eta));
  spec.sigma_max = std::cos(s * eta);
  return spec;
}

double chebyshev_eval(const std::vector<double>& coefficients, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + coefficients[k];
    b2 = b1;
    b1 = b0;
  }
  return coefficients.empty() ? 0.0 : x * b1 - b2 + coefficients[0];
}

double TargetPolynomial::band_error() const {
  return std::max(low_band_error, high_band_error);
}

double TargetPolynomial::operator()(double x) const {
  return chebyshev_eval(coefficients, x);
}

namespace {

std::vector<double> chebyshev_nodes(double a, double b, int m) {
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k)
    x[static_cast<std::size_t>(k)] =
        0.5 * (a + b) + 0.5 * (b - a) * std::cos((2 * k + 1) * std::numbers::pi / (2 * m));
  return x;
}

// Column k holds T_{2k}(x).
Eigen::MatrixXd even_basis(const std::vector<double>& x, int d) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), d / 2 + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double theta = std::acos(std::clamp(x[i], -1.0, 1.0));
    for (int k = 0; k <= d / 2; ++k)
      a(static_cast<Eigen::Index>(i), k) = std::cos(2.0 * k * theta);
  }
  return a;
}

struct FitPoint {
  double x;
  double target;
  double weight;
};

constexpr double kPenaltyWeight = 10.0;
constexpr int kPenaltyRounds = 200;

}  // namespace

TargetPolynomial fit_target_polynomial(const StepFunctionSpec& spec, int d,
                                       bool allow_infeasible) {
  if (d < 2 || d % 2 != 0)
    throw std::invalid_argument("filter degree must be even and >= 2, got " +
                                std::to_string(d));
  const int m = std::max(4 * d, 16);
  std::vector<FitPoint> points;
  for (double x : chebyshev_nodes(spec.sigma_min, spec.sigma_minus, m))
    points.push_back({x, 0.0, 1.0});
  for (double x : chebyshev_nodes(spec.sigma_plus, spec.sigma_max, m))
    points.push_back({x, spec.c, 1.0});

  std::vector<double> grid;
  const int n_grid = 20 * d;
  for (int j = 0; j <= n_grid; ++j) {
    const double x = std::cos(std::numbers::pi * j / n_grid);
    if (x >= 0.0) grid.push_back(x);
  }
  const Eigen::MatrixXd grid_basis = even_basis(grid, d);

  Eigen::VectorXd coef;
  bool bounded = false;
  for (int round = 0; round < kPenaltyRounds && !bounded; ++round) {
    std::vector<double> xs;
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(points.size()));
    Eigen::VectorXd w(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      xs.push_back(points[i].x);
      rhs(static_cast<Eigen::Index>(i)) = points[i].target * points[i].weight;
      w(static_cast<Eigen::Index>(i)) = points[i].weight;
    }
    const Eigen::MatrixXd a = w.asDiagonal() * even_basis(xs, d);
    coef = a.colPivHouseholderQr().solve(rhs);

    const Eigen::VectorXd f = grid_basis * coef;
    bounded = true;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      if (std::abs(f(i)) > 1.0) {
        points.push_back({grid[static_cast<std::size_t>(i)],
                          std::copysign(spec.c, f(i)), kPenaltyWeight});
        bounded = false;
      }
    }
  }

  TargetPolynomial poly;
  poly.coefficients.assign(static_cast<std::size_t>(d) + 1, 0.0);
  for (int k = 0; k <= d / 2; ++k)
    poly.coefficients[static_cast<std::size_t>(2 * k)] = coef(k);

  const int check = 10 * d;
  for (int j = 0; j <= check; ++j) {
    const double x = -1.0 + 2.0 * j / check;
    if (std::abs(poly(x)) > 1.0) bounded = false;
  }
  if (!bounded)
    throw ConvergenceError("could not enforce |F| <= 1 for degree " + std::to_string(d));

  for (double x : chebyshev_nodes(spec.sigma_min, spec.sigma_minus, 10 * d))
    poly.low_band_error = std::max(poly.low_band_error, std::abs(poly(x)));
  for (double x : chebyshev_nodes(spec.sigma_plus, spec.sigma_max, 10 * d))
    poly.high_band_error = std::max(poly.high_band_error, std::abs(poly(x) - spec.c));
  if (!allow_infeasible && !poly.feasible())
    throw ConvergenceError("degree " + std::to_string(d) + " filter infeasible: band error " +
                           std::to_string(poly.band_error()));
  return poly;
}

}  // namespace fhqetu
