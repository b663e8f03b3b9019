// Copyright 2026 The ModalGame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODALGAME_INTERIOR_POINT_H_
#define MODALGAME_INTERIOR_POINT_H_

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace modalgame {

// coef * z[var]^2 + sum(linear) <= rhs, with coef >= 0 (convex).
struct QuadraticInequality {
  int var = 0;
  double coef = 0.0;
  std::vector<std::pair<int, double>> linear;
  double rhs = 0.0;
};

// minimize    cost' z
// subject to  eq_matrix z = eq_rhs              (full row rank)
//             ineq_matrix z <= ineq_rhs
//             quadratic[k](z) <= quadratic[k].rhs
// Every variable must be bounded by some inequality so the Newton matrix stays
// positive definite.
struct ConvexProgram {
  int num_vars = 0;
  Eigen::VectorXd cost;
  Eigen::MatrixXd eq_matrix;
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ineq_matrix;
  Eigen::VectorXd ineq_rhs;
  std::vector<QuadraticInequality> quadratic;
};

struct InteriorPointOptions {
  double tolerance = 1e-9;
  int max_iterations = 200;
  // Primal starting point; the solver is infeasible-start, so any finite
  // vector is accepted.
  std::optional<Eigen::VectorXd> initial;
};

struct InteriorPointResult {
  Eigen::VectorXd z;
  Eigen::VectorXd ineq_multipliers;  // linear rows, then quadratic rows
  Eigen::VectorXd eq_multipliers;
  bool converged = false;
  int iterations = 0;
  double kkt_residual = 0.0;
};

// Mehrotra predictor-corrector primal-dual method with slack variables on all
// inequalities. Does not throw on non-convergence; check `converged`.
InteriorPointResult SolveInteriorPoint(const ConvexProgram& program,
                                       const InteriorPointOptions& options = {});

}  // namespace modalgame

#endif  // MODALGAME_INTERIOR_POINT_H_
