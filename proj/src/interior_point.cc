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

#include "modalgame/interior_point.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Sparse>

#include "modalgame/error.h"

namespace modalgame {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

constexpr double kFractionToBoundary = 0.99;
constexpr double kRegularization = 1e-11;
constexpr int kRefinementSteps = 2;
// Below this complementarity the Newton system carries no usable information.
constexpr double kMuFloor = 1e-15;
constexpr double kCenteringFloor = 0.1;
constexpr int kPolishSteps = 4;

// Program with rows normalized to unit max coefficient.
struct ScaledProgram {
  const ConvexProgram* source = nullptr;
  SparseMatrix ineq_matrix;
  std::vector<Eigen::Triplet<double>> linear_entries;
  VectorXd ineq_rhs;
  VectorXd row_scale;  // linear rows, then quadratic rows
  int num_linear = 0;
  int num_quadratic = 0;

  int num_ineq() const { return num_linear + num_quadratic; }
};

ScaledProgram Scale(const ConvexProgram& program) {
  ScaledProgram sp;
  sp.source = &program;
  sp.num_linear = static_cast<int>(program.ineq_matrix.rows());
  sp.num_quadratic = static_cast<int>(program.quadratic.size());
  sp.ineq_rhs = program.ineq_rhs;
  sp.row_scale = VectorXd::Ones(sp.num_ineq());
  for (int i = 0; i < sp.num_linear; ++i) {
    const double norm = program.ineq_matrix.row(i).cwiseAbs().maxCoeff();
    if (norm > 0.0) sp.row_scale(i) = 1.0 / norm;
    sp.ineq_rhs(i) *= sp.row_scale(i);
    for (int j = 0; j < program.num_vars; ++j) {
      const double a = program.ineq_matrix(i, j);
      if (a != 0.0) sp.linear_entries.emplace_back(i, j, a * sp.row_scale(i));
    }
  }
  sp.ineq_matrix.resize(sp.num_linear, program.num_vars);
  sp.ineq_matrix.setFromTriplets(sp.linear_entries.begin(), sp.linear_entries.end());
  for (int k = 0; k < sp.num_quadratic; ++k) {
    double norm = program.quadratic[k].coef;
    for (const auto& [var, a] : program.quadratic[k].linear) norm = std::max(norm, std::abs(a));
    if (norm > 0.0) sp.row_scale(sp.num_linear + k) = 1.0 / norm;
  }
  return sp;
}

// Constraint values c(z) (feasible when <= 0), Jacobian, and the diagonal of
// sum_k lambda_k * Hessian(c_k).
void Evaluate(const ScaledProgram& sp, const VectorXd& z, const VectorXd& lambda,
              VectorXd* values, SparseMatrix* jacobian, VectorXd* hessian_diag) {
  const ConvexProgram& program = *sp.source;
  const int n = program.num_vars;
  values->resize(sp.num_ineq());
  hessian_diag->setZero(n);
  if (sp.num_linear > 0) values->head(sp.num_linear) = sp.ineq_matrix * z - sp.ineq_rhs;
  std::vector<Eigen::Triplet<double>> entries = sp.linear_entries;
  for (int k = 0; k < sp.num_quadratic; ++k) {
    const QuadraticInequality& q = program.quadratic[k];
    const int row = sp.num_linear + k;
    const double scale = sp.row_scale(row);
    double value = q.coef * z(q.var) * z(q.var) - q.rhs;
    entries.emplace_back(row, q.var, 2.0 * q.coef * z(q.var) * scale);
    for (const auto& [var, a] : q.linear) {
      value += a * z(var);
      entries.emplace_back(row, var, a * scale);
    }
    (*values)(row) = value * scale;
    (*hessian_diag)(q.var) += 2.0 * q.coef * scale * lambda(row);
  }
  jacobian->resize(sp.num_ineq(), n);
  jacobian->setFromTriplets(entries.begin(), entries.end());
}

double MaxStep(const VectorXd& v, const VectorXd& dv) {
  double step = 1.0;
  for (int i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) step = std::min(step, -v(i) / dv(i));
  }
  return step;
}

double InfNorm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct Scales {
  double cost = 1.0;
  double eq = 1.0;
  double ineq = 1.0;
};

// KKT residual of a point with slacks taken as max(-c, 0).
double PointResidual(const ScaledProgram& sp, const Scales& scales, const VectorXd& z,
                     const VectorXd& lambda, const VectorXd& nu) {
  const ConvexProgram& program = *sp.source;
  VectorXd c, hdiag;
  SparseMatrix J;
  Evaluate(sp, z, lambda, &c, &J, &hdiag);
  VectorXd dual = program.cost + J.transpose() * lambda;
  if (nu.size() > 0) dual += program.eq_matrix.transpose() * nu;
  double eq = 0.0, comp = 0.0;
  if (nu.size() > 0) eq = InfNorm(program.eq_matrix * z - program.eq_rhs);
  for (int k = 0; k < c.size(); ++k) comp = std::max(comp, lambda(k) * std::max(-c(k), 0.0));
  const double primal = c.size() > 0 ? std::max(0.0, c.maxCoeff()) : 0.0;
  if (!z.allFinite() || !lambda.allFinite() || (lambda.size() > 0 && lambda.minCoeff() < 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max({InfNorm(dual) / scales.cost, primal / scales.ineq, eq / scales.eq, comp});
}

// Newton on the KKT equations with the active set guessed from the interior
// point, inactive multipliers fixed at zero. Leaves the inputs alone unless
// the residual improves.
double Polish(const ScaledProgram& sp, const Scales& scales, const VectorXd& s, VectorXd* z,
              VectorXd* lambda, VectorXd* nu, double residual) {
  const ConvexProgram& program = *sp.source;
  const int n = program.num_vars;
  const int p = static_cast<int>(program.eq_matrix.rows());
  std::vector<int> active;
  for (int k = 0; k < lambda->size(); ++k) {
    if ((*lambda)(k) > s(k)) active.push_back(k);
  }
  const int a = static_cast<int>(active.size());
  VectorXd zz = *z, lam = VectorXd::Zero(lambda->size()), nn = *nu;
  for (int k : active) lam(k) = (*lambda)(k);
  double best = residual;
  VectorXd c, hdiag;
  SparseMatrix J;
  for (int step = 0; step < kPolishSteps; ++step) {
    Evaluate(sp, zz, lam, &c, &J, &hdiag);
    const MatrixXd Jd(J);
    MatrixXd kkt = MatrixXd::Zero(n + a + p, n + a + p);
    VectorXd rhs(n + a + p);
    kkt.topLeftCorner(n, n).diagonal() = hdiag;
    VectorXd grad = program.cost + J.transpose() * lam;
    if (p > 0) grad += program.eq_matrix.transpose() * nn;
    rhs.head(n) = -grad;
    for (int i = 0; i < a; ++i) {
      kkt.block(n + i, 0, 1, n) = Jd.row(active[i]);
      kkt.block(0, n + i, n, 1) = Jd.row(active[i]).transpose();
      rhs(n + i) = -c(active[i]);
    }
    if (p > 0) {
      kkt.block(n + a, 0, p, n) = program.eq_matrix;
      kkt.block(0, n + a, n, p) = program.eq_matrix.transpose();
      rhs.tail(p) = -(program.eq_matrix * zz - program.eq_rhs);
    }
    const VectorXd delta = kkt.completeOrthogonalDecomposition().solve(rhs);
    zz += delta.head(n);
    for (int i = 0; i < a; ++i) lam(active[i]) = std::max(0.0, lam(active[i]) + delta(n + i));
    if (p > 0) nn += delta.tail(p);
    const double r = PointResidual(sp, scales, zz, lam, nn);
    if (!(r < best)) break;
    best = r;
    *z = zz;
    *lambda = lam;
    *nu = nn;
  }
  return best;
}

}  // namespace

InteriorPointResult SolveInteriorPoint(const ConvexProgram& program,
                                       const InteriorPointOptions& options) {
  const int n = program.num_vars;
  if (program.cost.size() != n || program.ineq_matrix.cols() != (program.ineq_matrix.rows() ? n : 0) ||
      program.eq_matrix.rows() != program.eq_rhs.size() ||
      program.ineq_matrix.rows() != program.ineq_rhs.size() ||
      (program.eq_matrix.rows() > 0 && program.eq_matrix.cols() != n)) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent program dimensions");
  }
  const ScaledProgram sp = Scale(program);
  const int m = sp.num_ineq();
  const int p = static_cast<int>(program.eq_matrix.rows());
  const MatrixXd& A = program.eq_matrix;
  const VectorXd& b = program.eq_rhs;

  InteriorPointResult result;
  VectorXd z = options.initial.value_or(VectorXd::Zero(n));
  if (z.size() != n) throw Error(ErrorCode::kInvalidArgument, "initial point size mismatch");
  VectorXd lambda = VectorXd::Ones(m);
  VectorXd nu = VectorXd::Zero(p);
  VectorXd c, hdiag;
  SparseMatrix J;
  Evaluate(sp, z, lambda, &c, &J, &hdiag);
  VectorXd s = (-c).cwiseMax(1.0);

  const double cost_scale = 1.0 + InfNorm(program.cost);
  const double eq_scale = 1.0 + InfNorm(b);
  const double ineq_scale = 1.0 + InfNorm(sp.ineq_rhs);
  double best_residual = std::numeric_limits<double>::infinity();
  VectorXd best_z = z, best_s = s, best_lambda = lambda, best_nu = nu;

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    Evaluate(sp, z, lambda, &c, &J, &hdiag);
    const VectorXd r_dual = program.cost + J.transpose() * lambda +
                            (p > 0 ? VectorXd(A.transpose() * nu) : VectorXd::Zero(n));
    const VectorXd r_primal = c + s;
    const VectorXd r_eq = p > 0 ? VectorXd(A * z - b) : VectorXd();
    const double mu = m > 0 ? s.dot(lambda) / m : 0.0;
    result.kkt_residual = std::max({InfNorm(r_dual) / cost_scale,
                                    InfNorm(r_primal) / ineq_scale,
                                    InfNorm(r_eq) / eq_scale, mu});
    result.iterations = iter;
    if (result.kkt_residual < best_residual) {
      best_residual = result.kkt_residual;
      best_z = z;
      best_s = s;
      best_lambda = lambda;
      best_nu = nu;
    }
    if (result.kkt_residual <= options.tolerance) {
      result.converged = true;
      break;
    }
    if (iter == options.max_iterations || (m > 0 && mu < kMuFloor)) break;

    const VectorXd d = lambda.cwiseQuotient(s);
    const SparseMatrix weighted = d.asDiagonal() * J;
    MatrixXd kkt = MatrixXd::Zero(n + p, n + p);
    kkt.topLeftCorner(n, n) = MatrixXd(SparseMatrix(J.transpose()) * weighted);
    kkt.topLeftCorner(n, n).diagonal() += hdiag;
    if (p > 0) {
      kkt.topRightCorner(n, p) = A.transpose();
      kkt.bottomLeftCorner(p, n) = A;
    }
    MatrixXd regularized = kkt;
    regularized.topLeftCorner(n, n).diagonal().array() += kRegularization;
    regularized.bottomRightCorner(p, p).diagonal().array() -= kRegularization;
    const Eigen::PartialPivLU<MatrixXd> factor(regularized);

    struct Direction {
      VectorXd dz, ds, dlambda, dnu;
    };
    auto solve = [&](const VectorXd& rc) {
      Direction dir;
      VectorXd rhs(n + p);
      rhs.head(n) =
          -r_dual - J.transpose() * ((-rc + lambda.cwiseProduct(r_primal)).cwiseQuotient(s));
      if (p > 0) rhs.tail(p) = -r_eq;
      VectorXd sol = factor.solve(rhs);
      for (int k = 0; k < kRefinementSteps; ++k) sol += factor.solve(rhs - kkt * sol);
      dir.dz = sol.head(n);
      dir.dnu = sol.tail(p);
      dir.ds = -r_primal - J * dir.dz;
      dir.dlambda = (-rc - lambda.cwiseProduct(dir.ds)).cwiseQuotient(s);
      return dir;
    };

    const VectorXd sl = s.cwiseProduct(lambda);
    const Direction affine = solve(sl);
    const double step_aff = std::min(MaxStep(s, affine.ds), MaxStep(lambda, affine.dlambda));
    const double mu_aff =
        (s + step_aff * affine.ds).dot(lambda + step_aff * affine.dlambda) / std::max(m, 1);
    const double sigma = m > 0 && mu > 0 ? std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0) : 0.0;
    // Keep complementarity from racing ahead of the infeasibilities.
    const double infeasibility =
        std::max(InfNorm(r_dual) / cost_scale, InfNorm(r_primal) / ineq_scale);
    const double target = std::min(mu, std::max(sigma * mu, kCenteringFloor * infeasibility));
    const VectorXd rc = sl + affine.ds.cwiseProduct(affine.dlambda) -
                        VectorXd::Constant(m, target);
    const Direction dir = solve(rc);
    const double step = std::min(
        1.0, kFractionToBoundary * std::min(MaxStep(s, dir.ds), MaxStep(lambda, dir.dlambda)));

    z += step * dir.dz;
    s += step * dir.ds;
    lambda += step * dir.dlambda;
    if (p > 0) nu += step * dir.dnu;
    if (!z.allFinite() || !s.allFinite() || !lambda.allFinite()) break;
  }

  // The last iterate can be worse than an earlier one once the Newton system
  // degrades near the boundary.
  if (m > 0) {
    const Scales scales{cost_scale, eq_scale, ineq_scale};
    const double start = PointResidual(sp, scales, best_z, best_lambda, best_nu);
    best_residual = std::min(
        best_residual, Polish(sp, scales, best_s, &best_z, &best_lambda, &best_nu, start));
    if (best_residual <= options.tolerance) result.converged = true;
  }
  result.kkt_residual = best_residual;
  result.z = best_z;
  result.ineq_multipliers = best_lambda.cwiseProduct(sp.row_scale);
  result.eq_multipliers = best_nu;
  return result;
}

}  // namespace modalgame
