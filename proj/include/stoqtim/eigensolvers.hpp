#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "stoqtim/operator.hpp"

namespace stoqtim {

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

struct SolverOptions {
  Eigen::Index dense_threshold = 2048;
  double residual_tol = 1e-9;  // relative to max(1, ||H||)
  int max_restarts = 2000;
  int krylov_dim = 0;  // 0 selects max(2N + 20, 40)
  std::uint64_t seed = 0;
};

// N lowest eigenpairs. Dense up to the threshold, thick-restart Lanczos with
// full reorthogonalization above it.
EigenPairs lowest_eigenpairs(const SparseMatrix& op, int count, const SolverOptions& opt = {});

// lambda_{N+1} - lambda_N (levels counted from 1).
double spectral_gap(const SparseMatrix& op, int above_level, const SolverOptions& opt = {});

// Spectral norm of a symmetric sparse operator.
double operator_norm(const SparseMatrix& op, const SolverOptions& opt = {});

// Spectral norm of a dense symmetric matrix.
template <class Derived>
double symmetric_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.eval(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Largest singular value of a dense matrix.
template <class Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m.eval());
  return svd.singularValues()(0);
}

}  // namespace stoqtim
