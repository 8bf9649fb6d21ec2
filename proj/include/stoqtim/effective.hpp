#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stoqtim/eigensolvers.hpp"
#include "stoqtim/operator.hpp"

namespace stoqtim {

// Coordinate split H_sim = H_- (+) H_+ by basis index.
struct BlockSplit {
  std::vector<Eigen::Index> minus;
  std::vector<Eigen::Index> plus;

  static BlockSplit from_minus(std::vector<Eigen::Index> minus, Eigen::Index dim);
  // Indices with |H0_ii| <= tol form the minus block.
  static BlockSplit zero_diagonal(const SparseMatrix& h0, double tol = 1e-12);
  Eigen::Index dim() const { return static_cast<Eigen::Index>(minus.size() + plus.size()); }
};

struct EffectiveHamiltonian {
  int order = 0;  // 0 = exact
  Eigen::MatrixXd matrix;
  double delta = 0.0;
  std::vector<Eigen::MatrixXd> terms;  // H_eff,1 .. H_eff,k (order-k only)
};

// Minimal rotation of the orthonormal columns of E onto span(V):
// E~ = V * polar(V^T E). Also reports sin of the largest principal angle.
struct DirectRotation {
  Eigen::MatrixXd rotated;  // E~
  Eigen::MatrixXd unitary;  // U with E~ = V U
  double sin_max = 0.0;
};

template <class DE, class DV>
DirectRotation direct_rotation(const Eigen::MatrixBase<DE>& E, const Eigen::MatrixBase<DV>& V) {
  Eigen::MatrixXd m = V.transpose() * E;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  DirectRotation r;
  r.unitary = svd.matrixU() * svd.matrixV().transpose();
  r.rotated = V * r.unitary;
  const double smin = m.cols() ? svd.singularValues().minCoeff() : 1.0;
  r.sin_max = std::sqrt(std::max(0.0, 1.0 - smin * smin));
  return r;
}

inline constexpr double kIllConditioned = 1.0 - 1e-8;
inline constexpr double kGapClosure = 1e-10;

EffectiveHamiltonian effective_hamiltonian_exact(const SparseMatrix& h_sim, const BlockSplit& split,
                                                 const SolverOptions& opt = {});

// Literal second/third-order Schrieffer-Wolff series for H_sim = delta*H0 + V.
EffectiveHamiltonian effective_hamiltonian_order_k(const SparseMatrix& h0, const SparseMatrix& v,
                                                   const BlockSplit& split, double delta, int k);

// Dense block helpers with H0^{-1} taken on the plus block only.
Eigen::MatrixXd block(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows,
                      const std::vector<Eigen::Index>& cols);

class PlusBlockInverse {
 public:
  PlusBlockInverse(const SparseMatrix& h0, const BlockSplit& split);
  // A_{-+} H0^{-1} B_{+-}
  Eigen::MatrixXd second(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;
  // A_{-+} H0^{-1} B_{++} H0^{-1} C_{+-}
  Eigen::MatrixXd third(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const { return ldlt_.solve(rhs); }
  const BlockSplit& split() const { return split_; }

 private:
  BlockSplit split_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

}  // namespace stoqtim
