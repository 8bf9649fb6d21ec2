#include "stoqtim/effective.hpp"

#include <cmath>
#include <string>

#include "stoqtim/error.hpp"

namespace stoqtim {

using Eigen::Index;
using Eigen::MatrixXd;

BlockSplit BlockSplit::from_minus(std::vector<Index> minus, Index dim) {
  BlockSplit s;
  std::vector<bool> in(dim, false);
  for (Index i : minus) {
    if (i < 0 || i >= dim) fail(ErrorKind::precondition, "block split: index out of range");
    if (in[i]) fail(ErrorKind::precondition, "block split: repeated index");
    in[i] = true;
  }
  s.minus = std::move(minus);
  for (Index i = 0; i < dim; ++i)
    if (!in[i]) s.plus.push_back(i);
  if (s.minus.empty()) fail(ErrorKind::precondition, "block split: empty low-energy block");
  return s;
}

BlockSplit BlockSplit::zero_diagonal(const SparseMatrix& h0, double tol) {
  std::vector<Index> minus;
  Eigen::VectorXd d = h0.diagonal();
  for (Index i = 0; i < d.size(); ++i)
    if (std::abs(d(i)) <= tol) minus.push_back(i);
  return from_minus(std::move(minus), h0.rows());
}

MatrixXd block(const MatrixXd& m, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  return m(rows, cols);
}

EffectiveHamiltonian effective_hamiltonian_exact(const SparseMatrix& h_sim, const BlockSplit& split,
                                                 const SolverOptions& opt) {
  const Index dim = h_sim.rows();
  if (split.dim() != dim) fail(ErrorKind::dimension_mismatch, "effective_hamiltonian_exact: split size");
  const int nm = static_cast<int>(split.minus.size());
  const bool full = nm == dim;
  auto ep = lowest_eigenpairs(h_sim, full ? nm : nm + 1, opt);
  if (!full && ep.values(nm) - ep.values(nm - 1) <= kGapClosure)
    fail(ErrorKind::gap_closure, "effective_hamiltonian_exact: levels " + std::to_string(nm) + " and " +
                                     std::to_string(nm + 1) + " coincide");
  MatrixXd V = ep.vectors.leftCols(nm);
  MatrixXd E = MatrixXd::Zero(dim, nm);
  for (int j = 0; j < nm; ++j) E(split.minus[j], j) = 1.0;
  auto rot = direct_rotation(E, V);
  if (rot.sin_max >= kIllConditioned)
    fail(ErrorKind::ill_conditioned, "effective_hamiltonian_exact: low-energy subspace nearly orthogonal to H_-");
  EffectiveHamiltonian out;
  out.order = 0;
  MatrixXd heff = rot.unitary.transpose() * ep.values.head(nm).asDiagonal() * rot.unitary;
  out.matrix = 0.5 * (heff + heff.transpose());
  return out;
}

PlusBlockInverse::PlusBlockInverse(const SparseMatrix& h0, const BlockSplit& split) : split_(split) {
  MatrixXd d(h0);
  MatrixXd pp = block(d, split.plus, split.plus);
  if (pp.size() > 0) {
    ldlt_.compute(pp);
    if (ldlt_.info() != Eigen::Success || !ldlt_.isPositive())
      fail(ErrorKind::precondition, "plus block of H0 is not positive definite");
  }
}

MatrixXd PlusBlockInverse::second(const MatrixXd& a, const MatrixXd& b) const {
  if (split_.plus.empty()) return MatrixXd::Zero(split_.minus.size(), split_.minus.size());
  MatrixXd x = ldlt_.solve(block(b, split_.plus, split_.minus));
  return block(a, split_.minus, split_.plus) * x;
}

MatrixXd PlusBlockInverse::third(const MatrixXd& a, const MatrixXd& b, const MatrixXd& c) const {
  if (split_.plus.empty()) return MatrixXd::Zero(split_.minus.size(), split_.minus.size());
  MatrixXd x = ldlt_.solve(block(c, split_.plus, split_.minus));
  MatrixXd y = ldlt_.solve(block(b, split_.plus, split_.plus) * x);
  return block(a, split_.minus, split_.plus) * y;
}

EffectiveHamiltonian effective_hamiltonian_order_k(const SparseMatrix& h0s, const SparseMatrix& vs,
                                                   const BlockSplit& split, double delta, int k) {
  if (k < 1 || k > 3) fail(ErrorKind::precondition, "order must be 1, 2 or 3");
  if (!(delta > 0)) fail(ErrorKind::precondition, "delta must be positive");
  const Index dim = h0s.rows();
  if (vs.rows() != dim || split.dim() != dim)
    fail(ErrorKind::dimension_mismatch, "effective_hamiltonian_order_k: sizes differ");
  MatrixXd h0(h0s), v(vs);
  const auto& mi = split.minus;
  const auto& pl = split.plus;
  const double scale = std::max(1.0, h0.cwiseAbs().maxCoeff());
  if (block(h0, mi, mi).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(ErrorKind::precondition, "(H0)_-- is not zero");
  if (!pl.empty() && block(h0, mi, pl).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(ErrorKind::precondition, "H0 is not block diagonal");
  if (!pl.empty()) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(block(h0, pl, pl), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < 1.0 - 1e-9)
      fail(ErrorKind::precondition, "(H0)_++ has an eigenvalue below 1");
  }
  if (symmetric_norm(v) >= delta / 2) fail(ErrorKind::precondition, "||V|| >= delta/2");

  PlusBlockInverse inv(h0s, split);
  EffectiveHamiltonian out;
  out.order = k;
  out.delta = delta;
  MatrixXd vmm = block(v, mi, mi);
  out.terms.push_back(vmm);
  if (k >= 2) out.terms.push_back(-inv.second(v, v) / delta);
  if (k >= 3) {
    MatrixXd t3 = inv.third(v, v, v);
    MatrixXd x = pl.empty() ? MatrixXd::Zero(0, mi.size()) : inv.solve(block(v, pl, mi));
    MatrixXd w = x.transpose() * x * vmm;  // V_-+ H0^-2 V_+- V_--
    out.terms.push_back((t3 - 0.5 * (w + w.transpose())) / (delta * delta));
  }
  out.matrix = MatrixXd::Zero(mi.size(), mi.size());
  for (auto& t : out.terms) out.matrix += t;
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  return out;
}

}  // namespace stoqtim
