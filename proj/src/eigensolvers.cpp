#include "stoqtim/eigensolvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "stoqtim/error.hpp"

namespace stoqtim {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void orthogonalize(VectorXd& w, const MatrixXd& basis, Index cols) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass) w -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * w);
}

VectorXd random_unit(Index n, std::mt19937_64& rng, const MatrixXd& locked, const MatrixXd& q, Index qcols) {
  std::normal_distribution<double> nd;
  for (int attempt = 0; attempt < 8; ++attempt) {
    VectorXd v(n);
    for (Index i = 0; i < n; ++i) v(i) = nd(rng);
    orthogonalize(v, locked, locked.cols());
    orthogonalize(v, q, qcols);
    double nv = v.norm();
    if (nv > 1e-8) return v / nv;
  }
  fail(ErrorKind::non_convergence, "lanczos: cannot extend the Krylov basis");
}

// Thick-restart Lanczos for the nev lowest eigenpairs of A restricted to the
// orthogonal complement of `locked`.
EigenPairs thick_restart(const SparseMatrix& A, int nev, const MatrixXd& locked, const SolverOptions& o,
                         std::mt19937_64& rng) {
  const Index n = A.rows();
  const Index avail = n - locked.cols();
  const Index p = std::min<Index>(avail, o.krylov_dim > 0 ? o.krylov_dim : std::max(2 * nev + 20, 40));
  if (nev > p) fail(ErrorKind::precondition, "lanczos: more eigenpairs requested than available");
  const Index keep = std::min<Index>(p - 1, nev + std::max(nev / 2, 5));

  MatrixXd Q(n, p);
  MatrixXd T = MatrixXd::Zero(p, p);
  Q.col(0) = random_unit(n, rng, locked, Q, 0);
  Index j0 = 0;
  double anorm = 0.0;
  VectorXd resid(n);
  double rbeta = 0.0;

  for (int restart = 0; restart <= o.max_restarts; ++restart) {
    for (Index j = j0; j < p; ++j) {
      VectorXd w = A * Q.col(j);
      orthogonalize(w, locked, locked.cols());
      VectorXd h = Q.leftCols(j + 1).transpose() * w;
      w -= Q.leftCols(j + 1) * h;
      VectorXd h2 = Q.leftCols(j + 1).transpose() * w;
      w -= Q.leftCols(j + 1) * h2;
      orthogonalize(w, locked, locked.cols());
      h += h2;
      T.col(j).head(j + 1) = h;
      T.row(j).head(j + 1) = h.transpose();
      anorm = std::max(anorm, std::abs(h(j)));
      double beta = w.norm();
      VectorXd next;
      if (beta <= 1e-13 * std::max(1.0, anorm)) {
        beta = 0.0;
        if (j + 1 < p) next = random_unit(n, rng, locked, Q, j + 1);
        else next = VectorXd::Zero(n);
      } else {
        next = w / beta;
      }
      if (j + 1 < p) {
        Q.col(j + 1) = next;
      } else {
        resid = next;
        rbeta = beta;
      }
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(T);
    const VectorXd& theta = es.eigenvalues();
    const MatrixXd& Y = es.eigenvectors();
    anorm = std::max(anorm, theta.cwiseAbs().maxCoeff());
    const double tol = o.residual_tol * std::max(1.0, anorm);
    bool converged = true;
    for (int i = 0; i < nev; ++i) converged = converged && rbeta * std::abs(Y(p - 1, i)) <= 0.1 * tol;
    if (converged) {
      EigenPairs out;
      out.values = theta.head(nev);
      out.vectors = Q * Y.leftCols(nev);
      bool ok = true;
      for (int i = 0; i < nev; ++i) {
        VectorXd x = out.vectors.col(i);
        x.normalize();
        out.vectors.col(i) = x;
        VectorXd r = A * x - out.values(i) * x;
        ok = ok && r.norm() <= tol;
      }
      if (ok) return out;
    }
    // keep the `keep` lowest Ritz vectors plus the residual direction
    MatrixXd Qk = Q * Y.leftCols(keep);
    Q.leftCols(keep) = Qk;
    if (rbeta == 0.0) {
      Q.col(keep) = random_unit(n, rng, locked, Q, keep);
    } else {
      VectorXd r = resid;
      orthogonalize(r, Q, keep);
      Q.col(keep) = r.normalized();
    }
    T.setZero();
    T.topLeftCorner(keep, keep).diagonal() = theta.head(keep);
    j0 = keep;
  }
  fail(ErrorKind::non_convergence,
       "lanczos: no convergence after " + std::to_string(o.max_restarts) + " restarts");
}

EigenPairs lanczos(const SparseMatrix& A, int nev, const SolverOptions& o) {
  std::mt19937_64 rng(o.seed);
  EigenPairs found = thick_restart(A, nev, MatrixXd(A.rows(), 0), o, rng);
  // Single-vector Krylov spaces can miss copies of degenerate levels; search the
  // orthogonal complement of what we have until nothing lower turns up.
  for (int guard = 0; guard < 4 * nev + 8; ++guard) {
    if (found.vectors.cols() >= A.rows()) break;
    EigenPairs extra = thick_restart(A, 1, found.vectors, o, rng);
    const double tol = o.residual_tol * std::max(1.0, found.values.cwiseAbs().maxCoeff());
    if (extra.values(0) >= found.values(nev - 1) - tol) break;
    VectorXd vals(nev + 1);
    MatrixXd vecs(A.rows(), nev + 1);
    vals << found.values, extra.values(0);
    vecs << found.vectors, extra.vectors.col(0);
    std::vector<int> order(nev + 1);
    for (int i = 0; i <= nev; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals(a) < vals(b); });
    for (int i = 0; i < nev; ++i) {
      found.values(i) = vals(order[i]);
      found.vectors.col(i) = vecs.col(order[i]);
    }
  }
  return found;
}

}  // namespace

EigenPairs lowest_eigenpairs(const SparseMatrix& op, int count, const SolverOptions& opt) {
  const Index n = op.rows();
  if (op.cols() != n) fail(ErrorKind::dimension_mismatch, "lowest_eigenpairs: matrix is not square");
  if (count < 1 || count > n) fail(ErrorKind::precondition, "lowest_eigenpairs: bad count");
  if (n <= opt.dense_threshold) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es{MatrixXd(op)};
    if (es.info() != Eigen::Success) fail(ErrorKind::non_convergence, "dense eigensolver failed");
    return {es.eigenvalues().head(count), es.eigenvectors().leftCols(count)};
  }
  return lanczos(op, count, opt);
}

double spectral_gap(const SparseMatrix& op, int above_level, const SolverOptions& opt) {
  if (above_level < 1 || above_level >= op.rows()) fail(ErrorKind::precondition, "spectral_gap: bad level");
  auto ep = lowest_eigenpairs(op, above_level + 1, opt);
  return ep.values(above_level) - ep.values(above_level - 1);
}

double operator_norm(const SparseMatrix& op, const SolverOptions& opt) {
  if (op.rows() == 0) return 0.0;
  if (op.rows() <= opt.dense_threshold) return symmetric_norm(MatrixXd(op));
  double lo = lowest_eigenpairs(op, 1, opt).values(0);
  SparseMatrix neg = -op;
  double hi = -lowest_eigenpairs(neg, 1, opt).values(0);
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace stoqtim
