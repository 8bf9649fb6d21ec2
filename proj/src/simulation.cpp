#include "stoqtim/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "stoqtim/basis.hpp"
#include "stoqtim/error.hpp"

namespace stoqtim {

using Eigen::Index;
using Eigen::MatrixXd;

double SimulationError::max_level_deviation() const {
  double m = 0.0;
  for (double d : per_level_deviation) m = std::max(m, d);
  return m;
}

SimulationError measure_simulation_error(const SparseMatrix& target, const SparseMatrix& simulator,
                                         const MatrixXd& encoding, const SolverOptions& opt) {
  const Index n = target.rows();
  if (encoding.rows() != simulator.rows() || encoding.cols() != n)
    fail(ErrorKind::dimension_mismatch, "measure_simulation_error: encoding shape does not match");
  if (n > simulator.rows())
    fail(ErrorKind::dimension_mismatch, "measure_simulation_error: target larger than simulator");

  const bool full = n == simulator.rows();
  auto sim = lowest_eigenpairs(simulator, static_cast<int>(full ? n : n + 1), opt);
  SimulationError out;
  out.simulator_levels = sim.values.head(n);
  if (!full) {
    out.simulator_gap = sim.values(n) - sim.values(n - 1);
    if (out.simulator_gap <= kGapClosure)
      fail(ErrorKind::gap_closure, "measure_simulation_error: simulator levels " + std::to_string(n) +
                                       " and " + std::to_string(n + 1) + " coincide");
  }
  const MatrixXd v = sim.vectors.leftCols(n);
  auto rot = direct_rotation(encoding, v);
  out.sin_max = rot.sin_max;
  if (rot.sin_max >= kIllConditioned)
    fail(ErrorKind::ill_conditioned,
         "measure_simulation_error: encoded subspace is orthogonal to the simulator's low-energy subspace");

  const MatrixXd heff = rot.unitary.transpose() * out.simulator_levels.asDiagonal() * rot.unitary;
  const MatrixXd t = MatrixXd(target);
  out.epsilon = symmetric_norm(MatrixXd(0.5 * ((t - heff) + (t - heff).transpose())));
  out.eta = spectral_norm(encoding - rot.rotated);

  Eigen::SelfAdjointEigenSolver<MatrixXd> tes(t);
  out.target_levels = tes.eigenvalues();
  out.per_level_deviation.resize(n);
  for (Index i = 0; i < n; ++i)
    out.per_level_deviation[i] = std::abs(out.target_levels(i) - out.simulator_levels(i));
  out.target_gap = n > 1 ? out.target_levels(1) - out.target_levels(0) : INFINITY;

  const Eigen::VectorXd g = encoding * tes.eigenvectors().col(0);
  const Eigen::VectorXd gs = v.col(0);
  out.ground_deviation = std::min((g - gs).norm(), (g + gs).norm());
  return out;
}

SimulationError measure_simulation_error(const ModelHamiltonian& target, const ModelHamiltonian& simulator,
                                         const Encoding& enc, const SolverOptions& opt) {
  const BasisSpace tb = enumerate_basis(target);
  const BasisSpace sb = enumerate_basis(simulator);
  return measure_simulation_error(build_matrix(target, tb), build_matrix(simulator, sb),
                                  encoding_matrix(enc, tb, sb), opt);
}

}  // namespace stoqtim
