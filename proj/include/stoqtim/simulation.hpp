#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stoqtim/effective.hpp"
#include "stoqtim/encoding.hpp"
#include "stoqtim/models.hpp"

namespace stoqtim {

// Errors of a simulation (H_sim, E) of H_target, with E~ the direct rotation
// of range(E) onto the N lowest eigenvectors of H_sim.
struct SimulationError {
  double eta = 0.0;      // ||E - E~||
  double epsilon = 0.0;  // ||H_target - E~^T H_sim E~||
  std::vector<double> per_level_deviation;
  Eigen::VectorXd target_levels;
  Eigen::VectorXd simulator_levels;  // N lowest
  double simulator_gap = 0.0;        // lambda_{N+1} - lambda_N of H_sim
  double target_gap = 0.0;           // lambda_2 - lambda_1 of H_target
  double ground_deviation = 0.0;     // min over sign of ||E g - g_sim||
  double sin_max = 0.0;

  double max_level_deviation() const;
};

SimulationError measure_simulation_error(const SparseMatrix& target, const SparseMatrix& simulator,
                                         const Eigen::MatrixXd& encoding, const SolverOptions& opt = {});

SimulationError measure_simulation_error(const ModelHamiltonian& target, const ModelHamiltonian& simulator,
                                         const Encoding& enc, const SolverOptions& opt = {});

}  // namespace stoqtim
