#pragma once

#include <Eigen/SparseCore>

#include "stoqtim/basis.hpp"
#include "stoqtim/models.hpp"

namespace stoqtim {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Matrix of the model in the given basis. Hopping moves leaving the basis are
// dropped, so passing a restricted basis yields the projected operator.
SparseMatrix build_matrix(const ModelHamiltonian& model, const BasisSpace& basis);
SparseMatrix build_matrix(const TimHamiltonian& h, const BasisSpace& basis);
SparseMatrix build_matrix(const HcbHamiltonian& h, const BasisSpace& basis);
SparseMatrix build_matrix(const HcdHamiltonian& h, const BasisSpace& basis);
SparseMatrix build_matrix(const StoqLhHamiltonian& h, const BasisSpace& basis);

// Diagonal matrix element <s|H|s> for a single configuration.
double diagonal_element(const ModelHamiltonian& model, std::uint64_t s);

bool check_stoquastic(const SparseMatrix& op, double tol = 1e-12);
// Bit-exact symmetry.
bool is_exactly_symmetric(const SparseMatrix& op);

}  // namespace stoqtim
