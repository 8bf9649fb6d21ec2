#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stoqtim/basis.hpp"

namespace stoqtim {

// One logical qubit carried by a periodic chain:
// |0> -> (psi0 + psi1)/sqrt2, |1> -> (psi0 - psi1)/sqrt2, with |1> negated
// when the qubit was conjugated by Z to make its field stoquastic.
struct ChainBlock {
  int length = 2;
  double coupling = 2.0;
  bool flipped = false;
  std::vector<int> qubits;  // simulator qubits, chain order
};

// Isometry from a target basis into a simulator basis. Either a basis map
// (configuration -> configuration) or a tensor product of chain blocks.
struct Encoding {
  enum class Kind { basis_map, chain_tensor };

  Kind kind = Kind::basis_map;
  // Sorted by target configuration. Materialized only when the target sector
  // is small enough to enumerate; `rule` is always set for basis maps.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> map;
  std::function<std::uint64_t(std::uint64_t)> rule;
  std::vector<ChainBlock> chain_blocks;
  int simulator_nodes = 0;

  bool is_basis_map() const { return kind == Kind::basis_map; }
  // Simulator configuration for a target configuration; throws if absent.
  std::uint64_t apply(std::uint64_t target) const;
};

Encoding identity_encoding(int nodes);
// Basis map given by a configuration rule; materialized over `target` when given.
Encoding basis_map_encoding(std::function<std::uint64_t(std::uint64_t)> rule, int simulator_nodes,
                            const BasisSpace* target = nullptr);

// second after first. A chain-tensor stage may only come last.
Encoding compose(const Encoding& first, const Encoding& second);

// Dense isometry E with columns indexed by the target basis.
Eigen::MatrixXd encoding_matrix(const Encoding& enc, const BasisSpace& target,
                                const BasisSpace& simulator);

// Injective and every image inside the simulator basis.
bool is_valid_basis_map(const Encoding& enc, const BasisSpace& target, const BasisSpace& simulator);
// Same check against the simulator's admissibility predicate, without
// enumerating the simulator sector.
bool is_valid_basis_map(const Encoding& enc, const BasisSpace& target, const ModelHamiltonian& simulator);

}  // namespace stoqtim
