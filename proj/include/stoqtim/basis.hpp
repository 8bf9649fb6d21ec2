#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "stoqtim/graph.hpp"
#include "stoqtim/models.hpp"

namespace stoqtim {

enum class BasisMode { all_subsets, m_particle, sparse, dimer, qubit_register, restricted };

// Sorted list of node-subset bitmasks (node 0 = least significant bit).
struct BasisSpace {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BasisMode mode = BasisMode::all_subsets;
  int nodes = 0;
  int particles = -1;  // particle count (m-particle / sparse), dimer count (dimer), -1 otherwise
  int range = 0;       // r for sparse mode
  std::vector<std::uint64_t> configs;

  std::size_t size() const { return configs.size(); }
  std::uint64_t operator[](std::size_t i) const { return configs[i]; }
  std::size_t index_of(std::uint64_t mask) const;
  bool contains(std::uint64_t mask) const { return index_of(mask) != npos; }
};

// Default 2e6; overridden by the STOQTIM_DIMENSION_CAP environment variable.
std::size_t default_dimension_cap();

BasisSpace enumerate_basis(const ModelHamiltonian& model, std::size_t cap = default_dimension_cap());

BasisSpace enumerate_register(int n, std::size_t cap = default_dimension_cap());
BasisSpace enumerate_particles(int n, int m, std::size_t cap = default_dimension_cap());
BasisSpace enumerate_sparse(const InteractionGraph& g, int m, int r,
                            std::size_t cap = default_dimension_cap());
BasisSpace enumerate_dimers(const InteractionGraph& g, int m, std::size_t cap = default_dimension_cap());

bool is_m_dimer(std::uint64_t s, const InteractionGraph& g);
bool is_m_dimer(std::uint64_t s, const InteractionGraph& g, const DistanceTable& d);
bool is_r_sparse(std::uint64_t s, const DistanceTable& d, int r);

// Whether s belongs to the model's sector (no enumeration).
bool is_admissible(const ModelHamiltonian& model, std::uint64_t s);

// Sub-basis of configurations satisfying pred; mode becomes restricted.
BasisSpace restrict_basis(const BasisSpace& b, const std::function<bool(std::uint64_t)>& pred);

inline bool occupied(std::uint64_t s, int u) { return (s >> u) & 1u; }
inline std::uint64_t bit(int u) { return std::uint64_t{1} << u; }

}  // namespace stoqtim
