#include "stoqtim/operator.hpp"

#include <bit>
#include <string>
#include <variant>

#include "stoqtim/error.hpp"

namespace stoqtim {

namespace {

using Triplet = Eigen::Triplet<double>;

void check_nodes(const BasisSpace& b, int n, const char* what) {
  if (b.nodes != n)
    fail(ErrorKind::dimension_mismatch, std::string(what) + ": basis has " + std::to_string(b.nodes) +
                                            " nodes, model has " + std::to_string(n));
}

SparseMatrix assemble(std::size_t dim, std::vector<Triplet>& trips) {
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

double hcb_diag(const HcbHamiltonian& h, std::uint64_t s) {
  double d = h.energy_shift;
  for (std::uint64_t x = s; x; x &= x - 1) d += h.chemical[std::countr_zero(x)];
  for (auto& [e, w] : h.pair_potential)
    if (occupied(s, e.first) && occupied(s, e.second)) d += w;
  for (auto& p : h.projectors) {
    bool empty = true;
    for (int u : p.nodes) empty = empty && !occupied(s, u);
    if (empty) d -= p.weight;
  }
  return d;
}

double hcd_diag(const HcdHamiltonian& h, std::uint64_t s) {
  double d = h.energy_shift;
  for (std::uint64_t x = s; x; x &= x - 1) d += h.chemical[std::countr_zero(x)];
  for (auto& [e, w] : h.pair_potential)
    if (occupied(s, e.first) && occupied(s, e.second)) d += w;
  return d;
}

double tim_diag(const TimHamiltonian& h, std::uint64_t s) {
  double d = h.energy_shift;
  const int n = h.node_count();
  if (h.form == TimForm::pauli) {
    auto z = [&](int u) { return occupied(s, u) ? -1.0 : 1.0; };
    for (int u = 0; u < n; ++u) d += h.longitudinal[u] * z(u);
    for (auto& [e, w] : h.ising) d += w * z(e.first) * z(e.second);
  } else {
    for (int u = 0; u < n; ++u)
      if (occupied(s, u)) d += h.longitudinal[u];
    for (auto& [e, w] : h.ising)
      if (occupied(s, e.first) && occupied(s, e.second)) d += w;
  }
  return d;
}

double stoqlh_diag(const StoqLhHamiltonian& h, std::uint64_t s) {
  double d = h.energy_shift;
  for (auto& t : h.two_local) {
    int a = 2 * static_cast<int>(occupied(s, t.first)) + static_cast<int>(occupied(s, t.second));
    d += t.matrix(a, a);
  }
  for (auto& k : h.k_local_diagonal) {
    bool match = true;
    for (std::size_t i = 0; i < k.qubits.size(); ++i)
      match = match && (static_cast<int>(occupied(s, k.qubits[i])) == k.bits[i]);
    if (match) d -= k.weight;
  }
  return d;
}

}  // namespace

SparseMatrix build_matrix(const HcbHamiltonian& h, const BasisSpace& basis) {
  check_nodes(basis, h.node_count(), "hcb build_matrix");
  if (basis.mode != BasisMode::restricted && basis.mode != BasisMode::all_subsets &&
      basis.particles >= 0 && basis.particles != h.particles)
    fail(ErrorKind::dimension_mismatch, "hcb build_matrix: particle count differs from basis");
  std::vector<Triplet> trips;
  const std::size_t dim = basis.size();
  trips.reserve(dim * (1 + 2 * h.hopping.size() / 4 + 1));
  auto hop = [&](std::size_t col, std::uint64_t s, int u, int v, double t) {
    // move a particle u -> v
    if (t == 0.0 || !occupied(s, u) || occupied(s, v)) return;
    std::size_t row = basis.index_of((s & ~bit(u)) | bit(v));
    if (row != BasisSpace::npos) trips.emplace_back(row, col, -t);
  };
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t s = basis[col];
    trips.emplace_back(col, col, hcb_diag(h, s));
    for (auto& [e, t] : h.hopping) {
      hop(col, s, e.first, e.second, t);
      hop(col, s, e.second, e.first, t);
    }
    for (auto& [k, t] : h.controlled) {
      if (!occupied(s, k.control)) continue;
      hop(col, s, k.edge.first, k.edge.second, t);
      hop(col, s, k.edge.second, k.edge.first, t);
    }
  }
  return assemble(dim, trips);
}

SparseMatrix build_matrix(const HcdHamiltonian& h, const BasisSpace& basis) {
  check_nodes(basis, h.node_count(), "hcd build_matrix");
  const int n = h.node_count();
  std::vector<Triplet> trips;
  const std::size_t dim = basis.size();
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t s = basis[col];
    trips.emplace_back(col, col, hcd_diag(h, s));
    if (h.hopping == 0.0) continue;
    // W_uv over all pairs, projected onto the dimer sector
    for (std::uint64_t x = s; x; x &= x - 1) {
      int u = std::countr_zero(x);
      for (int v = 0; v < n; ++v) {
        if (occupied(s, v)) continue;
        std::size_t row = basis.index_of((s & ~bit(u)) | bit(v));
        if (row != BasisSpace::npos) trips.emplace_back(row, col, -h.hopping);
      }
    }
  }
  return assemble(dim, trips);
}

SparseMatrix build_matrix(const TimHamiltonian& h, const BasisSpace& basis) {
  check_nodes(basis, h.node_count(), "tim build_matrix");
  const int n = h.node_count();
  std::vector<Triplet> trips;
  const std::size_t dim = basis.size();
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t s = basis[col];
    trips.emplace_back(col, col, tim_diag(h, s));
    for (int u = 0; u < n; ++u) {
      if (h.transverse[u] == 0.0) continue;
      std::size_t row = basis.index_of(s ^ bit(u));
      if (row != BasisSpace::npos) trips.emplace_back(row, col, h.transverse[u]);
    }
  }
  return assemble(dim, trips);
}

SparseMatrix build_matrix(const StoqLhHamiltonian& h, const BasisSpace& basis) {
  check_nodes(basis, h.qubits, "stoqlh build_matrix");
  std::vector<Triplet> trips;
  const std::size_t dim = basis.size();
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t s = basis[col];
    trips.emplace_back(col, col, stoqlh_diag(h, s));
    for (auto& t : h.two_local) {
      const int a = 2 * static_cast<int>(occupied(s, t.first)) + static_cast<int>(occupied(s, t.second));
      const std::uint64_t rest = s & ~(bit(t.first) | bit(t.second));
      for (int b = 0; b < 4; ++b) {
        if (b == a || t.matrix(b, a) == 0.0) continue;
        std::uint64_t s2 = rest | ((b >> 1) ? bit(t.first) : 0) | ((b & 1) ? bit(t.second) : 0);
        std::size_t row = basis.index_of(s2);
        if (row != BasisSpace::npos) trips.emplace_back(row, col, t.matrix(b, a));
      }
    }
  }
  return assemble(dim, trips);
}

SparseMatrix build_matrix(const ModelHamiltonian& model, const BasisSpace& basis) {
  return std::visit([&](const auto& h) { return build_matrix(h, basis); }, model);
}

double diagonal_element(const ModelHamiltonian& model, std::uint64_t s) {
  struct V {
    std::uint64_t s;
    double operator()(const TimHamiltonian& h) const { return tim_diag(h, s); }
    double operator()(const HcbHamiltonian& h) const { return hcb_diag(h, s); }
    double operator()(const HcdHamiltonian& h) const { return hcd_diag(h, s); }
    double operator()(const StoqLhHamiltonian& h) const { return stoqlh_diag(h, s); }
  };
  return std::visit(V{s}, model);
}

bool check_stoquastic(const SparseMatrix& op, double tol) {
  for (Eigen::Index k = 0; k < op.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(op, k); it; ++it)
      if (it.row() != it.col() && it.value() > tol) return false;
  return true;
}

bool is_exactly_symmetric(const SparseMatrix& op) {
  if (op.rows() != op.cols()) return false;
  SparseMatrix t = op.transpose();
  if (t.nonZeros() != op.nonZeros()) return false;
  SparseMatrix d = op - t;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it)
      if (it.value() != 0.0) return false;
  return true;
}

}  // namespace stoqtim
