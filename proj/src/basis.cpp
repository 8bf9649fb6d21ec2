#include "stoqtim/basis.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>
#include <variant>

#include "stoqtim/error.hpp"

namespace stoqtim {

std::size_t BasisSpace::index_of(std::uint64_t mask) const {
  if (mode == BasisMode::qubit_register) return mask < configs.size() ? mask : npos;
  auto it = std::lower_bound(configs.begin(), configs.end(), mask);
  if (it == configs.end() || *it != mask) return npos;
  return static_cast<std::size_t>(it - configs.begin());
}

std::size_t default_dimension_cap() {
  if (const char* env = std::getenv("STOQTIM_DIMENSION_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

namespace {

[[noreturn]] void too_big(std::size_t cap) {
  fail(ErrorKind::size_limit, "basis dimension exceeds cap " + std::to_string(cap));
}

void push(std::vector<std::uint64_t>& out, std::uint64_t s, std::size_t cap) {
  if (out.size() >= cap) too_big(cap);
  out.push_back(s);
}

void finish(BasisSpace& b, const char* what) {
  std::sort(b.configs.begin(), b.configs.end());
  if (b.configs.empty()) fail(ErrorKind::empty_sector, std::string(what) + ": no admissible configuration");
}

// Choose m nodes in increasing order avoiding the forbidden mask.
void choose_sparse(const std::vector<std::uint64_t>& block, int n, int start, int left,
                   std::uint64_t chosen, std::uint64_t forbidden, std::vector<std::uint64_t>& out,
                   std::size_t cap) {
  if (left == 0) {
    push(out, chosen, cap);
    return;
  }
  for (int u = start; u <= n - left; ++u) {
    if (occupied(forbidden, u)) continue;
    choose_sparse(block, n, u + 1, left - 1, chosen | bit(u), forbidden | block[u], out, cap);
  }
}

void choose_dimers(const InteractionGraph& g, const std::vector<std::uint64_t>& ball2, int start, int left,
                   std::uint64_t chosen, std::uint64_t forbidden, std::vector<std::uint64_t>& out,
                   std::size_t cap) {
  if (left == 0) {
    push(out, chosen, cap);
    return;
  }
  const auto& e = g.edges();
  for (int k = start; k < static_cast<int>(e.size()); ++k) {
    auto [u, v] = e[k];
    if (occupied(forbidden, u) || occupied(forbidden, v)) continue;
    choose_dimers(g, ball2, k + 1, left - 1, chosen | bit(u) | bit(v), forbidden | ball2[u] | ball2[v],
                  out, cap);
  }
}

}  // namespace

BasisSpace enumerate_register(int n, std::size_t cap) {
  if (n < 0 || n > 62) fail(ErrorKind::size_limit, "qubit register too large");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (dim > cap) too_big(cap);
  BasisSpace b;
  b.mode = BasisMode::qubit_register;
  b.nodes = n;
  b.configs.resize(dim);
  for (std::uint64_t s = 0; s < dim; ++s) b.configs[s] = s;
  return b;
}

BasisSpace enumerate_particles(int n, int m, std::size_t cap) {
  if (n > 64) fail(ErrorKind::size_limit, "more than 64 nodes");
  if (m < 0 || m > n) fail(ErrorKind::empty_sector, "particle count outside [0, n]");
  BasisSpace b;
  b.mode = BasisMode::m_particle;
  b.nodes = n;
  b.particles = m;
  std::vector<std::uint64_t> block(n, 0);
  for (int u = 0; u < n; ++u) block[u] = bit(u);
  choose_sparse(block, n, 0, m, 0, 0, b.configs, cap);
  finish(b, "m-particle sector");
  return b;
}

BasisSpace enumerate_sparse(const InteractionGraph& g, int m, int r, std::size_t cap) {
  const int n = g.node_count();
  if (n > 64) fail(ErrorKind::size_limit, "more than 64 nodes");
  if (r <= 1) {
    auto b = enumerate_particles(n, m, cap);
    b.mode = BasisMode::sparse;
    b.range = 1;
    return b;
  }
  if (m < 0 || m > n) fail(ErrorKind::empty_sector, "particle count outside [0, n]");
  // block[u]: nodes at distance < r from u (including u)
  std::vector<std::uint64_t> block(n, 0);
  if (r == 2) {
    for (int u = 0; u < n; ++u) block[u] = bit(u) | g.neighbor_mask(u);
  } else {
    DistanceTable d(g);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (d(u, v) < r) block[u] |= bit(v);
  }
  BasisSpace b;
  b.mode = BasisMode::sparse;
  b.nodes = n;
  b.particles = m;
  b.range = r;
  choose_sparse(block, n, 0, m, 0, 0, b.configs, cap);
  finish(b, "sparse sector");
  return b;
}

BasisSpace enumerate_dimers(const InteractionGraph& g, int m, std::size_t cap) {
  const int n = g.node_count();
  if (n > 64) fail(ErrorKind::size_limit, "more than 64 nodes");
  if (!g.is_triangle_free()) fail(ErrorKind::triangle, "dimer sector requires a triangle-free graph");
  if (m < 0) fail(ErrorKind::empty_sector, "negative dimer count");
  DistanceTable d(g);
  std::vector<std::uint64_t> ball2(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (d(u, v) <= 2) ball2[u] |= bit(v);
  BasisSpace b;
  b.mode = BasisMode::dimer;
  b.nodes = n;
  b.particles = m;
  choose_dimers(g, ball2, 0, m, 0, 0, b.configs, cap);
  finish(b, "m-dimer sector");
  return b;
}

BasisSpace enumerate_basis(const ModelHamiltonian& model, std::size_t cap) {
  struct V {
    std::size_t cap;
    BasisSpace operator()(const TimHamiltonian& h) const { return enumerate_register(h.node_count(), cap); }
    BasisSpace operator()(const StoqLhHamiltonian& h) const { return enumerate_register(h.qubits, cap); }
    BasisSpace operator()(const HcbHamiltonian& h) const {
      return enumerate_sparse(h.graph, h.particles, h.range, cap);
    }
    BasisSpace operator()(const HcdHamiltonian& h) const { return enumerate_dimers(h.graph, h.dimers, cap); }
  };
  return std::visit(V{cap}, model);
}

bool is_r_sparse(std::uint64_t s, const DistanceTable& d, int r) {
  for (std::uint64_t x = s; x; x &= x - 1) {
    int u = std::countr_zero(x);
    for (std::uint64_t y = x & (x - 1); y; y &= y - 1)
      if (d(u, std::countr_zero(y)) < r) return false;
  }
  return true;
}

bool is_m_dimer(std::uint64_t s, const InteractionGraph& g, const DistanceTable& d) {
  // Every node must have exactly one neighbour inside S (components are
  // single edges in a triangle-free graph), and distinct dimers must be
  // at distance >= 3.
  for (std::uint64_t x = s; x; x &= x - 1) {
    int u = std::countr_zero(x);
    std::uint64_t partner = g.neighbor_mask(u) & s;
    if (std::popcount(partner) != 1) return false;
    std::uint64_t others = s & ~(bit(u) | partner);
    for (std::uint64_t y = others; y; y &= y - 1)
      if (d(u, std::countr_zero(y)) < 3) return false;
  }
  return true;
}

bool is_m_dimer(std::uint64_t s, const InteractionGraph& g) {
  if (s == 0) return true;
  return is_m_dimer(s, g, DistanceTable(g));
}

bool is_admissible(const ModelHamiltonian& model, std::uint64_t s) {
  const int n = node_count(model);
  if (n < 64 && (s >> n) != 0) return false;
  if (const auto* h = std::get_if<HcbHamiltonian>(&model)) {
    if (std::popcount(s) != h->particles) return false;
    if (h->range <= 1) return true;
    if (h->range == 2) {
      for (std::uint64_t x = s; x; x &= x - 1)
        if (h->graph.neighbor_mask(std::countr_zero(x)) & s) return false;
      return true;
    }
    return is_r_sparse(s, DistanceTable(h->graph), h->range);
  }
  if (const auto* h = std::get_if<HcdHamiltonian>(&model))
    return std::popcount(s) == 2 * h->dimers && is_m_dimer(s, h->graph);
  return true;
}

BasisSpace restrict_basis(const BasisSpace& b, const std::function<bool(std::uint64_t)>& pred) {
  BasisSpace r;
  r.mode = BasisMode::restricted;
  r.nodes = b.nodes;
  r.particles = b.particles;
  r.range = b.range;
  for (auto s : b.configs)
    if (pred(s)) r.configs.push_back(s);
  if (r.configs.empty()) fail(ErrorKind::empty_sector, "restriction leaves no configuration");
  return r;
}

}  // namespace stoqtim
