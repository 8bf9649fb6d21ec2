#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>

#include "stoqtim/basis.hpp"
#include "stoqtim/eigensolvers.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/operator.hpp"
#include "stoqtim/reductions.hpp"
#include "stoqtim/tim.hpp"

using namespace stoqtim;

namespace {

InteractionGraph path(int n) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return InteractionGraph(n, e);
}

Eigen::VectorXd sorted_spectrum(const ModelHamiltonian& h) {
  const BasisSpace b = enumerate_basis(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(build_matrix(h, b)), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::uint64_t mask(std::initializer_list<int> nodes) {
  std::uint64_t s = 0;
  for (int u : nodes) s |= bit(u);
  return s;
}

}  // namespace

TEST_CASE("basis: singletons are always r-sparse") {
  const BasisSpace b = enumerate_sparse(path(3), 1, 2);
  CHECK(b.configs == std::vector<std::uint64_t>{0b001, 0b010, 0b100});
}

TEST_CASE("basis: 2-particle range-2 sector on a 4-node path") {
  const BasisSpace b = enumerate_sparse(path(4), 2, 2);
  // {0,2}, {0,3}, {1,3}
  CHECK(b.configs == std::vector<std::uint64_t>{mask({0, 2}), mask({0, 3}), mask({1, 3})});
}

TEST_CASE("basis: two dimers do not fit on a 4-node path") {
  try {
    enumerate_dimers(path(4), 2);
    FAIL("expected an empty-sector error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::empty_sector);
  }
}

TEST_CASE("basis: size cap") {
  try {
    enumerate_register(12, 1000);
    FAIL("expected a size-limit error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::size_limit);
  }
}

TEST_CASE("is_m_dimer") {
  const InteractionGraph p4 = path(4);
  CHECK(is_m_dimer(0, p4));
  CHECK_FALSE(is_m_dimer(mask({0, 1, 2, 3}), p4));
  CHECK(is_m_dimer(mask({0, 1}), p4));
  CHECK_FALSE(is_m_dimer(mask({0, 2}), p4));

  // 4x4 grid: two horizontal dimers on rows 0 and 2 are three steps apart.
  std::vector<Edge> e;
  auto id = [](int r, int c) { return 4 * r + c; };
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (c + 1 < 4) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < 4) e.push_back({id(r, c), id(r + 1, c)});
    }
  const InteractionGraph grid(16, e);
  CHECK(is_m_dimer(mask({id(0, 0), id(0, 1), id(2, 2), id(3, 2)}), grid));
  CHECK(is_m_dimer(mask({id(0, 0), id(1, 0), id(1, 3), id(2, 3)}), grid));
  CHECK_FALSE(is_m_dimer(mask({id(0, 0), id(0, 1), id(1, 2), id(1, 3)}), grid));
}

TEST_CASE("sector inclusions") {
  const InteractionGraph g = path(6);
  const BasisSpace dimers = enumerate_dimers(g, 2);
  const BasisSpace four = enumerate_particles(6, 4);
  for (auto s : dimers.configs) CHECK(four.contains(s));
  const BasisSpace r2 = enumerate_sparse(g, 2, 2), r1 = enumerate_sparse(g, 2, 1);
  for (auto s : r2.configs) CHECK(r1.contains(s));
}

TEST_CASE("build_matrix: single hop") {
  HcbHamiltonian h = zero_hcb(path(2), 1, 1);
  h.hopping[{0, 1}] = 1.0;
  const Eigen::MatrixXd m(build_matrix(ModelHamiltonian(h), enumerate_basis(h)));
  Eigen::Matrix2d want;
  want << 0, -1, -1, 0;
  CHECK((m - want).norm() == 0.0);
  CHECK(sorted_spectrum(h).isApprox(Eigen::Vector2d(-1, 1)));
}

TEST_CASE("build_matrix: dimer hop on a 6-cycle") {
  std::vector<Edge> e;
  for (int u = 0; u < 6; ++u) e.push_back(make_edge(u, (u + 1) % 6));
  HcdHamiltonian h = zero_hcd(InteractionGraph(6, e), 1);
  h.hopping = 0.7;
  const BasisSpace b = enumerate_basis(h);
  const SparseMatrix m = build_matrix(ModelHamiltonian(h), b);
  // {0,1} -> {1,2} moves particle 0 -> 2.
  CHECK(m.coeff(b.index_of(mask({0, 1})), b.index_of(mask({1, 2}))) == doctest::Approx(-0.7));
  CHECK(m.coeff(b.index_of(mask({0, 1})), b.index_of(mask({3, 4}))) == 0.0);
  CHECK(is_exactly_symmetric(m));
  CHECK(check_stoquastic(m));
}

TEST_CASE("random models: symmetric and stoquastic") {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 3;
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (U(rng) < 0.5) e.push_back({u, v});
    const InteractionGraph g(n, e);
    HcbHamiltonian h = zero_hcb(g, 2, 1 + trial % 2);
    for (const auto& ed : g.edges()) h.hopping[ed] = U(rng);
    for (int u = 0; u < n; ++u) h.chemical[u] = U(rng) - 0.5;
    h.pair_potential[{0, n - 1}] = U(rng);
    h.projectors.push_back({{0, 1}, U(rng)});
    try {
      const SparseMatrix m = build_matrix(ModelHamiltonian(h), enumerate_basis(h));
      CHECK(is_exactly_symmetric(m));
      CHECK(check_stoquastic(m));
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::empty_sector);
    }
  }
}

TEST_CASE("check_stoquastic") {
  SparseMatrix a(2, 2), b(2, 2);
  a.insert(0, 1) = -1;
  a.insert(1, 0) = -1;
  b.insert(0, 1) = 0.5;
  b.insert(1, 0) = 0.5;
  CHECK(check_stoquastic(a));
  CHECK_FALSE(check_stoquastic(b));
}

TEST_CASE("Pauli to occupation form") {
  TimHamiltonian t = zero_tim(path(2), TimForm::pauli);
  t.ising[{0, 1}] = 1.0;
  const TimHamiltonian o = pauli_to_occupation(t);
  CHECK(o.form == TimForm::occupation);
  CHECK(o.ising.at({0, 1}) == 4.0);
  CHECK(o.longitudinal[0] == -2.0);
  CHECK(o.longitudinal[1] == -2.0);

  const TimHamiltonian z = pauli_to_occupation(zero_tim(path(2), TimForm::pauli));
  CHECK(z.longitudinal == std::vector<double>{0.0, 0.0});
  CHECK(z.energy_shift == 0.0);

  TimHamiltonian r = zero_tim(InteractionGraph(3, {{0, 1}, {1, 2}, {0, 2}}), TimForm::pauli);
  r.transverse = {-0.3, 0.7, -1.1};
  r.longitudinal = {0.2, -0.5, 0.9};
  r.ising = {{{0, 1}, 0.4}, {{1, 2}, -0.8}, {{0, 2}, 0.6}};
  r.energy_shift = 0.25;
  CHECK((sorted_spectrum(r) - sorted_spectrum(pauli_to_occupation(r))).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((sorted_spectrum(r) - sorted_spectrum(occupation_to_pauli(pauli_to_occupation(r)))).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("absorb_linear_field doubles every level") {
  auto doubled = [](const Eigen::VectorXd& v) {
    std::vector<double> out;
    for (double x : v) out.insert(out.end(), {x, x});
    std::sort(out.begin(), out.end());
    return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())).eval();
  };
  TimHamiltonian one = zero_tim(InteractionGraph(1), TimForm::pauli);
  one.longitudinal = {1.0};
  const TimHamiltonian a = absorb_linear_field(one);
  CHECK(a.node_count() == 2);
  CHECK((sorted_spectrum(a) - doubled(sorted_spectrum(one))).cwiseAbs().maxCoeff() < 1e-12);

  TimHamiltonian two = zero_tim(path(2), TimForm::pauli);
  two.transverse = {-0.4, -1.2};
  two.longitudinal = {0.3, -0.7};
  two.ising[{0, 1}] = 0.5;
  CHECK((sorted_spectrum(absorb_linear_field(two)) - doubled(sorted_spectrum(two))).cwiseAbs().maxCoeff() < 1e-12);

  TimHamiltonian free = zero_tim(path(2), TimForm::pauli);
  free.transverse = {-1.0, -0.5};
  CHECK((sorted_spectrum(absorb_linear_field(free)) - doubled(sorted_spectrum(free))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stoquastic frame flips positive fields") {
  TimHamiltonian t = zero_tim(path(2), TimForm::pauli);
  t.transverse = {0.5, -0.3};
  t.ising[{0, 1}] = 0.2;
  const StoquasticFrame f = to_stoquastic_frame(t);
  CHECK(f.flipped == std::vector<bool>{true, false});
  CHECK(f.hamiltonian.transverse[0] <= 0.0);
  CHECK((sorted_spectrum(t) - sorted_spectrum(f.hamiltonian)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("validation clamps tiny negative hoppings and rejects real ones") {
  HcbHamiltonian h = zero_hcb(path(2), 1, 1);
  h.hopping[{0, 1}] = -1e-13;
  validate(h);
  CHECK(h.hopping.at({0, 1}) == 0.0);
  h.hopping[{0, 1}] = -1e-3;
  CHECK_THROWS_AS(validate(h), Error);
  HcdHamiltonian d = zero_hcd(InteractionGraph(3, {{0, 1}, {1, 2}, {0, 2}}), 1);
  try {
    validate(d);
    FAIL("triangle accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::triangle);
  }
}

// Zero set of the dimer penalty is exactly the m-dimer configurations, on
// random triangle-free graphs; one node short of a dimer costs exactly 1.
TEST_CASE("dimer penalty zero set") {
  std::mt19937_64 rng(0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + trial % 4;
    std::vector<Edge> e;
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < 2 * n; ++k) {
      const int u = pick(rng), v = pick(rng);
      if (u == v) continue;
      std::vector<Edge> cand = e;
      cand.push_back(make_edge(u, v));
      if (InteractionGraph(n, cand).is_triangle_free()) e = cand;
    }
    const InteractionGraph g(n, e);
    const TimHamiltonian h0 = dimer_penalty(g);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      const double d = diagonal_element(ModelHamiltonian(h0), s);
      if (is_m_dimer(s, g)) {
        CHECK(d == 0.0);
        for (int u = 0; u < n; ++u)
          if (occupied(s, u)) CHECK(diagonal_element(ModelHamiltonian(h0), s & ~bit(u)) == 1.0);
      } else {
        CHECK(d >= 1.0);
      }
    }
  }
}
