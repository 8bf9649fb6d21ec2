#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "chain_oracle.hpp"
#include "stoqtim/basis.hpp"
#include "stoqtim/chain.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/operator.hpp"

using namespace stoqtim;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

ChainParams chain(int m, double g) {
  ChainParams p;
  p.length = m;
  p.coupling = g;
  return p;
}

MatrixXd dense_chain(const ChainParams& p) {
  const TimHamiltonian h = chain_hamiltonian(p);
  return MatrixXd(build_matrix(ModelHamiltonian(h), enumerate_basis(h)));
}

// Z_j on the 2^m register, node 0 = least significant bit.
VectorXd z_diagonal(int m, int j) {
  VectorXd z(std::size_t{1} << m);
  for (Eigen::Index s = 0; s < z.size(); ++s) z(s) = ((s >> j) & 1) ? -1.0 : 1.0;
  return z;
}

}  // namespace

TEST_CASE("chain energies at m = 2, g = 2") {
  const auto e = chain_energies(chain(2, 2.0));
  CHECK(e[0] == doctest::Approx(-2.0 * std::sqrt(5.0)).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(-4.0).epsilon(1e-14));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(dense_chain(chain(2, 2.0)));
  CHECK(std::abs(es.eigenvalues()(2) - e[2]) < 1e-12);
}

TEST_CASE("chain energies match dense diagonalization, random g") {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> G(1.0 + 1e-3, 3.0);
  for (int m = 2; m <= 10; ++m) {
    const double g = G(rng);
    const auto e = chain_energies(chain(m, g));
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(dense_chain(chain(m, g)), Eigen::EigenvaluesOnly);
    INFO("m = " << m << " g = " << g);
    CHECK(e[0] < e[1]);
    CHECK(std::abs(e[0] - es.eigenvalues()(0)) < 1e-9);
    CHECK(std::abs(e[1] - es.eigenvalues()(1)) < 1e-9);
    CHECK(std::abs(e[2] - es.eigenvalues()(2)) < 1e-9);
  }
}

TEST_CASE("xi matches the dense form factor on every site") {
  for (int m = 2; m <= 10; ++m)
    for (double g : {1.5, 2.0, 3.0}) {
      const ChainParams p = chain(m, g);
      const ChainGroundPair gp = chain_ground_pair(p);
      const double xi = chain_xi(p);
      INFO("m = " << m << " g = " << g);
      for (int j = 0; j < m; ++j) {
        const double f = gp.psi1.dot(z_diagonal(m, j).cwiseProduct(gp.psi0));
        CHECK(std::abs(std::abs(f) - xi) < 1e-8);
      }
      CHECK(xi >= std::pow(1.0 - 1.0 / (g * g), 0.125) - 1e-15);
      CHECK(xi <= 1.0);
    }
}

TEST_CASE("ground pair parity") {
  for (int m : {3, 6}) {
    const ChainGroundPair gp = chain_ground_pair(chain(m, 1.4));
    // X^m flips every bit.
    const Eigen::Index dim = gp.psi0.size();
    VectorXd x0(dim), x1(dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
      x0(s) = gp.psi0(dim - 1 - s);
      x1(s) = gp.psi1(dim - 1 - s);
    }
    CHECK((x0 - gp.psi0).norm() < 1e-9);
    CHECK((x1 + gp.psi1).norm() < 1e-9);
  }
}

TEST_CASE("xi tends to 1 for large g") {
  CHECK(chain_xi(chain(8, 1e4)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(chain_xi(chain(400, 1.01)) > 0.0);
}

TEST_CASE("splitting by quadrature against the frozen table") {
  for (const auto& o : kSplittingOracle) {
    const double d = chain_splitting_integral(chain(o.m, o.g));
    INFO("m = " << o.m << " g = " << o.g);
    CHECK(std::abs(d - o.delta) <= 1e-10 * o.delta);
  }
  // Where the closed-form energy difference keeps its digits, it agrees too.
  const auto e = chain_energies(chain(4, 1.5));
  CHECK(chain_splitting_integral(chain(4, 1.5)) == doctest::Approx((e[1] - e[0]) / 2).epsilon(1e-10));
}

TEST_CASE("splitting envelopes at c = 2") {
  std::vector<double> lower, upper;
  for (int m : {8, 16, 32, 64}) {
    const ChainParams p = ChainParams::from_exponent(m, 2.0);
    const double d = chain_splitting_integral(p);
    lower.push_back(d * std::pow(m, 3.5));
    upper.push_back(d * std::pow(m, 2.5));
  }
  for (std::size_t i = 1; i < lower.size(); ++i) {
    CHECK(lower[i] >= 0.5 * lower[0]);
    CHECK(upper[i] <= 2.0 * upper[0]);
  }
}

TEST_CASE("eta is at least 1 and non-increasing") {
  CHECK(chain_eta_monotonicity(6, {1.1, 1.5, 2, 4, 10}));
  for (int m : {4, 8, 16}) {
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(1.02 + i * (5.0 - 1.02) / 49);
    CHECK(chain_eta_monotonicity(m, grid));
    CHECK(chain_eta(chain(m, grid.back())) >= 1.0 - 1e-9);
  }
  CHECK_THROWS_AS(chain_eta_monotonicity(4, {2.0, 1.5}), Error);
}

TEST_CASE("chain parameter selection") {
  const ChainSelection lax = select_chain_parameters(2, 1.0, 1.0, 1.0);
  CHECK(lax.params.exponent.value_or(0) == 2.0);
  CHECK(lax.params.length == 2);
  double prev_c = 0;
  for (double eps : {1e-1, 3e-2, 1e-2}) {
    const ChainSelection s = select_chain_parameters(3, 1.0, eps, eps);
    CHECK(*s.params.exponent >= prev_c);
    prev_c = *s.params.exponent;
    CHECK(1.0 / s.spectrum.splitting >= s.demanded_inverse_splitting);
    CHECK(s.spectrum.gap / s.spectrum.splitting >= 1.0);
  }
  try {
    select_chain_parameters(3, 1.0, 1e-300, 1e-300);
    FAIL("expected unreachable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unreachable);
  }
}
