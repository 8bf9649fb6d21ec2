#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "stoqtim/chain.hpp"
#include "stoqtim/effective.hpp"
#include "stoqtim/eigensolvers.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/reductions.hpp"
#include "stoqtim/simulation.hpp"

using namespace stoqtim;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

SparseMatrix sparse(const MatrixXd& m) { return m.sparseView(0.0, 0.0); }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (int i = 0; i < n; ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST_CASE("lowest_eigenpairs: small dense cases") {
  MatrixXd a(2, 2);
  a << 0, -1, -1, 0;
  EigenPairs ep = lowest_eigenpairs(sparse(a), 2);
  CHECK(ep.values(0) == doctest::Approx(-1.0));
  CHECK(ep.values(1) == doctest::Approx(1.0));

  ep = lowest_eigenpairs(sparse(Eigen::Vector3d(3, 1, 2).asDiagonal().toDenseMatrix()), 2);
  CHECK(ep.values(0) == doctest::Approx(1.0));
  CHECK(ep.values(1) == doctest::Approx(2.0));
}

TEST_CASE("lowest_eigenpairs: two-site chain") {
  // -2g Z0 Z1 - X0 - X1 at g = 2
  ChainParams p;
  p.length = 2;
  p.coupling = 2.0;
  const TimHamiltonian h = chain_hamiltonian(p);
  const SparseMatrix m = build_matrix(ModelHamiltonian(h), enumerate_basis(h));
  const EigenPairs ep = lowest_eigenpairs(m, 2);
  CHECK(ep.values(0) == doctest::Approx(-2.0 * std::sqrt(5.0)).epsilon(1e-12));
  CHECK(ep.values(1) == doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("lowest_eigenpairs: Lanczos above the dense threshold") {
  // 1D TIM on 12 sites (dimension 4096) against the dense solver.
  TimHamiltonian h = zero_tim(InteractionGraph(12, [] {
                                std::vector<Edge> e;
                                for (int u = 0; u < 11; ++u) e.push_back({u, u + 1});
                                return e;
                              }()),
                              TimForm::pauli);
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto& x : h.transverse) x = -std::abs(U(rng));
  for (auto& x : h.longitudinal) x = 0.3 * U(rng);
  for (const auto& e : h.graph.edges()) h.ising[e] = U(rng);
  const SparseMatrix m = build_matrix(ModelHamiltonian(h), enumerate_basis(h));
  SolverOptions iterative;
  iterative.dense_threshold = 16;
  const EigenPairs lz = lowest_eigenpairs(m, 4, iterative);
  const EigenPairs dn = lowest_eigenpairs(m, 4);
  CHECK((lz.values - dn.values).cwiseAbs().maxCoeff() < 1e-8);
  const double norm = std::max(1.0, operator_norm(m));
  for (int j = 0; j < 4; ++j)
    CHECK((m * lz.vectors.col(j) - lz.values(j) * lz.vectors.col(j)).norm() <= 1e-9 * norm);
}

TEST_CASE("spectral_gap") {
  CHECK(spectral_gap(sparse(Eigen::Vector3d(0, 0, 5).asDiagonal().toDenseMatrix()), 2) == doctest::Approx(5.0));
  CHECK(spectral_gap(sparse(Eigen::Vector2d(0, 1).asDiagonal().toDenseMatrix()), 1) == doctest::Approx(1.0));
  // Chain: lambda_3 - lambda_2 = Delta - delta.
  for (int m = 3; m <= 10; ++m) {
    ChainParams p = ChainParams::from_exponent(m, 2.0);
    const ChainSpectrum s = chain_spectrum(p);
    const TimHamiltonian h = chain_hamiltonian(p);
    const double gap = spectral_gap(build_matrix(ModelHamiltonian(h), enumerate_basis(h)), 2);
    CHECK(gap == doctest::Approx(s.gap - s.splitting).epsilon(1e-9));
  }
}

TEST_CASE("effective Hamiltonian: zero perturbation") {
  const MatrixXd h = Eigen::Vector4d(0, 0, 1, 2).asDiagonal();
  const EffectiveHamiltonian e = effective_hamiltonian_exact(sparse(h), BlockSplit::from_minus({0, 1}, 4));
  CHECK(e.matrix.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("effective Hamiltonian: 2x2 closed form") {
  const double eps = 0.1;
  for (double delta : {1.0, 10.0, 100.0}) {
    MatrixXd h(2, 2);
    h << 0, eps, eps, delta;
    const EffectiveHamiltonian e = effective_hamiltonian_exact(sparse(h), BlockSplit::from_minus({0}, 2));
    CHECK(e.matrix(0, 0) == doctest::Approx((delta - std::sqrt(delta * delta + 4 * eps * eps)) / 2).epsilon(1e-12));
    const double order2 = -eps * eps / delta;
    CHECK(std::abs(e.matrix(0, 0) - order2) <= 2 * std::pow(eps, 4) / std::pow(delta, 3) + 1e-15);
  }
}

TEST_CASE("effective Hamiltonian: eigenvalues are the lowest simulator levels") {
  std::mt19937_64 rng(0);
  std::normal_distribution<double> N(0.0, 1.0);
  const int dim = 12;
  MatrixXd h0 = MatrixXd::Zero(dim, dim);
  for (int i = 3; i < dim; ++i) h0(i, i) = 1.0 + 0.25 * (i - 3);
  MatrixXd v(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) v(i, j) = N(rng);
  v = 0.5 * (v + v.transpose()).eval();
  v /= symmetric_norm(v);
  const double delta = 20.0;
  const MatrixXd h = delta * h0 + v;
  const EffectiveHamiltonian e = effective_hamiltonian_exact(sparse(h), BlockSplit::zero_diagonal(sparse(h0)));
  Eigen::SelfAdjointEigenSolver<MatrixXd> a(e.matrix), b(h);
  CHECK((a.eigenvalues() - b.eigenvalues().head(3)).cwiseAbs().maxCoeff() < 1e-8 * delta);

  // Large delta: first order.
  const MatrixXd hb = 1e8 * h0 + v;
  const EffectiveHamiltonian eb = effective_hamiltonian_exact(sparse(hb), BlockSplit::zero_diagonal(sparse(h0)));
  CHECK((eb.matrix - v.topLeftCorner(3, 3)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("order-k series: block-diagonal V gives V-- at order 2") {
  MatrixXd h0 = Eigen::Vector4d(0, 0, 1, 1).asDiagonal();
  MatrixXd v = MatrixXd::Zero(4, 4);
  v(0, 1) = v(1, 0) = 0.3;
  v(0, 0) = 0.2;
  v(2, 3) = v(3, 2) = 0.7;
  const EffectiveHamiltonian e =
      effective_hamiltonian_order_k(sparse(h0), sparse(v), BlockSplit::zero_diagonal(sparse(h0)), 10.0, 2);
  CHECK((e.matrix - v.topLeftCorner(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("order-k series converges as delta^-k") {
  std::mt19937_64 rng(0);
  std::normal_distribution<double> N(0.0, 1.0);
  const int dim = 10;
  MatrixXd h0 = MatrixXd::Zero(dim, dim);
  for (int i = 3; i < dim; ++i) h0(i, i) = 1.0 + 0.5 * (i - 3);
  MatrixXd v(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) v(i, j) = N(rng);
  v = 0.5 * (v + v.transpose()).eval();
  v /= symmetric_norm(v);
  const BlockSplit split = BlockSplit::zero_diagonal(sparse(h0));
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> ds, errs;
    for (double delta : {10.0, 31.6, 100.0, 316.0}) {
      const MatrixXd h = delta * h0 + v;
      const MatrixXd exact = effective_hamiltonian_exact(sparse(h), split).matrix;
      const MatrixXd series = effective_hamiltonian_order_k(sparse(h0), sparse(v), split, delta, k).matrix;
      ds.push_back(delta);
      errs.push_back(spectral_norm(exact - series));
    }
    const double s = slope(ds, errs);
    INFO("k = " << k << " slope " << s);
    CHECK(s >= -k - 0.35);
    CHECK(s <= -k + 0.35);
  }
}

TEST_CASE("simulation error: self simulation is exact") {
  HcbHamiltonian h = zero_hcb(InteractionGraph(3, {{0, 1}, {1, 2}}), 1, 1);
  h.hopping[{0, 1}] = 1.0;
  h.hopping[{1, 2}] = 0.4;
  h.chemical = {0.1, 0.0, -0.3};
  const SimulationError e = measure_simulation_error(ModelHamiltonian(h), ModelHamiltonian(h), identity_encoding(3));
  CHECK(e.epsilon < 1e-14);
  CHECK(e.eta < 1e-14);
}

TEST_CASE("simulation error: level deviations and ground-state bound") {
  HcbHamiltonian h = zero_hcb(InteractionGraph(2, {{0, 1}}), 1, 1);
  h.hopping[{0, 1}] = 1.0;
  h.chemical = {0.2, -0.1};
  double worst_c = 0.0;
  for (double delta : {1e2, 1e3, 1e4, 1e5}) {
    ReductionParams p;
    p.delta_mode = DeltaMode::explicit_value;
    p.explicit_delta = delta;
    const ReductionStep st = reduce_hcb1_to_hcb2(h, p);
    const SimulationError e = measure_simulation_error(st.target, st.simulator, st.encoding);
    for (double d : e.per_level_deviation) CHECK(d <= e.epsilon + 1e-12);
    REQUIRE(2 * e.epsilon < e.target_gap);
    worst_c = std::max(worst_c, (e.ground_deviation - e.eta) * e.target_gap / e.epsilon);
  }
  CHECK(worst_c <= 10.0);
}

TEST_CASE("simulation error: orthogonal encoding is ill-conditioned") {
  // Encode into the excited state of a 2-level simulator.
  MatrixXd sim(2, 2);
  sim << 0, 0, 0, 1;
  MatrixXd tgt = MatrixXd::Zero(1, 1);
  MatrixXd enc(2, 1);
  enc << 0, 1;
  try {
    measure_simulation_error(sparse(tgt), sparse(sim), enc);
    FAIL("expected ill-conditioned rotation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ill_conditioned);
  }
}

TEST_CASE("simulation error: degenerate boundary") {
  MatrixXd sim = Eigen::Vector3d(0, 1, 1).asDiagonal();
  MatrixXd tgt = Eigen::Vector2d(0, 1).asDiagonal();
  MatrixXd enc = MatrixXd::Zero(3, 2);
  enc(0, 0) = enc(1, 1) = 1;
  CHECK_THROWS_AS(measure_simulation_error(sparse(tgt), sparse(sim), enc), Error);
}

TEST_CASE("simulation error: composition of two steps") {
  HcbHamiltonian h = zero_hcb(InteractionGraph(3, {{0, 1}, {1, 2}}), 1, 1);
  h.star = true;
  h.controlled[ControlledHop{2, {0, 1}}] = 1.0;
  h.chemical = {0.2, 0.0, 0.1};
  h.particles = 2;
  ReductionParams p;
  p.delta_mode = DeltaMode::explicit_value;
  // The second step's target carries the first step's penalty, so its gap must clear that scale.
  p.step_delta[StepName::hcbstar_to_hcb1] = 1e2;
  p.step_outer_delta[StepName::hcbstar_to_hcb1] = 1e4;
  p.step_delta[StepName::hcb1_to_hcb2] = 1e9;
  const ChainResult r = compose_steps(h, {StepName::hcbstar_to_hcb1, StepName::hcb1_to_hcb2}, p);
  REQUIRE(r.steps.size() == 2);
  const SimulationError e1 = measure_simulation_error(r.steps[0].target, r.steps[0].simulator, r.steps[0].encoding);
  const SimulationError e2 = measure_simulation_error(r.steps[1].target, r.steps[1].simulator, r.steps[1].encoding);
  const SimulationError ec = measure_simulation_error(ModelHamiltonian(h), r.steps[1].simulator, r.encoding);
  const BasisSpace tb = enumerate_basis(ModelHamiltonian(h));
  const double norm = operator_norm(build_matrix(ModelHamiltonian(h), tb));
  CHECK(ec.epsilon <= e1.epsilon + e2.epsilon + 10 * e2.epsilon * norm / r.steps[0].delta);
}
