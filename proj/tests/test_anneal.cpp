#include <doctest.h>

#include <cmath>

#include "stoqtim/anneal.hpp"
#include "stoqtim/error.hpp"

using namespace stoqtim;

namespace {

TimHamiltonian single_qubit(double x, double z) {
  TimHamiltonian h = zero_tim(InteractionGraph(1), TimForm::pauli);
  h.transverse = {x};
  h.longitudinal = {z};
  return h;
}

}  // namespace

TEST_CASE("single-qubit path: closed-form gap") {
  AdiabaticPath path{single_qubit(-1.0, 0.0), single_qubit(0.0, -1.0), uniform_grid(33)};
  const PathReport r = track_gaps(path);
  for (std::size_t i = 0; i < r.taus.size(); ++i) {
    const double tau = r.taus[i];
    CHECK(r.gap_target[i] == doctest::Approx(2 * std::sqrt((1 - tau) * (1 - tau) + tau * tau)).epsilon(1e-12));
  }
  CHECK(r.min_gap_target == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(r.tau_min_gap_target == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(r.near_degenerate.empty());
  REQUIRE(r.time_estimate);
}

TEST_CASE("constant path: constant gap") {
  const AdiabaticPath path{single_qubit(-0.5, 0.3), single_qubit(-0.5, 0.3), uniform_grid(9)};
  const PathReport r = track_gaps(path);
  for (double g : r.gap_target) CHECK(g == doctest::Approx(r.gap_target.front()).epsilon(1e-12));
  CHECK(r.derivative_c1 < 1e-12);
}

TEST_CASE("traversal time estimate") {
  PathReport r;
  r.min_gap_target = 1.0;
  CHECK(estimate_traversal_time(r, 1.0, 1.0) == doctest::Approx(3.0));
  const double full = estimate_traversal_time(r, 0.7, 0.4);
  r.min_gap_target = 0.5;
  const double half = estimate_traversal_time(r, 0.7, 0.4);
  CHECK(half / full >= 4.0);
  CHECK(half / full <= 8.0);
  r.min_gap_target = 0.0;
  CHECK_THROWS_AS(estimate_traversal_time(r, 1.0, 1.0), Error);
}

TEST_CASE("grid checks") {
  AdiabaticPath path{single_qubit(-1.0, 0.0), single_qubit(0.0, -1.0), {0.0, 0.6, 0.3, 1.0}};
  CHECK_THROWS_AS(track_gaps(path), Error);
  path.taus = {0.1, 0.5, 1.0};
  CHECK_THROWS_AS(track_gaps(path), Error);
}

TEST_CASE("interpolation is affine") {
  const auto a = single_qubit(-1.0, 0.2), b = single_qubit(-0.2, -1.0);
  const auto mid = std::get<TimHamiltonian>(interpolate(a, b, 0.25));
  CHECK(mid.transverse[0] == doctest::Approx(-0.8));
  CHECK(mid.longitudinal[0] == doctest::Approx(-0.1));
  CHECK_THROWS_AS(interpolate(ModelHamiltonian(a), ModelHamiltonian(minus_sum_z(1)), 0.5), Error);
}

TEST_CASE("tau-independent path compiles identically") {
  const AdiabaticPath base = two_qubit_test_path(5);
  AdiabaticPath flat{base.final, base.final, uniform_grid(5)};
  ReductionParams p;
  const TranslatedPath tp = translate_path(flat, p);
  REQUIRE(tp.per_tau.size() == 5);
  const auto& first = std::get<HcbHamiltonian>(tp.per_tau.front().back().simulator);
  for (const auto& steps : tp.per_tau) {
    const auto& sim = std::get<HcbHamiltonian>(steps.back().simulator);
    CHECK(sim.graph == first.graph);
    CHECK(sim.hopping == first.hopping);
    CHECK(sim.controlled == first.controlled);
    CHECK(sim.chemical == first.chemical);
    CHECK(sim.pair_potential == first.pair_potential);
  }
}

TEST_CASE("two-qubit path translated to HCB*") {
  const AdiabaticPath path = two_qubit_test_path(17);
  const TranslatedPath tp = translate_path(path, ReductionParams{});
  CHECK(tp.criteria_met);
  const PathReport r = track_gaps(tp);
  for (std::size_t i = 0; i < r.taus.size(); ++i) {
    INFO("tau = " << r.taus[i]);
    CHECK(r.gap_sim[i] >= r.min_gap_target / 3);
    CHECK(r.ground_overlap[i] <= 1e-2);
  }
  REQUIRE(r.min_gap_sim);
  CHECK(*r.min_gap_sim >= r.min_gap_target / 3);

  // Off-grid points use the same structure.
  const auto [sim, enc] = tp.compile_at(0.37);
  CHECK(std::get<HcbHamiltonian>(sim).graph == std::get<HcbHamiltonian>(tp.per_tau.front().back().simulator).graph);
}

TEST_CASE("gap floor violation reports tau") {
  // -Z0 - Z1 -> +Z0 - Z1 crosses levels at tau = 1/2.
  StoqLhHamiltonian a, b;
  a.qubits = b.qubits = 2;
  a.two_local.push_back(pauli_term(0, 1, {{"ZI", -1.0}, {"IZ", -1.0}}));
  b.two_local.push_back(pauli_term(0, 1, {{"ZI", 1.0}, {"IZ", -1.0}}));
  AdiabaticPath path{a, b, uniform_grid(5)};
  try {
    translate_path(path, ReductionParams{}, TranslateOptions{});
    FAIL("expected gap closure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::gap_closure);
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
}
