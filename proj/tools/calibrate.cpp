// Fits the gap-selection constants on small instances and prints the table
// to paste into src/calibration.cpp.
//
// For every perturbative step and instance: search (in log Delta, outer gap at
// its default rule) for the smallest explicit Delta whose measured (eps, eta)
// meet the step budget, then K = Delta_needed / form(lambda, eps, eta). The
// shipped K is the largest ratio times a safety factor.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "stoqtim/chain.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/reductions.hpp"

using namespace stoqtim;

namespace {

constexpr double kSafety = 2.0;

struct Instance {
  std::string label;
  StepName step;
  ModelHamiltonian model;
};

bool meets(const ModelHamiltonian& target, StepName s, const ReductionParams& p, double delta, bool penalty_only) {
  ReductionParams q = p;
  q.delta_mode = DeltaMode::explicit_value;
  if (penalty_only) q.outer_delta = delta;
  else q.explicit_delta = delta;
  ReductionStep st = run_step(s, target, q);
  const SimulationError e = measure_simulation_error(st.target, st.simulator, st.encoding);
  return e.epsilon <= st.eps_budget && e.eta <= st.eta_budget;
}

// Smallest Delta >= lo that meets the budget: first passing decade, then a
// log-scale bisection inside it. Large gaps lose the budget to round-off, so
// the scan stops at hi.
double smallest_passing(const std::function<bool(double)>& ok, double lo, double hi) {
  if (ok(lo)) return lo;
  double below = lo, above = lo * 10;
  while (above <= hi && !ok(above)) {
    below = above;
    above *= 10;
  }
  if (above > hi) return std::nan("");
  for (int it = 0; it < 40 && above / below > 1.01; ++it) {
    const double mid = std::sqrt(below * above);
    if (ok(mid)) above = mid;
    else below = mid;
  }
  return above;
}

HcbHamiltonian path_hcb(int n, int particles, int range) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return zero_hcb(InteractionGraph(n, e), particles, range);
}

std::vector<Instance> instances() {
  std::vector<Instance> out;
  {
    StoqLhHamiltonian s;
    s.qubits = 2;
    s.two_local.push_back(pauli_term(0, 1, {{"XX", -0.5}, {"YY", -0.5}}));
    out.push_back({"-(XX+YY)/2", StepName::stoqlh_to_hcbstar, s});
    StoqLhHamiltonian t = s;
    t.two_local[0] = pauli_term(0, 1, {{"XX", -0.5}, {"YY", -0.5}, {"ZZ", 0.5}, {"XI", -0.6}, {"IX", -0.6},
                                       {"ZI", -0.2}, {"IZ", -0.2}});
    out.push_back({"anneal endpoint", StepName::stoqlh_to_hcbstar, t});
    StoqLhHamiltonian u = s;
    u.two_local[0] = pauli_term(0, 1, {{"XX", -0.7}, {"YY", 0.2}, {"ZZ", 0.3}});
    out.push_back({"XX-YY mix", StepName::stoqlh_to_hcbstar, u});
  }
  {
    HcbHamiltonian b = path_hcb(4, 1, 1);
    b.star = true;
    b.hopping[{0, 1}] = 1.0;
    b.controlled[ControlledHop{3, {1, 2}}] = 0.5;
    b.chemical = {0.1, 0.0, -0.2, 0.3};
    b.particles = 2;
    out.push_back({"controlled hop", StepName::hcbstar_to_hcb1, b});
    HcbHamiltonian c = path_hcb(3, 1, 1);
    c.star = true;
    c.controlled[ControlledHop{2, {0, 1}}] = 1.0;
    c.chemical = {0.2, 0.0, 0.1};
    c.particles = 2;
    out.push_back({"single controlled hop", StepName::hcbstar_to_hcb1, c});
  }
  {
    HcbHamiltonian b = path_hcb(2, 1, 1);
    b.hopping[{0, 1}] = 1.0;
    b.chemical = {0.2, -0.1};
    out.push_back({"2-node HCB1", StepName::hcb1_to_hcb2, b});
    HcbHamiltonian c = path_hcb(3, 1, 1);
    c.hopping[{0, 1}] = 1.0;
    c.hopping[{1, 2}] = 0.5;
    c.chemical = {0.1, -0.2, 0.3};
    out.push_back({"3-node HCB1", StepName::hcb1_to_hcb2, c});
  }
  {
    HcbHamiltonian b = path_hcb(3, 1, 2);
    b.hopping[{0, 1}] = 1.0;
    b.projectors.push_back({{0, 2}, 0.5});
    out.push_back({"projector", StepName::multiparticle_to_hcb2, b});
    HcbHamiltonian c = path_hcb(4, 1, 2);
    c.hopping[{1, 2}] = 0.8;
    c.projectors.push_back({{0}, 0.3});
    c.projectors.push_back({{1, 3}, 0.7});
    out.push_back({"two projectors", StepName::multiparticle_to_hcb2, c});
  }
  {
    HcbHamiltonian b = path_hcb(3, 1, 2);
    b.hopping[{0, 1}] = 1.0;
    b.hopping[{1, 2}] = 0.3;
    b.chemical = {0.1, 0.2, 0.0};
    out.push_back({"3-node HCB2", StepName::hcb2_to_hcd, b});
    HcbHamiltonian c = path_hcb(4, 1, 2);
    c.hopping[{0, 1}] = 0.6;
    c.hopping[{1, 2}] = 1.0;
    c.hopping[{2, 3}] = 0.4;
    c.chemical = {0.0, -0.3, 0.1, 0.2};
    out.push_back({"4-node HCB2", StepName::hcb2_to_hcd, c});
  }
  {
    HcdHamiltonian d = zero_hcd(InteractionGraph(4, {{0, 1}, {1, 2}, {2, 3}}), 1);
    d.hopping = 0.7;
    d.chemical = {0.1, 0.0, 0.2, 0.0};
    out.push_back({"4-node HCD", StepName::hcd_to_tim, d});
    HcdHamiltonian e = zero_hcd(InteractionGraph(3, {{0, 1}, {1, 2}}), 1);
    e.hopping = 0.7;
    out.push_back({"3-node HCD", StepName::hcd_to_tim, e});
    HcdHamiltonian f = zero_hcd(InteractionGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}), 1);
    f.hopping = 1.0;
    f.chemical = {0.0, 0.3, 0.0, -0.1, 0.2};
    out.push_back({"5-node HCD", StepName::hcd_to_tim, f});
  }
  return out;
}

struct Fit {
  double k = 0.0;
  bool any = false;
};

void fit_step(const Instance& inst, const ReductionParams& p, Fit& fit) {
  ReductionParams probe = p;
  probe.delta_mode = DeltaMode::explicit_value;
  probe.explicit_delta = 1.0;
  ReductionStep shape = run_step(inst.step, inst.model, probe);
  const bool penalty_only = !shape.layer;
  double form = 0.0, lo = 0.0;
  if (penalty_only) {
    form = delta_form(1, shape.restriction->lambda, shape.eps_budget, shape.eta_budget);
    lo = 4.0 * shape.restriction->lambda;
  } else {
    const bool two_layer = shape.restriction.has_value();
    const double eps = two_layer ? shape.eps_budget / 2 : shape.eps_budget;
    const double eta = two_layer ? shape.eta_budget / 2 : shape.eta_budget;
    form = delta_form(shape.layer->order, shape.layer->lambda, eps, eta);
    lo = std::pow(4.0 * shape.layer->lambda, shape.layer->order);
  }
  const double need = smallest_passing([&](double d) { return meets(inst.model, inst.step, p, d, penalty_only); },
                             std::max(lo, 1.0), 1e13);
  std::printf("  %-22s eps_total=%-6g lambda=%-10.4g Delta_needed=%-12.4g K=%.4g\n", inst.label.c_str(),
              p.eps_total, penalty_only ? shape.restriction->lambda : shape.layer->lambda, need, need / form);
  if (std::isnan(need)) return;
  fit.k = std::max(fit.k, need / form);
  fit.any = true;
}

// Chain constant: smallest tabulated c that meets the budget on a TIM target.
void fit_chain(const TimHamiltonian& t, const ReductionParams& p, Fit& fit) {
  for (int c = 2; c <= 12; ++c) {
    ReductionParams q = p;
    q.chain.exponent = c;
    ReductionStep st = reduce_tim_to_degree3(t, q);
    const SimulationError e = measure_simulation_error(st.target, st.simulator, st.encoding);
    if (e.epsilon <= st.eps_budget && e.eta <= st.eta_budget) {
      const auto& s = st.chain->spectrum;
      const double j = interaction_strength(ModelHamiltonian(t));
      const double poly = st.chain->params.length * j / (st.eps_budget * s.xi) * (1.0 + 1.0 / st.eta_budget);
      const double k = (1.0 / s.splitting) / poly;
      std::printf("  TIM n=%d eps_total=%-6g c=%d K=%.4g\n", t.node_count(), p.eps_total, c, k);
      fit.k = std::max(fit.k, k);
      fit.any = true;
      return;
    }
  }
  std::printf("  TIM n=%d: no tabulated c met the budget\n", t.node_count());
}

}  // namespace

int main() {
  const std::vector<double> eps_totals = {1e-2, 4e-2};
  std::map<StepName, Fit> fits;
  for (const auto& inst : instances()) {
    std::printf("%s\n", to_string(inst.step));
    for (double e : eps_totals) {
      ReductionParams p;
      p.eps_total = e;
      p.eta_total = e;
      try {
        fit_step(inst, p, fits[inst.step]);
      } catch (const Error& err) {
        std::printf("  %s: %s\n", inst.label.c_str(), err.what());
      }
    }
  }

  // Penalty-only StoqLH instance (no XX+YY / XX-YY terms).
  Fit first;
  {
    StoqLhHamiltonian s;
    s.qubits = 2;
    s.two_local.push_back(pauli_term(0, 1, {{"XI", -0.4}, {"XZ", 0.3}, {"ZZ", 0.5}}));
    std::printf("penalty-only\n");
    for (double e : eps_totals) {
      ReductionParams p;
      p.eps_total = e;
      p.eta_total = e;
      p.p_min = 0.0;
      fit_step({"X and ZZ terms", StepName::stoqlh_to_hcbstar, s}, p, first);
    }
  }

  Fit chain;
  {
    std::printf("tim-to-degree3\n");
    TimHamiltonian one = zero_tim(InteractionGraph(1), TimForm::pauli);
    one.transverse = {-1.0};
    one.longitudinal = {0.3};
    TimHamiltonian two = zero_tim(InteractionGraph(2, {{0, 1}}), TimForm::pauli);
    two.transverse = {-1.0, -0.8};
    two.ising[{0, 1}] = 0.5;
    for (double e : eps_totals) {
      ReductionParams p;
      p.eps_total = e;
      p.eta_total = e;
      fit_chain(one, p, chain);
      fit_chain(two, p, chain);
    }
  }

  auto k = [&](const Fit& f) { return f.any ? f.k * kSafety : 1.0; };
  std::printf("\n// paste into src/calibration.cpp\n");
  std::printf("      %.3g,  // chain\n", k(chain));
  std::printf("      %.3g,  // first_order\n", k(first));
  std::printf("      %.3g,  // hcd_to_tim\n", k(fits[StepName::hcd_to_tim]));
  std::printf("      %.3g,  // hcb2_to_hcd\n", k(fits[StepName::hcb2_to_hcd]));
  std::printf("      %.3g,  // multiparticle\n", k(fits[StepName::multiparticle_to_hcb2]));
  std::printf("      %.3g,  // hcb1_to_hcb2\n", k(fits[StepName::hcb1_to_hcb2]));
  std::printf("      %.3g,  // hcbstar_to_hcb1\n", k(fits[StepName::hcbstar_to_hcb1]));
  std::printf("      %.3g,  // stoqlh\n", k(fits[StepName::stoqlh_to_hcbstar]));
  return 0;
}
