#include "stoqtim/tim.hpp"

#include "stoqtim/error.hpp"

namespace stoqtim {

TimHamiltonian pauli_to_occupation(const TimHamiltonian& h) {
  if (h.form == TimForm::occupation) return h;
  TimHamiltonian r = h;
  r.form = TimForm::occupation;
  const int n = h.node_count();
  r.longitudinal.assign(n, 0.0);
  r.ising.clear();
  for (int u = 0; u < n; ++u) {
    r.longitudinal[u] += -2.0 * h.longitudinal[u];
    r.energy_shift += h.longitudinal[u];
  }
  for (auto& [e, g] : h.ising) {
    r.ising[e] = 4.0 * g;
    r.longitudinal[e.first] += -2.0 * g;
    r.longitudinal[e.second] += -2.0 * g;
    r.energy_shift += g;
  }
  return r;
}

TimHamiltonian occupation_to_pauli(const TimHamiltonian& h) {
  if (h.form == TimForm::pauli) return h;
  TimHamiltonian r = h;
  r.form = TimForm::pauli;
  const int n = h.node_count();
  r.longitudinal.assign(n, 0.0);
  r.ising.clear();
  for (int u = 0; u < n; ++u) {
    r.longitudinal[u] += -0.5 * h.longitudinal[u];
    r.energy_shift += 0.5 * h.longitudinal[u];
  }
  for (auto& [e, w] : h.ising) {
    r.ising[e] = 0.25 * w;
    r.longitudinal[e.first] += -0.25 * w;
    r.longitudinal[e.second] += -0.25 * w;
    r.energy_shift += 0.25 * w;
  }
  return r;
}

TimHamiltonian absorb_linear_field(const TimHamiltonian& in) {
  TimHamiltonian h = occupation_to_pauli(in);
  const int n = h.node_count();
  const int a = n;
  std::vector<Edge> edges = h.graph.edges();
  std::vector<std::string> labels = h.graph.labels();
  for (int u = 0; u < n; ++u)
    if (h.longitudinal[u] != 0.0) edges.push_back({u, a});
  if (!labels.empty()) labels.push_back("a");
  TimHamiltonian r;
  r.graph = InteractionGraph(n + 1, edges, labels);
  r.form = TimForm::pauli;
  r.transverse = h.transverse;
  r.transverse.push_back(0.0);
  r.longitudinal.assign(n + 1, 0.0);
  r.ising = h.ising;
  for (int u = 0; u < n; ++u)
    if (h.longitudinal[u] != 0.0) r.ising[{u, a}] = h.longitudinal[u];
  r.energy_shift = h.energy_shift;
  return r;
}

StoquasticFrame to_stoquastic_frame(const TimHamiltonian& h) {
  StoquasticFrame f{h, std::vector<bool>(h.node_count(), false)};
  for (int u = 0; u < h.node_count(); ++u)
    if (f.hamiltonian.transverse[u] > 0.0) {
      f.hamiltonian.transverse[u] = -f.hamiltonian.transverse[u];
      f.flipped[u] = true;
    }
  return f;
}

}  // namespace stoqtim
