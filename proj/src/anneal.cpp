#include "stoqtim/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "stoqtim/basis.hpp"
#include "stoqtim/eigensolvers.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/operator.hpp"
#include "stoqtim/simulation.hpp"

namespace stoqtim {

namespace {

std::string tau_str(double tau) {
  std::ostringstream os;
  os << tau;
  return os.str();
}

// Matrix of a pair term with its qubits swapped (local index 2 x_i + x_j).
Eigen::Matrix4d swap_qubits(const Eigen::Matrix4d& m) {
  Eigen::PermutationMatrix<4> p;
  p.indices() << 0, 2, 1, 3;
  return p * m * p.transpose();
}

StoqLhHamiltonian mix(const StoqLhHamiltonian& a, const StoqLhHamiltonian& b, double wa, double wb) {
  if (a.qubits != b.qubits) fail(ErrorKind::validation, "path endpoints act on different registers");
  StoqLhHamiltonian out;
  out.qubits = a.qubits;
  out.locality_k = std::max(a.locality_k, b.locality_k);
  out.energy_shift = wa * a.energy_shift + wb * b.energy_shift;
  std::map<Edge, Eigen::Matrix4d> pairs;
  auto add_terms = [&](const StoqLhHamiltonian& h, double w) {
    for (const auto& t : h.two_local) {
      const Edge e = make_edge(t.first, t.second);
      const Eigen::Matrix4d m = t.first < t.second ? t.matrix : swap_qubits(t.matrix);
      auto it = pairs.try_emplace(e, Eigen::Matrix4d::Zero()).first;
      it->second += w * m;
    }
    for (auto d : h.k_local_diagonal) {
      d.weight *= w;
      out.k_local_diagonal.push_back(std::move(d));
    }
  };
  add_terms(a, wa);
  add_terms(b, wb);
  for (const auto& [e, m] : pairs) {
    TwoLocalTerm t;
    t.first = e.first;
    t.second = e.second;
    t.matrix = m;
    out.two_local.push_back(t);
  }
  return out;
}

template <class M>
M zero_like(const M& h);

template <>
TimHamiltonian zero_like(const TimHamiltonian& h) {
  return zero_tim(h.graph, h.form);
}
template <>
HcbHamiltonian zero_like(const HcbHamiltonian& h) {
  return zero_hcb(h.graph, h.particles, h.range, h.star);
}
template <>
HcdHamiltonian zero_like(const HcdHamiltonian& h) {
  return zero_hcd(h.graph, h.dimers);
}

// Gap between the two lowest levels of a model on its own sector.
double model_gap(const ModelHamiltonian& h) {
  const BasisSpace b = enumerate_basis(h);
  if (b.size() < 2) return std::numeric_limits<double>::infinity();
  const auto ep = lowest_eigenpairs(build_matrix(h, b), 2);
  return ep.values(1) - ep.values(0);
}

std::vector<StepName> steps_until(const ModelHamiltonian& from, StepName stop_at) {
  auto all = plan_steps(from, "tim3");
  auto it = std::find(all.begin(), all.end(), stop_at);
  if (it == all.end())
    fail(ErrorKind::validation, std::string("path class cannot be compiled through ") + to_string(stop_at));
  all.erase(it + 1, all.end());
  return all;
}

ChainResult compile_one(const TranslatedPath& tp, const ModelHamiltonian& h, const ReductionParams& q) {
  return compose_steps(h, tp.steps, q, tp.structure.empty() ? nullptr : &tp.structure);
}

// Largest gaps used by any tau, per step.
void record_max(const ChainResult& r, std::map<StepName, double>& inner, std::map<StepName, double>& outer) {
  for (const auto& st : r.steps) {
    if (st.layer) inner[st.name] = std::max(inner[st.name], st.layer->delta);
    if (st.restriction) outer[st.name] = std::max(outer[st.name], st.restriction->delta);
  }
}

struct SimPoint {
  double gap_target = 0.0, gap_sim = 0.0, overlap = 0.0;
};

SimPoint evaluate_point(const TranslatedPath& tp, double tau) {
  const ModelHamiltonian target = tp.target.at(tau);
  auto [sim, enc] = tp.compile_at(tau);
  SimulationError err;
  try {
    err = measure_simulation_error(target, sim, enc);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(e.what()) + " (tau = " + tau_str(tau) + ")");
  }
  SimPoint p;
  p.gap_target = err.target_gap;
  p.overlap = err.ground_deviation;
  p.gap_sim = err.simulator_levels.size() >= 2 ? err.simulator_levels(1) - err.simulator_levels(0)
                                                : err.simulator_gap;
  return p;
}

// Ternary search for the smallest gap on [lo, hi].
std::pair<double, double> refine_minimum(const std::function<double(double)>& gap, double lo, double hi) {
  while (hi - lo > 1e-3) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (gap(a) < gap(b)) hi = b;
    else lo = a;
  }
  const double t = 0.5 * (lo + hi);
  return {t, gap(t)};
}

void fill_minimum(PathReport& r, const std::function<double(double)>& gap) {
  const auto it = std::min_element(r.gap_target.begin(), r.gap_target.end());
  const std::size_t i = static_cast<std::size_t>(it - r.gap_target.begin());
  r.min_gap_target = *it;
  r.tau_min_gap_target = r.taus[i];
  const double lo = r.taus[i > 0 ? i - 1 : 0];
  const double hi = r.taus[std::min(i + 1, r.taus.size() - 1)];
  if (hi > lo) {
    auto [t, g] = refine_minimum(gap, lo, hi);
    if (g < r.min_gap_target) {
      r.min_gap_target = g;
      r.tau_min_gap_target = t;
    }
  }
  for (std::size_t k = 0; k < r.taus.size(); ++k)
    if (r.gap_target[k] < 1e-8) r.near_degenerate.push_back(r.taus[k]);
}

void check_grid(const std::vector<double>& taus) {
  if (taus.size() < 2 || taus.front() != 0.0 || taus.back() != 1.0 ||
      !std::is_sorted(taus.begin(), taus.end()) ||
      std::adjacent_find(taus.begin(), taus.end()) != taus.end())
    fail(ErrorKind::validation, "path grid must be strictly ascending from 0 to 1");
}

}  // namespace

ModelHamiltonian interpolate(const ModelHamiltonian& a, const ModelHamiltonian& b, double tau) {
  if (a.index() != b.index()) fail(ErrorKind::validation, "path endpoints belong to different classes");
  return std::visit(
      [&](const auto& ha) -> ModelHamiltonian {
        using T = std::decay_t<decltype(ha)>;
        const T& hb = std::get<T>(b);
        if constexpr (std::is_same_v<T, StoqLhHamiltonian>) {
          return mix(ha, hb, 1.0 - tau, tau);
        } else {
          T out = zero_like(ha);
          add_scaled(out, ha, 1.0 - tau);
          add_scaled(out, hb, tau);
          return out;
        }
      },
      a);
}

ModelHamiltonian AdiabaticPath::at(double tau) const { return interpolate(initial, final, tau); }

std::vector<double> uniform_grid(int samples) {
  if (samples < 2) fail(ErrorKind::validation, "a path grid needs at least 2 samples");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) / (samples - 1);
  t.back() = 1.0;
  return t;
}

StoqLhHamiltonian minus_sum_z(int qubits) {
  StoqLhHamiltonian h;
  h.qubits = qubits;
  if (qubits == 1) {
    // -Z = -|0><0| + |1><1|
    h.k_local_diagonal.push_back({{0}, {0}, 1.0});
    h.k_local_diagonal.push_back({{0}, {1}, -1.0});
    return h;
  }
  for (int u = 0; u < qubits; ++u) {
    const int v = (u + 1) % qubits;
    h.two_local.push_back(u < v ? pauli_term(u, v, {{"ZI", -1.0}}) : pauli_term(v, u, {{"IZ", -1.0}}));
  }
  return mix(h, h, 1.0, 0.0);
}

AdiabaticPath make_path(const ModelHamiltonian& final, int samples) {
  const auto* s = std::get_if<StoqLhHamiltonian>(&final);
  if (!s) fail(ErrorKind::validation, "the default -sum Z start needs a StoqLH problem Hamiltonian");
  AdiabaticPath p;
  p.initial = minus_sum_z(s->qubits);
  p.final = final;
  p.taus = uniform_grid(samples);
  return p;
}

AdiabaticPath two_qubit_test_path(int samples) {
  StoqLhHamiltonian hp;
  hp.qubits = 2;
  hp.two_local.push_back(pauli_term(0, 1, {{"XX", -0.5}, {"YY", -0.5}, {"ZZ", 0.5}, {"XI", -0.6}, {"IX", -0.6},
                                           {"ZI", -0.2}, {"IZ", -0.2}}));
  return make_path(hp, samples);
}

std::pair<ModelHamiltonian, Encoding> TranslatedPath::compile_at(double tau) const {
  ChainResult r = compile_one(*this, target.at(tau), params);
  if (!structure.empty() && r.steps.front().term_keys != structure)
    fail(ErrorKind::precondition, "structural instability: term structure changes at tau = " + tau_str(tau));
  return {r.steps.back().simulator, r.encoding};
}

TranslatedPath translate_path(const AdiabaticPath& path, const ReductionParams& p, const TranslateOptions& opt) {
  check_grid(path.taus);
  TranslatedPath tp;
  tp.target = path;
  tp.steps = steps_until(path.initial, opt.stop_at);

  for (double tau : path.taus) {
    const double g = model_gap(path.at(tau));
    if (!(g >= opt.gap_floor))
      fail(ErrorKind::gap_closure, "target gap " + tau_str(g) + " below the floor at tau = " + tau_str(tau));
  }

  if (tp.steps.front() == StepName::stoqlh_to_hcbstar) {
    std::set<TermKey> keys;
    for (double tau : path.taus)
      for (const auto& t : decompose_two_local_stoquastic(std::get<StoqLhHamiltonian>(path.at(tau))).terms)
        keys.insert({t.type, t.control_bit, t.first, t.second});
    tp.structure.assign(keys.begin(), keys.end());
  }

  ReductionParams q = p;
  if (q.p_min && *q.p_min <= 0.0) q.p_min.reset();  // smoothing stays on along a path
  if (q.delta_mode == DeltaMode::calibrated) {
    // Fix the gaps one step at a time: later steps see the worst-case earlier ones.
    for (std::size_t k = 0; k < tp.steps.size(); ++k) {
      TranslatedPath head = tp;
      head.steps.assign(tp.steps.begin(), tp.steps.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      std::map<StepName, double> inner, outer;
      for (double tau : path.taus) record_max(compile_one(head, path.at(tau), q), inner, outer);
      const StepName s = tp.steps[k];
      if (inner.count(s)) q.step_delta[s] = inner[s];
      if (outer.count(s)) q.step_outer_delta[s] = outer[s];
    }
  }
  tp.params = q;

  for (;;) {
    const PathReport rep = track_gaps(tp);
    bool ok = true;
    for (std::size_t i = 0; i < rep.taus.size(); ++i) {
      ok = ok && rep.gap_sim[i] >= opt.gap_fraction * rep.min_gap_target;
      ok = ok && rep.ground_overlap[i] <= opt.overlap_tolerance;
    }
    if (ok || tp.escalations >= opt.max_escalations) {
      tp.criteria_met = ok;
      break;
    }
    ++tp.escalations;
    for (auto& [s, d] : tp.params.step_delta) d *= opt.escalation;
    for (auto& [s, d] : tp.params.step_outer_delta) d *= opt.escalation;
    if (tp.params.explicit_delta) *tp.params.explicit_delta *= opt.escalation;
    if (tp.params.outer_delta) *tp.params.outer_delta *= opt.escalation;
  }

  for (double tau : path.taus) {
    ChainResult r = compile_one(tp, path.at(tau), tp.params);
    tp.encodings.push_back(r.encoding);
    tp.per_tau.push_back(std::move(r.steps));
  }
  return tp;
}

PathReport track_gaps(const AdiabaticPath& path) {
  check_grid(path.taus);
  PathReport r;
  r.taus = path.taus;
  auto gap = [&](double tau) { return model_gap(path.at(tau)); };
  for (double tau : path.taus) r.gap_target.push_back(gap(tau));
  fill_minimum(r, gap);
  std::tie(r.derivative_c1, r.derivative_c2) =
      derivative_norms([&](double tau) { return path.at(tau); }, path.taus);
  if (r.min_gap_target > 0) r.time_estimate = estimate_traversal_time(r, r.derivative_c1, r.derivative_c2);
  return r;
}

PathReport track_gaps(const TranslatedPath& tp) {
  PathReport r;
  r.taus = tp.target.taus;
  for (double tau : r.taus) {
    const SimPoint p = evaluate_point(tp, tau);
    r.gap_target.push_back(p.gap_target);
    r.gap_sim.push_back(p.gap_sim);
    r.ground_overlap.push_back(p.overlap);
  }
  fill_minimum(r, [&](double tau) { return model_gap(tp.target.at(tau)); });
  r.min_gap_sim = *std::min_element(r.gap_sim.begin(), r.gap_sim.end());
  std::tie(r.derivative_c1, r.derivative_c2) =
      derivative_norms([&](double tau) { return tp.compile_at(tau).first; }, r.taus);
  if (*r.min_gap_sim > 0) {
    PathReport sim = r;
    sim.min_gap_target = *r.min_gap_sim;
    r.time_estimate = estimate_traversal_time(sim, r.derivative_c1, r.derivative_c2);
  }
  return r;
}

std::pair<double, double> derivative_norms(const std::function<ModelHamiltonian(double)>& h,
                                           const std::vector<double>& taus) {
  if (taus.size() < 3) return {0.0, 0.0};
  std::vector<ModelHamiltonian> hs;
  hs.reserve(taus.size());
  for (double t : taus) hs.push_back(h(t));
  const BasisSpace basis = enumerate_basis(hs.front());
  std::vector<SparseMatrix> m;
  m.reserve(hs.size());
  for (const auto& x : hs) m.push_back(build_matrix(x, basis));
  double c1 = 0.0, c2 = 0.0;
  for (std::size_t i = 1; i + 1 < taus.size(); ++i) {
    const double hl = taus[i] - taus[i - 1], hr = taus[i + 1] - taus[i];
    const SparseMatrix d1 = (m[i + 1] - m[i - 1]) / (hl + hr);
    // Three-point second difference on a possibly uneven grid.
    const SparseMatrix d2 = (m[i + 1] / hr - m[i] * (1.0 / hr + 1.0 / hl) + m[i - 1] / hl) * (2.0 / (hl + hr));
    c1 = std::max(c1, operator_norm(d1));
    c2 = std::max(c2, operator_norm(d2));
  }
  return {c1, c2};
}

double estimate_traversal_time(const PathReport& report, double c1, double c2) {
  const double d = report.min_gap_target;
  if (!(d > 0)) fail(ErrorKind::gap_closure, "traversal time needs a positive minimum gap");
  return c1 / (d * d) + c2 / (d * d) + c1 * c1 / (d * d * d);
}

}  // namespace stoqtim
