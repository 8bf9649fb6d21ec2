#include "stoqtim/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "stoqtim/calibration.hpp"
#include "stoqtim/effective.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/operator.hpp"
#include "stoqtim/tim.hpp"

namespace stoqtim {

namespace {

constexpr double kDeltaCeiling = 1e200;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double calibrated_constant(StepName s) {
  const auto& c = calibration();
  switch (s) {
    case StepName::stoqlh_to_hcbstar: return c.stoqlh;
    case StepName::hcbstar_to_hcb1: return c.hcbstar_to_hcb1;
    case StepName::hcb1_to_hcb2: return c.hcb1_to_hcb2;
    case StepName::multiparticle_to_hcb2: return c.multiparticle;
    case StepName::hcb2_to_hcd: return c.hcb2_to_hcd;
    case StepName::hcd_to_tim: return c.hcd_to_tim;
    case StepName::tim_to_degree3: return c.chain;
  }
  return 1.0;
}

double checked_delta(StepName s, double d, const char* what) {
  if (!std::isfinite(d) || d > kDeltaCeiling)
    fail(ErrorKind::scale_infeasible, std::string(to_string(s)) + ": " + what + " = " + fmt(d) +
                                          " is beyond double-precision range");
  return d;
}

// Gap for an order-k layer with perturbation norm lambda.
double layer_delta(StepName s, int order, double lambda, double eps, double eta, const ReductionParams& p) {
  if (auto it = p.step_delta.find(s); it != p.step_delta.end()) return checked_delta(s, it->second, "delta");
  if (p.delta_mode == DeltaMode::explicit_value) {
    if (p.explicit_delta) return checked_delta(s, *p.explicit_delta, "delta");
    fail(ErrorKind::validation, std::string(to_string(s)) + ": explicit delta mode without a delta");
  }
  const double l = std::max(lambda, 1e-300);
  // ||V|| < delta/2 needs delta^{1/k} well above lambda
  const double d = std::max(calibrated_constant(s) * delta_form(order, l, eps, eta), std::pow(4.0 * l, order));
  return checked_delta(s, d, "delta");
}

// Explicit restriction gap for the step, if any.
std::optional<double> outer_override(StepName s, const ReductionParams& p) {
  if (auto it = p.step_outer_delta.find(s); it != p.step_outer_delta.end()) return it->second;
  return p.outer_delta;
}

// Restriction gap over a perturbative inner layer: a fixed multiple of its
// norm, raised until the leakage of its low states, l^2/gap, fits the budget.
double outer_delta(StepName s, double lambda, double leakage, double eps, double eta, const ReductionParams& p) {
  if (auto o = outer_override(s, p)) return checked_delta(s, *o, "outer delta");
  return checked_delta(s, std::max(p.outer_factor * std::max(lambda, 1e-300), delta_form(1, leakage, eps, eta)),
                       "outer delta");
}

// Penalty-only step: the penalty is the unperturbed part of a first-order layer.
double first_order_delta(StepName s, double lambda, double eps, double eta, const ReductionParams& p) {
  if (auto o = outer_override(s, p)) return checked_delta(s, *o, "outer delta");
  const double l = std::max(lambda, 1e-300);
  return checked_delta(s, std::max(calibration().first_order * delta_form(1, l, eps, eta), 4.0 * l),
                       "outer delta");
}

std::optional<BasisSpace> try_enumerate(const ModelHamiltonian& m, std::size_t cap) {
  try {
    return enumerate_basis(m, cap);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::size_limit) return std::nullopt;
    throw;
  }
}

std::optional<BasisSpace> small_target_basis(const ModelHamiltonian& h) {
  return try_enumerate(h, std::size_t{1} << 16);
}

// ||P+ H P- W|| for the penalty's zero-energy configurations P- (diagonal
// penalty), W the low_count lowest eigenvectors of H on P- (all of P- when
// low_count is 0); the whole norm when the sector is too large to enumerate.
double leakage_norm(const ModelHamiltonian& op, const ModelHamiltonian& penalty,
                    const std::optional<BasisSpace>& sector, std::size_t cap, std::size_t low_count,
                    bool& estimated) {
  if (!sector || sector->size() > cap || sector->size() == 0) {
    estimated = true;
    return coefficient_norm_bound(op);
  }
  const Eigen::MatrixXd h(build_matrix(op, *sector));
  std::vector<Eigen::Index> minus, plus;
  for (std::size_t i = 0; i < sector->size(); ++i)
    (std::abs(diagonal_element(penalty, (*sector)[i])) <= 1e-12 ? minus : plus).push_back(static_cast<Eigen::Index>(i));
  if (minus.empty() || plus.empty()) return 0.0;
  Eigen::MatrixXd off = block(h, plus, minus);
  if (low_count > 0 && low_count < minus.size()) {
    const SparseMatrix inner = block(h, minus, minus).sparseView(0.0, 0.0);
    off = off * lowest_eigenpairs(inner, static_cast<int>(low_count)).vectors;
  }
  return spectral_norm(off);
}

double sector_norm(const ModelHamiltonian& op, const std::optional<BasisSpace>& sector, std::size_t cap,
                   bool& estimated) {
  if (sector && sector->size() <= cap && sector->size() > 0)
    return operator_norm(build_matrix(op, *sector));
  estimated = true;
  return coefficient_norm_bound(op);
}

template <class M>
M copy_zero(const M& like);
template <>
HcbHamiltonian copy_zero(const HcbHamiltonian& h) {
  return zero_hcb(h.graph, h.particles, h.range, h.star);
}
template <>
HcdHamiltonian copy_zero(const HcdHamiltonian& h) {
  return zero_hcd(h.graph, h.dimers);
}
template <>
TimHamiltonian copy_zero(const TimHamiltonian& h) {
  return zero_tim(h.graph, h.form);
}

struct LayerPieces {
  int order = 2;
  ModelHamiltonian h0, v_main, v_extra;
  std::optional<ModelHamiltonian> v_tilde;
  std::optional<ModelHamiltonian> penalty;
};

template <class M>
M assemble_inner(const LayerPieces& L, double delta) {
  M out = copy_zero(std::get<M>(L.h0));
  add_scaled(out, std::get<M>(L.h0), delta);
  add_scaled(out, std::get<M>(L.v_main), std::pow(delta, 1.0 - 1.0 / L.order));
  if (L.v_tilde) add_scaled(out, std::get<M>(*L.v_tilde), std::cbrt(delta));
  add_scaled(out, std::get<M>(L.v_extra), 1.0);
  return out;
}

std::optional<BasisSpace> restrict_to_penalty_ground(const std::optional<BasisSpace>& full,
                                                     const std::optional<ModelHamiltonian>& penalty) {
  if (!full || !penalty) return full;
  const ModelHamiltonian& pen = *penalty;
  return restrict_basis(*full, [&](std::uint64_t s) { return std::abs(diagonal_element(pen, s)) <= 1e-12; });
}

// Chooses the gaps, assembles the simulator and fills the step record.
template <class M>
void finalize(ReductionStep& st, LayerPieces L, const ReductionParams& p,
              const std::function<std::optional<BasisSpace>()>& full_sector,
              const std::function<std::optional<BasisSpace>()>& inner_sector) {
  const bool two_layer = L.penalty.has_value();
  st.eps_budget = p.eps_step();
  st.eta_budget = p.eta_step();
  const double eps = two_layer ? st.eps_budget / 2 : st.eps_budget;
  const double eta = two_layer ? st.eta_budget / 2 : st.eta_budget;

  PerturbativeLayer layer;
  layer.order = L.order;
  layer.h0 = L.h0;
  layer.v_main = L.v_main;
  layer.v_extra = L.v_extra;
  layer.v_tilde = L.v_tilde;

  const auto inner = inner_sector();
  bool est = false;
  double lambda = std::max(sector_norm(L.v_main, inner, p.norm_dimension_cap, est),
                           sector_norm(L.v_extra, inner, p.norm_dimension_cap, est));
  if (L.v_tilde) lambda = std::max(lambda, sector_norm(*L.v_tilde, inner, p.norm_dimension_cap, est));
  layer.lambda = lambda;
  layer.lambda_estimated = est;
  layer.delta = layer_delta(st.name, L.order, lambda, eps, eta, p);
  st.delta = layer.delta;

  M sim = assemble_inner<M>(L, layer.delta);
  if (two_layer) {
    RestrictionLayer r;
    r.penalty = *L.penalty;
    bool est2 = false;
    const auto full = full_sector();
    r.lambda = sector_norm(ModelHamiltonian(sim), full, p.norm_dimension_cap, est2);
    const auto tb = small_target_basis(st.target);
    r.leakage = leakage_norm(ModelHamiltonian(sim), r.penalty, full, p.norm_dimension_cap, tb ? tb->size() : 0, est2);
    r.lambda_estimated = est2;
    r.delta = outer_delta(st.name, r.lambda, r.leakage, eps, eta, p);
    add_scaled(sim, std::get<M>(r.penalty), r.delta);
    st.restriction = std::move(r);
  }
  st.layer = std::move(layer);
  st.simulator = std::move(sim);
}

Encoding make_map(std::function<std::uint64_t(std::uint64_t)> rule, int sim_nodes, const ModelHamiltonian& target) {
  auto tb = small_target_basis(target);
  return basis_map_encoding(std::move(rule), sim_nodes, tb ? &*tb : nullptr);
}

void require_nodes(int n, StepName s) {
  if (n > 64)
    fail(ErrorKind::size_limit, std::string(to_string(s)) + ": simulator needs " + std::to_string(n) +
                                    " nodes, beyond the 64-node configuration word");
}

Eigen::Matrix4d elementary_operator(const ElementaryTerm& t) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  switch (t.type) {
    case 1:  // X on first, projector on second
      m(0 + t.control_bit, 2 + t.control_bit) = m(2 + t.control_bit, 0 + t.control_bit) = 1.0;
      break;
    case 2:
      m(2 * t.control_bit, 2 * t.control_bit + 1) = m(2 * t.control_bit + 1, 2 * t.control_bit) = 1.0;
      break;
    case 3: m(1, 2) = m(2, 1) = 2.0; break;
    case 4: m(0, 3) = m(3, 0) = 2.0; break;
    default: fail(ErrorKind::precondition, "unknown elementary term type");
  }
  return m;
}

}  // namespace

double delta_form(int order, double lambda, double eps, double eta) {
  const double l = lambda;
  switch (order) {
    case 1: return l * l / eps + l / eta;
    case 2: return std::pow(l, 6) / (eps * eps) + l * l / (eta * eta);
    default: return std::pow(l, 12) / (eps * eps * eps) + std::pow(l, 3) / (eta * eta * eta);
  }
}

const char* to_string(StepName s) {
  switch (s) {
    case StepName::stoqlh_to_hcbstar: return "stoqlh-to-hcbstar";
    case StepName::hcbstar_to_hcb1: return "hcbstar-to-hcb1";
    case StepName::hcb1_to_hcb2: return "hcb1-to-hcb2";
    case StepName::multiparticle_to_hcb2: return "multiparticle-to-hcb2";
    case StepName::hcb2_to_hcd: return "hcb2-to-hcd";
    case StepName::hcd_to_tim: return "hcd-to-tim";
    case StepName::tim_to_degree3: return "tim-to-degree3";
  }
  return "?";
}

StepName parse_step_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(StepName::tim_to_degree3); ++i)
    if (s == to_string(static_cast<StepName>(i))) return static_cast<StepName>(i);
  fail(ErrorKind::validation, "unknown step '" + s + "'");
}

const char* to_string(Verification v) {
  switch (v) {
    case Verification::not_run: return "not-run";
    case Verification::verified: return "verified";
    case Verification::failed: return "failed";
    case Verification::scale_infeasible: return "scale-infeasible";
  }
  return "?";
}

double coefficient_norm_bound(const ModelHamiltonian& h) {
  double b = 0.0;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TimHamiltonian>) {
          for (double x : m.transverse) b += std::abs(x);
          for (double x : m.longitudinal) b += std::abs(x);
          for (auto& [e, x] : m.ising) b += std::abs(x);
        } else if constexpr (std::is_same_v<T, HcbHamiltonian>) {
          for (auto& [e, x] : m.hopping) b += std::abs(x);
          for (auto& [k, x] : m.controlled) b += std::abs(x);
          for (double x : m.chemical) b += std::abs(x);
          for (auto& [e, x] : m.pair_potential) b += std::abs(x);
          for (auto& t : m.projectors) b += std::abs(t.weight);
        } else if constexpr (std::is_same_v<T, HcdHamiltonian>) {
          // each dimer has at most n hopping partners per endpoint
          b += std::abs(m.hopping) * 2.0 * m.dimers * m.node_count();
          for (double x : m.chemical) b += std::abs(x);
          for (auto& [e, x] : m.pair_potential) b += std::abs(x);
        } else {
          for (auto& t : m.two_local) b += t.matrix.cwiseAbs().rowwise().sum().maxCoeff();
          for (auto& d : m.k_local_diagonal) b += std::abs(d.weight);
        }
        b += std::abs(m.energy_shift);
      },
      h);
  return b;
}

// ---------------------------------------------------------------------------
// Two-local decomposition

Eigen::Matrix4d TwoLocalDecomposition::reconstruct(const Edge& pair) const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  auto it = diagonal.find(pair);
  if (it != diagonal.end()) m.diagonal() = it->second;
  for (const auto& t : terms)
    if (t.first == pair.first && t.second == pair.second) m -= t.weight * elementary_operator(t);
  return m;
}

TwoLocalDecomposition decompose_two_local_stoquastic(const StoqLhHamiltonian& h) {
  std::map<Edge, Eigen::Matrix4d> blocks;
  for (auto t : h.two_local) {
    if (t.first < 0 || t.second < 0 || t.first >= h.qubits || t.second >= h.qubits || t.first == t.second)
      fail(ErrorKind::validation, "stoqlh two_local: bad qubit pair");
    if (!t.matrix.allFinite()) fail(ErrorKind::validation, "stoqlh two_local: non-finite entry");
    if ((t.matrix - t.matrix.transpose()).cwiseAbs().maxCoeff() > kNonnegTolerance)
      fail(ErrorKind::validation, "stoqlh two_local: matrix is not symmetric");
    if (t.first > t.second) {
      static const int swap_idx[4] = {0, 2, 1, 3};
      Eigen::Matrix4d m;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = t.matrix(swap_idx[r], swap_idx[c]);
      t.matrix = m;
      std::swap(t.first, t.second);
    }
    auto [it, fresh] = blocks.try_emplace(make_edge(t.first, t.second), Eigen::Matrix4d::Zero());
    it->second += 0.5 * (t.matrix + t.matrix.transpose());
  }

  TwoLocalDecomposition out;
  for (const auto& [pair, m] : blocks) {
    const Eigen::Matrix4d g = -m;
    auto coef = [&](const char* p) { return (g * pauli4(p)).trace() / 4.0; };
    const double xi = coef("XI"), ix = coef("IX"), xx = coef("XX"), yy = coef("YY"), xz = coef("XZ"),
                 zx = coef("ZX");
    struct Candidate {
      int type, bit;
      double w;
      const char* combo;
      int r, c;
    };
    const Candidate cands[] = {
        {3, 0, (xx + yy) / 2, "h_XX + h_YY", 1, 2}, {4, 0, (xx - yy) / 2, "h_XX - h_YY", 0, 3},
        {1, 0, xi + xz, "h_XI + h_XZ", 0, 2},       {1, 1, xi - xz, "h_XI - h_XZ", 1, 3},
        {2, 0, ix + zx, "h_IX + h_ZX", 0, 1},       {2, 1, ix - zx, "h_IX - h_ZX", 2, 3},
    };
    for (const auto& c : cands) {
      if (c.w < -kNonnegTolerance) {
        std::ostringstream os;
        os << "not stoquastic on qubits (" << pair.first << "," << pair.second << "): " << c.combo
           << " < 0, entry <" << (c.r >> 1) << (c.r & 1) << "|H|" << (c.c >> 1) << (c.c & 1)
           << "> = " << m(c.r, c.c);
        fail(ErrorKind::not_stoquastic, os.str());
      }
      if (c.w > 0.0) out.terms.push_back({c.type, c.bit, pair.first, pair.second, c.w});
    }
    Eigen::Vector4d d = m.diagonal();
    if (!d.isZero(0.0)) out.diagonal[pair] = d;
  }
  return out;
}

// ---------------------------------------------------------------------------
// StoqLH -> HCB*: dual rail plus one ancilla gadget per XX+YY / XX-YY term.

ReductionStep reduce_stoqlh_to_hcbstar(const StoqLhHamiltonian& input, const ReductionParams& p,
                                       const std::vector<TermKey>* forced_terms) {
  const auto dec = decompose_two_local_stoquastic(input);
  StoqLhHamiltonian h = input;
  validate(h);
  const int n = h.qubits;

  std::map<TermKey, double> terms;
  for (const auto& t : dec.terms) terms[{t.type, t.control_bit, t.first, t.second}] += t.weight;
  if (forced_terms)
    for (const auto& k : *forced_terms) terms.try_emplace(k, 0.0);

  ReductionStep st;
  st.name = StepName::stoqlh_to_hcbstar;
  st.target = h;
  const double eps_t = p.eps_step();
  const double p_min = p.p_min ? *p.p_min : (terms.empty() ? 0.0 : eps_t * 1e-3 / terms.size());
  if (p_min < 0) fail(ErrorKind::validation, "p_min must be >= 0");
  for (auto& [k, w] : terms) {
    const double smoothed = std::sqrt(w * w + p_min * p_min);
    st.floor_error += (smoothed - w) * (k.type >= 3 ? 2.0 : 1.0);
    w = smoothed;
    st.term_keys.push_back(k);
  }

  auto t_node = [](int i) { return 2 * i; };
  auto b_node = [](int i) { return 2 * i + 1; };
  auto rail = [&](int i, int x) { return x ? b_node(i) : t_node(i); };

  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back("t(" + std::to_string(i) + ")");
    labels.push_back("b(" + std::to_string(i) + ")");
  }
  std::set<Edge> edges;
  struct Gadget {
    TermKey key;
    double weight;
    int ancilla;
  };
  std::vector<Gadget> gadgets;
  std::vector<std::pair<TermKey, double>> controlled_terms;
  for (const auto& [k, w] : terms) {
    if (k.type >= 3) {
      const int a = 2 * n + static_cast<int>(gadgets.size());
      labels.push_back("a(" + std::to_string(gadgets.size()) + ")");
      gadgets.push_back({k, w, a});
    } else {
      const int target_qubit = k.type == 1 ? k.first : k.second;
      edges.insert(make_edge(t_node(target_qubit), b_node(target_qubit)));
      controlled_terms.emplace_back(k, w);
    }
  }
  const int nodes = 2 * n + static_cast<int>(gadgets.size());
  require_nodes(nodes, st.name);
  for (const auto& g : gadgets) {
    const int i = g.key.first, j = g.key.second;
    // type 4 is type 3 with t(j) and b(j) exchanged
    const int tj = g.key.type == 3 ? t_node(j) : b_node(j);
    const int bj = g.key.type == 3 ? b_node(j) : t_node(j);
    edges.insert(make_edge(t_node(i), g.ancilla));
    edges.insert(make_edge(tj, g.ancilla));
    edges.insert(make_edge(b_node(i), bj));
  }
  const InteractionGraph graph(nodes, {edges.begin(), edges.end()}, labels);

  HcbHamiltonian penalty = zero_hcb(graph, n, 1, true);
  HcbHamiltonian h0 = penalty, vmain = penalty, vtilde = penalty, vextra = penalty;
  for (int i = 0; i < n; ++i) penalty.pair_potential[make_edge(t_node(i), b_node(i))] = 1.0;
  for (const auto& g : gadgets) {
    const int i = g.key.first, j = g.key.second;
    const int tj = g.key.type == 3 ? t_node(j) : b_node(j);
    const int bj = g.key.type == 3 ? b_node(j) : t_node(j);
    const double pp = 2.0 * g.weight;  // XX +- YY = 2 (|01><10| + h.c.)
    const double a1 = std::cbrt(pp), a2 = a1 * a1;
    h0.chemical[g.ancilla] = 1.0;
    vmain.hopping[make_edge(t_node(i), g.ancilla)] += a1;
    vmain.hopping[make_edge(tj, g.ancilla)] += a1;
    vmain.controlled[{g.ancilla, make_edge(b_node(i), bj)}] += a1;
    vtilde.pair_potential[make_edge(t_node(i), tj)] += 2.0 * a2;
    vtilde.pair_potential[make_edge(t_node(i), bj)] += a2;
    vtilde.pair_potential[make_edge(b_node(i), tj)] += a2;
  }
  for (const auto& [k, w] : controlled_terms) {
    // type 1: X on first, controlled by second; type 2 the other way round
    const int x_qubit = k.type == 1 ? k.first : k.second;
    const int c_qubit = k.type == 1 ? k.second : k.first;
    vextra.controlled[{rail(c_qubit, k.control_bit), make_edge(t_node(x_qubit), b_node(x_qubit))}] += w;
  }
  for (const auto& [pair, d] : dec.diagonal)
    for (int a = 0; a < 4; ++a)
      if (d(a) != 0.0) vextra.pair_potential[make_edge(rail(pair.first, a >> 1), rail(pair.second, a & 1))] += d(a);

  // k-local diagonal terms -> projectors on the complementary rails
  std::map<std::vector<int>, std::map<std::vector<int>, double>> groups;
  for (const auto& d : h.k_local_diagonal) {
    std::vector<int> order(d.qubits.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d.qubits[a] < d.qubits[b]; });
    std::vector<int> q, x;
    for (int o : order) {
      q.push_back(d.qubits[o]);
      x.push_back(d.bits[o]);
    }
    groups[q][x] += d.weight;
  }
  vextra.energy_shift = h.energy_shift;
  for (auto& [qs, weights] : groups) {
    bool negative = false;
    double shift = 0.0;
    for (auto& [x, w] : weights) {
      negative = negative || w < 0.0;
      shift += std::abs(w);
    }
    if (negative) {
      const int k = static_cast<int>(qs.size());
      for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> x(k);
        for (int b = 0; b < k; ++b) x[b] = (mask >> b) & 1;
        weights[x] += shift;
      }
      vextra.energy_shift += shift;
    }
    for (auto& [x, w] : weights) {
      if (w == 0.0) continue;
      ProjectorTerm pt;
      for (std::size_t b = 0; b < qs.size(); ++b) pt.nodes.push_back(x[b] ? t_node(qs[b]) : b_node(qs[b]));
      std::sort(pt.nodes.begin(), pt.nodes.end());
      pt.weight = w;
      vextra.projectors.push_back(std::move(pt));
    }
  }

  st.encoding = make_map(
      [n](std::uint64_t x) {
        std::uint64_t s = 0;
        for (int i = 0; i < n; ++i) s |= bit(occupied(x, i) ? 2 * i + 1 : 2 * i);
        return s;
      },
      nodes, st.target);

  LayerPieces L;
  L.order = 3;
  L.h0 = h0;
  L.v_main = vmain;
  L.v_extra = vextra;
  L.v_tilde = vtilde;
  L.penalty = penalty;
  const ModelHamiltonian sector_model = zero_hcb(graph, n, 1, true);
  auto full = [&]() { return try_enumerate(sector_model, p.norm_dimension_cap * 64); };
  auto inner = [&, pen = L.penalty]() { return restrict_to_penalty_ground(full(), pen); };
  if (gadgets.empty()) {
    // Nothing at third order: the penalty layer alone, V_extra at first order.
    L.order = 1;
  }
  if (L.order == 1) {
    st.eps_budget = p.eps_step();
    st.eta_budget = p.eta_step();
    HcbHamiltonian sim = vextra;
    RestrictionLayer r;
    r.penalty = penalty;
    bool est = false;
    r.lambda = sector_norm(ModelHamiltonian(sim), full(), p.norm_dimension_cap, est);
    r.lambda_estimated = est;
    r.delta = first_order_delta(st.name, r.lambda, st.eps_budget, st.eta_budget, p);
    add_scaled(sim, penalty, r.delta);
    st.delta = 0.0;
    st.restriction = std::move(r);
    st.simulator = sim;
    return st;
  }
  finalize<HcbHamiltonian>(st, std::move(L), p, full, inner);
  return st;
}

// ---------------------------------------------------------------------------
// HCB* -> HCB1: one ancilla per controlled hop.

ReductionStep reduce_hcbstar_to_hcb1(const HcbHamiltonian& input, const ReductionParams& p) {
  HcbHamiltonian h = input;
  validate(h);
  if (h.range != 1) fail(ErrorKind::validation, "hcbstar-to-hcb1: target must have range 1");
  ReductionStep st;
  st.name = StepName::hcbstar_to_hcb1;
  st.target = h;
  st.eps_budget = p.eps_step();
  st.eta_budget = p.eta_step();
  const int n = h.node_count();
  if (h.controlled.empty()) {
    HcbHamiltonian sim = h;
    sim.star = false;
    st.simulator = sim;
    st.encoding = make_map([](std::uint64_t s) { return s; }, n, st.target);
    st.notes.push_back("no controlled hopping: simulator equals target");
    return st;
  }
  const int nodes = n + static_cast<int>(h.controlled.size());
  require_nodes(nodes, st.name);
  std::vector<std::string> labels;
  for (int u = 0; u < n; ++u) labels.push_back(h.graph.label(u));
  std::set<Edge> edges;
  for (const auto& [e, t] : h.hopping)
    if (t > 0.0) edges.insert(e);
  int a = n;
  for (const auto& [k, t] : h.controlled) {
    labels.push_back("a(" + h.graph.label(k.control) + ";" + h.graph.label(k.edge.first) + "," +
                     h.graph.label(k.edge.second) + ")");
    edges.insert(make_edge(k.edge.first, a));
    edges.insert(make_edge(k.edge.second, a));
    ++a;
  }
  const InteractionGraph graph(nodes, {edges.begin(), edges.end()}, labels);
  HcbHamiltonian penalty = zero_hcb(graph, h.particles, 1, false);
  HcbHamiltonian h0 = penalty, vmain = penalty, vextra = penalty;
  for (const auto& [e, t] : h.hopping)
    if (t > 0.0) vextra.hopping[e] = t;
  for (int u = 0; u < n; ++u) vextra.chemical[u] = h.chemical[u];
  vextra.pair_potential = h.pair_potential;
  vextra.projectors = h.projectors;
  vextra.energy_shift = h.energy_shift;
  a = n;
  for (const auto& [k, t] : h.controlled) {
    penalty.chemical[a] += 1.0;
    penalty.pair_potential[make_edge(k.control, a)] += -1.0;
    h0.chemical[a] = 1.0;
    const double s = std::sqrt(t);
    vmain.hopping[make_edge(k.edge.first, a)] += s;
    vmain.hopping[make_edge(k.edge.second, a)] += s;
    vextra.pair_potential[make_edge(k.control, k.edge.first)] += t;
    vextra.pair_potential[make_edge(k.control, k.edge.second)] += t;
    ++a;
  }
  st.encoding = make_map([](std::uint64_t s) { return s; }, nodes, st.target);
  LayerPieces L;
  L.order = 2;
  L.h0 = h0;
  L.v_main = vmain;
  L.v_extra = vextra;
  L.penalty = penalty;
  const ModelHamiltonian sector_model = zero_hcb(graph, h.particles, 1, false);
  auto full = [&]() { return try_enumerate(sector_model, p.norm_dimension_cap * 64); };
  auto inner = [&, pen = L.penalty]() { return restrict_to_penalty_ground(full(), pen); };
  finalize<HcbHamiltonian>(st, std::move(L), p, full, inner);
  return st;
}

// ---------------------------------------------------------------------------
// HCB1 -> HCB2: subdivide every edge.

ReductionStep reduce_hcb1_to_hcb2(const HcbHamiltonian& input, const ReductionParams& p) {
  HcbHamiltonian h = input;
  validate(h);
  if (h.range != 1) fail(ErrorKind::validation, "hcb1-to-hcb2: target must have range 1");
  if (!h.controlled.empty())
    fail(ErrorKind::precondition, "hcb1-to-hcb2: eliminate controlled hopping first (hcbstar-to-hcb1)");
  ReductionStep st;
  st.name = StepName::hcb1_to_hcb2;
  st.target = h;
  const int n = h.node_count();
  const auto& E = h.graph.edges();
  const int nodes = n + static_cast<int>(E.size());
  require_nodes(nodes, st.name);
  std::vector<std::string> labels;
  for (int u = 0; u < n; ++u) labels.push_back(h.graph.label(u));
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < E.size(); ++k) {
    const int w = n + static_cast<int>(k);
    labels.push_back(h.graph.label(E[k].first) + "+" + h.graph.label(E[k].second));
    edges.push_back(make_edge(E[k].first, w));
    edges.push_back(make_edge(w, E[k].second));
  }
  const InteractionGraph graph(nodes, edges, labels);
  HcbHamiltonian h0 = zero_hcb(graph, h.particles, 2), vmain = h0, vextra = h0;
  for (int u = 0; u < n; ++u) vextra.chemical[u] = h.chemical[u];
  vextra.pair_potential = h.pair_potential;
  vextra.projectors = h.projectors;
  vextra.energy_shift = h.energy_shift;
  for (std::size_t k = 0; k < E.size(); ++k) {
    const int w = n + static_cast<int>(k);
    const auto [u, v] = E[k];
    const auto it = h.hopping.find(E[k]);
    const double t = it == h.hopping.end() ? 0.0 : it->second;
    h0.chemical[w] = 1.0;
    if (t > 0.0) {
      vmain.hopping[make_edge(u, w)] = std::sqrt(t);
      vmain.hopping[make_edge(w, v)] = std::sqrt(t);
    }
    // t (n_u - n_v)^2
    vextra.chemical[u] += t;
    vextra.chemical[v] += t;
    vextra.pair_potential[E[k]] += -2.0 * t;
  }
  st.encoding = make_map([](std::uint64_t s) { return s; }, nodes, st.target);
  LayerPieces L;
  L.order = 2;
  L.h0 = h0;
  L.v_main = vmain;
  L.v_extra = vextra;
  const ModelHamiltonian sector_model = zero_hcb(graph, h.particles, 2);
  auto full = [&]() { return try_enumerate(sector_model, p.norm_dimension_cap * 64); };
  finalize<HcbHamiltonian>(st, std::move(L), p, full, full);
  return st;
}

// ---------------------------------------------------------------------------
// Projector terms -> ancilla pairs a(alpha), b(alpha).

ReductionStep reduce_multiparticle_to_hcb2(const HcbHamiltonian& input, const ReductionParams& p) {
  HcbHamiltonian h = input;
  validate(h);
  if (h.range != 2) fail(ErrorKind::validation, "multiparticle-to-hcb2: target must have range 2");
  if (!h.controlled.empty()) fail(ErrorKind::validation, "multiparticle-to-hcb2: controlled hopping present");
  ReductionStep st;
  st.name = StepName::multiparticle_to_hcb2;
  st.target = h;
  const int n = h.node_count();
  const int d = static_cast<int>(h.projectors.size());
  const int nodes = n + 2 * d;
  require_nodes(nodes, st.name);
  std::vector<std::string> labels;
  for (int u = 0; u < n; ++u) labels.push_back(h.graph.label(u));
  std::set<Edge> edges(h.graph.edges().begin(), h.graph.edges().end());
  for (int al = 0; al < d; ++al) {
    const int a = n + 2 * al, b = a + 1;
    labels.push_back("a(" + std::to_string(al) + ")");
    labels.push_back("b(" + std::to_string(al) + ")");
    edges.insert(make_edge(a, b));
    for (int u : h.projectors[al].nodes) edges.insert(make_edge(b, u));
  }
  const InteractionGraph graph(nodes, {edges.begin(), edges.end()}, labels);
  HcbHamiltonian h0 = zero_hcb(graph, h.particles + d, 2), vmain = h0, vextra = h0;
  vextra.hopping = h.hopping;
  for (int u = 0; u < n; ++u) vextra.chemical[u] = h.chemical[u];
  vextra.pair_potential = h.pair_potential;
  vextra.energy_shift = h.energy_shift;
  std::uint64_t ancillas = 0;
  for (int al = 0; al < d; ++al) {
    const int a = n + 2 * al, b = a + 1;
    ancillas |= bit(a);
    h0.chemical[a] = -1.0;  // H0 = sum (1 - n_a)
    h0.energy_shift += 1.0;
    if (h.projectors[al].weight > 0.0) vmain.hopping[make_edge(a, b)] = std::sqrt(h.projectors[al].weight);
  }
  st.encoding = make_map([ancillas](std::uint64_t s) { return s | ancillas; }, nodes, st.target);
  LayerPieces L;
  L.order = 2;
  L.h0 = h0;
  L.v_main = vmain;
  L.v_extra = vextra;
  const ModelHamiltonian sector_model = zero_hcb(graph, h.particles + d, 2);
  auto full = [&]() { return try_enumerate(sector_model, p.norm_dimension_cap * 64); };
  finalize<HcbHamiltonian>(st, std::move(L), p, full, full);
  return st;
}

// ---------------------------------------------------------------------------
// HCB2 -> HCD: hanging nodes u*, edge midpoints u+v, third order.

ReductionStep reduce_hcb2_to_hcd(const HcbHamiltonian& input, const ReductionParams& p) {
  HcbHamiltonian h = input;
  validate(h);
  if (h.range != 2) fail(ErrorKind::validation, "hcb2-to-hcd: target must have range 2");
  if (!h.controlled.empty()) fail(ErrorKind::validation, "hcb2-to-hcd: controlled hopping present");
  if (!h.projectors.empty())
    fail(ErrorKind::precondition, "hcb2-to-hcd: absorb projector terms first (multiparticle-to-hcb2)");
  ReductionStep st;
  st.name = StepName::hcb2_to_hcd;
  st.target = h;
  const int n = h.node_count();
  const auto& E = h.graph.edges();
  const int nodes = 2 * n + static_cast<int>(E.size());
  require_nodes(nodes, st.name);

  // Floor amplitudes so that every Delta_w = sqrt(t / t_uv) stays finite.
  std::vector<double> t(E.size());
  const double floor = E.empty() ? 0.0 : p.eps_step() / (2.0 * E.size());
  for (std::size_t k = 0; k < E.size(); ++k) {
    auto it = h.hopping.find(E[k]);
    const double raw = it == h.hopping.end() ? 0.0 : it->second;
    t[k] = std::max(raw, floor);
    st.floor_error += t[k] - raw;
  }
  const double tmax = t.empty() ? 0.0 : *std::max_element(t.begin(), t.end());

  std::vector<std::string> labels;
  for (int u = 0; u < n; ++u) labels.push_back(h.graph.label(u));
  for (int u = 0; u < n; ++u) labels.push_back(h.graph.label(u) + "*");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) edges.push_back(make_edge(u, n + u));
  for (std::size_t k = 0; k < E.size(); ++k) {
    const int w = 2 * n + static_cast<int>(k);
    labels.push_back(h.graph.label(E[k].first) + "+" + h.graph.label(E[k].second));
    edges.push_back(make_edge(E[k].first, w));
    edges.push_back(make_edge(w, E[k].second));
  }
  const InteractionGraph graph(nodes, edges, labels);
  HcdHamiltonian h0 = zero_hcd(graph, h.particles), vmain = h0, vtilde = h0, vextra = h0;
  std::vector<double> root_sum(n, 0.0), plain_sum(n, 0.0);
  for (std::size_t k = 0; k < E.size(); ++k) {
    h0.chemical[2 * n + k] = std::sqrt(tmax / t[k]);
    for (int u : {E[k].first, E[k].second}) {
      root_sum[u] += std::sqrt(t[k]);
      plain_sum[u] += t[k];
    }
  }
  vmain.hopping = std::cbrt(tmax);
  for (int u = 0; u < n; ++u) {
    if (tmax == 0.0) break;
    const double du = root_sum[u] / std::sqrt(tmax);
    const double d2u = (root_sum[u] * root_sum[u] - plain_sum[u]) / tmax;
    vtilde.chemical[u] = std::cbrt(tmax * tmax) * du;
    vextra.chemical[u] = tmax * d2u;
  }
  for (int u = 0; u < n; ++u) vextra.chemical[u] += h.chemical[u];
  vextra.pair_potential = h.pair_potential;
  vextra.energy_shift = h.energy_shift;
  st.encoding = make_map([n](std::uint64_t s) { return s | (s << n); }, nodes, st.target);
  LayerPieces L;
  L.order = 3;
  L.h0 = h0;
  L.v_main = vmain;
  L.v_extra = vextra;
  L.v_tilde = vtilde;
  const ModelHamiltonian sector_model = zero_hcd(graph, h.particles);
  auto full = [&]() { return try_enumerate(sector_model, p.norm_dimension_cap * 64); };
  finalize<HcdHamiltonian>(st, std::move(L), p, full, full);
  return st;
}

// ---------------------------------------------------------------------------
// HCD -> TIM: dimer penalty, X fields at second order.

static TimHamiltonian dimer_penalty(const InteractionGraph& g, const InteractionGraph& on) {
  // H0 = N_U - 2 N_E + Gamma sum_{D(u,v)=2} n_u n_v
  const int n = g.node_count();
  const DistanceTable dist(g);
  TimHamiltonian h0 = zero_tim(on);
  const double gamma = 2.0 * static_cast<double>(g.edges().size()) + 1.0;
  for (int u = 0; u < n; ++u) h0.longitudinal[u] = 1.0;
  for (const auto& e : g.edges()) h0.ising[e] += -2.0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (dist(u, v) == 2) h0.ising[{u, v}] += gamma;
  return h0;
}

TimHamiltonian dimer_penalty(const InteractionGraph& g) {
  std::vector<Edge> pairs;
  for (int u = 0; u < g.node_count(); ++u)
    for (int v = u + 1; v < g.node_count(); ++v) pairs.push_back({u, v});
  return dimer_penalty(g, InteractionGraph(g.node_count(), pairs, g.labels()));
}

ReductionStep reduce_hcd_to_tim(const HcdHamiltonian& input, const ReductionParams& p) {
  HcdHamiltonian h = input;
  validate(h);
  ReductionStep st;
  st.name = StepName::hcd_to_tim;
  st.target = h;
  const int n = h.node_count();
  const int m = h.dimers;
  // The particle-number penalty couples every pair, so the TIM graph is complete.
  std::vector<Edge> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.push_back({u, v});
  std::vector<std::string> labels;
  for (int u = 0; u < n; ++u) labels.push_back(h.graph.label(u));
  const InteractionGraph graph(n, all, labels);

  TimHamiltonian penalty = zero_tim(graph), vmain = penalty, vextra = penalty;
  const TimHamiltonian h0 = dimer_penalty(h.graph, graph);
  // Stoquastic sign for the X fields; only even powers enter at second order.
  const double root_t = std::sqrt(h.hopping);
  for (int u = 0; u < n; ++u) vmain.transverse[u] = -root_t;
  for (int u = 0; u < n; ++u) vextra.longitudinal[u] = h.chemical[u] + h.hopping;
  for (const auto& [e, w] : h.pair_potential) vextra.ising[e] += w;
  vextra.energy_shift = h.energy_shift;
  // (N_U - 2m)(N_U - 2m + 1) keeps the 2m and 2m-1 particle sectors at zero
  for (int u = 0; u < n; ++u) penalty.longitudinal[u] = 2.0 - 4.0 * m;
  for (const auto& e : all) penalty.ising[e] = 2.0;
  penalty.energy_shift = 2.0 * m * (2.0 * m - 1.0);

  st.encoding = make_map([](std::uint64_t s) { return s; }, n, st.target);
  LayerPieces L;
  L.order = 2;
  L.h0 = h0;
  L.v_main = vmain;
  L.v_extra = vextra;
  L.penalty = penalty;
  auto full = [&]() -> std::optional<BasisSpace> {
    if (n > 24) return std::nullopt;
    return try_enumerate(ModelHamiltonian(zero_tim(graph)), p.norm_dimension_cap * 64);
  };
  auto inner = [&]() -> std::optional<BasisSpace> {
    try {
      BasisSpace b = enumerate_particles(n, 2 * m, p.norm_dimension_cap * 64);
      if (m > 0) {
        BasisSpace b1 = enumerate_particles(n, 2 * m - 1, p.norm_dimension_cap * 64);
        b.configs.insert(b.configs.end(), b1.configs.begin(), b1.configs.end());
        std::sort(b.configs.begin(), b.configs.end());
      }
      b.mode = BasisMode::restricted;
      b.particles = -1;
      return b;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::size_limit) return std::nullopt;
      throw;
    }
  };
  finalize<TimHamiltonian>(st, std::move(L), p, full, inner);
  return st;
}

// ---------------------------------------------------------------------------
// TIM -> degree-3 TIM: every logical qubit becomes a periodic chain.

ReductionStep reduce_tim_to_degree3(const TimHamiltonian& input, const ReductionParams& p) {
  TimHamiltonian h = input;
  validate(h);
  ReductionStep st;
  st.name = StepName::tim_to_degree3;
  st.target = h;
  st.eps_budget = p.eps_step();
  st.eta_budget = p.eta_step();
  const int n = h.node_count();
  const TimHamiltonian pauli = h.form == TimForm::pauli ? h : occupation_to_pauli(h);
  const StoquasticFrame frame = to_stoquastic_frame(pauli);
  const TimHamiltonian& hs = frame.hamiltonian;

  std::vector<double> hx(n);
  const double floor = st.eps_budget / (2.0 * n);
  for (int u = 0; u < n; ++u) {
    const double raw = -hs.transverse[u];
    hx[u] = std::max(raw, floor);
    st.floor_error += hx[u] - raw;
  }
  ChainSelectionOptions opt = p.chain;
  if (!opt.length) opt.length = std::max(n, 2);
  if (*opt.length < n)
    fail(ErrorKind::validation, "tim-to-degree3: chain length " + std::to_string(*opt.length) +
                                    " is shorter than the number of logical qubits");
  const double j = interaction_strength(ModelHamiltonian(hs));
  ChainSelection sel = select_chain_parameters(n, std::max(j, 1e-300), st.eps_budget, st.eta_budget, opt);
  const int m = sel.params.length;
  const double g = sel.params.coupling;
  const double delta = sel.spectrum.splitting;
  const double xi = sel.spectrum.xi;
  const double center = 0.5 * (sel.spectrum.e0 + sel.spectrum.e1);
  const int nodes = n * m;
  auto q = [m](int u, int i) { return u * m + i; };

  std::set<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < m; ++i) edges.insert(make_edge(q(u, i), q(u, (i + 1) % m)));
  for (const auto& [e, w] : hs.ising)
    if (w != 0.0) edges.insert(make_edge(q(e.first, e.second), q(e.second, e.first)));
  std::vector<std::string> labels;
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < m; ++i) labels.push_back("(" + std::to_string(u) + "," + std::to_string(i) + ")");
  const InteractionGraph graph(nodes, {edges.begin(), edges.end()}, labels);

  TimHamiltonian sim = zero_tim(graph, TimForm::pauli);
  sim.energy_shift = hs.energy_shift;
  for (int u = 0; u < n; ++u) {
    const double scale = hx[u] / delta;
    for (int i = 0; i < m; ++i) {
      sim.transverse[q(u, i)] = -scale;
      sim.ising[make_edge(q(u, i), q(u, (i + 1) % m))] += -g * scale;  // m = 2 doubles the bond
    }
    sim.energy_shift -= scale * center;
  }
  const double xi_inv = 1.0 / xi;
  for (const auto& [e, w] : hs.ising)
    if (w != 0.0) sim.ising[make_edge(q(e.first, e.second), q(e.second, e.first))] += w * xi_inv * xi_inv;
  for (int u = 0; u < n; ++u) sim.longitudinal[q(u, 0)] += hs.longitudinal[u] * xi_inv;

  st.simulator = sim;
  st.delta = 1.0 / delta;
  st.chain = sel;
  Encoding enc;
  enc.kind = Encoding::Kind::chain_tensor;
  enc.simulator_nodes = nodes;
  for (int u = 0; u < n; ++u) {
    ChainBlock b;
    b.length = m;
    b.coupling = g;
    b.flipped = frame.flipped[u];
    for (int i = 0; i < m; ++i) b.qubits.push_back(q(u, i));
    enc.chain_blocks.push_back(std::move(b));
  }
  st.encoding = std::move(enc);
  return st;
}

// ---------------------------------------------------------------------------

ReductionStep run_step(StepName name, const ModelHamiltonian& target, const ReductionParams& p) {
  auto expect = [&](auto* ptr, const char* cls) {
    if (!ptr)
      fail(ErrorKind::validation, std::string(to_string(name)) + " expects a " + cls + " target, got " +
                                      to_string(class_of(target)));
    return ptr;
  };
  switch (name) {
    case StepName::stoqlh_to_hcbstar:
      return reduce_stoqlh_to_hcbstar(*expect(std::get_if<StoqLhHamiltonian>(&target), "stoqlh"), p);
    case StepName::hcbstar_to_hcb1:
      return reduce_hcbstar_to_hcb1(*expect(std::get_if<HcbHamiltonian>(&target), "hcbstar"), p);
    case StepName::hcb1_to_hcb2:
      return reduce_hcb1_to_hcb2(*expect(std::get_if<HcbHamiltonian>(&target), "hcb"), p);
    case StepName::multiparticle_to_hcb2:
      return reduce_multiparticle_to_hcb2(*expect(std::get_if<HcbHamiltonian>(&target), "hcb"), p);
    case StepName::hcb2_to_hcd:
      return reduce_hcb2_to_hcd(*expect(std::get_if<HcbHamiltonian>(&target), "hcb"), p);
    case StepName::hcd_to_tim:
      return reduce_hcd_to_tim(*expect(std::get_if<HcdHamiltonian>(&target), "hcd"), p);
    case StepName::tim_to_degree3:
      return reduce_tim_to_degree3(*expect(std::get_if<TimHamiltonian>(&target), "tim"), p);
  }
  fail(ErrorKind::validation, "unknown step");
}

}  // namespace stoqtim
