#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "stoqtim/effective.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/operator.hpp"
#include "stoqtim/reductions.hpp"

namespace stoqtim {

namespace {

constexpr StepName kOrder[] = {
    StepName::stoqlh_to_hcbstar, StepName::hcbstar_to_hcb1, StepName::hcb1_to_hcb2,
    StepName::multiparticle_to_hcb2, StepName::hcb2_to_hcd, StepName::hcd_to_tim,
    StepName::tim_to_degree3,
};

int index_of(StepName s) { return static_cast<int>(s); }

// Last step index for a destination class name.
int last_index_for(const std::string& to) {
  if (to == "hcbstar") return index_of(StepName::stoqlh_to_hcbstar);
  if (to == "hcb1") return index_of(StepName::hcbstar_to_hcb1);
  if (to == "hcb2") return index_of(StepName::multiparticle_to_hcb2);
  if (to == "hcd") return index_of(StepName::hcb2_to_hcd);
  if (to == "tim") return index_of(StepName::hcd_to_tim);
  if (to == "tim3") return index_of(StepName::tim_to_degree3);
  fail(ErrorKind::validation, "unknown destination class '" + to + "'");
}

}  // namespace

std::vector<StepName> plan_steps(const ModelHamiltonian& from, const std::string& to) {
  int first = 0;
  bool projectors = false;
  if (const auto* s = std::get_if<StoqLhHamiltonian>(&from)) {
    first = index_of(StepName::stoqlh_to_hcbstar);
    projectors = !s->k_local_diagonal.empty();
  } else if (const auto* b = std::get_if<HcbHamiltonian>(&from)) {
    projectors = !b->projectors.empty();
    if (b->star) first = index_of(StepName::hcbstar_to_hcb1);
    else if (b->range == 1) first = index_of(StepName::hcb1_to_hcb2);
    else first = projectors ? index_of(StepName::multiparticle_to_hcb2) : index_of(StepName::hcb2_to_hcd);
  } else if (std::holds_alternative<HcdHamiltonian>(from)) {
    first = index_of(StepName::hcd_to_tim);
  } else {
    first = index_of(StepName::tim_to_degree3);
  }
  const int last = last_index_for(to);
  if (last < first - 1)
    fail(ErrorKind::validation, std::string("cannot compile ") + to_string(class_of(from)) + " to " + to);
  std::vector<StepName> out;
  for (int i = first; i <= last; ++i) {
    if (kOrder[i] == StepName::multiparticle_to_hcb2 && !projectors) continue;
    out.push_back(kOrder[i]);
  }
  return out;
}

bool belongs_to_class(const ModelHamiltonian& h, StepName produced_by) {
  switch (produced_by) {
    case StepName::stoqlh_to_hcbstar: {
      const auto* b = std::get_if<HcbHamiltonian>(&h);
      return b && b->star && b->range == 1;
    }
    case StepName::hcbstar_to_hcb1: {
      const auto* b = std::get_if<HcbHamiltonian>(&h);
      return b && !b->star && b->controlled.empty() && b->range == 1;
    }
    case StepName::hcb1_to_hcb2: {
      const auto* b = std::get_if<HcbHamiltonian>(&h);
      return b && !b->star && b->controlled.empty() && b->range == 2;
    }
    case StepName::multiparticle_to_hcb2: {
      const auto* b = std::get_if<HcbHamiltonian>(&h);
      return b && !b->star && b->controlled.empty() && b->range == 2 && b->projectors.empty();
    }
    case StepName::hcb2_to_hcd: {
      const auto* d = std::get_if<HcdHamiltonian>(&h);
      return d && d->graph.is_triangle_free() && d->hopping >= 0.0;
    }
    case StepName::hcd_to_tim: return std::holds_alternative<TimHamiltonian>(h);
    case StepName::tim_to_degree3: {
      const auto* t = std::get_if<TimHamiltonian>(&h);
      return t && zz_max_degree(*t) <= 3;
    }
  }
  return false;
}

bool is_stoquastic_model(const ModelHamiltonian& h) {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TimHamiltonian>) {
          return std::all_of(m.transverse.begin(), m.transverse.end(), [](double x) { return x <= 0.0; });
        } else if constexpr (std::is_same_v<T, HcbHamiltonian>) {
          for (auto& [e, t] : m.hopping)
            if (t < 0.0) return false;
          for (auto& [k, t] : m.controlled)
            if (t < 0.0) return false;
          return true;
        } else if constexpr (std::is_same_v<T, HcdHamiltonian>) {
          return m.hopping >= 0.0;
        } else {
          for (const auto& t : m.two_local)
            for (int r = 0; r < 4; ++r)
              for (int c = 0; c < 4; ++c)
                if (r != c && t.matrix(r, c) > kNonnegTolerance) return false;
          return true;
        }
      },
      h);
}

bool size_counts_hold(const ReductionStep& st) {
  const int n_t = node_count(st.target);
  const int n_s = node_count(st.simulator);
  switch (st.name) {
    case StepName::stoqlh_to_hcbstar: {
      const auto& t = std::get<StoqLhHamiltonian>(st.target);
      const auto& s = std::get<HcbHamiltonian>(st.simulator);
      const auto dec = decompose_two_local_stoquastic(t);
      std::set<TermKey> keys(st.term_keys.begin(), st.term_keys.end());
      int ancillas = 0;
      for (const auto& k : keys) ancillas += k.type >= 3;
      for (const auto& e : dec.terms)
        if (!keys.count({e.type, e.control_bit, e.first, e.second})) return false;
      return n_s == 2 * t.qubits + ancillas && s.particles == t.qubits;
    }
    case StepName::hcbstar_to_hcb1: {
      const auto& t = std::get<HcbHamiltonian>(st.target);
      const auto& s = std::get<HcbHamiltonian>(st.simulator);
      return n_s == n_t + static_cast<int>(t.controlled.size()) && s.particles == t.particles;
    }
    case StepName::hcb1_to_hcb2: {
      const auto& t = std::get<HcbHamiltonian>(st.target);
      const auto& s = std::get<HcbHamiltonian>(st.simulator);
      return n_s == n_t + static_cast<int>(t.graph.edges().size()) && s.particles == t.particles && s.range == 2;
    }
    case StepName::multiparticle_to_hcb2: {
      const auto& t = std::get<HcbHamiltonian>(st.target);
      const auto& s = std::get<HcbHamiltonian>(st.simulator);
      const int d = static_cast<int>(t.projectors.size());
      return n_s == n_t + 2 * d && s.particles == t.particles + d;
    }
    case StepName::hcb2_to_hcd: {
      const auto& t = std::get<HcbHamiltonian>(st.target);
      const auto& s = std::get<HcdHamiltonian>(st.simulator);
      return n_s == 2 * n_t + static_cast<int>(t.graph.edges().size()) && s.dimers == t.particles;
    }
    case StepName::hcd_to_tim: return n_s == n_t;
    case StepName::tim_to_degree3: {
      if (!st.chain) return false;
      const int m = st.chain->params.length;
      return m >= n_t && n_s == n_t * m;
    }
  }
  return false;
}

void check_step(ReductionStep& st, bool final_step) {
  (void)final_step;
  st.checks.class_membership = belongs_to_class(st.simulator, st.name);
  st.checks.stoquastic = is_stoquastic_model(st.simulator);
  st.checks.sizes = size_counts_hold(st);
  if (st.encoding.is_basis_map()) {
    try {
      const BasisSpace tb = enumerate_basis(st.target, std::size_t{1} << 16);
      st.checks.basis_map = is_valid_basis_map(st.encoding, tb, st.simulator);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::size_limit) throw;
      st.notes.push_back("basis-map check skipped: target sector too large to enumerate");
    }
  } else {
    st.checks.basis_map.reset();
  }
}

void verify_step(ReductionStep& st, const ReductionParams& p) {
  const double norm = coefficient_norm_bound(st.simulator);
  if (norm * 1e-15 > st.eps_budget / 10) {
    st.verification = Verification::scale_infeasible;
    st.verification_note = "simulator norm bound " + std::to_string(norm) +
                           " leaves no double-precision room for the error budget " +
                           std::to_string(st.eps_budget);
    return;
  }
  std::optional<BasisSpace> tb, sb;
  try {
    tb = enumerate_basis(st.target, p.verify_dimension_cap);
    sb = enumerate_basis(st.simulator, p.verify_dimension_cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::size_limit) throw;
    st.verification = Verification::scale_infeasible;
    st.verification_note = "sector dimension exceeds the verification cap " + std::to_string(p.verify_dimension_cap);
    return;
  }
  SimulationError err;
  try {
    err = measure_simulation_error(build_matrix(st.target, *tb), build_matrix(st.simulator, *sb),
                                   encoding_matrix(st.encoding, *tb, *sb));
  } catch (const Error& e) {
    // An under-gapped simulator can push the code space out of its low-energy band entirely.
    if (e.kind() != ErrorKind::ill_conditioned && e.kind() != ErrorKind::gap_closure) throw;
    st.verification = Verification::failed;
    st.verification_note = e.what();
    return;
  }
  st.verification =
      err.epsilon <= st.eps_budget && err.eta <= st.eta_budget ? Verification::verified : Verification::failed;
  st.measured = std::move(err);
}

ChainResult compose_steps(const ModelHamiltonian& h, const std::vector<StepName>& steps,
                          const ReductionParams& params, const std::vector<TermKey>* forced_terms) {
  ReductionParams p = params;
  p.steps_total = std::max<int>(1, static_cast<int>(steps.size()));
  ChainResult out;
  ModelHamiltonian current = h;
  out.encoding = identity_encoding(node_count(h));
  {
    auto tb = [&]() -> std::optional<BasisSpace> {
      try {
        return enumerate_basis(h, std::size_t{1} << 16);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::size_limit) throw;
        return std::nullopt;
      }
    }();
    if (tb) out.encoding = basis_map_encoding(out.encoding.rule, node_count(h), &*tb);
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    ReductionStep st;
    try {
      if (i == 0 && forced_terms && steps[i] == StepName::stoqlh_to_hcbstar)
        st = reduce_stoqlh_to_hcbstar(std::get<StoqLhHamiltonian>(current), p, forced_terms);
      else
        st = run_step(steps[i], current, p);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("step ") + to_string(steps[i]) + ": " + e.what());
    }
    check_step(st, i + 1 == steps.size());
    if (!st.checks.all())
      fail(ErrorKind::precondition, std::string("structural assertion failed at step ") + to_string(steps[i]));
    if (p.verify) verify_step(st, p);
    out.encoding = compose(out.encoding, st.encoding);
    current = st.simulator;
    out.steps.push_back(std::move(st));
  }
  return out;
}

ChainResult compose_chain(const StoqLhHamiltonian& h, const ReductionParams& p, StepName stop_at) {
  const bool projectors = !h.k_local_diagonal.empty();
  std::vector<StepName> steps;
  for (StepName s : kOrder) {
    if (s == StepName::multiparticle_to_hcb2 && !projectors) {
      if (s == stop_at) break;
      continue;
    }
    steps.push_back(s);
    if (s == stop_at) break;
  }
  return compose_steps(ModelHamiltonian(h), steps, p);
}

BasisSpace inner_basis(const ReductionStep& st, std::size_t cap) {
  if (st.name == StepName::hcd_to_tim) {
    const int n = node_count(st.simulator);
    const int m = std::get<HcdHamiltonian>(st.target).dimers;
    BasisSpace b = enumerate_particles(n, 2 * m, cap);
    if (m > 0) {
      BasisSpace b1 = enumerate_particles(n, 2 * m - 1, cap);
      b.configs.insert(b.configs.end(), b1.configs.begin(), b1.configs.end());
      std::sort(b.configs.begin(), b.configs.end());
    }
    b.mode = BasisMode::restricted;
    b.particles = -1;
    return b;
  }
  BasisSpace full = enumerate_basis(st.simulator, cap);
  if (!st.restriction) return full;
  const ModelHamiltonian& pen = st.restriction->penalty;
  return restrict_basis(full, [&](std::uint64_t s) { return std::abs(diagonal_element(pen, s)) <= 1e-12; });
}

GadgetIdentity check_gadget_identity(const ReductionStep& st) {
  if (!st.layer) fail(ErrorKind::precondition, "check_gadget_identity: step has no perturbative layer");
  const auto& L = *st.layer;
  const BasisSpace b = inner_basis(st);
  const SparseMatrix h0 = build_matrix(L.h0, b);
  const Eigen::MatrixXd vm(build_matrix(L.v_main, b));
  const Eigen::MatrixXd ve(build_matrix(L.v_extra, b));
  const BlockSplit split = BlockSplit::zero_diagonal(h0);
  const PlusBlockInverse inv(h0, split);

  GadgetIdentity out;
  const auto& mi = split.minus;
  const Eigen::MatrixXd vmm = block(vm, mi, mi);
  out.v_main_minus = vmm.size() ? vmm.cwiseAbs().maxCoeff() : 0.0;
  out.effective = block(ve, mi, mi);
  if (L.order == 2) {
    out.effective -= inv.second(vm, vm);
  } else if (L.order == 3) {
    Eigen::MatrixXd t3 = inv.third(vm, vm, vm);
    Eigen::MatrixXd x = split.plus.empty() ? Eigen::MatrixXd::Zero(0, mi.size()) : inv.solve(block(vm, split.plus, mi));
    Eigen::MatrixXd w = x.transpose() * x * vmm;
    out.effective += t3 - 0.5 * (w + w.transpose());
    if (L.v_tilde) {
      const Eigen::MatrixXd vt(build_matrix(*L.v_tilde, b));
      out.tilde_residual = (inv.second(vm, vm) - block(vt, mi, mi)).cwiseAbs().maxCoeff();
    }
  }

  // Target in the order of the minus block.
  const BasisSpace tb = enumerate_basis(st.target);
  const Eigen::MatrixXd t(build_matrix(st.target, tb));
  std::vector<Eigen::Index> pos(tb.size());
  std::vector<bool> seen(mi.size(), false);
  for (std::size_t j = 0; j < tb.size(); ++j) {
    const std::size_t row = b.index_of(st.encoding.apply(tb[j]));
    auto it = row == BasisSpace::npos ? mi.end() : std::find(mi.begin(), mi.end(), static_cast<Eigen::Index>(row));
    if (it == mi.end()) fail(ErrorKind::precondition, "check_gadget_identity: encoded state is not in the H0 ground space");
    pos[j] = it - mi.begin();
    seen[pos[j]] = true;
  }
  if (tb.size() != mi.size())
    fail(ErrorKind::precondition, "check_gadget_identity: H0 ground space is larger than the encoded space");
  out.encoded_target = Eigen::MatrixXd::Zero(mi.size(), mi.size());
  for (std::size_t a = 0; a < tb.size(); ++a)
    for (std::size_t c = 0; c < tb.size(); ++c) out.encoded_target(pos[a], pos[c]) = t(a, c);
  out.difference = (out.effective - out.encoded_target).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace stoqtim
