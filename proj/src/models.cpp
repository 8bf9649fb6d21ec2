#include "stoqtim/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stoqtim/error.hpp"

namespace stoqtim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_node(int u, int n, const char* what) {
  if (u < 0 || u >= n)
    fail(ErrorKind::validation, std::string(what) + ": node " + std::to_string(u) + " out of range");
}

void check_pair(const Edge& e, int n, const char* what) {
  check_node(e.first, n, what);
  check_node(e.second, n, what);
  if (e.first >= e.second)
    fail(ErrorKind::validation, std::string(what) + ": pair must be two distinct nodes");
}

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(ErrorKind::validation, std::string(what) + ": non-finite coefficient");
}

// A negative hopping is a positive off-diagonal entry, hence a stoquasticity failure.
double clamp_nonneg(double t, const std::string& what, ErrorKind kind = ErrorKind::not_stoquastic) {
  check_finite(t, what.c_str());
  if (t < -kNonnegTolerance) fail(kind, what + " is negative (" + std::to_string(t) + ")");
  return t < 0 ? 0.0 : t;
}

void resize_nodes(std::vector<double>& v, int n, const char* what) {
  if (v.empty()) v.assign(n, 0.0);
  if (static_cast<int>(v.size()) != n)
    fail(ErrorKind::validation, std::string(what) + ": per-node table has wrong length");
  for (double x : v) check_finite(x, what);
}

template <class K>
void merge_scaled(std::map<K, double>& acc, const std::map<K, double>& h, double w) {
  for (auto& [k, v] : h) acc[k] += w * v;
}

void add_vec(std::vector<double>& acc, const std::vector<double>& h, double w) {
  if (acc.size() < h.size()) acc.resize(h.size(), 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) acc[i] += w * h[i];
}

void same_graph(const InteractionGraph& a, const InteractionGraph& b) {
  if (a.node_count() != b.node_count() || a.edges() != b.edges())
    fail(ErrorKind::validation, "add_scaled: graphs differ");
}

}  // namespace

ModelClass class_of(const ModelHamiltonian& h) {
  return std::visit(overloaded{
                        [](const TimHamiltonian&) { return ModelClass::tim; },
                        [](const HcdHamiltonian&) { return ModelClass::hcd; },
                        [](const HcbHamiltonian& b) { return b.star ? ModelClass::hcbstar : ModelClass::hcb; },
                        [](const StoqLhHamiltonian&) { return ModelClass::stoqlh; },
                    },
                    h);
}

const char* to_string(ModelClass c) {
  switch (c) {
    case ModelClass::tim: return "tim";
    case ModelClass::hcd: return "hcd";
    case ModelClass::hcb: return "hcb";
    case ModelClass::hcbstar: return "hcbstar";
    case ModelClass::stoqlh: return "stoqlh";
  }
  return "?";
}

ModelClass parse_model_class(const std::string& s) {
  if (s == "tim") return ModelClass::tim;
  if (s == "hcd") return ModelClass::hcd;
  if (s == "hcb") return ModelClass::hcb;
  if (s == "hcbstar") return ModelClass::hcbstar;
  if (s == "stoqlh") return ModelClass::stoqlh;
  fail(ErrorKind::validation, "unknown model class '" + s + "'");
}

int node_count(const ModelHamiltonian& h) {
  return std::visit([](const auto& m) { return m.node_count(); }, h);
}

double interaction_strength(const ModelHamiltonian& h) {
  double j = 0.0;
  auto upd = [&](double x) { j = std::max(j, std::abs(x)); };
  std::visit(overloaded{
                 [&](const TimHamiltonian& t) {
                   for (double x : t.transverse) upd(x);
                   for (double x : t.longitudinal) upd(x);
                   for (auto& [e, x] : t.ising) upd(x);
                 },
                 [&](const HcdHamiltonian& d) {
                   upd(d.hopping);
                   for (double x : d.chemical) upd(x);
                   for (auto& [e, x] : d.pair_potential) upd(x);
                 },
                 [&](const HcbHamiltonian& b) {
                   for (auto& [e, x] : b.hopping) upd(x);
                   for (auto& [k, x] : b.controlled) upd(x);
                   for (double x : b.chemical) upd(x);
                   for (auto& [e, x] : b.pair_potential) upd(x);
                   for (auto& p : b.projectors) upd(p.weight);
                 },
                 [&](const StoqLhHamiltonian& s) {
                   for (auto& t : s.two_local) upd(t.matrix.cwiseAbs().maxCoeff());
                   for (auto& d : s.k_local_diagonal) upd(d.weight);
                 },
             },
             h);
  return j;
}

void validate(TimHamiltonian& h) {
  const int n = h.node_count();
  resize_nodes(h.transverse, n, "tim transverse");
  resize_nodes(h.longitudinal, n, "tim longitudinal");
  for (auto& [e, w] : h.ising) {
    check_pair(e, n, "tim ising");
    check_finite(w, "tim ising");
    if (!h.graph.has_edge(e.first, e.second))
      fail(ErrorKind::validation, "tim ising: coupling on a non-edge");
  }
  check_finite(h.energy_shift, "tim energy_shift");
}

void validate(HcbHamiltonian& h) {
  const int n = h.node_count();
  if (n > 64) fail(ErrorKind::validation, "hcb: more than 64 nodes");
  if (h.range != 1 && h.range != 2) fail(ErrorKind::validation, "hcb: range must be 1 or 2");
  if (h.particles < 0 || h.particles > n) fail(ErrorKind::validation, "hcb: bad particle count");
  resize_nodes(h.chemical, n, "hcb chemical");
  for (auto& [e, t] : h.hopping) {
    check_pair(e, n, "hcb hopping");
    if (!h.graph.has_edge(e.first, e.second)) fail(ErrorKind::validation, "hcb hopping on a non-edge");
    t = clamp_nonneg(t, "hopping t_{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}");
  }
  if (!h.controlled.empty() && !h.star)
    fail(ErrorKind::validation, "hcb: controlled hopping requires class hcbstar");
  if (h.star && h.range != 1) fail(ErrorKind::validation, "hcbstar: range must be 1");
  for (auto& [k, t] : h.controlled) {
    check_pair(k.edge, n, "hcb controlled");
    check_node(k.control, n, "hcb controlled");
    if (k.control == k.edge.first || k.control == k.edge.second)
      fail(ErrorKind::validation, "hcb controlled: control node lies on the hopping edge");
    if (!h.graph.has_edge(k.edge.first, k.edge.second))
      fail(ErrorKind::validation, "hcb controlled hopping on a non-edge");
    t = clamp_nonneg(t, "controlled hopping t_{" + std::to_string(k.control) + ";" +
                            std::to_string(k.edge.first) + "," + std::to_string(k.edge.second) + "}");
  }
  for (auto& [e, w] : h.pair_potential) {
    check_pair(e, n, "hcb pair_potential");
    check_finite(w, "hcb pair_potential");
  }
  for (auto& p : h.projectors) {
    std::sort(p.nodes.begin(), p.nodes.end());
    if (std::adjacent_find(p.nodes.begin(), p.nodes.end()) != p.nodes.end())
      fail(ErrorKind::validation, "hcb projector: repeated node");
    for (int u : p.nodes) check_node(u, n, "hcb projector");
    p.weight = clamp_nonneg(p.weight, "projector weight", ErrorKind::validation);
  }
  check_finite(h.energy_shift, "hcb energy_shift");
}

void validate(HcdHamiltonian& h) {
  const int n = h.node_count();
  if (n > 64) fail(ErrorKind::validation, "hcd: more than 64 nodes");
  if (h.dimers < 0 || 2 * h.dimers > n) fail(ErrorKind::validation, "hcd: bad dimer count");
  if (!h.graph.is_triangle_free()) fail(ErrorKind::triangle, "hcd: graph contains a triangle");
  resize_nodes(h.chemical, n, "hcd chemical");
  h.hopping = clamp_nonneg(h.hopping, "hcd hopping t");
  for (auto& [e, w] : h.pair_potential) {
    check_pair(e, n, "hcd pair_potential");
    check_finite(w, "hcd pair_potential");
  }
  check_finite(h.energy_shift, "hcd energy_shift");
}

void validate(StoqLhHamiltonian& h) {
  const int n = h.qubits;
  if (n < 1 || n > 64) fail(ErrorKind::validation, "stoqlh: qubit count must be in [1, 64]");
  if (h.locality_k < 2) fail(ErrorKind::validation, "stoqlh: locality_k must be >= 2");
  for (auto& t : h.two_local) {
    check_node(t.first, n, "stoqlh two_local");
    check_node(t.second, n, "stoqlh two_local");
    if (t.first == t.second) fail(ErrorKind::validation, "stoqlh two_local: qubits must differ");
    if (!t.matrix.allFinite()) fail(ErrorKind::validation, "stoqlh two_local: non-finite entry");
    if (t.first > t.second) {
      // reorder the tensor factors so that first < second
      static const int swap_idx[4] = {0, 2, 1, 3};
      Eigen::Matrix4d m;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = t.matrix(swap_idx[r], swap_idx[c]);
      t.matrix = m;
      std::swap(t.first, t.second);
    }
    for (int r = 0; r < 4; ++r)
      for (int c = r + 1; c < 4; ++c) {
        if (std::abs(t.matrix(r, c) - t.matrix(c, r)) > kNonnegTolerance)
          fail(ErrorKind::validation, "stoqlh two_local: matrix is not symmetric");
        if (t.matrix(r, c) > kNonnegTolerance) {
          std::ostringstream os;
          os << "stoqlh two_local on qubits (" << t.first << "," << t.second
             << "): positive off-diagonal entry <" << (r >> 1) << (r & 1) << "|H|" << (c >> 1)
             << (c & 1) << "> = " << t.matrix(r, c);
          fail(ErrorKind::not_stoquastic, os.str());
        }
      }
    t.matrix = (0.5 * (t.matrix + t.matrix.transpose())).eval();
  }
  for (auto& d : h.k_local_diagonal) {
    if (d.qubits.empty() || static_cast<int>(d.qubits.size()) > h.locality_k)
      fail(ErrorKind::validation, "stoqlh k_local_diagonal: subset size must be in [1, k]");
    if (d.bits.size() != d.qubits.size())
      fail(ErrorKind::validation, "stoqlh k_local_diagonal: bitstring length mismatch");
    for (int q : d.qubits) check_node(q, n, "stoqlh k_local_diagonal");
    auto s = d.qubits;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorKind::validation, "stoqlh k_local_diagonal: repeated qubit");
    for (int b : d.bits)
      if (b != 0 && b != 1) fail(ErrorKind::validation, "stoqlh k_local_diagonal: bits must be 0/1");
    check_finite(d.weight, "stoqlh k_local_diagonal");
  }
  check_finite(h.energy_shift, "stoqlh energy_shift");
}

void validate(ModelHamiltonian& h) {
  std::visit([](auto& m) { validate(m); }, h);
}

void add_scaled(TimHamiltonian& acc, const TimHamiltonian& h, double w) {
  same_graph(acc.graph, h.graph);
  if (acc.form != h.form) fail(ErrorKind::validation, "add_scaled: TIM forms differ");
  add_vec(acc.transverse, h.transverse, w);
  add_vec(acc.longitudinal, h.longitudinal, w);
  merge_scaled(acc.ising, h.ising, w);
  acc.energy_shift += w * h.energy_shift;
}

void add_scaled(HcbHamiltonian& acc, const HcbHamiltonian& h, double w) {
  same_graph(acc.graph, h.graph);
  if (acc.particles != h.particles || acc.range != h.range)
    fail(ErrorKind::validation, "add_scaled: HCB sectors differ");
  merge_scaled(acc.hopping, h.hopping, w);
  merge_scaled(acc.controlled, h.controlled, w);
  add_vec(acc.chemical, h.chemical, w);
  merge_scaled(acc.pair_potential, h.pair_potential, w);
  for (auto p : h.projectors) {
    p.weight *= w;
    acc.projectors.push_back(std::move(p));
  }
  acc.star = acc.star || h.star;
  acc.energy_shift += w * h.energy_shift;
}

void add_scaled(HcdHamiltonian& acc, const HcdHamiltonian& h, double w) {
  same_graph(acc.graph, h.graph);
  if (acc.dimers != h.dimers) fail(ErrorKind::validation, "add_scaled: HCD sectors differ");
  acc.hopping += w * h.hopping;
  add_vec(acc.chemical, h.chemical, w);
  merge_scaled(acc.pair_potential, h.pair_potential, w);
  acc.energy_shift += w * h.energy_shift;
}

TimHamiltonian zero_tim(const InteractionGraph& g, TimForm form) {
  TimHamiltonian h;
  h.graph = g;
  h.form = form;
  h.transverse.assign(g.node_count(), 0.0);
  h.longitudinal.assign(g.node_count(), 0.0);
  return h;
}

HcbHamiltonian zero_hcb(const InteractionGraph& g, int particles, int range, bool star) {
  HcbHamiltonian h;
  h.graph = g;
  h.particles = particles;
  h.range = range;
  h.star = star;
  h.chemical.assign(g.node_count(), 0.0);
  return h;
}

HcdHamiltonian zero_hcd(const InteractionGraph& g, int dimers) {
  HcdHamiltonian h;
  h.graph = g;
  h.dimers = dimers;
  h.chemical.assign(g.node_count(), 0.0);
  return h;
}

int zz_max_degree(const TimHamiltonian& h) {
  std::vector<int> deg(h.node_count(), 0);
  for (auto& [e, w] : h.ising)
    if (w != 0.0) {
      ++deg[e.first];
      ++deg[e.second];
    }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

namespace {
Eigen::Matrix2d pauli2(char c) {
  Eigen::Matrix2d m;
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'Y': m << 0, -1, 1, 0; break;  // i*Y, real; Y(x)Y = -(iY)(x)(iY)
    default: fail(ErrorKind::validation, std::string("unknown Pauli letter '") + c + "'");
  }
  return m;
}
}  // namespace

Eigen::Matrix4d pauli4(const std::string& p) {
  if (p.size() != 2) fail(ErrorKind::validation, "pauli4: expected two letters");
  const int ys = static_cast<int>(std::count(p.begin(), p.end(), 'Y'));
  if (ys == 1) fail(ErrorKind::validation, "pauli4: a single Y is not real");
  Eigen::Matrix2d a = pauli2(p[0]), b = pauli2(p[1]);
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a(r >> 1, c >> 1) * b(r & 1, c & 1);
  return ys == 2 ? Eigen::Matrix4d(-m) : m;
}

TwoLocalTerm pauli_term(int i, int j, const std::map<std::string, double>& coeffs) {
  TwoLocalTerm t;
  t.first = i;
  t.second = j;
  for (auto& [p, c] : coeffs) t.matrix += c * pauli4(p);
  return t;
}

}  // namespace stoqtim
