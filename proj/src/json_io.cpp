#include "stoqtim/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "stoqtim/error.hpp"

namespace stoqtim {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::validation, what); }

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) bad(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      bad(where + ": unknown key \"" + it.key() + "\"");
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where + ": missing key \"" + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + ": expected an integer");
  return j.get<int>();
}

std::vector<int> split_key(const std::string& key, std::size_t arity, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) bad(where + ": malformed key \"" + key + "\"");
    out.push_back(v);
  }
  if (out.size() != arity) bad(where + ": key \"" + key + "\" needs " + std::to_string(arity) + " indices");
  return out;
}

void check_node(int u, int n, const std::string& where) {
  if (u < 0 || u >= n) bad(where + ": node " + std::to_string(u) + " out of range");
}

InteractionGraph graph_from_json(const json& j) {
  allow_keys(j, {"n", "edges", "labels"}, "graph");
  const int n = integer(need(j, "n", "graph"), "graph.n");
  if (n < 0) bad("graph.n: negative node count");
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const json& e = j["edges"];
    if (!e.is_array()) bad("graph.edges: expected an array");
    for (const auto& pair : e) {
      if (!pair.is_array() || pair.size() != 2) bad("graph.edges: each edge is [u, v]");
      const int u = integer(pair[0], "graph.edges"), v = integer(pair[1], "graph.edges");
      check_node(u, n, "graph.edges");
      check_node(v, n, "graph.edges");
      if (u == v) bad("graph.edges: self-loop at node " + std::to_string(u));
      edges.push_back(make_edge(u, v));
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) bad("graph.labels: expected an array");
    labels = j["labels"].get<std::vector<std::string>>();
  }
  return InteractionGraph(n, std::move(edges), std::move(labels));
}

json graph_to_json(const InteractionGraph& g) {
  json j;
  j["n"] = g.node_count();
  json e = json::array();
  for (auto [u, v] : g.edges()) e.push_back({u, v});
  j["edges"] = e;
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

std::vector<double> node_table(const json& j, int n, const std::string& where) {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (!j.is_object()) bad(where + ": expected an object keyed by node");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const int u = split_key(it.key(), 1, where)[0];
    check_node(u, n, where);
    out[static_cast<std::size_t>(u)] = number(it.value(), where);
  }
  return out;
}

json node_table_to_json(const std::vector<double>& v) {
  json j = json::object();
  for (std::size_t u = 0; u < v.size(); ++u)
    if (v[u] != 0.0) j[std::to_string(u)] = v[u];
  return j;
}

std::map<Edge, double> edge_table(const json& j, int n, const std::string& where) {
  std::map<Edge, double> out;
  if (!j.is_object()) bad(where + ": expected an object keyed by \"u,v\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto k = split_key(it.key(), 2, where);
    check_node(k[0], n, where);
    check_node(k[1], n, where);
    if (k[0] == k[1]) bad(where + ": key \"" + it.key() + "\" repeats a node");
    if (!out.emplace(make_edge(k[0], k[1]), number(it.value(), where)).second)
      bad(where + ": pair \"" + it.key() + "\" listed twice");
  }
  return out;
}

std::string edge_key(const Edge& e) { return std::to_string(e.first) + "," + std::to_string(e.second); }

json edge_table_to_json(const std::map<Edge, double>& m) {
  json j = json::object();
  for (const auto& [e, w] : m) j[edge_key(e)] = w;
  return j;
}

double shift_of(const json& j) { return j.contains("energy_shift") ? number(j["energy_shift"], "energy_shift") : 0.0; }

std::pair<int, int> sector_of(const json& j, bool need_range) {
  const json& s = need(j, "sector", "model");
  allow_keys(s, {"m", "r"}, "sector");
  const int m = integer(need(s, "m", "sector"), "sector.m");
  int r = 1;
  if (s.contains("r")) r = integer(s["r"], "sector.r");
  else if (need_range) bad("sector: missing key \"r\"");
  return {m, r};
}

TimHamiltonian tim_from_json(const json& j) {
  allow_keys(j, {"schema_version", "class", "graph", "form", "transverse", "longitudinal", "ising",
                 "energy_shift"},
             "tim model");
  TimHamiltonian h;
  h.graph = graph_from_json(need(j, "graph", "tim model"));
  const int n = h.graph.node_count();
  const std::string form = j.value("form", std::string("pauli"));
  if (form == "pauli") h.form = TimForm::pauli;
  else if (form == "occupation") h.form = TimForm::occupation;
  else bad("form: expected \"pauli\" or \"occupation\"");
  h.transverse = j.contains("transverse") ? node_table(j["transverse"], n, "transverse")
                                          : std::vector<double>(static_cast<std::size_t>(n), 0.0);
  h.longitudinal = j.contains("longitudinal") ? node_table(j["longitudinal"], n, "longitudinal")
                                              : std::vector<double>(static_cast<std::size_t>(n), 0.0);
  if (j.contains("ising")) h.ising = edge_table(j["ising"], n, "ising");
  h.energy_shift = shift_of(j);
  return h;
}

HcbHamiltonian hcb_from_json(const json& j, bool star) {
  allow_keys(j, {"schema_version", "class", "graph", "sector", "hopping", "controlled_hopping", "chemical",
                 "pair_potential", "projector_terms", "energy_shift"},
             star ? "hcbstar model" : "hcb model");
  HcbHamiltonian h;
  h.star = star;
  h.graph = graph_from_json(need(j, "graph", "model"));
  const int n = h.graph.node_count();
  std::tie(h.particles, h.range) = sector_of(j, !star);
  if (j.contains("hopping")) h.hopping = edge_table(j["hopping"], n, "hopping");
  if (j.contains("controlled_hopping")) {
    if (!star) bad("controlled_hopping: only allowed for class \"hcbstar\"");
    const json& c = j["controlled_hopping"];
    if (!c.is_object()) bad("controlled_hopping: expected an object keyed by \"c,u,v\"");
    for (auto it = c.begin(); it != c.end(); ++it) {
      auto k = split_key(it.key(), 3, "controlled_hopping");
      for (int u : k) check_node(u, n, "controlled_hopping");
      if (k[1] == k[2]) bad("controlled_hopping: key \"" + it.key() + "\" repeats a node");
      h.controlled[ControlledHop{k[0], make_edge(k[1], k[2])}] = number(it.value(), "controlled_hopping");
    }
  }
  h.chemical = j.contains("chemical") ? node_table(j["chemical"], n, "chemical")
                                      : std::vector<double>(static_cast<std::size_t>(n), 0.0);
  if (j.contains("pair_potential")) h.pair_potential = edge_table(j["pair_potential"], n, "pair_potential");
  if (j.contains("projector_terms")) {
    const json& p = j["projector_terms"];
    if (!p.is_array()) bad("projector_terms: expected an array");
    for (const auto& t : p) {
      allow_keys(t, {"nodes", "weight"}, "projector_terms");
      ProjectorTerm term;
      for (const auto& u : need(t, "nodes", "projector_terms")) {
        term.nodes.push_back(integer(u, "projector_terms.nodes"));
        check_node(term.nodes.back(), n, "projector_terms.nodes");
      }
      term.weight = number(need(t, "weight", "projector_terms"), "projector_terms.weight");
      h.projectors.push_back(std::move(term));
    }
  }
  h.energy_shift = shift_of(j);
  return h;
}

HcdHamiltonian hcd_from_json(const json& j) {
  allow_keys(j, {"schema_version", "class", "graph", "sector", "hopping", "chemical", "pair_potential",
                 "energy_shift"},
             "hcd model");
  HcdHamiltonian h;
  h.graph = graph_from_json(need(j, "graph", "hcd model"));
  const int n = h.graph.node_count();
  h.dimers = sector_of(j, false).first;
  if (j.contains("hopping")) h.hopping = number(j["hopping"], "hopping");
  h.chemical = j.contains("chemical") ? node_table(j["chemical"], n, "chemical")
                                      : std::vector<double>(static_cast<std::size_t>(n), 0.0);
  if (j.contains("pair_potential")) h.pair_potential = edge_table(j["pair_potential"], n, "pair_potential");
  h.energy_shift = shift_of(j);
  return h;
}

StoqLhHamiltonian stoqlh_from_json(const json& j) {
  allow_keys(j, {"schema_version", "class", "graph", "two_local", "k_local_diagonal", "locality_k",
                 "energy_shift"},
             "stoqlh model");
  StoqLhHamiltonian h;
  // Only n is meaningful; edges, when given, are ignored in favour of the terms.
  h.qubits = graph_from_json(need(j, "graph", "stoqlh model")).node_count();
  const int n = h.qubits;
  if (j.contains("two_local")) {
    if (!j["two_local"].is_array()) bad("two_local: expected an array");
    for (const auto& t : j["two_local"]) {
      allow_keys(t, {"qubits", "matrix", "pauli"}, "two_local");
      const json& q = need(t, "qubits", "two_local");
      if (!q.is_array() || q.size() != 2) bad("two_local.qubits: expected [i, j]");
      const int a = integer(q[0], "two_local.qubits"), b = integer(q[1], "two_local.qubits");
      check_node(a, n, "two_local.qubits");
      check_node(b, n, "two_local.qubits");
      if (a == b) bad("two_local.qubits: repeated qubit");
      if (t.contains("matrix") == t.contains("pauli")) bad("two_local: give exactly one of matrix / pauli");
      if (t.contains("pauli")) {
        std::map<std::string, double> coeffs;
        const json& p = t["pauli"];
        if (!p.is_object()) bad("two_local.pauli: expected an object keyed by Pauli pair");
        for (auto it = p.begin(); it != p.end(); ++it) {
          const std::string& key = it.key();
          if (key.size() != 2 || key.find_first_not_of("IXYZ") != std::string::npos)
            bad("two_local.pauli: bad Pauli pair \"" + key + "\"");
          coeffs[key] = number(it.value(), "two_local.pauli");
        }
        h.two_local.push_back(pauli_term(a, b, coeffs));
      } else {
        const json& m = t["matrix"];
        if (!m.is_array() || m.size() != 4) bad("two_local.matrix: expected 4 rows");
        TwoLocalTerm term;
        term.first = a;
        term.second = b;
        for (int r = 0; r < 4; ++r) {
          if (!m[r].is_array() || m[r].size() != 4) bad("two_local.matrix: expected 4 columns");
          for (int c = 0; c < 4; ++c) term.matrix(r, c) = number(m[r][c], "two_local.matrix");
        }
        h.two_local.push_back(term);
      }
    }
  }
  if (j.contains("k_local_diagonal")) {
    if (!j["k_local_diagonal"].is_array()) bad("k_local_diagonal: expected an array");
    for (const auto& t : j["k_local_diagonal"]) {
      allow_keys(t, {"qubits", "bits", "weight"}, "k_local_diagonal");
      DiagonalTerm d;
      for (const auto& q : need(t, "qubits", "k_local_diagonal")) {
        d.qubits.push_back(integer(q, "k_local_diagonal.qubits"));
        check_node(d.qubits.back(), n, "k_local_diagonal.qubits");
      }
      for (const auto& b : need(t, "bits", "k_local_diagonal")) d.bits.push_back(integer(b, "k_local_diagonal.bits"));
      d.weight = number(need(t, "weight", "k_local_diagonal"), "k_local_diagonal.weight");
      h.k_local_diagonal.push_back(std::move(d));
    }
  }
  if (j.contains("locality_k")) h.locality_k = integer(j["locality_k"], "locality_k");
  h.energy_shift = shift_of(j);
  return h;
}

}  // namespace

ModelHamiltonian model_from_json(const json& j) {
  if (!j.is_object()) bad("model: expected a JSON object");
  if (j.contains("schema_version") && integer(j["schema_version"], "schema_version") != kSchemaVersion)
    bad("schema_version: unsupported version " + j["schema_version"].dump());
  const json& c = need(j, "class", "model");
  if (!c.is_string()) bad("class: expected a string");
  const std::string cls = c.get<std::string>();
  ModelHamiltonian h;
  if (cls == "tim") h = tim_from_json(j);
  else if (cls == "hcb") h = hcb_from_json(j, false);
  else if (cls == "hcbstar") h = hcb_from_json(j, true);
  else if (cls == "hcd") h = hcd_from_json(j);
  else if (cls == "stoqlh") h = stoqlh_from_json(j);
  else bad("class: unknown model class \"" + cls + "\"");
  validate(h);
  return h;
}

json model_to_json(const ModelHamiltonian& model) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["class"] = to_string(class_of(model));
  std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, TimHamiltonian>) {
          j["graph"] = graph_to_json(h.graph);
          j["form"] = h.form == TimForm::pauli ? "pauli" : "occupation";
          j["transverse"] = node_table_to_json(h.transverse);
          j["longitudinal"] = node_table_to_json(h.longitudinal);
          j["ising"] = edge_table_to_json(h.ising);
        } else if constexpr (std::is_same_v<T, HcbHamiltonian>) {
          j["graph"] = graph_to_json(h.graph);
          j["sector"] = {{"m", h.particles}, {"r", h.range}};
          j["hopping"] = edge_table_to_json(h.hopping);
          if (h.star) {
            json c = json::object();
            for (const auto& [k, t] : h.controlled) c[std::to_string(k.control) + "," + edge_key(k.edge)] = t;
            j["controlled_hopping"] = c;
          }
          j["chemical"] = node_table_to_json(h.chemical);
          j["pair_potential"] = edge_table_to_json(h.pair_potential);
          json p = json::array();
          for (const auto& t : h.projectors) p.push_back({{"nodes", t.nodes}, {"weight", t.weight}});
          j["projector_terms"] = p;
        } else if constexpr (std::is_same_v<T, HcdHamiltonian>) {
          j["graph"] = graph_to_json(h.graph);
          j["sector"] = {{"m", h.dimers}};
          j["hopping"] = h.hopping;
          j["chemical"] = node_table_to_json(h.chemical);
          j["pair_potential"] = edge_table_to_json(h.pair_potential);
        } else {
          j["graph"] = {{"n", h.qubits}};
          json t = json::array();
          for (const auto& term : h.two_local) {
            json m = json::array();
            for (int r = 0; r < 4; ++r) {
              json row = json::array();
              for (int c = 0; c < 4; ++c) row.push_back(term.matrix(r, c));
              m.push_back(row);
            }
            t.push_back({{"qubits", {term.first, term.second}}, {"matrix", m}});
          }
          j["two_local"] = t;
          json d = json::array();
          for (const auto& term : h.k_local_diagonal)
            d.push_back({{"qubits", term.qubits}, {"bits", term.bits}, {"weight", term.weight}});
          j["k_local_diagonal"] = d;
          j["locality_k"] = h.locality_k;
        }
        j["energy_shift"] = h.energy_shift;
      },
      model);
  return j;
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    const std::size_t at = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    fail(ErrorKind::validation,
         source + ": malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::validation, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::validation, "cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

ModelHamiltonian parse_model(const std::string& text) { return model_from_json(parse_json_text(text)); }

std::string serialize_model(const ModelHamiltonian& h) { return model_to_json(h).dump(2); }

json encoding_to_json(const Encoding& e) {
  if (!e.map.empty() || e.is_basis_map()) {
    if (e.map.empty() && e.rule)
      fail(ErrorKind::size_limit, "encoding: target sector too large to list the basis map");
  }
  json pairs = json::array();
  for (auto [t, s] : e.map) pairs.push_back({t, s});
  json j;
  j["schema_version"] = kSchemaVersion;
  j["simulator_nodes"] = e.simulator_nodes;
  if (e.is_basis_map()) {
    j["kind"] = "basis_map";
    j["map"] = pairs;
    return j;
  }
  j["kind"] = "chain_tensor";
  j["pre_map"] = pairs;
  json blocks = json::array();
  for (const auto& b : e.chain_blocks)
    blocks.push_back({{"length", b.length}, {"coupling", b.coupling}, {"flipped", b.flipped}, {"qubits", b.qubits}});
  j["blocks"] = blocks;
  return j;
}

Encoding encoding_from_json(const json& j) {
  allow_keys(j, {"schema_version", "kind", "simulator_nodes", "map", "pre_map", "blocks"}, "encoding");
  Encoding e;
  e.simulator_nodes = integer(need(j, "simulator_nodes", "encoding"), "encoding.simulator_nodes");
  const std::string kind = need(j, "kind", "encoding").get<std::string>();
  auto read_pairs = [&](const json& arr, const std::string& where) {
    if (!arr.is_array()) bad(where + ": expected an array of pairs");
    for (const auto& p : arr) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
        bad(where + ": each entry is [target, simulator]");
      e.map.emplace_back(p[0].get<std::uint64_t>(), p[1].get<std::uint64_t>());
    }
    std::sort(e.map.begin(), e.map.end());
  };
  if (kind == "basis_map") {
    read_pairs(need(j, "map", "encoding"), "encoding.map");
  } else if (kind == "chain_tensor") {
    e.kind = Encoding::Kind::chain_tensor;
    if (j.contains("pre_map")) read_pairs(j["pre_map"], "encoding.pre_map");
    for (const auto& b : need(j, "blocks", "encoding")) {
      allow_keys(b, {"length", "coupling", "flipped", "qubits"}, "encoding.blocks");
      ChainBlock blk;
      blk.length = integer(need(b, "length", "encoding.blocks"), "encoding.blocks.length");
      blk.coupling = number(need(b, "coupling", "encoding.blocks"), "encoding.blocks.coupling");
      blk.flipped = b.value("flipped", false);
      blk.qubits = need(b, "qubits", "encoding.blocks").get<std::vector<int>>();
      e.chain_blocks.push_back(std::move(blk));
    }
  } else {
    bad("encoding.kind: expected \"basis_map\" or \"chain_tensor\"");
  }
  return e;
}

json simulation_error_to_json(const SimulationError& e) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["eta"] = e.eta;
  j["epsilon"] = e.epsilon;
  j["per_level_deviation"] = e.per_level_deviation;
  j["target_levels"] = std::vector<double>(e.target_levels.data(), e.target_levels.data() + e.target_levels.size());
  j["simulator_levels"] =
      std::vector<double>(e.simulator_levels.data(), e.simulator_levels.data() + e.simulator_levels.size());
  j["simulator_gap"] = e.simulator_gap;
  j["target_gap"] = e.target_gap;
  j["ground_deviation"] = e.ground_deviation;
  j["sin_max"] = e.sin_max;
  return j;
}

json step_report_to_json(const ReductionStep& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["step"] = to_string(s.name);
  j["n"] = node_count(s.simulator);
  std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, HcbHamiltonian>) j["m"] = h.particles;
        else if constexpr (std::is_same_v<T, HcdHamiltonian>) j["m"] = h.dimers;
        else j["m"] = nullptr;
      },
      s.simulator);
  j["J"] = interaction_strength(s.simulator);
  j["delta"] = s.delta;
  if (s.measured) {
    j["eta_measured"] = s.measured->eta;
    j["epsilon_measured"] = s.measured->epsilon;
    j["eigen_deviations"] = s.measured->per_level_deviation;
  } else {
    j["eta_measured"] = nullptr;
    j["epsilon_measured"] = nullptr;
    j["eigen_deviations"] = json::array();
  }
  j["eps_budget"] = s.eps_budget;
  j["eta_budget"] = s.eta_budget;
  j["floor_error"] = s.floor_error;
  if (s.layer) {
    j["layer"] = {{"order", s.layer->order},
                  {"delta", s.layer->delta},
                  {"lambda", s.layer->lambda},
                  {"lambda_estimated", s.layer->lambda_estimated}};
  }
  if (s.restriction) {
    j["restriction"] = {{"delta", s.restriction->delta},
                        {"lambda", s.restriction->lambda},
                        {"lambda_estimated", s.restriction->lambda_estimated}};
  }
  if (s.chain) {
    j["chain"] = {{"length", s.chain->params.length},
                  {"coupling", s.chain->params.coupling},
                  {"splitting", s.chain->spectrum.splitting},
                  {"gap", s.chain->spectrum.gap},
                  {"xi", s.chain->spectrum.xi}};
    if (s.chain->params.exponent) j["chain"]["exponent"] = *s.chain->params.exponent;
  }
  json checks = {{"class_membership", s.checks.class_membership},
                 {"stoquastic", s.checks.stoquastic},
                 {"sizes", s.checks.sizes}};
  checks["basis_map"] = s.checks.basis_map ? json(*s.checks.basis_map) : json(nullptr);
  j["checks"] = checks;
  if (const auto* tim = std::get_if<TimHamiltonian>(&s.simulator)) j["max_zz_degree"] = zz_max_degree(*tim);
  j["verification"] = to_string(s.verification);
  if (!s.verification_note.empty()) j["verification_note"] = s.verification_note;
  j["notes"] = s.notes;
  return j;
}

AdiabaticPath path_from_json(const json& j, int default_samples) {
  allow_keys(j, {"schema_version", "initial", "final", "samples", "taus"}, "path file");
  if (j.contains("samples") && j.contains("taus")) bad("path file: give samples or taus, not both");
  const ModelHamiltonian final = model_from_json(need(j, "final", "path file"));
  AdiabaticPath p;
  if (j.contains("initial")) {
    p.initial = model_from_json(j["initial"]);
    p.final = final;
    p.taus = uniform_grid(default_samples);
  } else {
    p = make_path(final, default_samples);
  }
  if (j.contains("samples")) p.taus = uniform_grid(integer(j["samples"], "samples"));
  if (j.contains("taus")) p.taus = j["taus"].get<std::vector<double>>();
  return p;
}

json path_report_to_json(const PathReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["taus"] = r.taus;
  j["gap_target"] = r.gap_target;
  j["gap_sim"] = r.gap_sim;
  j["ground_overlap"] = r.ground_overlap;
  j["min_gap_target"] = r.min_gap_target;
  j["tau_min_gap_target"] = r.tau_min_gap_target;
  j["min_gap_sim"] = r.min_gap_sim ? json(*r.min_gap_sim) : json(nullptr);
  j["near_degenerate"] = r.near_degenerate;
  j["derivative_norms"] = {r.derivative_c1, r.derivative_c2};
  // Unit-constant estimate C1/d^2 + C2/d^2 + C1^2/d^3, not a bound.
  j["time_estimate"] = r.time_estimate ? json(*r.time_estimate) : json(nullptr);
  return j;
}

}  // namespace stoqtim
