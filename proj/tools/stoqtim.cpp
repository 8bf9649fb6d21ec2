// stoqtim: compile stoquastic Hamiltonians down to degree-3 TIM, verify
// simulations, tabulate chain analytics and translate annealing paths.
//
// Exit codes: 0 success, 1 verification failed, 2 input/validation error,
// 3 scale-infeasible, 4 internal solver failure.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "stoqtim/anneal.hpp"
#include "stoqtim/basis.hpp"
#include "stoqtim/calibration.hpp"
#include "stoqtim/chain.hpp"
#include "stoqtim/error.hpp"
#include "stoqtim/json_io.hpp"
#include "stoqtim/operator.hpp"
#include "stoqtim/reductions.hpp"

using namespace stoqtim;
using nlohmann::json;

namespace {

struct ParamFlags {
  double eps = 1e-2;
  double eta = 1e-2;
  std::optional<double> delta;
  std::vector<std::string> step_delta;  // name=value
  std::optional<double> outer_delta;
  std::optional<double> p_min;
  std::optional<double> chain_exponent;
  std::optional<int> chain_length;
  bool verify = false;

  void add_to(CLI::App* app) {
    app->add_option("--eps", eps, "total epsilon budget")->check(CLI::PositiveNumber);
    app->add_option("--eta", eta, "total eta budget")->check(CLI::PositiveNumber);
    app->add_option("--delta", delta, "explicit gap for every step (switches to explicit mode)");
    app->add_option("--step-delta", step_delta, "explicit gap for one step, as name=value");
    app->add_option("--outer-delta", outer_delta, "restriction-layer gap");
    app->add_option("--p-min", p_min, "amplitude smoothing cutoff (0 disables)");
    app->add_option("--chain-exponent", chain_exponent, "chain exponent c (skips the search)");
    app->add_option("--chain-length", chain_length, "chain length m");
    app->add_flag("--verify", verify, "measure each step where the scale allows");
  }

  ReductionParams params() const {
    ReductionParams p;
    p.eps_total = eps;
    p.eta_total = eta;
    if (delta) {
      p.delta_mode = DeltaMode::explicit_value;
      p.explicit_delta = *delta;
    }
    for (const auto& s : step_delta) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) fail(ErrorKind::validation, "--step-delta expects name=value, got " + s);
      try {
        p.step_delta[parse_step_name(s.substr(0, eq))] = std::stod(s.substr(eq + 1));
      } catch (const std::invalid_argument&) {
        fail(ErrorKind::validation, "--step-delta: bad value in " + s);
      }
    }
    p.outer_delta = outer_delta;
    p.p_min = p_min;
    p.chain.exponent = chain_exponent;
    p.chain.length = chain_length;
    p.verify = verify;
    return p;
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text << "\n";
  else write_text_file(path, text);
}

std::string class_name(const ModelHamiltonian& h) { return to_string(class_of(h)); }

int run_compile(const std::string& input, const std::string& output, const std::string& from,
                const std::string& to, const std::string& encoding_path, const std::string& report_path,
                const ParamFlags& flags) {
  const ModelHamiltonian model = model_from_json(read_json_file(input));
  if (!from.empty() && class_name(model) != from)
    fail(ErrorKind::validation, "input has class " + class_name(model) + ", not --from " + from);
  const ReductionParams p = flags.params();
  const auto steps = plan_steps(model, to);

  ChainResult result;
  if (steps.empty()) {
    result.encoding = identity_encoding(node_count(model));
  } else {
    result = compose_steps(model, steps, p);
  }
  const ModelHamiltonian& out = steps.empty() ? model : result.steps.back().simulator;
  emit(output, serialize_model(out));

  if (!encoding_path.empty()) {
    if (steps.empty()) {
      const BasisSpace b = enumerate_basis(model, std::size_t{1} << 16);
      emit(encoding_path, encoding_to_json(basis_map_encoding(result.encoding.rule, node_count(model), &b)).dump(2));
    } else {
      emit(encoding_path, encoding_to_json(result.encoding).dump(2));
    }
  }

  bool failed = false;
  json report;
  report["schema_version"] = kSchemaVersion;
  report["calibration"] = calibration().version;
  report["from"] = class_name(model);
  report["to"] = to;
  json arr = json::array();
  for (const auto& st : result.steps) {
    arr.push_back(step_report_to_json(st));
    failed = failed || st.verification == Verification::failed;
  }
  report["steps"] = arr;
  if (const auto* tim = std::get_if<TimHamiltonian>(&out)) {
    report["max_zz_degree"] = zz_max_degree(*tim);
    if (to == "tim3") report["degree3"] = zz_max_degree(*tim) <= 3;
  }
  if (!report_path.empty()) emit(report_path, report.dump(2));
  for (const auto& st : result.steps)
    if (st.verification == Verification::failed)
      std::cerr << "verification failed at " << to_string(st.name) << ": " << st.verification_note << "\n";
  return failed ? 1 : 0;
}

int run_verify(const std::string& target_path, const std::string& sim_path, const std::string& enc_path,
               const std::string& output, double eps, double eta, std::uint64_t seed) {
  const ModelHamiltonian target = model_from_json(read_json_file(target_path));
  const ModelHamiltonian sim = model_from_json(read_json_file(sim_path));
  Encoding enc = enc_path.empty() ? identity_encoding(node_count(target)) : encoding_from_json(read_json_file(enc_path));
  SolverOptions opt;
  opt.seed = seed;
  const SimulationError err = measure_simulation_error(target, sim, enc, opt);
  json j = simulation_error_to_json(err);
  j["requested_epsilon"] = eps;
  j["requested_eta"] = eta;
  const bool ok = err.epsilon <= eps && err.eta <= eta;
  j["passed"] = ok;
  emit(output, j.dump(2));
  if (!ok)
    std::cerr << "measured epsilon " << err.epsilon << " / eta " << err.eta << " exceed the requested " << eps
              << " / " << eta << "\n";
  return ok ? 0 : 1;
}

int run_analyze_chain(const std::vector<int>& ms, const std::vector<double>& cs, const std::vector<double>& gs,
                      const std::string& output) {
  std::string csv = "m,g,c,E0,E1,E2,delta,Delta,xi,eta\n";
  auto row = [&](int m, const ChainParams& p, std::optional<double> c) {
    const ChainSpectrum s = chain_spectrum(p);
    char cbuf[32] = "";
    if (c) std::snprintf(cbuf, sizeof cbuf, "%g", *c);
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", m, p.coupling,
                  cbuf, s.e0, s.e1, s.e2, s.splitting, s.gap, s.xi, s.eta);
    csv += buf;
  };
  for (int m : ms) {
    for (double c : cs) row(m, ChainParams::from_exponent(m, c), c);
    for (double g : gs) {
      ChainParams p;
      p.length = m;
      p.coupling = g;
      row(m, p, std::nullopt);
    }
  }
  if (output.empty() || output == "-") std::cout << csv;
  else write_text_file(output, csv);
  return 0;
}

int run_anneal(const std::string& path_file, int samples, const std::string& report_path, const std::string& to,
               const ParamFlags& flags) {
  AdiabaticPath path = path_file.empty() ? two_qubit_test_path(samples)
                                         : path_from_json(read_json_file(path_file), samples);
  json report;
  bool ok = true;
  if (to == "none") {
    report = path_report_to_json(track_gaps(path));
  } else {
    const auto steps = plan_steps(path.initial, to);
    if (steps.empty()) fail(ErrorKind::validation, "anneal: nothing to translate to " + to);
    TranslateOptions opt;
    opt.stop_at = steps.back();
    const TranslatedPath tp = translate_path(path, flags.params(), opt);
    report = path_report_to_json(track_gaps(tp));
    report["escalations"] = tp.escalations;
    report["criteria_met"] = tp.criteria_met;
    json gaps = json::object();
    for (const auto& [s, d] : tp.params.step_delta) gaps[to_string(s)] = d;
    report["step_delta"] = gaps;
    json outer = json::object();
    for (const auto& [s, d] : tp.params.step_outer_delta) outer[to_string(s)] = d;
    report["step_outer_delta"] = outer;
    ok = tp.criteria_met;
  }
  report["calibration"] = calibration().version;
  emit(report_path, report.dump(2));
  return ok ? 0 : 1;
}

int run_info(const std::string& input) {
  const ModelHamiltonian model = model_from_json(read_json_file(input));
  json j;
  j["schema_version"] = kSchemaVersion;
  j["class"] = class_name(model);
  j["nodes"] = node_count(model);
  j["J"] = interaction_strength(model);
  std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, StoqLhHamiltonian>) {
          j["two_local_terms"] = h.two_local.size();
          j["k_local_diagonal_terms"] = h.k_local_diagonal.size();
        } else {
          std::map<int, int> hist;
          for (int u = 0; u < h.graph.node_count(); ++u) ++hist[h.graph.degree(u)];
          json d = json::object();
          for (auto [deg, count] : hist) d[std::to_string(deg)] = count;
          j["degree_profile"] = d;
          j["edges"] = h.graph.edges().size();
          j["max_degree"] = h.graph.max_degree();
          if constexpr (std::is_same_v<T, TimHamiltonian>) j["max_zz_degree"] = zz_max_degree(h);
          if constexpr (std::is_same_v<T, HcbHamiltonian>) j["sector"] = {{"m", h.particles}, {"r", h.range}};
          if constexpr (std::is_same_v<T, HcdHamiltonian>) j["sector"] = {{"m", h.dimers}};
        }
      },
      model);
  try {
    const BasisSpace b = enumerate_basis(model);
    j["sector_dimension"] = b.size();
    j["stoquastic"] = check_stoquastic(build_matrix(model, b));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::size_limit) throw;
    j["sector_dimension"] = nullptr;
    j["stoquastic"] = nullptr;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gadget compiler from stoquastic Hamiltonians to degree-3 transverse-field Ising models"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
  app.add_option("--seed", seed, "seed for randomized solvers and suites");
  app.add_option("--dimension-cap", cap, "basis dimension cap (also STOQTIM_DIMENSION_CAP)");

  ParamFlags flags;
  std::string input, output, from, to = "tim3", encoding_path, report_path;
  auto* compile = app.add_subcommand("compile", "compile a Hamiltonian model");
  compile->add_option("input", input, "input model (JSON)")->required();
  compile->add_option("-o,--output", output, "simulator model (default stdout)");
  compile->add_option("--from", from, "expected input class");
  compile->add_option("--to", to, "destination: hcbstar, hcb1, hcb2, hcd, tim, tim3")
      ->check(CLI::IsMember({"hcbstar", "hcb1", "hcb2", "hcd", "tim", "tim3"}));
  compile->add_option("--emit-encoding", encoding_path, "write the encoding (JSON)");
  compile->add_option("--report", report_path, "write the reduction report (JSON)");
  flags.add_to(compile);

  std::string target_path, sim_path;
  double v_eps = 1e-2, v_eta = 1e-2;
  auto* verify = app.add_subcommand("verify", "measure a simulation's (eta, epsilon)");
  verify->add_option("--target", target_path, "target model")->required();
  verify->add_option("--simulator", sim_path, "simulator model")->required();
  verify->add_option("--encoding", encoding_path, "encoding (default identity)");
  verify->add_option("-o,--output", output, "SimulationError JSON (default stdout)");
  verify->add_option("--eps", v_eps, "requested epsilon");
  verify->add_option("--eta", v_eta, "requested eta");

  std::vector<int> ms;
  std::vector<double> cs, gs;
  auto* chain = app.add_subcommand("analyze-chain", "chain spectrum table (CSV)");
  chain->add_option("--m", ms, "chain lengths")->required();
  chain->add_option("--c", cs, "exponents c, g = 1 + c ln(m)/m");
  chain->add_option("--g", gs, "couplings g > 1");
  chain->add_option("-o,--output", output, "CSV file (default stdout)");

  std::string path_file, anneal_to = "hcbstar";
  int samples = 33;
  auto* anneal = app.add_subcommand("anneal", "gap tracking along an annealing path");
  anneal->add_option("--path", path_file, "path file (default: built-in two-qubit path)");
  anneal->add_option("--samples", samples, "uniform grid size")->check(CLI::Range(2, 100000));
  anneal->add_option("--report", report_path, "PathReport JSON (default stdout)");
  anneal->add_option("--to", anneal_to, "simulator class, or none for the target path only");
  flags.add_to(anneal);

  auto* info = app.add_subcommand("info", "summarize a model");
  info->add_option("input", input, "model (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (cap) setenv("STOQTIM_DIMENSION_CAP", std::to_string(*cap).c_str(), 1);

  try {
    if (*compile) return run_compile(input, output, from, to, encoding_path, report_path, flags);
    if (*verify) return run_verify(target_path, sim_path, encoding_path, output, v_eps, v_eta, seed);
    if (*chain) {
      if (cs.empty() && gs.empty()) cs = {2.0};
      return run_analyze_chain(ms, cs, gs, output);
    }
    if (*anneal) return run_anneal(path_file, samples, report_path, anneal_to, flags);
    if (*info) return run_info(input);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
