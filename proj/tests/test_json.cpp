#include <doctest.h>

#include <string>

#include "stoqtim/error.hpp"
#include "stoqtim/json_io.hpp"

using namespace stoqtim;
using nlohmann::json;

namespace {

void check_round_trip(const std::string& text) {
  const ModelHamiltonian a = parse_model(text);
  const std::string once = serialize_model(a);
  const ModelHamiltonian b = parse_model(once);
  CHECK(serialize_model(b) == once);
  CHECK(model_to_json(a) == model_to_json(b));
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for " << text);
  return ErrorKind::validation;
}

}  // namespace

TEST_CASE("round trip, every class") {
  check_round_trip(R"({"class": "tim", "graph": {"n": 3, "edges": [[0, 1], [1, 2]]},
    "transverse": {"0": -1.0, "2": -0.1}, "longitudinal": {"1": 0.30000000000000004},
    "ising": {"0,1": 0.7, "1,2": -1e-17}, "energy_shift": 0.125})");
  check_round_trip(R"({"class": "tim", "form": "occupation", "graph": {"n": 2, "edges": [[0, 1]]},
    "ising": {"0,1": 4}})");
  check_round_trip(R"({"class": "hcb", "graph": {"n": 3, "edges": [[0, 1], [1, 2]], "labels": ["a", "b", "c"]},
    "sector": {"m": 1, "r": 2}, "hopping": {"0,1": 1.0}, "chemical": {"2": 0.1},
    "pair_potential": {"0,2": 0.5}, "projector_terms": [{"nodes": [0, 2], "weight": 0.25}]})");
  check_round_trip(R"({"class": "hcbstar", "graph": {"n": 3, "edges": [[0, 1], [1, 2]]},
    "sector": {"m": 2, "r": 1}, "controlled_hopping": {"2,0,1": 0.5}})");
  check_round_trip(R"({"class": "hcd", "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]},
    "sector": {"m": 1}, "hopping": 0.7, "chemical": {"0": 0.1}})");
  check_round_trip(R"({"class": "stoqlh", "graph": {"n": 3},
    "two_local": [{"qubits": [0, 1], "pauli": {"XX": -0.5, "YY": -0.5}},
                  {"qubits": [1, 2], "matrix": [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]}],
    "k_local_diagonal": [{"qubits": [0, 1, 2], "bits": [1, 0, 1], "weight": 0.3}], "locality_k": 3})");
}

TEST_CASE("round trip preserves full precision") {
  const std::string text = R"({"class": "hcd", "graph": {"n": 2, "edges": [[0, 1]]}, "sector": {"m": 1},
    "hopping": 0.1234567890123456789})";
  const auto h = std::get<HcdHamiltonian>(parse_model(text));
  const auto back = std::get<HcdHamiltonian>(parse_model(serialize_model(h)));
  CHECK(back.hopping == h.hopping);
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_json_text("{\n  \"class\": \"tim\",\n  \"graph\": {\"n\": 2,,}\n}", "model.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
    const std::string what = e.what();
    CHECK(what.find("model.json") != std::string::npos);
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
}

TEST_CASE("schema violations") {
  CHECK(kind_of(R"({"class": "tim", "graph": {"n": 1}, "bogus": 1})") == ErrorKind::validation);
  CHECK(kind_of(R"({"class": "qubit", "graph": {"n": 1}})") == ErrorKind::validation);
  CHECK(kind_of(R"({"class": "hcb", "graph": {"n": 2, "edges": [[0, 1]]}, "sector": {"m": 1, "r": 1},
    "hopping": {"0,1": -1}})") == ErrorKind::not_stoquastic);
  CHECK(kind_of(R"({"class": "hcd", "graph": {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}, "sector": {"m": 1}})") ==
        ErrorKind::triangle);
  CHECK(kind_of(R"({"class": "stoqlh", "graph": {"n": 2},
    "two_local": [{"qubits": [0, 1], "pauli": {"XX": 0.5, "YY": 0.5}}]})") == ErrorKind::not_stoquastic);
  CHECK(kind_of(R"({"class": "tim", "graph": {"n": 2}, "ising": {"0,1": 1}})") == ErrorKind::validation);
}

TEST_CASE("encodings round trip") {
  const Encoding id = basis_map_encoding([](std::uint64_t s) { return s << 1; }, 4,
                                         nullptr);
  CHECK_THROWS_AS(encoding_to_json(id), Error);

  BasisSpace b = enumerate_register(2);
  const Encoding shifted = basis_map_encoding([](std::uint64_t s) { return s << 1; }, 3, &b);
  const json j = encoding_to_json(shifted);
  CHECK(j["kind"] == "basis_map");
  const Encoding back = encoding_from_json(j);
  CHECK(back.map == shifted.map);
  CHECK(back.apply(3) == 6);

  Encoding chain;
  chain.kind = Encoding::Kind::chain_tensor;
  chain.simulator_nodes = 4;
  chain.chain_blocks = {{2, 1.7, false, {0, 1}}, {2, 1.7, true, {2, 3}}};
  const Encoding cb = encoding_from_json(encoding_to_json(chain));
  REQUIRE(cb.chain_blocks.size() == 2);
  CHECK(cb.chain_blocks[1].flipped);
  CHECK(cb.chain_blocks[1].qubits == std::vector<int>{2, 3});
  CHECK(cb.chain_blocks[0].coupling == 1.7);
}

TEST_CASE("path specs") {
  const json j = json::parse(R"({"final": {"class": "stoqlh", "graph": {"n": 2},
    "two_local": [{"qubits": [0, 1], "pauli": {"XX": -0.5, "YY": -0.5, "ZZ": 0.2}}]}, "samples": 9})");
  const AdiabaticPath p = path_from_json(j);
  CHECK(p.taus.size() == 9);
  CHECK(class_of(p.initial) == ModelClass::stoqlh);
  const json k = json::parse(R"({"final": {"class": "tim", "graph": {"n": 1}, "longitudinal": {"0": -1}},
    "initial": {"class": "tim", "graph": {"n": 1}, "transverse": {"0": -1}}, "taus": [0, 0.5, 1]})");
  const AdiabaticPath q = path_from_json(k);
  CHECK(q.taus == std::vector<double>{0, 0.5, 1});
  const json r = path_report_to_json(track_gaps(q));
  CHECK(r["gap_target"].size() == 3);
  CHECK(r.contains("min_gap_target"));
}
