#pragma once

#include <json.hpp>
#include <string>

#include "stoqtim/anneal.hpp"
#include "stoqtim/encoding.hpp"
#include "stoqtim/models.hpp"
#include "stoqtim/reductions.hpp"
#include "stoqtim/simulation.hpp"

namespace stoqtim {

inline constexpr int kSchemaVersion = 1;

// Hamiltonian model file. Keys of coefficient tables: "u" for nodes, "u,v" for
// pairs and "c,u,v" for controlled hops. Unknown keys are rejected.
ModelHamiltonian model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelHamiltonian& h);

// Parses text; syntax errors are reported with line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source = "input");
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

ModelHamiltonian parse_model(const std::string& text);
std::string serialize_model(const ModelHamiltonian& h);

// Basis maps as [[target, simulator], ...] configuration pairs; the
// degree-3 step as a chain-block descriptor.
nlohmann::json encoding_to_json(const Encoding& e);
Encoding encoding_from_json(const nlohmann::json& j);

nlohmann::json simulation_error_to_json(const SimulationError& e);
nlohmann::json step_report_to_json(const ReductionStep& s);

// {"final": model, "initial": model (default -sum Z), "samples": N | "taus": [...]}
AdiabaticPath path_from_json(const nlohmann::json& j, int default_samples = 33);
nlohmann::json path_report_to_json(const PathReport& r);

}  // namespace stoqtim
