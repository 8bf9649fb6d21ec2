#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stoqtim/basis.hpp"
#include "stoqtim/chain.hpp"
#include "stoqtim/encoding.hpp"
#include "stoqtim/models.hpp"
#include "stoqtim/simulation.hpp"

namespace stoqtim {

enum class StepName {
  stoqlh_to_hcbstar,
  hcbstar_to_hcb1,
  hcb1_to_hcb2,
  multiparticle_to_hcb2,
  hcb2_to_hcd,
  hcd_to_tim,
  tim_to_degree3,
};

const char* to_string(StepName s);
StepName parse_step_name(const std::string& s);

enum class DeltaMode { calibrated, explicit_value };

struct ReductionParams {
  double eps_total = 1e-2;
  double eta_total = 1e-2;
  DeltaMode delta_mode = DeltaMode::calibrated;
  std::optional<double> explicit_delta;   // every step, explicit mode
  std::map<StepName, double> step_delta;  // per-step override, either mode
  std::optional<double> outer_delta;      // restriction-layer gap override
  std::map<StepName, double> step_outer_delta;
  double outer_factor = 100.0;            // restriction gap >= factor * inner norm
  std::optional<double> p_min;            // unset: eps_t * 1e-3 / (#terms); 0 disables
  int steps_total = 1;                    // R of the error budget
  ChainSelectionOptions chain;
  std::size_t norm_dimension_cap = 4096;  // larger sectors use coefficient bounds
  bool verify = false;                    // compose: measure each step when feasible
  std::size_t verify_dimension_cap = 1u << 14;

  double eps_step() const { return eps_total / (2.0 * steps_total); }
  double eta_step() const { return eta_total / (2.0 * steps_total); }
};

// One perturbative layer of order k: H = delta*H0 + delta^{1-1/k} V_main
//                              + delta^{1/3} V~_extra (k = 3) + V_extra.
struct PerturbativeLayer {
  int order = 2;
  ModelHamiltonian h0;
  ModelHamiltonian v_main;
  ModelHamiltonian v_extra;
  std::optional<ModelHamiltonian> v_tilde;
  double delta = 0.0;
  double lambda = 0.0;  // max norm of the perturbation pieces on the sector
  bool lambda_estimated = false;
};

// First-order penalty whose ground space is the inner layer's sector.
struct RestrictionLayer {
  ModelHamiltonian penalty;
  double delta = 0.0;
  double lambda = 0.0;   // norm of the inner Hamiltonian
  double leakage = 0.0;  // its block coupling the penalty ground space to the rest
  bool lambda_estimated = false;
};

// Structural key of an elementary term (weight ignored), for paths.
struct TermKey {
  int type, control_bit, first, second;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

struct StepChecks {
  bool class_membership = false;
  bool stoquastic = false;
  bool sizes = false;
  std::optional<bool> basis_map;  // unset for the chain-tensor step
  bool all() const { return class_membership && stoquastic && sizes && basis_map.value_or(true); }
};

enum class Verification { not_run, verified, failed, scale_infeasible };
const char* to_string(Verification v);

struct ReductionStep {
  StepName name{};
  ModelHamiltonian target;
  ModelHamiltonian simulator;
  Encoding encoding;
  double delta = 0.0;
  double eps_budget = 0.0;
  double eta_budget = 0.0;
  double floor_error = 0.0;  // ||H - H~|| from amplitude flooring / smoothing
  std::optional<PerturbativeLayer> layer;
  std::optional<RestrictionLayer> restriction;
  std::optional<ChainSelection> chain;  // degree-3 step only
  std::vector<TermKey> term_keys;       // first step only: elementary terms emitted
  StepChecks checks;
  Verification verification = Verification::not_run;
  std::string verification_note;
  std::optional<SimulationError> measured;
  std::vector<std::string> notes;
};

// Convex decomposition of the two-local part into elementary stoquastic terms.
struct ElementaryTerm {
  // 1: -X_i (x) |b><b|_j    2: -|b><b|_i (x) X_j    3: -(XX + YY)    4: -(XX - YY)
  int type = 3;
  int control_bit = 0;  // b for types 1 and 2
  int first = 0;
  int second = 1;
  double weight = 0.0;
  friend bool operator==(const ElementaryTerm&, const ElementaryTerm&) = default;
};

struct TwoLocalDecomposition {
  std::vector<ElementaryTerm> terms;             // weights >= 0
  std::map<Edge, Eigen::Vector4d> diagonal;      // per pair, index 2 x_i + x_j
  // Sum of the elementary terms and the diagonal on the pair's 4x4 block.
  Eigen::Matrix4d reconstruct(const Edge& pair) const;
};

TwoLocalDecomposition decompose_two_local_stoquastic(const StoqLhHamiltonian& h);

ReductionStep reduce_stoqlh_to_hcbstar(const StoqLhHamiltonian& h, const ReductionParams& p,
                                       const std::vector<TermKey>* forced_terms = nullptr);
ReductionStep reduce_hcbstar_to_hcb1(const HcbHamiltonian& h, const ReductionParams& p);
ReductionStep reduce_hcb1_to_hcb2(const HcbHamiltonian& h, const ReductionParams& p);
ReductionStep reduce_multiparticle_to_hcb2(const HcbHamiltonian& h, const ReductionParams& p);
ReductionStep reduce_hcb2_to_hcd(const HcbHamiltonian& h, const ReductionParams& p);
ReductionStep reduce_hcd_to_tim(const HcdHamiltonian& h, const ReductionParams& p);
ReductionStep reduce_tim_to_degree3(const TimHamiltonian& h, const ReductionParams& p);

// N_U - 2 N_E + Gamma sum_{D(u,v)=2} n_u n_v with Gamma = 2|E| + 1, in occupation
// form on the complete graph over g's nodes: zero exactly on m-dimers (any m).
TimHamiltonian dimer_penalty(const InteractionGraph& g);

// Runs one step on a model of the matching source class.
ReductionStep run_step(StepName name, const ModelHamiltonian& target, const ReductionParams& p);

// Step sequence from the model's class to a destination class
// ("hcbstar", "hcb1", "hcb2", "hcd", "tim", "tim3").
std::vector<StepName> plan_steps(const ModelHamiltonian& from, const std::string& to);

struct ChainResult {
  std::vector<ReductionStep> steps;
  Encoding encoding;  // composite
};

// StoqLH -> ... -> stop_at, each step with budget (eps/2R, eta/2R).
ChainResult compose_chain(const StoqLhHamiltonian& h, const ReductionParams& p, StepName stop_at);
// forced_terms: term structure imposed on a leading StoqLH step.
ChainResult compose_steps(const ModelHamiltonian& h, const std::vector<StepName>& steps,
                          const ReductionParams& p, const std::vector<TermKey>* forced_terms = nullptr);

// Checks (class, stoquasticity, sizes, basis map) and, when p.verify is set,
// spectral verification or an explicit scale-infeasible verdict.
void check_step(ReductionStep& step, bool final_step);
void verify_step(ReductionStep& step, const ReductionParams& p);

// Simulator configurations in the ground space of the restriction penalty
// (the whole sector when there is none).
BasisSpace inner_basis(const ReductionStep& step, std::size_t cap = default_dimension_cap());

// Low-block comparison of the order-k series against the encoded target.
struct GadgetIdentity {
  Eigen::MatrixXd effective;       // (V_extra)_-- + order-k main term, no delta
  Eigen::MatrixXd encoded_target;  // target in the same (minus) ordering
  double difference = 0.0;         // max |entry|
  double v_main_minus = 0.0;       // max |(V_main)_--|
  double tilde_residual = 0.0;     // order 3: max |(V_main)_-+ H0^-1 (V_main)_+- - (V~)_--|
};
GadgetIdentity check_gadget_identity(const ReductionStep& step);

// Structural checks used by compose_chain.
bool belongs_to_class(const ModelHamiltonian& h, StepName produced_by);
bool is_stoquastic_model(const ModelHamiltonian& h);
// Node/particle counts promised for the step, compared exactly.
bool size_counts_hold(const ReductionStep& step);

// Gap demanded by an order-k layer before the calibration constant:
// l^2/eps + l/eta, l^6/eps^2 + l^2/eta^2 or l^12/eps^3 + l^3/eta^3.
double delta_form(int order, double lambda, double eps, double eta);

// Upper bound on ||h|| from the coefficient magnitudes.
double coefficient_norm_bound(const ModelHamiltonian& h);

}  // namespace stoqtim
