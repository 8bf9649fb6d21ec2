#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "stoqtim/graph.hpp"

namespace stoqtim {

inline constexpr double kNonnegTolerance = 1e-12;

enum class TimForm { pauli, occupation };

// Pauli form:      H = sum h_u X_u + g_u Z_u + sum g_uv Z_u Z_v + shift
// Occupation form: H = sum h_u X_u + mu_u n_u + sum w_uv n_u n_v + shift
// h_u has free sign; stoquastic iff every h_u <= 0.
struct TimHamiltonian {
  InteractionGraph graph;
  TimForm form = TimForm::occupation;
  std::vector<double> transverse;    // h_u
  std::vector<double> longitudinal;  // g_u or mu_u
  std::map<Edge, double> ising;      // g_uv or w_uv, keys are graph edges
  double energy_shift = 0.0;

  int node_count() const { return graph.node_count(); }
};

struct ControlledHop {
  int control;
  Edge edge;
  friend auto operator<=>(const ControlledHop&, const ControlledHop&) = default;
};

// -p * prod_{u in nodes} (I - n_u)
struct ProjectorTerm {
  std::vector<int> nodes;  // sorted, distinct
  double weight = 0.0;
  friend bool operator==(const ProjectorTerm&, const ProjectorTerm&) = default;
};

// Hard-core bosons with range-r exclusion. With star = true, controlled hops
// n_c W_uv are allowed (the HCB* class, range 1).
struct HcbHamiltonian {
  InteractionGraph graph;
  int particles = 0;
  int range = 1;
  bool star = false;
  std::map<Edge, double> hopping;             // t_uv >= 0, graph edges
  std::map<ControlledHop, double> controlled;  // t_{c;uv} >= 0, graph edges
  std::vector<double> chemical;                // mu_u
  std::map<Edge, double> pair_potential;       // w_uv, any pair
  std::vector<ProjectorTerm> projectors;
  double energy_shift = 0.0;

  int node_count() const { return graph.node_count(); }
};

// Hard-core dimers: a single hopping amplitude over all node pairs.
struct HcdHamiltonian {
  InteractionGraph graph;  // triangle-free
  int dimers = 0;
  double hopping = 0.0;
  std::vector<double> chemical;
  std::map<Edge, double> pair_potential;
  double energy_shift = 0.0;

  int node_count() const { return graph.node_count(); }
};

// Real 4x4 on qubits (i, j); local index 2*x_i + x_j.
struct TwoLocalTerm {
  int first = 0;
  int second = 1;
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();
  friend bool operator==(const TwoLocalTerm& a, const TwoLocalTerm& b) {
    return a.first == b.first && a.second == b.second && a.matrix == b.matrix;
  }
};

// -weight * |bits><bits| on the listed qubits; bits[k] is the value of qubits[k].
struct DiagonalTerm {
  std::vector<int> qubits;
  std::vector<int> bits;
  double weight = 0.0;
  friend bool operator==(const DiagonalTerm&, const DiagonalTerm&) = default;
};

struct StoqLhHamiltonian {
  int qubits = 0;
  std::vector<TwoLocalTerm> two_local;
  std::vector<DiagonalTerm> k_local_diagonal;
  int locality_k = 2;
  double energy_shift = 0.0;

  int node_count() const { return qubits; }
};

enum class ModelClass { tim, hcd, hcb, hcbstar, stoqlh };

using ModelHamiltonian =
    std::variant<TimHamiltonian, HcdHamiltonian, HcbHamiltonian, StoqLhHamiltonian>;

ModelClass class_of(const ModelHamiltonian& h);
const char* to_string(ModelClass c);
ModelClass parse_model_class(const std::string& s);

// Largest coefficient magnitude (energy shift excluded).
double interaction_strength(const ModelHamiltonian& h);
int node_count(const ModelHamiltonian& h);

// Validation clamps hopping amplitudes in [-tol, 0) to zero and throws
// Error(validation / not_stoquastic / triangle) on anything else wrong.
void validate(TimHamiltonian& h);
void validate(HcbHamiltonian& h);
void validate(HcdHamiltonian& h);
void validate(StoqLhHamiltonian& h);
void validate(ModelHamiltonian& h);

// acc += w * h, coefficient by coefficient. Graph and sector must agree.
void add_scaled(TimHamiltonian& acc, const TimHamiltonian& h, double w);
void add_scaled(HcbHamiltonian& acc, const HcbHamiltonian& h, double w);
void add_scaled(HcdHamiltonian& acc, const HcdHamiltonian& h, double w);

// Empty (all-zero) models on a given graph.
TimHamiltonian zero_tim(const InteractionGraph& g, TimForm form = TimForm::occupation);
HcbHamiltonian zero_hcb(const InteractionGraph& g, int particles, int range, bool star = false);
HcdHamiltonian zero_hcd(const InteractionGraph& g, int dimers);

// Max ZZ degree counting only nonzero Ising couplings.
int zz_max_degree(const TimHamiltonian& h);

// Single- and two-qubit Pauli helpers for building StoqLH terms.
Eigen::Matrix4d pauli4(const std::string& two_letters);  // e.g. "XX", "ZI"
TwoLocalTerm pauli_term(int i, int j, const std::map<std::string, double>& coeffs);

}  // namespace stoqtim
