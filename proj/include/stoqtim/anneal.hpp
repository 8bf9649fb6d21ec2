#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stoqtim/models.hpp"
#include "stoqtim/reductions.hpp"

namespace stoqtim {

// H(tau) = (1 - tau) H(0) + tau H(1), sampled on an ascending grid in [0, 1].
struct AdiabaticPath {
  ModelHamiltonian initial;
  ModelHamiltonian final;
  std::vector<double> taus;

  ModelHamiltonian at(double tau) const;
};

std::vector<double> uniform_grid(int samples);
// -sum Z_u on the register of a StoqLH model.
StoqLhHamiltonian minus_sum_z(int qubits);
// Path from -sum Z to `final` (StoqLH) on a uniform grid of `samples` points.
AdiabaticPath make_path(const ModelHamiltonian& final, int samples = 33);
// (1 - tau) a + tau b within one model class.
ModelHamiltonian interpolate(const ModelHamiltonian& a, const ModelHamiltonian& b, double tau);

// Two-qubit path used by the tests and the CLI demo: -sum Z to a problem
// Hamiltonian with XX+YY hopping, ZZ and X fields (gapped throughout).
AdiabaticPath two_qubit_test_path(int samples = 33);

struct PathReport {
  std::vector<double> taus;
  std::vector<double> gap_target;
  std::vector<double> gap_sim;         // empty for an untranslated path
  std::vector<double> ground_overlap;  // ||E g(tau) - g'(tau)||, min over sign
  double min_gap_target = 0.0;         // delta, after refinement
  double tau_min_gap_target = 0.0;
  std::optional<double> min_gap_sim;
  std::vector<double> near_degenerate;  // taus with gap < 1e-8
  std::optional<double> time_estimate;  // C1/d^2 + C2/d^2 + C1^2/d^3, unit constant
  double derivative_c1 = 0.0;
  double derivative_c2 = 0.0;
};

struct TranslateOptions {
  StepName stop_at = StepName::stoqlh_to_hcbstar;
  double gap_floor = 1e-6;         // every sampled target gap must exceed this
  double overlap_tolerance = 1e-2;  // ground-state deviation to reach
  double gap_fraction = 1.0 / 3.0;  // simulator gap >= fraction * delta
  double escalation = 10.0;         // Delta multiplier per round
  int max_escalations = 6;
};

// Compiled family: same term structure and gaps at every tau.
struct TranslatedPath {
  AdiabaticPath target;
  std::vector<StepName> steps;
  ReductionParams params;  // explicit per-step gaps shared by every tau
  std::vector<TermKey> structure;
  std::vector<std::vector<ReductionStep>> per_tau;  // one compiled chain per sampled tau
  std::vector<Encoding> encodings;                  // composite, per sampled tau
  int escalations = 0;
  bool criteria_met = false;

  // Compiles H(tau) with the shared choices (also off-grid).
  std::pair<ModelHamiltonian, Encoding> compile_at(double tau) const;
};

TranslatedPath translate_path(const AdiabaticPath& path, const ReductionParams& p,
                              const TranslateOptions& opt = {});

// Gap of H(tau) per grid point and the refined minimum (ternary search to
// 1e-3 in tau around the smallest grid gap).
PathReport track_gaps(const AdiabaticPath& path);
// As above, plus simulator gaps and ground-state deviations.
PathReport track_gaps(const TranslatedPath& path);

// Max over the grid of ||dH/dtau|| and ||d^2H/dtau^2|| by finite differences.
std::pair<double, double> derivative_norms(const std::function<ModelHamiltonian(double)>& h,
                                           const std::vector<double>& taus);
double estimate_traversal_time(const PathReport& report, double c1, double c2);

}  // namespace stoqtim
