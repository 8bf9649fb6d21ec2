#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "stoqtim/models.hpp"

namespace stoqtim {

// Periodic ferromagnetic chain H = -g sum Z_j Z_{j+1} - sum X_j, g > 1.
struct ChainParams {
  int length = 2;
  double coupling = 2.0;
  std::optional<double> exponent;  // c in g = 1 + c log(m) / m

  static ChainParams from_exponent(int m, double c);
};

struct ChainSpectrum {
  double e0 = 0, e1 = 0, e2 = 0;
  double splitting = 0;  // delta = (E1 - E0) / 2
  double gap = 0;        // Delta = E2 - (E0 + E1) / 2
  double xi = 0;
  double eta = 0;        // xi * (1 - g^-2)^(-1/8)
};

// Closed forms for m >= 3; at m = 2 E2 comes from the dense 4x4 chain.
std::array<double, 3> chain_energies(const ChainParams& p);
double chain_xi(const ChainParams& p);
double chain_log_xi(const ChainParams& p);
double chain_eta(const ChainParams& p);
// delta by tanh-sinh quadrature of the contour integral (half of it).
double chain_splitting_integral(const ChainParams& p);
std::array<double, 2> chain_z_sums(const ChainParams& p);  // Z+, Z-
// d ln(eta) / dg in closed form.
double chain_log_eta_derivative(const ChainParams& p);
bool chain_eta_monotonicity(int m, const std::vector<double>& g_grid);

ChainSpectrum chain_spectrum(const ChainParams& p);

// The chain as a Pauli-form TIM on m qubits (m = 2 doubles the bond).
TimHamiltonian chain_hamiltonian(const ChainParams& p);

// psi0 (X^m = +1) and psi1 (X^m = -1) on the 2^m register, resolved by
// parity sector. Signs: psi0 nonnegative, <psi1|Z_0|psi0> > 0.
struct ChainGroundPair {
  Eigen::VectorXd psi0, psi1;
  double e0 = 0, e1 = 0;
  double e2 = 0;  // third level overall
};
ChainGroundPair chain_ground_pair(const ChainParams& p);

// Calibrated constant K in 1/delta >= K m J / (eps xi) (1 + 1/eta).
struct ChainSelection {
  ChainParams params;
  ChainSpectrum spectrum;
  double demanded_inverse_splitting = 0;
};
struct ChainSelectionOptions {
  std::optional<int> length;         // overrides max(n_logical, 2)
  std::optional<double> exponent;    // explicit c, skips the search
  double k_constant = 0;             // 0 = calibration table value
};
ChainSelection select_chain_parameters(int n_logical, double j, double eps, double eta,
                                       const ChainSelectionOptions& opt = {});

// tanh-sinh quadrature on [a, b] of f(x, x - a, b - x); relative tolerance.
template <class F>
double tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-13, int max_level = 12);

}  // namespace stoqtim

#include "stoqtim/detail/tanh_sinh.hpp"
