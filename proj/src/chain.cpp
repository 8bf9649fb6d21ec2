#include "stoqtim/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stoqtim/basis.hpp"
#include "stoqtim/calibration.hpp"
#include "stoqtim/eigensolvers.hpp"
#include "stoqtim/error.hpp"

namespace stoqtim {

namespace {

using std::numbers::pi;

void check(const ChainParams& p) {
  if (p.length < 2) fail(ErrorKind::validation, "chain length must be >= 2");
  if (!(p.coupling > 1.0)) fail(ErrorKind::validation, "chain coupling g must exceed 1");
}

// |g - omega_m^p| without cancellation at p = 0, g -> 1
double eps(int m, double g, double p) {
  const double s = std::sin(pi * p / m);
  return std::sqrt((g - 1) * (g - 1) + 4 * g * s * s);
}

std::vector<double> eps_list(int m, double g, double offset) {
  std::vector<double> e(m);
  for (int j = 0; j < m; ++j) e[j] = eps(m, g, j + offset);
  return e;
}

double pair_log_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (double x : a)
    for (double y : b) s += std::log(x + y);
  return s;
}

}  // namespace

ChainParams ChainParams::from_exponent(int m, double c) {
  ChainParams p;
  p.length = m;
  p.coupling = 1.0 + c * std::log(static_cast<double>(m)) / m;
  p.exponent = c;
  return p;
}

TimHamiltonian chain_hamiltonian(const ChainParams& p) {
  check(p);
  const int m = p.length;
  std::vector<Edge> edges;
  for (int j = 0; j < m; ++j) edges.push_back(make_edge(j, (j + 1) % m));
  TimHamiltonian h = zero_tim(InteractionGraph(m, edges), TimForm::pauli);
  for (int j = 0; j < m; ++j) {
    h.transverse[j] = -1.0;
    h.ising[make_edge(j, (j + 1) % m)] += -p.coupling;
  }
  return h;
}

ChainGroundPair chain_ground_pair(const ChainParams& p) {
  check(p);
  const int m = p.length;
  if (m > 24) fail(ErrorKind::size_limit, "chain_ground_pair: chain longer than 24");
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  const Eigen::Index dim = static_cast<Eigen::Index>(top);
  auto diag = [&](std::uint64_t s) {
    double d = 0.0;
    for (int j = 0; j < m; ++j) {
      int k = (j + 1) % m;
      if (m == 2 && j == 1) break;
      double zz = (((s >> j) ^ (s >> k)) & 1) ? -1.0 : 1.0;
      d += -p.coupling * zz * (m == 2 ? 2.0 : 1.0);
    }
    return d;
  };
  SolverOptions opt;
  opt.dense_threshold = 512;
  EigenPairs sec[2];
  for (int parity = 0; parity < 2; ++parity) {
    const double sigma = parity == 0 ? 1.0 : -1.0;
    std::vector<Eigen::Triplet<double>> trips;
    for (std::uint64_t r = 0; r < top; ++r) {
      trips.emplace_back(r, r, diag(r));
      for (int j = 0; j < m; ++j) {
        std::uint64_t s = r ^ (std::uint64_t{1} << j);
        if (s & top) trips.emplace_back(s ^ full, r, -sigma);
        else trips.emplace_back(s, r, -1.0);
      }
    }
    SparseMatrix h(dim, dim);
    h.setFromTriplets(trips.begin(), trips.end());
    sec[parity] = lowest_eigenpairs(h, std::min<Eigen::Index>(2, dim), opt);
  }
  ChainGroundPair out;
  out.e0 = sec[0].values(0);
  out.e1 = sec[1].values(0);
  out.e2 = std::min(dim > 1 ? sec[0].values(1) : INFINITY, dim > 1 ? sec[1].values(1) : INFINITY);
  out.psi0.setZero(full + 1);
  out.psi1.setZero(full + 1);
  const double r2 = std::sqrt(0.5);
  for (std::uint64_t r = 0; r < top; ++r) {
    out.psi0(r) = r2 * sec[0].vectors(r, 0);
    out.psi0(r ^ full) = r2 * sec[0].vectors(r, 0);
    out.psi1(r) = r2 * sec[1].vectors(r, 0);
    out.psi1(r ^ full) = -r2 * sec[1].vectors(r, 0);
  }
  if (out.psi0.sum() < 0) out.psi0 = -out.psi0;
  double z0 = 0.0;
  for (std::uint64_t s = 0; s <= full; ++s) z0 += out.psi1(s) * ((s & 1) ? -1.0 : 1.0) * out.psi0(s);
  if (z0 < 0) out.psi1 = -out.psi1;
  return out;
}

std::array<double, 3> chain_energies(const ChainParams& p) {
  check(p);
  const int m = p.length;
  const double g = p.coupling;
  double e0 = 0.0, e1 = 0.0;
  for (int j = 0; j < m; ++j) {
    e0 -= eps(m, g, j + 0.5);
    e1 -= eps(m, g, j);
  }
  double e2 = m >= 3 ? e0 + 4 * eps(m, g, 0.5) : chain_ground_pair(p).e2;
  return {e0, e1, e2};
}

double chain_log_xi(const ChainParams& p) {
  check(p);
  const int m = p.length;
  const double g = p.coupling;
  auto P = eps_list(m, g, 0.0);
  auto Q = eps_list(m, g, 0.5);
  return std::log1p(-1.0 / (g * g)) / 8 + pair_log_sum(P, Q) / 4 - pair_log_sum(P, P) / 8 -
         pair_log_sum(Q, Q) / 8;
}

double chain_xi(const ChainParams& p) { return std::exp(chain_log_xi(p)); }

double chain_eta(const ChainParams& p) {
  const double g = p.coupling;
  return std::exp(chain_log_xi(p) - std::log1p(-1.0 / (g * g)) / 8);
}

double chain_splitting_integral(const ChainParams& p) {
  check(p);
  const int m = p.length;
  const double g = p.coupling;
  const double b = 1.0 / g;
  // x + 1/x - g - 1/g = (g - x)(1/g - x) / x
  auto f = [&](double x, double from_a, double to_b) -> double {
    if (x <= 0.0 || to_b <= 0.0) return 0.0;
    (void)from_a;
    const double logv = (m - 1) * std::log(x) + 0.5 * (std::log(g - x) + std::log(to_b) - std::log(x));
    return std::exp(logv) / (-std::expm1(2 * m * std::log(x)));
  };
  const double integral = tanh_sinh(f, 0.0, b);
  return 0.5 * 4 * m * std::sqrt(g) / pi * integral;
}

std::array<double, 2> chain_z_sums(const ChainParams& p) {
  check(p);
  double zp = 0.0, zm = 0.0;
  for (int j = 0; j < p.length; ++j) {
    zp += 1.0 / eps(p.length, p.coupling, j);
    zm += 1.0 / eps(p.length, p.coupling, j + 0.5);
  }
  return {zp, zm};
}

double chain_log_eta_derivative(const ChainParams& p) {
  auto [zp, zm] = chain_z_sums(p);
  const double g = p.coupling;
  return (1.0 / g - g) * (zp - zm) * (zp - zm) / 16;
}

bool chain_eta_monotonicity(int m, const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    fail(ErrorKind::precondition, "chain_eta_monotonicity: grid must be ascending");
  bool ok = true;
  double prev = INFINITY;
  for (double g : grid) {
    ChainParams p{m, g, std::nullopt};
    const double eta = chain_eta(p);
    ok = ok && eta <= prev * (1 + 1e-12) && chain_log_eta_derivative(p) <= 0.0;
    prev = eta;
  }
  return ok;
}

ChainSpectrum chain_spectrum(const ChainParams& p) {
  check(p);
  ChainSpectrum s;
  auto [e0, e1, e2] = chain_energies(p);
  s.e0 = e0;
  s.e1 = e1;
  s.e2 = e2;
  s.splitting = chain_splitting_integral(p);
  s.gap = p.length >= 3 ? 4 * eps(p.length, p.coupling, 0.5) - s.splitting : e2 - 0.5 * (e0 + e1);
  s.xi = chain_xi(p);
  s.eta = chain_eta(p);
  return s;
}

ChainSelection select_chain_parameters(int n_logical, double j, double eps_target, double eta_target,
                                       const ChainSelectionOptions& opt) {
  if (n_logical < 1 || !(j > 0) || !(eps_target > 0) || !(eta_target > 0))
    fail(ErrorKind::precondition, "select_chain_parameters: arguments must be positive");
  const int m = opt.length.value_or(std::max(n_logical, 2));
  const double k = opt.k_constant > 0 ? opt.k_constant : calibration().chain;
  auto evaluate = [&](double c) {
    ChainSelection sel;
    sel.params = ChainParams::from_exponent(m, c);
    sel.spectrum = chain_spectrum(sel.params);
    sel.demanded_inverse_splitting =
        k * m * j / (eps_target * sel.spectrum.xi) * (1.0 + 1.0 / eta_target);
    return sel;
  };
  if (opt.exponent) return evaluate(*opt.exponent);
  for (int c = 2; c <= 12; ++c) {
    ChainSelection sel = evaluate(c);
    if (sel.spectrum.splitting < 1e-250) break;
    if (1.0 / sel.spectrum.splitting >= sel.demanded_inverse_splitting) return sel;
  }
  fail(ErrorKind::unreachable, "select_chain_parameters: no tabulated exponent c in [2, 12] reaches the target");
}

}  // namespace stoqtim
