#include "stoqtim/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "stoqtim/chain.hpp"
#include "stoqtim/error.hpp"

namespace stoqtim {

std::uint64_t Encoding::apply(std::uint64_t target) const {
  auto it = std::lower_bound(map.begin(), map.end(), target,
                             [](const auto& p, std::uint64_t t) { return p.first < t; });
  if (it != map.end() && it->first == target) return it->second;
  if (rule) return rule(target);
  fail(ErrorKind::dimension_mismatch, "encoding has no image for configuration " + std::to_string(target));
}

Encoding identity_encoding(int nodes) {
  return basis_map_encoding([](std::uint64_t s) { return s; }, nodes);
}

Encoding basis_map_encoding(std::function<std::uint64_t(std::uint64_t)> rule, int simulator_nodes,
                            const BasisSpace* target) {
  Encoding e;
  e.simulator_nodes = simulator_nodes;
  e.rule = std::move(rule);
  if (target) {
    e.map.reserve(target->size());
    for (auto s : target->configs) e.map.emplace_back(s, e.rule(s));
  }
  return e;
}

Encoding compose(const Encoding& first, const Encoding& second) {
  if (!first.is_basis_map()) fail(ErrorKind::precondition, "compose: chain-tensor stage must come last");
  Encoding out = second;
  const bool second_maps = second.is_basis_map() || second.rule || !second.map.empty();
  out.map.clear();
  out.map.reserve(first.map.size());
  for (auto [t, s] : first.map) out.map.emplace_back(t, second_maps ? second.apply(s) : s);
  if (second_maps) {
    out.rule = [first, second](std::uint64_t t) { return second.apply(first.apply(t)); };
  } else {
    out.rule = first.rule;
  }
  return out;
}

bool is_valid_basis_map(const Encoding& enc, const BasisSpace& target, const BasisSpace& simulator) {
  if (!enc.is_basis_map()) return false;
  std::set<std::uint64_t> images;
  for (auto t : target.configs) {
    const std::uint64_t s = enc.apply(t);
    if (!simulator.contains(s)) return false;
    if (!images.insert(s).second) return false;
  }
  return true;
}

bool is_valid_basis_map(const Encoding& enc, const BasisSpace& target, const ModelHamiltonian& simulator) {
  if (!enc.is_basis_map()) return false;
  std::set<std::uint64_t> images;
  for (auto t : target.configs) {
    const std::uint64_t s = enc.apply(t);
    if (!is_admissible(simulator, s)) return false;
    if (!images.insert(s).second) return false;
  }
  return true;
}

namespace {

Eigen::MatrixXd chain_tensor_matrix(const Encoding& enc, const BasisSpace& target,
                                    const BasisSpace& simulator) {
  const auto& blocks = enc.chain_blocks;
  // Logical states per block: column 0 = |0bar>, column 1 = |1bar>.
  std::vector<Eigen::MatrixXd> logical;
  std::map<std::pair<int, double>, ChainGroundPair> cache;
  for (const auto& b : blocks) {
    auto key = std::make_pair(b.length, b.coupling);
    auto it = cache.find(key);
    if (it == cache.end()) {
      ChainParams p;
      p.length = b.length;
      p.coupling = b.coupling;
      it = cache.emplace(key, chain_ground_pair(p)).first;
    }
    Eigen::MatrixXd l(it->second.psi0.size(), 2);
    l.col(0) = (it->second.psi0 + it->second.psi1) / std::sqrt(2.0);
    l.col(1) = (it->second.psi0 - it->second.psi1) / std::sqrt(2.0);
    if (b.flipped) l.col(1) = -l.col(1);
    logical.push_back(std::move(l));
  }
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(simulator.size()),
                                            static_cast<Eigen::Index>(target.size()));
  for (std::size_t col = 0; col < target.size(); ++col) {
    const std::uint64_t x = (enc.map.empty() && !enc.rule) ? target[col] : enc.apply(target[col]);
    for (std::size_t row = 0; row < simulator.size(); ++row) {
      const std::uint64_t s = simulator[row];
      double amp = 1.0;
      for (std::size_t u = 0; u < blocks.size() && amp != 0.0; ++u) {
        std::uint64_t local = 0;
        for (std::size_t i = 0; i < blocks[u].qubits.size(); ++i)
          if (occupied(s, blocks[u].qubits[i])) local |= bit(static_cast<int>(i));
        amp *= logical[u](static_cast<Eigen::Index>(local), occupied(x, static_cast<int>(u)) ? 1 : 0);
      }
      e(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amp;
    }
  }
  return e;
}

}  // namespace

Eigen::MatrixXd encoding_matrix(const Encoding& enc, const BasisSpace& target,
                                const BasisSpace& simulator) {
  if (!enc.is_basis_map()) return chain_tensor_matrix(enc, target, simulator);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(simulator.size()),
                                            static_cast<Eigen::Index>(target.size()));
  for (std::size_t col = 0; col < target.size(); ++col) {
    const std::size_t row = simulator.index_of(enc.apply(target[col]));
    if (row == BasisSpace::npos)
      fail(ErrorKind::dimension_mismatch, "encoding image lies outside the simulator basis");
    e(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return e;
}

}  // namespace stoqtim
