#pragma once

#include <vector>

#include "stoqtim/models.hpp"

namespace stoqtim {

TimHamiltonian pauli_to_occupation(const TimHamiltonian& h);
TimHamiltonian occupation_to_pauli(const TimHamiltonian& h);

// Replaces every g_u Z_u by g_u Z_u Z_a on a fresh ancilla a = n.
// The spectrum of the result is the input spectrum with doubled multiplicities.
TimHamiltonian absorb_linear_field(const TimHamiltonian& h);

// Conjugation by Z on the flipped qubits makes every h_u <= 0.
struct StoquasticFrame {
  TimHamiltonian hamiltonian;
  std::vector<bool> flipped;
};
StoquasticFrame to_stoquastic_frame(const TimHamiltonian& h);

}  // namespace stoqtim
