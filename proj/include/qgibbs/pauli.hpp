#ifndef QGIBBS_PAULI_HPP
#define QGIBBS_PAULI_HPP

#include "qgibbs/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qgibbs {

// One product of Pauli operators acting on distinct sites, e.g. 1.5 * X0 X1 Z3.
struct PauliTerm {
    double coeff = 0.0;
    std::vector<std::pair<int, char>> ops;  // (site, 'X'|'Y'|'Z'), sites strictly increasing

    std::string to_string() const;
};

// H = sum_k c_k P_k + shift * I on n_qubits qubits.
struct PauliHamiltonian {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;
    double shift = 0.0;

    void validate() const;  // throws on out-of-range sites, duplicates, bad labels
    MatC dense() const;
    std::string to_string() const;
};

MatC pauli_matrix(char p);

// Dense matrix of a single Pauli term (without its coefficient) on n_qubits qubits.
MatC pauli_string_dense(const std::vector<std::pair<int, char>>& ops, int n_qubits);

} // namespace qgibbs

#endif
