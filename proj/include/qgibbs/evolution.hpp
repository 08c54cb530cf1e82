#ifndef QGIBBS_EVOLUTION_HPP
#define QGIBBS_EVOLUTION_HPP

#include "qgibbs/fock.hpp"
#include "qgibbs/hilbert.hpp"
#include "qgibbs/pauli.hpp"

#include <string>
#include <vector>

namespace qgibbs {

// Gate set for hybrid circuits. HYBRIDX is exp(-i theta sigma_x(target) p_hat);
// PSHIFT is the mode translation exp(-i theta p_hat) (used for identity terms,
// which commute with everything).
struct HybridGate {
    enum class Kind { H, S, SDG, CNOT, HYBRIDX, PSHIFT } kind;
    double theta = 0.0;      // HYBRIDX / PSHIFT only
    int q0 = -1;             // target (control for CNOT)
    int q1 = -1;             // CNOT target

    std::string to_string() const;
};

struct HybridCircuit {
    std::vector<HybridGate> gates;

    int cnot_count() const;
    int hybrid_count() const;
    void apply(HybridState& state, const FockMode& fock) const;
    // One gate per line: NAME [theta] [targets].
    std::string to_text() const;
    // Dense matrix on (2^n_qubits x cutoff) in qubit-major layout, for equivalence checks.
    MatC dense(int n_qubits, const FockMode& fock) const;
};

// exp(-i H p_hat t) applied in place. System qubits are the low n_system bits of the
// qubit index; higher bits are spectators. evals/evecs are the eigensystem of the
// dense system Hamiltonian (shift included in evals).
void apply_joint_evolution(HybridState& state, const VecD& evals, const MatC& evecs,
                           int n_system, double t, const FockMode& fock);
void apply_joint_evolution(HybridState& state, const PauliHamiltonian& h, int n_system,
                           double t, const FockMode& fock);

// Circuit for exp(-i theta P p_hat) for one Pauli string: single-qubit basis changes,
// a CNOT ladder onto the first site, one HYBRIDX, and the mirror. 2(w-1) CNOTs for
// weight w.
HybridCircuit compile_pauli_p_evolution(const std::vector<std::pair<int, char>>& ops,
                                        double theta);

// Product-formula circuit for exp(-i H p_hat t), order 1 or 2. The identity shift
// commutes exactly and is emitted as a single trailing PSHIFT.
HybridCircuit trotter_evolution(const PauliHamiltonian& h, double t, int steps, int order);

// exp(-i t G) for Hermitian G, via eigendecomposition.
MatC dense_exp_hermitian(const MatC& g, double t);

// Generator H (x) p_hat as a dense qubit-major matrix, for checking circuits.
MatC joint_generator_dense(const PauliHamiltonian& h, const FockMode& fock);

} // namespace qgibbs

#endif
