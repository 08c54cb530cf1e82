#ifndef QGIBBS_HILBERT_HPP
#define QGIBBS_HILBERT_HPP

#include "qgibbs/types.hpp"

#include <cstdint>
#include <vector>

namespace qgibbs {

// Joint state of n_qubits qubits and one bosonic mode truncated to `cutoff` Fock
// levels. Layout is qubit-major: amp[b * cutoff + n] is the amplitude of qubit
// basis state b (bit i of b = state of qubit i) and Fock level n.
class HybridState {
  public:
    HybridState(int n_qubits, int cutoff);

    // Product of a pure qubit state and a pure mode state.
    static HybridState product(const VecC& qubit_amp, const VecC& mode_amp);

    int n_qubits() const { return n_qubits_; }
    int cutoff() const { return cutoff_; }
    std::size_t qubit_dim() const { return std::size_t(1) << n_qubits_; }
    std::size_t dim() const { return qubit_dim() * cutoff_; }

    VecC& amplitudes() { return amp_; }
    const VecC& amplitudes() const { return amp_; }

    cxd& at(std::size_t qubit_basis, int fock) { return amp_[qubit_basis * cutoff_ + fock]; }
    cxd at(std::size_t qubit_basis, int fock) const {
        return amp_[qubit_basis * cutoff_ + fock];
    }

    double norm() const { return amp_.norm(); }
    void normalize();

    // Applies a single-qubit unitary to qubit `target`.
    void apply_1q(const MatC& u, int target);

    // Applies a two-qubit unitary to (q1, q0); u is 4x4 in the basis
    // |q1 q0> = |00>,|01>,|10>,|11> with q0 the low bit.
    void apply_2q(const MatC& u, int q1, int q0);

    void apply_cnot(int control, int target);

    // Applies a unitary to the mode factor only.
    void apply_mode_unitary(const MatC& u);

    // exp(-i theta sigma_x(target) p_hat) given the two mode translations
    // t_minus = exp(-i theta p_hat), t_plus = exp(+i theta p_hat).
    void apply_hybrid_x(int target, const MatC& t_minus, const MatC& t_plus);

    // Projects the mode onto |phi> (not necessarily normalized): returns the
    // unnormalized qubit state <phi|psi> and leaves success bookkeeping to callers.
    VecC project_mode(const VecC& phi) const;

  private:
    int n_qubits_;
    int cutoff_;
    VecC amp_;
};

// |B> = 2^{-N/2} sum_b |b>_anc |b>_sys on 2N qubits. System qubits occupy bits
// 0..N-1 of the basis index, ancilla qubits bits N..2N-1.
VecC bell_pairs(int n_system);

// Reduced density matrix over the system half of a 2N-qubit pure state with the
// bit convention of bell_pairs. The input need not be normalized; the output is
// normalized to unit trace. Also reports the squared norm of the input.
MatC partial_trace_ancilla(const VecC& state, int n_system, double* norm_sq = nullptr);

// Trace distance (1/2)||rho - sigma||_1 for Hermitian matrices.
double trace_distance(const MatC& rho, const MatC& sigma);

// Validates Hermiticity, unit trace, and positivity up to `tol`; throws otherwise.
void check_density_matrix(const MatC& rho, double tol = 1e-10);

// Dense n-qubit matrix of a single-qubit operator acting on `target`.
MatC embed_1q(const MatC& u, int target, int n_qubits);

} // namespace qgibbs

#endif
