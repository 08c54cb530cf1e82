#ifndef QGIBBS_FOCK_HPP
#define QGIBBS_FOCK_HPP

#include "qgibbs/types.hpp"

namespace qgibbs {

// Truncated single-mode operators in the Fock basis |0..cutoff-1>.
MatD annihilation_op(int cutoff);
MatC momentum_op(int cutoff);  // p = i (a^dag - a) / sqrt(2)
MatD position_op(int cutoff);  // q = (a + a^dag) / sqrt(2)

// Eigensystem of the truncated momentum operator. The truncation of p is exactly
// Hermitian, so p = V diag(P) V^dag with real P. Computed via the real symmetric
// tridiagonal similarity B = D p D^dag, D = diag(i^n).
class FockMode {
  public:
    explicit FockMode(int cutoff);

    int cutoff() const { return cutoff_; }
    const VecD& p_eigenvalues() const { return P_; }
    const MatC& p_eigenvectors() const { return V_; }

    // exp(-i theta p) as a dense cutoff x cutoff unitary.
    MatC translation(double theta) const;

    // Components of |phi> in the p eigenbasis: V^dag phi.
    VecC to_p_basis(const VecC& phi) const;

    // Spectral weights w_j = conj((V^dag ket)_j) (V^dag init)_j, so that
    // <ket| exp(-i x p) |init> = sum_j w_j exp(-i x P_j).
    VecC overlap_weights(const VecC& ket, const VecC& init) const;

    // g(x_k) = sum_j w_j exp(-i x_k P_j) for a batch of points.
    VecC phase_sum(const VecC& w, const VecD& xs) const;

  private:
    int cutoff_;
    VecD P_;
    MatC V_;
};

} // namespace qgibbs

#endif
