#include "qgibbs/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qgibbs {

MatD annihilation_op(int cutoff) {
    MatD a = MatD::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

MatC momentum_op(int cutoff) {
    MatD a = annihilation_op(cutoff);
    const cxd i_over_sqrt2(0.0, 1.0 / std::sqrt(2.0));
    return i_over_sqrt2 * (a.transpose() - a).cast<cxd>();
}

MatD position_op(int cutoff) {
    MatD a = annihilation_op(cutoff);
    return (a + a.transpose()) / std::sqrt(2.0);
}

FockMode::FockMode(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 2) throw std::invalid_argument("FockMode: cutoff must be >= 2");
    // B = D p D^dag with D = diag(i^n) is real symmetric tridiagonal with
    // B(n+1, n) = -sqrt((n+1)/2).
    MatD B = MatD::Zero(cutoff, cutoff);
    for (int n = 0; n + 1 < cutoff; ++n) {
        double v = -std::sqrt((n + 1) / 2.0);
        B(n + 1, n) = v;
        B(n, n + 1) = v;
    }
    Eigen::SelfAdjointEigenSolver<MatD> es(B);
    if (es.info() != Eigen::Success) throw std::runtime_error("FockMode: eigensolver failed");
    P_ = es.eigenvalues();
    // p = D^dag B D, so V = D^dag W with W the eigenvectors of B.
    V_ = MatC(cutoff, cutoff);
    const cxd minus_i(0.0, -1.0);
    cxd phase = 1.0;
    for (int n = 0; n < cutoff; ++n) {
        V_.row(n) = phase * es.eigenvectors().row(n).cast<cxd>();
        phase *= minus_i;
    }
}

MatC FockMode::translation(double theta) const {
    VecC ph(cutoff_);
    for (int j = 0; j < cutoff_; ++j) ph[j] = std::polar(1.0, -theta * P_[j]);
    return V_ * ph.asDiagonal() * V_.adjoint();
}

VecC FockMode::to_p_basis(const VecC& phi) const { return V_.adjoint() * phi; }

VecC FockMode::overlap_weights(const VecC& ket, const VecC& init) const {
    VecC k = to_p_basis(ket);
    VecC r = to_p_basis(init);
    return k.conjugate().cwiseProduct(r);
}

VecC FockMode::phase_sum(const VecC& w, const VecD& xs) const {
    VecC g(xs.size());
    for (Eigen::Index k = 0; k < xs.size(); ++k) {
        const double x = xs[k];
        cxd acc = 0.0;
        for (int j = 0; j < cutoff_; ++j) acc += w[j] * std::polar(1.0, -x * P_[j]);
        g[k] = acc;
    }
    return g;
}

} // namespace qgibbs
