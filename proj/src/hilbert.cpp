#include "qgibbs/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace qgibbs {

HybridState::HybridState(int n_qubits, int cutoff) : n_qubits_(n_qubits), cutoff_(cutoff) {
    if (n_qubits < 0 || n_qubits > 24) throw std::invalid_argument("HybridState: bad n_qubits");
    if (cutoff < 1) throw std::invalid_argument("HybridState: cutoff must be >= 1");
    amp_ = VecC::Zero(dim());
}

HybridState HybridState::product(const VecC& qubit_amp, const VecC& mode_amp) {
    std::size_t qd = qubit_amp.size();
    int nq = 0;
    while ((std::size_t(1) << nq) < qd) ++nq;
    if ((std::size_t(1) << nq) != qd)
        throw std::invalid_argument("HybridState::product: qubit dimension not a power of 2");
    HybridState st(nq, int(mode_amp.size()));
    for (std::size_t b = 0; b < qd; ++b)
        st.amp_.segment(b * mode_amp.size(), mode_amp.size()) = qubit_amp[b] * mode_amp;
    return st;
}

void HybridState::normalize() {
    double n = amp_.norm();
    if (n == 0.0) throw std::runtime_error("HybridState::normalize: zero state");
    amp_ /= n;
}

void HybridState::apply_1q(const MatC& u, int target) {
    if (u.rows() != 2 || u.cols() != 2) throw std::invalid_argument("apply_1q: not 2x2");
    const std::size_t mask = std::size_t(1) << target;
    const std::size_t qd = qubit_dim();
    for (std::size_t b = 0; b < qd; ++b) {
        if (b & mask) continue;
        auto s0 = amp_.segment(b * cutoff_, cutoff_);
        auto s1 = amp_.segment((b | mask) * cutoff_, cutoff_);
        for (int n = 0; n < cutoff_; ++n) {
            cxd a0 = s0[n], a1 = s1[n];
            s0[n] = u(0, 0) * a0 + u(0, 1) * a1;
            s1[n] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
}

void HybridState::apply_2q(const MatC& u, int q1, int q0) {
    if (u.rows() != 4 || u.cols() != 4) throw std::invalid_argument("apply_2q: not 4x4");
    if (q1 == q0) throw std::invalid_argument("apply_2q: duplicate target");
    const std::size_t m1 = std::size_t(1) << q1;
    const std::size_t m0 = std::size_t(1) << q0;
    const std::size_t qd = qubit_dim();
    for (std::size_t b = 0; b < qd; ++b) {
        if (b & (m1 | m0)) continue;
        std::size_t idx[4] = {b, b | m0, b | m1, b | m1 | m0};
        for (int n = 0; n < cutoff_; ++n) {
            cxd a[4];
            for (int k = 0; k < 4; ++k) a[k] = amp_[idx[k] * cutoff_ + n];
            for (int k = 0; k < 4; ++k) {
                cxd v = 0.0;
                for (int l = 0; l < 4; ++l) v += u(k, l) * a[l];
                amp_[idx[k] * cutoff_ + n] = v;
            }
        }
    }
}

void HybridState::apply_cnot(int control, int target) {
    const std::size_t mc = std::size_t(1) << control;
    const std::size_t mt = std::size_t(1) << target;
    const std::size_t qd = qubit_dim();
    for (std::size_t b = 0; b < qd; ++b) {
        if (!(b & mc) || (b & mt)) continue;
        auto s0 = amp_.segment(b * cutoff_, cutoff_);
        auto s1 = amp_.segment((b | mt) * cutoff_, cutoff_);
        s0.swap(s1);
    }
}

void HybridState::apply_mode_unitary(const MatC& u) {
    if (u.rows() != cutoff_ || u.cols() != cutoff_)
        throw std::invalid_argument("apply_mode_unitary: dimension mismatch");
    const std::size_t qd = qubit_dim();
    for (std::size_t b = 0; b < qd; ++b)
        amp_.segment(b * cutoff_, cutoff_) = u * amp_.segment(b * cutoff_, cutoff_).eval();
}

void HybridState::apply_hybrid_x(int target, const MatC& t_minus, const MatC& t_plus) {
    const std::size_t mask = std::size_t(1) << target;
    const std::size_t qd = qubit_dim();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    VecC plus(cutoff_), minus(cutoff_);
    for (std::size_t b = 0; b < qd; ++b) {
        if (b & mask) continue;
        auto s0 = amp_.segment(b * cutoff_, cutoff_);
        auto s1 = amp_.segment((b | mask) * cutoff_, cutoff_);
        plus = inv_sqrt2 * (s0 + s1);   // sigma_x = +1 branch
        minus = inv_sqrt2 * (s0 - s1);  // sigma_x = -1 branch
        plus = (t_minus * plus).eval();
        minus = (t_plus * minus).eval();
        s0 = inv_sqrt2 * (plus + minus);
        s1 = inv_sqrt2 * (plus - minus);
    }
}

VecC HybridState::project_mode(const VecC& phi) const {
    if (phi.size() != cutoff_) throw std::invalid_argument("project_mode: dimension mismatch");
    const std::size_t qd = qubit_dim();
    VecC out(qd);
    for (std::size_t b = 0; b < qd; ++b)
        out[b] = phi.dot(amp_.segment(b * cutoff_, cutoff_));  // Eigen dot conjugates phi
    return out;
}

VecC bell_pairs(int n_system) {
    if (n_system < 1 || n_system > 12) throw std::invalid_argument("bell_pairs: bad n_system");
    const std::size_t d = std::size_t(1) << n_system;
    VecC psi = VecC::Zero(d * d);
    const double amp = std::pow(2.0, -0.5 * n_system);
    for (std::size_t b = 0; b < d; ++b) psi[(b << n_system) | b] = amp;
    return psi;
}

MatC partial_trace_ancilla(const VecC& state, int n_system, double* norm_sq) {
    const std::size_t d = std::size_t(1) << n_system;
    if (std::size_t(state.size()) != d * d)
        throw std::invalid_argument("partial_trace_ancilla: dimension mismatch");
    MatC rho = MatC::Zero(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        const auto blk = state.segment(a << n_system, d);
        rho.noalias() += blk * blk.adjoint();
    }
    double tr = rho.trace().real();
    if (norm_sq) *norm_sq = tr;
    if (tr <= 0.0) throw std::runtime_error("partial_trace_ancilla: zero-norm state");
    rho /= tr;
    return rho;
}

double trace_distance(const MatC& rho, const MatC& sigma) {
    Eigen::SelfAdjointEigenSolver<MatC> es(rho - sigma, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

void check_density_matrix(const MatC& rho, double tol) {
    if (rho.rows() != rho.cols()) throw std::runtime_error("density matrix not square");
    double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) throw std::runtime_error("density matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw std::runtime_error("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<MatC> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw std::runtime_error("density matrix not positive semidefinite");
}

MatC embed_1q(const MatC& u, int target, int n_qubits) {
    const std::size_t d = std::size_t(1) << n_qubits;
    const std::size_t mask = std::size_t(1) << target;
    MatC out = MatC::Zero(d, d);
    for (std::size_t b = 0; b < d; ++b) {
        std::size_t bit = (b & mask) ? 1 : 0;
        for (std::size_t bit2 = 0; bit2 < 2; ++bit2) {
            std::size_t b2 = (b & ~mask) | (bit2 ? mask : 0);
            out(b2, b) += u(bit2, bit);
        }
    }
    return out;
}

} // namespace qgibbs
