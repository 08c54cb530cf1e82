#include "qgibbs/evolution.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qgibbs {

std::string HybridGate::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::H: os << "H " << q0; break;
        case Kind::S: os << "S " << q0; break;
        case Kind::SDG: os << "SDG " << q0; break;
        case Kind::CNOT: os << "CNOT " << q0 << ' ' << q1; break;
        case Kind::HYBRIDX: os << "HYBRIDX " << theta << ' ' << q0; break;
        case Kind::PSHIFT: os << "PSHIFT " << theta; break;
    }
    return os.str();
}

int HybridCircuit::cnot_count() const {
    int n = 0;
    for (const auto& g : gates) n += g.kind == HybridGate::Kind::CNOT;
    return n;
}

int HybridCircuit::hybrid_count() const {
    int n = 0;
    for (const auto& g : gates) n += g.kind == HybridGate::Kind::HYBRIDX;
    return n;
}

namespace {

MatC gate_h() {
    MatC m(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

MatC gate_s(bool dagger) {
    MatC m = MatC::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = dagger ? cxd(0, -1) : cxd(0, 1);
    return m;
}

} // namespace

void HybridCircuit::apply(HybridState& state, const FockMode& fock) const {
    if (fock.cutoff() != state.cutoff())
        throw std::invalid_argument("HybridCircuit::apply: cutoff mismatch");
    // Translations are reused across gates with equal angles.
    std::map<double, MatC> trans;
    auto translation = [&](double th) -> const MatC& {
        auto it = trans.find(th);
        if (it == trans.end()) it = trans.emplace(th, fock.translation(th)).first;
        return it->second;
    };
    for (const auto& g : gates) {
        switch (g.kind) {
            case HybridGate::Kind::H: state.apply_1q(gate_h(), g.q0); break;
            case HybridGate::Kind::S: state.apply_1q(gate_s(false), g.q0); break;
            case HybridGate::Kind::SDG: state.apply_1q(gate_s(true), g.q0); break;
            case HybridGate::Kind::CNOT: state.apply_cnot(g.q0, g.q1); break;
            case HybridGate::Kind::HYBRIDX:
                state.apply_hybrid_x(g.q0, translation(g.theta), translation(-g.theta));
                break;
            case HybridGate::Kind::PSHIFT: state.apply_mode_unitary(translation(g.theta)); break;
        }
    }
}

std::string HybridCircuit::to_text() const {
    std::ostringstream os;
    for (const auto& g : gates) os << g.to_string() << '\n';
    return os.str();
}

MatC HybridCircuit::dense(int n_qubits, const FockMode& fock) const {
    const int cutoff = fock.cutoff();
    const std::size_t qd = std::size_t(1) << n_qubits;
    const std::size_t d = qd * cutoff;
    MatC u = MatC::Identity(d, d);
    const MatC eye_mode = MatC::Identity(cutoff, cutoff);

    auto kron_qm = [&](const MatC& q, const MatC& m) {
        MatC out(d, d);
        for (std::size_t i = 0; i < qd; ++i)
            for (std::size_t j = 0; j < qd; ++j)
                out.block(i * cutoff, j * cutoff, cutoff, cutoff) = q(i, j) * m;
        return out;
    };

    for (const auto& g : gates) {
        MatC gd;
        switch (g.kind) {
            case HybridGate::Kind::H: gd = kron_qm(embed_1q(gate_h(), g.q0, n_qubits), eye_mode); break;
            case HybridGate::Kind::S: gd = kron_qm(embed_1q(gate_s(false), g.q0, n_qubits), eye_mode); break;
            case HybridGate::Kind::SDG: gd = kron_qm(embed_1q(gate_s(true), g.q0, n_qubits), eye_mode); break;
            case HybridGate::Kind::CNOT: {
                MatC perm = MatC::Zero(qd, qd);
                const std::size_t mc = std::size_t(1) << g.q0;
                const std::size_t mt = std::size_t(1) << g.q1;
                for (std::size_t b = 0; b < qd; ++b) perm((b & mc) ? (b ^ mt) : b, b) = 1.0;
                gd = kron_qm(perm, eye_mode);
                break;
            }
            case HybridGate::Kind::HYBRIDX: {
                MatC pplus(2, 2), pminus(2, 2);
                pplus << 0.5, 0.5, 0.5, 0.5;
                pminus << 0.5, -0.5, -0.5, 0.5;
                gd = kron_qm(embed_1q(pplus, g.q0, n_qubits), fock.translation(g.theta)) +
                     kron_qm(embed_1q(pminus, g.q0, n_qubits), fock.translation(-g.theta));
                break;
            }
            case HybridGate::Kind::PSHIFT:
                gd = kron_qm(MatC::Identity(qd, qd), fock.translation(g.theta));
                break;
        }
        u = gd * u;
    }
    return u;
}

void apply_joint_evolution(HybridState& state, const VecD& evals, const MatC& evecs,
                           int n_system, double t, const FockMode& fock) {
    if (fock.cutoff() != state.cutoff())
        throw std::invalid_argument("apply_joint_evolution: cutoff mismatch");
    if (n_system > state.n_qubits())
        throw std::invalid_argument("apply_joint_evolution: n_system too large");
    const std::size_t sd = std::size_t(1) << n_system;
    if (std::size_t(evals.size()) != sd || std::size_t(evecs.rows()) != sd)
        throw std::invalid_argument("apply_joint_evolution: eigensystem dimension mismatch");
    const int cutoff = state.cutoff();
    const std::size_t nblocks = state.qubit_dim() / sd;
    const VecD& P = fock.p_eigenvalues();
    const MatC& V = fock.p_eigenvectors();
    const MatC Vc = V.conjugate();
    const MatC Vt = V.transpose();

    for (std::size_t blk = 0; blk < nblocks; ++blk) {
        Eigen::Map<Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
            state.amplitudes().data() + blk * sd * cutoff, sd, cutoff);
        // System index to the H eigenbasis, mode index to the p eigenbasis.
        MatC a = evecs.adjoint() * m;
        a = a * Vc;
        for (std::size_t k = 0; k < sd; ++k) {
            const double et = evals[k] * t;
            for (int j = 0; j < cutoff; ++j) a(k, j) *= std::polar(1.0, -et * P[j]);
        }
        a = a * Vt;
        m = evecs * a;
    }
}

void apply_joint_evolution(HybridState& state, const PauliHamiltonian& h, int n_system,
                           double t, const FockMode& fock) {
    Eigen::SelfAdjointEigenSolver<MatC> es(h.dense());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("apply_joint_evolution: eigensolver failed");
    apply_joint_evolution(state, es.eigenvalues(), es.eigenvectors(), n_system, t, fock);
}

HybridCircuit compile_pauli_p_evolution(const std::vector<std::pair<int, char>>& ops,
                                        double theta) {
    if (ops.empty())
        throw std::invalid_argument("compile_pauli_p_evolution: empty Pauli string");
    HybridCircuit c;
    using K = HybridGate::Kind;
    // Basis changes W with W P_i W^dag = X: H for Z, S^dag for Y.
    for (const auto& [site, p] : ops) {
        if (p == 'Z') c.gates.push_back({K::H, 0.0, site, -1});
        else if (p == 'Y') c.gates.push_back({K::SDG, 0.0, site, -1});
        else if (p != 'X') throw std::invalid_argument("compile_pauli_p_evolution: bad label");
    }
    const int target = ops.front().first;
    for (std::size_t i = 1; i < ops.size(); ++i)
        c.gates.push_back({K::CNOT, 0.0, target, ops[i].first});
    c.gates.push_back({K::HYBRIDX, theta, target, -1});
    for (std::size_t i = ops.size(); i-- > 1;)
        c.gates.push_back({K::CNOT, 0.0, target, ops[i].first});
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->second == 'Z') c.gates.push_back({K::H, 0.0, it->first, -1});
        else if (it->second == 'Y') c.gates.push_back({K::S, 0.0, it->first, -1});
    }
    return c;
}

HybridCircuit trotter_evolution(const PauliHamiltonian& h, double t, int steps, int order) {
    if (steps < 1) throw std::invalid_argument("trotter_evolution: steps must be >= 1");
    if (order != 1 && order != 2) throw std::invalid_argument("trotter_evolution: order 1 or 2");
    h.validate();
    HybridCircuit c;
    const double dt = t / steps;
    auto append_term = [&](const PauliTerm& term, double angle) {
        HybridCircuit sub = compile_pauli_p_evolution(term.ops, angle);
        c.gates.insert(c.gates.end(), sub.gates.begin(), sub.gates.end());
    };
    for (int s = 0; s < steps; ++s) {
        if (order == 1) {
            for (const auto& term : h.terms) append_term(term, term.coeff * dt);
        } else {
            for (const auto& term : h.terms) append_term(term, 0.5 * term.coeff * dt);
            for (auto it = h.terms.rbegin(); it != h.terms.rend(); ++it)
                append_term(*it, 0.5 * it->coeff * dt);
        }
    }
    if (h.shift != 0.0)
        c.gates.push_back({HybridGate::Kind::PSHIFT, h.shift * t, -1, -1});
    return c;
}

MatC dense_exp_hermitian(const MatC& g, double t) {
    Eigen::SelfAdjointEigenSolver<MatC> es(g);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense_exp_hermitian: failed");
    VecC ph(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < ph.size(); ++i)
        ph[i] = std::polar(1.0, -t * es.eigenvalues()[i]);
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

MatC joint_generator_dense(const PauliHamiltonian& h, const FockMode& fock) {
    const MatC hd = h.dense();
    const MatC p = momentum_op(fock.cutoff());
    const std::size_t qd = hd.rows();
    const int cutoff = fock.cutoff();
    MatC out(qd * cutoff, qd * cutoff);
    for (std::size_t i = 0; i < qd; ++i)
        for (std::size_t j = 0; j < qd; ++j)
            out.block(i * cutoff, j * cutoff, cutoff, cutoff) = hd(i, j) * p;
    return out;
}

} // namespace qgibbs
