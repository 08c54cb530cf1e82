#include "qgibbs/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgibbs {

namespace {

double tight_shift(PauliHamiltonian h) {
    h.shift = 0.0;
    Eigen::SelfAdjointEigenSolver<MatC> es(h.dense(), Eigen::EigenvaluesOnly);
    return -es.eigenvalues().minCoeff();
}

} // namespace

PauliHamiltonian single_qubit_model(double g, double c) {
    PauliHamiltonian h;
    h.n_qubits = 1;
    h.terms.push_back({g, {{0, 'X'}}});
    h.shift = g * c;
    h.validate();
    return h;
}

PauliHamiltonian kitaev_spin_model(int L, double J, double mu) {
    if (L < 2 || L > 14) throw std::invalid_argument("kitaev_spin_model: L out of range [2,14]");
    PauliHamiltonian h;
    h.n_qubits = L;
    for (int i = 0; i < L; ++i) h.terms.push_back({0.5 * mu, {{i, 'Z'}}});
    for (int i = 0; i + 1 < L; ++i) h.terms.push_back({-J, {{i, 'X'}, {i + 1, 'X'}}});
    PauliTerm wrap;
    wrap.coeff = -J;
    wrap.ops.push_back({0, 'Y'});
    for (int i = 1; i + 1 < L; ++i) wrap.ops.push_back({i, 'Z'});
    wrap.ops.push_back({L - 1, 'Y'});
    h.terms.push_back(wrap);
    h.validate();
    h.shift = tight_shift(h);
    return h;
}

PauliHamiltonian ising_pbc_model(int L, double J, double h_field) {
    if (L == 2)
        throw std::invalid_argument(
            "ising_pbc_model: L = 2 rejected; the periodic wrap would double the single bond");
    if (L < 3 || L > 14) throw std::invalid_argument("ising_pbc_model: L out of range [3,14]");
    PauliHamiltonian h;
    h.n_qubits = L;
    for (int i = 0; i < L; ++i)
        h.terms.push_back({-J, {{i, 'X'}, {(i + 1) % L, 'X'}}});
    // Canonical site order for the wrap bond (L-1, 0).
    auto& wrap = h.terms[L - 1].ops;
    if (wrap[0].first > wrap[1].first) std::swap(wrap[0], wrap[1]);
    for (int i = 0; i < L; ++i) h.terms.push_back({-h_field, {{i, 'Z'}}});
    h.validate();
    h.shift = tight_shift(h);
    return h;
}

ModelSpec ModelSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string family = text.substr(0, colon);
    ModelSpec spec;
    bool has_mu = false, has_lambda = false, has_h = false;
    double lambda_val = 0.0;

    if (family == "single_qubit") spec.family = Family::SingleQubit;
    else if (family == "kitaev") spec.family = Family::Kitaev;
    else if (family == "ising") spec.family = Family::Ising;
    else throw std::invalid_argument("ModelSpec: unknown family '" + family + "'");

    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            if (kv.empty()) continue;
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("ModelSpec: expected key=value, got '" + kv + "'");
            std::string key = kv.substr(0, eq);
            double val = 0.0;
            try {
                std::size_t pos = 0;
                val = std::stod(kv.substr(eq + 1), &pos);
                if (pos != kv.size() - eq - 1) throw std::invalid_argument("trailing");
            } catch (...) {
                throw std::invalid_argument("ModelSpec: bad number in '" + kv + "'");
            }
            if (key == "L") spec.L = int(val);
            else if (key == "J") spec.J = val;
            else if (key == "g" && spec.family == Family::SingleQubit) spec.g = val;
            else if (key == "c" && spec.family == Family::SingleQubit) spec.c = val;
            else if (key == "mu" && spec.family == Family::Kitaev) { spec.mu = val; has_mu = true; }
            else if (key == "h" && spec.family == Family::Ising) { spec.h = val; has_h = true; }
            else if (key == "lambda" && spec.family != Family::SingleQubit) {
                lambda_val = val;
                has_lambda = true;
            } else {
                throw std::invalid_argument("ModelSpec: unknown key '" + key + "' for family " +
                                            family);
            }
        }
    }

    if (spec.family == Family::Kitaev) {
        if (has_mu && has_lambda)
            throw std::invalid_argument("ModelSpec: give mu or lambda, not both");
        if (has_lambda) spec.mu = 2.0 * spec.J * lambda_val;
    } else if (spec.family == Family::Ising) {
        if (has_h && has_lambda)
            throw std::invalid_argument("ModelSpec: give h or lambda, not both");
        if (has_lambda) spec.h = spec.J * lambda_val;
    }
    return spec;
}

PauliHamiltonian ModelSpec::build() const {
    switch (family) {
        case Family::SingleQubit: return single_qubit_model(g, c);
        case Family::Kitaev: return kitaev_spin_model(L, J, mu);
        case Family::Ising: return ising_pbc_model(L, J, h);
    }
    throw std::logic_error("ModelSpec::build: unreachable");
}

std::string ModelSpec::canonical() const {
    std::ostringstream os;
    switch (family) {
        case Family::SingleQubit: os << "single_qubit:g=" << g << ",c=" << c; break;
        case Family::Kitaev: os << "kitaev:L=" << L << ",J=" << J << ",mu=" << mu; break;
        case Family::Ising: os << "ising:L=" << L << ",J=" << J << ",h=" << h; break;
    }
    return os.str();
}

double ModelSpec::lambda() const {
    if (family == Family::Kitaev) return mu / (2.0 * J);
    if (family == Family::Ising) return h / J;
    return 0.0;
}

} // namespace qgibbs
