#include "qgibbs/pauli.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace qgibbs {

MatC pauli_matrix(char p) {
    MatC m(2, 2);
    switch (p) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0); break;
        case 'Z': m << 1, 0, 0, -1; break;
        case 'I': m = MatC::Identity(2, 2); break;
        default: throw std::invalid_argument("pauli_matrix: unknown label");
    }
    return m;
}

std::string PauliTerm::to_string() const {
    std::ostringstream os;
    os << coeff;
    if (ops.empty()) os << " I";
    for (const auto& [site, p] : ops) os << ' ' << p << site;
    return os.str();
}

void PauliHamiltonian::validate() const {
    for (const auto& t : terms) {
        if (t.ops.empty()) throw std::invalid_argument("PauliHamiltonian: identity term; fold into shift");
        std::set<int> seen;
        int prev = -1;
        for (const auto& [site, p] : t.ops) {
            if (site < 0 || site >= n_qubits)
                throw std::invalid_argument("PauliHamiltonian: site out of range");
            if (!seen.insert(site).second)
                throw std::invalid_argument("PauliHamiltonian: duplicate site in term");
            if (site <= prev) throw std::invalid_argument("PauliHamiltonian: sites not sorted");
            prev = site;
            if (p != 'X' && p != 'Y' && p != 'Z')
                throw std::invalid_argument("PauliHamiltonian: bad Pauli label");
        }
    }
}

MatC pauli_string_dense(const std::vector<std::pair<int, char>>& ops, int n_qubits) {
    const std::size_t d = std::size_t(1) << n_qubits;
    MatC out = MatC::Zero(d, d);
    // Each Pauli string is a (possibly signed/phased) permutation: column b maps to a
    // single row with a phase.
    for (std::size_t b = 0; b < d; ++b) {
        std::size_t b2 = b;
        cxd phase = 1.0;
        for (const auto& [site, p] : ops) {
            const std::size_t mask = std::size_t(1) << site;
            const bool bit = (b & mask) != 0;
            switch (p) {
                case 'X': b2 ^= mask; break;
                case 'Y':
                    b2 ^= mask;
                    phase *= bit ? cxd(0, -1) : cxd(0, 1);
                    break;
                case 'Z':
                    if (bit) phase = -phase;
                    break;
                default: throw std::invalid_argument("pauli_string_dense: bad label");
            }
        }
        out(b2, b) = phase;
    }
    return out;
}

MatC PauliHamiltonian::dense() const {
    validate();
    const std::size_t d = std::size_t(1) << n_qubits;
    MatC h = shift * MatC::Identity(d, d);
    for (const auto& t : terms) h += t.coeff * pauli_string_dense(t.ops, n_qubits);
    return h;
}

std::string PauliHamiltonian::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        os << '(' << terms[i].to_string() << ')';
    }
    if (shift != 0.0) os << " + " << shift;
    return os.str();
}

} // namespace qgibbs
