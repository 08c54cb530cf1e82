#ifndef QGIBBS_MODELS_HPP
#define QGIBBS_MODELS_HPP

#include "qgibbs/pauli.hpp"

#include <string>

namespace qgibbs {

// H = g sigma_x + g c, spectrum {g(c-1), g(c+1)}. With c = 1 the ground state sits
// exactly at 0.
PauliHamiltonian single_qubit_model(double g, double c);

// Spin form of the Kitaev ring on L sites with a fermion-parity string on the bond
// that closes the ring:
//   H = (mu/2) sum_i sigma^z_i
//       - J sum_{i=0}^{L-2} sigma^x_i sigma^x_{i+1}
//       - J sigma^y_0 (prod_{i=1}^{L-2} sigma^z_i) sigma^y_{L-1}
//       + E0,
// with E0 chosen so the ground state sits exactly at 0 (computed densely).
// For L = 2 the string is empty and the boundary term is -J sigma^y_0 sigma^y_1.
PauliHamiltonian kitaev_spin_model(int L, double J, double mu);

// Transverse-field Ising ring, L >= 3:
//   H = -J sum_i sigma^x_i sigma^x_{i+1} - h sum_i sigma^z_i + E0  (periodic)
// with the same tight shift convention. L = 2 is rejected: the periodic wrap would
// double the single bond.
PauliHamiltonian ising_pbc_model(int L, double J, double h);

// Parsed "family:key=value,..." model description, e.g. "kitaev:L=4,J=1,mu=1.6".
// Kitaev accepts mu or lambda (mu = 2 J lambda); Ising accepts h or lambda (h = J lambda).
struct ModelSpec {
    enum class Family { SingleQubit, Kitaev, Ising };
    Family family;
    int L = 1;
    double J = 1.0;
    double g = 1.0;
    double c = 1.0;
    double mu = 0.0;  // Kitaev
    double h = 0.0;   // Ising

    static ModelSpec parse(const std::string& text);
    PauliHamiltonian build() const;
    std::string canonical() const;
    double lambda() const;  // dimensionless coupling: mu/(2J) for Kitaev, h/J for Ising
};

} // namespace qgibbs

#endif
