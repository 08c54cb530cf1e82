#ifndef QGIBBS_ORACLE_HPP
#define QGIBBS_ORACLE_HPP

#include "qgibbs/pauli.hpp"
#include "qgibbs/thermo.hpp"

#include <optional>

namespace qgibbs {

// Momentum grid with single-particle energies for the free-fermion oracles.
struct SpectrumGrid {
    VecD momenta;
    VecD energies;  // >= 0 for all regular modes
    enum class Parity { None, Even, Odd } parity = Parity::None;
    std::optional<double> zero_mode_term;  // signed k=0 energy in the odd sector

    void validate() const;
};

// Kitaev ring treated with a single unconstrained grid k_i = 2 pi i / L and
// xi(k) = 2J sqrt(1 + lam^2 + 2 lam cos k), lam = mu / (2J). The cos-branch sign is
// fixed by the dense spin-model cross-check.
SpectrumGrid kitaev_modes(int L, double J, double mu);

// Ising ring sectors, lam = h / J. Even fermion parity lives on the antiperiodic
// grid k_i = 2 pi i / L + pi / L; odd parity on the periodic grid, whose k = 0 mode
// carries the signed energy -2J(1 - lam) stored in zero_mode_term.
SpectrumGrid ising_modes_even(int L, double J, double h);
SpectrumGrid ising_modes_odd(int L, double J, double h);

// Dense Gibbs state of H (shift included exactly as in H). Returns (rho, Z).
std::pair<MatC, double> dense_gibbs(const PauliHamiltonian& h, double beta);

// log Z for the Kitaev ring in the Bogoliubov convention (ground energy -1/2 sum xi):
// log Z = sum_i log(2 cosh(beta xi_i / 2)).
double kitaev_log_partition(int L, double J, double mu, double beta);

// Free energy per site, finite L or the L -> infinity momentum integral.
double kitaev_free_energy(int L, double J, double mu, double beta);
double kitaev_free_energy_limit(double J, double mu, double beta);

// log Z for the Ising ring via the parity-filtered two-accumulator recursion over
// sector modes, in the absolute Bogoliubov energy convention.
double ising_log_partition_recursion(int L, double J, double h, double beta);

// Independent check: enumerate all occupation patterns of both sectors, keep even
// counts in the even sector and odd counts in the odd sector.
double ising_log_partition_brute(int L, double J, double h, double beta);

double ising_free_energy(int L, double J, double h, double beta);

// Prefix identity helper for tests: log of J^e_n + J^o_n (unfiltered product) after
// the first n modes of a grid, seeded like the recursion.
double ising_recursion_prefix_unfiltered(const SpectrumGrid& grid, double beta, int n);

enum class ModelFamily { Kitaev, Ising };

// Free energy per site as a function of the transverse field h at fixed J, for the
// susceptibility finite differences. For Kitaev, h = -mu/2 (so mu = -2h); L = 0
// selects the thermodynamic-limit integral (Kitaev only).
double free_energy_at_field(ModelFamily family, int L, double J, double h, double beta);

// chi_m(T) = -d^2 f / dh^2 by central differences at the family's field h(lambda):
// h = -lambda J for Kitaev, h = lambda J for Ising.
double susceptibility_oracle(ModelFamily family, int L, double J, double lambda, double T,
                             double delta_h);

// T*(lambda) curve: for each lambda, chi_m over the T grid, argmax with 3-point
// parabolic refinement. Boundary maxima are flagged in the curve metadata.
ThermoCurve susceptibility_and_crossover(ModelFamily family, int L, double J,
                                         const VecD& t_grid, const VecD& lambda_grid,
                                         double delta_h = 1e-4);

} // namespace qgibbs

#endif
