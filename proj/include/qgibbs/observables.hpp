#ifndef QGIBBS_OBSERVABLES_HPP
#define QGIBBS_OBSERVABLES_HPP

#include "qgibbs/models.hpp"
#include "qgibbs/oracle.hpp"
#include "qgibbs/thermo.hpp"
#include "qgibbs/tqs.hpp"

namespace qgibbs {

// (1/L) sum_i Tr(rho sigma^z_i).
double magnetization_z(const MatC& rho, int L);

// Diagonal of (1/L) sum_i sigma^z_i in the computational basis.
VecD magnetization_diag(int L);

// Builds the family Hamiltonian at transverse field h (Kitaev: mu = -2h;
// Ising: h directly), with the models-layer nonnegativity shift.
PauliHamiltonian model_at_field(ModelFamily family, int L, double J, double h);

// chi_m = dM/dh by central TQS differences at h(lambda); one spectral evaluator per
// field point, shared across the T grid.
struct TqsSweepSettings {
    double beta_resource = 4.0;
    double squeeze_s = 10.0;
    int n_c = 35;
    int cutoff = 0;  // 0: auto from the spectrum and the coldest point of the sweep
    double delta_h = 1e-4;
};

// Susceptibility at a single (lambda, T).
double susceptibility_tqs(ModelFamily family, int L, double J, double lambda, double T,
                          const TqsSweepSettings& cfg);

// chi_m(T) over a grid, reusing the +/- delta_h eigendecompositions and the mode
// weights across all temperatures.
VecD tqs_susceptibility_curve(ModelFamily family, int L, double J, double lambda,
                              const VecD& t_grid, const TqsSweepSettings& cfg);

struct CrossoverPoint {
    double t_star;
    double chi_max;
    bool boundary;
};

CrossoverPoint tqs_crossover_at_lambda(ModelFamily family, int L, double J, double lambda,
                                       const VecD& t_grid, const TqsSweepSettings& cfg);

// T*(lambda) from TQS susceptibilities, same refinement and boundary flags as the
// oracle route.
ThermoCurve crossover_from_tqs(ModelFamily family, int L, double J, const VecD& lambda_grid,
                               const VecD& t_grid, const TqsSweepSettings& cfg);

// d_r between the TQS reduced state and the dense Gibbs state of the same model.
double trace_distance_to_oracle(const MatC& rho_tqs, const PauliHamiltonian& h, double beta);

} // namespace qgibbs

#endif
