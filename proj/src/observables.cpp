#include "qgibbs/observables.hpp"

#include "qgibbs/hilbert.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgibbs {

double magnetization_z(const MatC& rho, int L) {
    check_density_matrix(rho, 1e-8);
    const VecD diag = magnetization_diag(L);
    if (rho.rows() != diag.size())
        throw std::invalid_argument("magnetization_z: dimension mismatch");
    double m = 0.0;
    for (Eigen::Index b = 0; b < diag.size(); ++b) m += rho(b, b).real() * diag[b];
    return m;
}

VecD magnetization_diag(int L) {
    const std::size_t d = std::size_t(1) << L;
    VecD diag(d);
    for (std::size_t b = 0; b < d; ++b)
        diag[b] = double(L - 2 * std::popcount(b)) / L;
    return diag;
}

PauliHamiltonian model_at_field(ModelFamily family, int L, double J, double h) {
    switch (family) {
        case ModelFamily::Kitaev: return kitaev_spin_model(L, J, -2.0 * h);
        case ModelFamily::Ising: return ising_pbc_model(L, J, h);
    }
    throw std::logic_error("model_at_field: unreachable");
}

namespace {

double field_at_lambda(ModelFamily family, double J, double lambda) {
    return family == ModelFamily::Kitaev ? -lambda * J : lambda * J;
}

// The pair of spectral evaluators at h +/- delta_h sharing one Fock setup.
struct FieldPair {
    TqsSpectral plus;
    TqsSpectral minus;
    VecD m_diag;
};

FieldPair make_field_pair(ModelFamily family, int L, double J, double lambda, double t_max,
                          const TqsSweepSettings& cfg) {
    const double h0 = field_at_lambda(family, J, lambda);
    PauliHamiltonian hp = model_at_field(family, L, J, h0 + cfg.delta_h);
    PauliHamiltonian hm = model_at_field(family, L, J, h0 - cfg.delta_h);
    int cutoff = cfg.cutoff;
    if (cutoff == 0) {
        Eigen::SelfAdjointEigenSolver<MatC> ep(hp.dense(), Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<MatC> em(hm.dense(), Eigen::EigenvaluesOnly);
        const double e_max =
            std::max(ep.eigenvalues().maxCoeff(), em.eigenvalues().maxCoeff());
        cutoff = auto_cutoff(cfg.n_c, e_max * t_max);
    }
    return FieldPair{TqsSpectral(hp, cfg.beta_resource, cfg.squeeze_s, cfg.n_c, cutoff),
                     TqsSpectral(hm, cfg.beta_resource, cfg.squeeze_s, cfg.n_c, cutoff),
                     magnetization_diag(L)};
}

} // namespace

double susceptibility_tqs(ModelFamily family, int L, double J, double lambda, double T,
                          const TqsSweepSettings& cfg) {
    const double t = 1.0 / (T * cfg.beta_resource);
    FieldPair pair = make_field_pair(family, L, J, lambda, t, cfg);
    const double mp = pair.plus.diagonal_expectation(t, pair.m_diag);
    const double mm = pair.minus.diagonal_expectation(t, pair.m_diag);
    return (mp - mm) / (2.0 * cfg.delta_h);
}

VecD tqs_susceptibility_curve(ModelFamily family, int L, double J, double lambda,
                              const VecD& t_grid, const TqsSweepSettings& cfg) {
    if (t_grid.size() < 1) throw std::invalid_argument("tqs_susceptibility_curve: empty grid");
    const double t_max = 1.0 / (t_grid.minCoeff() * cfg.beta_resource);
    FieldPair pair = make_field_pair(family, L, J, lambda, t_max, cfg);
    VecD chi(t_grid.size());
    for (Eigen::Index i = 0; i < t_grid.size(); ++i) {
        const double t = 1.0 / (t_grid[i] * cfg.beta_resource);
        const double mp = pair.plus.diagonal_expectation(t, pair.m_diag);
        const double mm = pair.minus.diagonal_expectation(t, pair.m_diag);
        chi[i] = (mp - mm) / (2.0 * cfg.delta_h);
    }
    return chi;
}

CrossoverPoint tqs_crossover_at_lambda(ModelFamily family, int L, double J, double lambda,
                                       const VecD& t_grid, const TqsSweepSettings& cfg) {
    VecD chi = tqs_susceptibility_curve(family, L, J, lambda, t_grid, cfg);
    PeakEstimate pk = refine_peak(t_grid, chi);
    return {pk.location, pk.value, pk.boundary};
}

ThermoCurve crossover_from_tqs(ModelFamily family, int L, double J, const VecD& lambda_grid,
                               const VecD& t_grid, const TqsSweepSettings& cfg) {
    ThermoCurve curve;
    curve.axis = lambda_grid;
    curve.values.resize(lambda_grid.size());
    std::ostringstream boundary;
    for (Eigen::Index i = 0; i < lambda_grid.size(); ++i) {
        CrossoverPoint pt = tqs_crossover_at_lambda(family, L, J, lambda_grid[i], t_grid, cfg);
        curve.values[i] = pt.t_star;
        if (pt.boundary) {
            if (boundary.tellp() > 0) boundary << ' ';
            boundary << lambda_grid[i];
        }
    }
    curve.metadata["model"] = (family == ModelFamily::Kitaev) ? "kitaev" : "ising";
    curve.metadata["L"] = std::to_string(L);
    curve.metadata["method"] = "tqs_spectral";
    std::ostringstream cfgs;
    cfgs << "beta0=" << cfg.beta_resource << " s=" << cfg.squeeze_s << " n_c=" << cfg.n_c
         << " delta_h=" << cfg.delta_h;
    curve.metadata["tqs_settings"] = cfgs.str();
    if (boundary.tellp() > 0) curve.metadata["boundary_maximum_at_lambda"] = boundary.str();
    return curve;
}

double trace_distance_to_oracle(const MatC& rho_tqs, const PauliHamiltonian& h, double beta) {
    return trace_distance(rho_tqs, dense_gibbs(h, beta).first);
}

} // namespace qgibbs
