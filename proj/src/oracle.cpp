#include "qgibbs/oracle.hpp"

#include "qgibbs/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgibbs {

void SpectrumGrid::validate() const {
    if (momenta.size() != energies.size()) throw std::runtime_error("SpectrumGrid: length mismatch");
    for (Eigen::Index i = 0; i < energies.size(); ++i)
        if (!(energies[i] >= 0.0)) throw std::runtime_error("SpectrumGrid: negative energy");
}

namespace {

double xi_kitaev(double J, double lam, double k) {
    return 2.0 * J * std::sqrt(1.0 + lam * lam + 2.0 * lam * std::cos(k));
}

double xi_ising(double J, double lam, double k) {
    return 2.0 * J * std::sqrt(1.0 + lam * lam - 2.0 * lam * std::cos(k));
}

} // namespace

SpectrumGrid kitaev_modes(int L, double J, double mu) {
    if (L < 2) throw std::invalid_argument("kitaev_modes: L must be >= 2");
    const double lam = mu / (2.0 * J);
    SpectrumGrid g;
    g.momenta.resize(L);
    g.energies.resize(L);
    for (int i = 0; i < L; ++i) {
        g.momenta[i] = 2.0 * PI * i / L;
        g.energies[i] = xi_kitaev(J, lam, g.momenta[i]);
    }
    g.parity = SpectrumGrid::Parity::None;
    g.validate();
    return g;
}

SpectrumGrid ising_modes_even(int L, double J, double h) {
    if (L < 3) throw std::invalid_argument("ising_modes_even: L must be >= 3");
    const double lam = h / J;
    SpectrumGrid g;
    g.momenta.resize(L);
    g.energies.resize(L);
    for (int i = 0; i < L; ++i) {
        g.momenta[i] = 2.0 * PI * i / L + PI / L;
        g.energies[i] = xi_ising(J, lam, g.momenta[i]);
    }
    g.parity = SpectrumGrid::Parity::Even;
    g.validate();
    return g;
}

SpectrumGrid ising_modes_odd(int L, double J, double h) {
    if (L < 3) throw std::invalid_argument("ising_modes_odd: L must be >= 3");
    const double lam = h / J;
    SpectrumGrid g;
    // Regular modes k_i = 2 pi i / L for i = 1..L-1; the unpaired k = 0 mode has the
    // signed energy -2J(1 - lam) and is stored separately.
    g.momenta.resize(L - 1);
    g.energies.resize(L - 1);
    for (int i = 1; i < L; ++i) {
        g.momenta[i - 1] = 2.0 * PI * i / L;
        g.energies[i - 1] = xi_ising(J, lam, g.momenta[i - 1]);
    }
    g.parity = SpectrumGrid::Parity::Odd;
    g.zero_mode_term = -2.0 * J * (1.0 - lam);
    g.validate();
    return g;
}

std::pair<MatC, double> dense_gibbs(const PauliHamiltonian& h, double beta) {
    if (h.n_qubits > 12) throw std::invalid_argument("dense_gibbs: 2^N > 4096");
    if (beta < 0.0) throw std::invalid_argument("dense_gibbs: beta must be >= 0");
    Eigen::SelfAdjointEigenSolver<MatC> es(h.dense());
    if (es.info() != Eigen::Success) throw std::runtime_error("dense_gibbs: eigensolver failed");
    const VecD& e = es.eigenvalues();
    VecD w(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) w[i] = std::exp(-beta * e[i]);
    const double z = w.sum();
    MatC rho = es.eigenvectors() * (w / z).asDiagonal() * es.eigenvectors().adjoint();
    return {rho, z};
}

namespace {

// log of the parity-filtered partition sums of a list of (signed) mode energies, in
// the absolute convention E(pattern) = sum_i (n_i - 1/2) e_i. Returns
// (log Z_even_count, log Z_odd_count).
std::pair<double, double> filtered_log_sums(const std::vector<double>& modes, double beta) {
    constexpr double NEG_INF = -std::numeric_limits<double>::infinity();
    // Accumulators over occupation factors x_i = exp(-beta e_i), split by the parity
    // of the occupation count; the prefactor prod exp(+beta e_i / 2) is restored at
    // the end.
    double le = 0.0, lo = NEG_INF;
    double half_sum = 0.0;
    for (double e : modes) {
        const double lx = -beta * e;
        half_sum += 0.5 * beta * e;
        const double ne = logsumexp({le, lx + lo});
        const double no = logsumexp({lo, lx + le});
        le = ne;
        lo = no;
    }
    return {half_sum + le, half_sum + lo};
}

std::vector<double> sector_modes(const SpectrumGrid& g) {
    std::vector<double> m(g.energies.data(), g.energies.data() + g.energies.size());
    if (g.zero_mode_term) m.push_back(*g.zero_mode_term);
    return m;
}

} // namespace

double ising_log_partition_recursion(int L, double J, double h, double beta) {
    auto [le_e, lo_e] = filtered_log_sums(sector_modes(ising_modes_even(L, J, h)), beta);
    auto [le_o, lo_o] = filtered_log_sums(sector_modes(ising_modes_odd(L, J, h)), beta);
    (void)lo_e;
    (void)le_o;
    return logsumexp({le_e, lo_o});
}

double ising_log_partition_brute(int L, double J, double h, double beta) {
    if (L > 20) throw std::invalid_argument("ising_log_partition_brute: L too large");
    auto sector = [&](const std::vector<double>& modes, bool odd) {
        const std::size_t n = modes.size();
        std::vector<double> logs;
        logs.reserve(std::size_t(1) << n);
        for (std::size_t pat = 0; pat < (std::size_t(1) << n); ++pat) {
            if ((std::size_t)__builtin_popcountll(pat) % 2 != (odd ? 1u : 0u)) continue;
            double energy = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                energy += ((pat >> i) & 1 ? 0.5 : -0.5) * modes[i];
            logs.push_back(-beta * energy);
        }
        return logsumexp(logs);
    };
    const double lze = sector(sector_modes(ising_modes_even(L, J, h)), false);
    const double lzo = sector(sector_modes(ising_modes_odd(L, J, h)), true);
    return logsumexp({lze, lzo});
}

double ising_free_energy(int L, double J, double h, double beta) {
    return -ising_log_partition_recursion(L, J, h, beta) / (beta * L);
}

double ising_recursion_prefix_unfiltered(const SpectrumGrid& grid, double beta, int n) {
    auto modes = sector_modes(grid);
    if (n < 0 || std::size_t(n) > modes.size())
        throw std::invalid_argument("ising_recursion_prefix_unfiltered: bad prefix length");
    modes.resize(n);
    auto [le, lo] = filtered_log_sums(modes, beta);
    return logsumexp({le, lo});
}

double kitaev_log_partition(int L, double J, double mu, double beta) {
    SpectrumGrid g = kitaev_modes(L, J, mu);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < g.energies.size(); ++i)
        acc += log_2cosh(0.5 * beta * g.energies[i]);
    return acc;
}

double kitaev_free_energy(int L, double J, double mu, double beta) {
    return -kitaev_log_partition(L, J, mu, beta) / (beta * L);
}

double kitaev_free_energy_limit(double J, double mu, double beta) {
    const double lam = mu / (2.0 * J);
    auto f = [&](double k) { return log_2cosh(0.5 * beta * xi_kitaev(J, lam, k)); };
    // Split at k = pi, where xi has a kink at lam = 1.
    const double i1 = gl_adaptive(f, 0.0, PI, 1e-12);
    const double i2 = gl_adaptive(f, PI, 2.0 * PI, 1e-12);
    return -(i1 + i2) / (2.0 * PI * beta);
}

double free_energy_at_field(ModelFamily family, int L, double J, double h, double beta) {
    switch (family) {
        case ModelFamily::Kitaev:
            return L == 0 ? kitaev_free_energy_limit(J, -2.0 * h, beta)
                          : kitaev_free_energy(L, J, -2.0 * h, beta);
        case ModelFamily::Ising:
            if (L == 0)
                throw std::invalid_argument("free_energy_at_field: no Ising limit route");
            return ising_free_energy(L, J, h, beta);
    }
    throw std::logic_error("free_energy_at_field: unreachable");
}

double susceptibility_oracle(ModelFamily family, int L, double J, double lambda, double T,
                             double delta_h) {
    const double beta = 1.0 / T;
    const double h0 = (family == ModelFamily::Kitaev) ? -lambda * J : lambda * J;
    const double fp = free_energy_at_field(family, L, J, h0 + delta_h, beta);
    const double f0 = free_energy_at_field(family, L, J, h0, beta);
    const double fm = free_energy_at_field(family, L, J, h0 - delta_h, beta);
    return -(fp - 2.0 * f0 + fm) / (delta_h * delta_h);
}

ThermoCurve susceptibility_and_crossover(ModelFamily family, int L, double J,
                                         const VecD& t_grid, const VecD& lambda_grid,
                                         double delta_h) {
    if (t_grid.size() < 40)
        throw std::invalid_argument("susceptibility_and_crossover: need >= 40 T points");
    ThermoCurve curve;
    curve.axis = lambda_grid;
    curve.values.resize(lambda_grid.size());
    std::ostringstream boundary;
    for (Eigen::Index il = 0; il < lambda_grid.size(); ++il) {
        VecD chi(t_grid.size());
        for (Eigen::Index it = 0; it < t_grid.size(); ++it)
            chi[it] = susceptibility_oracle(family, L, J, lambda_grid[il], t_grid[it], delta_h);
        PeakEstimate pk = refine_peak(t_grid, chi);
        curve.values[il] = pk.location;
        if (pk.boundary) {
            if (boundary.tellp() > 0) boundary << ' ';
            boundary << lambda_grid[il];
        }
    }
    curve.metadata["model"] = (family == ModelFamily::Kitaev) ? "kitaev" : "ising";
    curve.metadata["L"] = L == 0 ? "limit" : std::to_string(L);
    curve.metadata["method"] = "oracle_free_energy";
    std::ostringstream tg;
    tg << "[" << t_grid[0] << ", " << t_grid[t_grid.size() - 1] << "] n=" << t_grid.size();
    curve.metadata["T_grid"] = tg.str();
    if (boundary.tellp() > 0) curve.metadata["boundary_maximum_at_lambda"] = boundary.str();
    return curve;
}

} // namespace qgibbs
