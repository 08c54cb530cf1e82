#ifndef QGIBBS_TQS_HPP
#define QGIBBS_TQS_HPP

#include "qgibbs/cv_states.hpp"
#include "qgibbs/fock.hpp"
#include "qgibbs/pauli.hpp"

#include <optional>
#include <string>

namespace qgibbs {

struct EvolutionPath {
    enum class Kind { Exact, Trotter } kind = Kind::Exact;
    int steps = 64;
    int order = 2;
};

struct TqsConfig {
    double beta_target = 1.0;
    double beta_resource = 1.0;  // beta0; direct runs set beta_resource = beta_target
    double squeeze_s = 10.0;
    int n_c = 35;
    int cutoff = 0;  // 0 selects auto_cutoff
    EvolutionPath path;
    double success_floor = 1e-12;

    double time() const { return beta_target / beta_resource; }
    void validate() const;
};

struct TqsResult {
    MatC rho;  // normalized reduced state of the system register
    double success_probability = 0.0;
    double raw_norm = 0.0;
    double z_estimate = 0.0;
    double f_estimate = 0.0;
    TruncationReport resource_report{};
    TruncationReport squeeze_report{};
    int cutoff_used = 0;

    std::string to_json() const;
};

// Raised when the post-selection amplitude falls below the configured floor.
struct PostSelectionStarvation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock cutoff rule: at least 4 n_c to absorb parity mixing, and large enough that
// the truncated p spectrum (reaching ~1.95 sqrt(cutoff)) covers the largest evolution
// phase x_max = E_max * t with margin, which suppresses spectral aliasing in the
// filter amplitudes.
int auto_cutoff(int n_c, double x_max);

// Full state-vector pipeline: Bell pairs (x) resource state, joint evolution
// exp(-i H p t) with t = beta/beta0, squeezed-vacuum projection, ancilla trace.
// H must carry its nonnegativity shift (models module).
TqsResult run_tqs(const PauliHamiltonian& h, const TqsConfig& cfg);

// z_estimate = (s D / (beta0 sqrt(pi))) * raw_norm^2; D = 2^N.
double partition_estimate(double raw_norm_sq, double squeeze_s, double beta_resource,
                          int n_qubits);

double free_energy_estimate(double z_estimate, double beta);

// Exact-path spectral evaluator: shares one eigendecomposition of H and one set of
// mode overlap weights across a whole grid of evolution times. Mathematically
// identical to run_tqs with the exact path (cross-checked in tests); used by sweeps.
class TqsSpectral {
  public:
    TqsSpectral(const PauliHamiltonian& h, double beta_resource, double squeeze_s, int n_c,
                int cutoff);

    struct Output {
        VecD populations;  // normalized eigenbasis populations of the reduced state
        double raw_norm_sq;
        double z_estimate;
    };
    Output at_time(double t) const;

    MatC rho_at_time(double t) const;
    // Expectation of a computational-basis diagonal observable against the reduced
    // state at time t; diag has length 2^N.
    double diagonal_expectation(double t, const VecD& diag) const;

    const VecD& evals() const { return evals_; }
    const MatC& evecs() const { return evecs_; }
    int cutoff_used() const { return cutoff_; }
    const TruncationReport& resource_report() const { return resource_report_; }
    const TruncationReport& squeeze_report() const { return squeeze_report_; }

  private:
    VecD evals_;
    MatC evecs_;
    VecC w_;    // spectral overlap weights of (squeezed | e^{-i x p} | resource)
    VecD P_;    // p eigenvalues
    double beta0_;
    double s_;
    int n_qubits_;
    int cutoff_;
    TruncationReport resource_report_{};
    TruncationReport squeeze_report_{};
};

struct ErrorScalingTable {
    VecD betas;
    VecD ss;
    MatD e;  // e(beta_i, s_j) = |Z_tilde - Z| / Z against the dense oracle
};

// beta_resource = nullopt runs direct mode (beta0 = beta at each point); a value
// fixes beta0 for adaptive runs.
ErrorScalingTable error_scaling_probe(const PauliHamiltonian& h, const VecD& beta_grid,
                                      const VecD& s_grid,
                                      std::optional<double> beta_resource, int n_c,
                                      int cutoff = 0);

// Least-squares slope of log(y) vs log(x).
double loglog_slope(const VecD& xs, const VecD& ys);

} // namespace qgibbs

#endif
