#ifndef QGIBBS_CV_STATES_HPP
#define QGIBBS_CV_STATES_HPP

#include "qgibbs/types.hpp"

#include <map>
#include <string>

namespace qgibbs {

// A single-mode state with real Fock coefficients, plus labeling metadata for
// serialization.
struct CvState {
    std::string label;
    std::map<std::string, double> params;
    VecD coeffs;

    std::string to_json() const;
};

struct TruncationReport {
    double captured_norm_sq;  // norm^2 retained by the truncation, before any renormalization
    int highest_index;        // largest Fock index with a nonzero coefficient
    bool warn;                // captured_norm_sq < 0.99
};

// Two-sided exponential kernel R(beta, p) = (beta / 2 pi) / (p^2 + beta^2 / 4).
// Integrates to 1 and has Fourier transform exp(-beta |h| / 2).
double lorentzian_kernel(double beta, double p);

// int R(beta, p) dp evaluated numerically via the substitution p = (beta/2) tan(theta),
// which maps the real line to a finite interval.
double lorentzian_normalization_quadrature(double beta, int npanels = 16, int order = 32);

// int R(beta, p) exp(-i h p) dp evaluated numerically: half-period panels of the
// oscillatory factor plus Euler acceleration of the alternating tail. Real by symmetry.
double lorentzian_fourier_quadrature(double beta, double h);

// Resource mode state with position wavefunction sqrt(beta/2) exp(-beta |q| / 2),
// expanded over n_c even Fock levels 0, 2, ..., 2(n_c - 1) and renormalized after
// truncation. The report carries the pre-renormalization captured norm.
CvState resource_state(double beta, int n_c, int cutoff, TruncationReport* report = nullptr);

// Squeezed vacuum |0, s> (position-space width s) truncated to `cutoff` levels.
// Coefficients are the true untruncated ones; no renormalization is applied, so
// projections built from this vector carry physical success amplitudes.
CvState squeezed_vacuum(double s, int cutoff, TruncationReport* report = nullptr);

} // namespace qgibbs

#endif
