#ifndef QGIBBS_QUADRATURE_HPP
#define QGIBBS_QUADRATURE_HPP

#include "qgibbs/types.hpp"

#include <functional>
#include <vector>

namespace qgibbs {

// Gauss-Legendre rule on [-1, 1]. Nodes/weights computed once per order and cached.
struct GaussLegendre {
    VecD nodes;
    VecD weights;
    explicit GaussLegendre(int order);
};

const GaussLegendre& gauss_legendre(int order);

// Integrates f over [a, b] with a single Gauss-Legendre panel.
double gl_panel(const std::function<double(double)>& f, double a, double b, int order = 32);

// Composite rule: [a, b] split into n equal panels.
double gl_composite(const std::function<double(double)>& f, double a, double b, int npanels,
                    int order = 32);

// Panel-doubling refinement until successive estimates agree to abs_tol, starting
// from npanels0 panels. Returns the refined value.
double gl_adaptive(const std::function<double(double)>& f, double a, double b,
                   double abs_tol = 1e-12, int npanels0 = 4, int order = 32);

// log(2 cosh(x)) without overflow.
double log_2cosh(double x);

// log(sum_i exp(v_i)) in the log domain.
double logsumexp(const std::vector<double>& v);

// Orthonormal Hermite functions h_0..h_nmax at point q:
// h_0 = pi^{-1/4} exp(-q^2/2), h_{n+1} = q sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}.
// These satisfy \int h_m h_n dq = delta_{mn}.
VecD hermite_functions(int nmax, double q);

} // namespace qgibbs

#endif
