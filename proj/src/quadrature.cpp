#include "qgibbs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qgibbs {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
    nodes.resize(order);
    weights.resize(order);
    const int n = order;
    for (int k = 0; k < (n + 1) / 2; ++k) {
        // Newton iteration on P_n, seeded with the Chebyshev-like estimate.
        double x = std::cos(PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, GaussLegendre(order)).first;
    return it->second;
}

double gl_panel(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double gl_composite(const std::function<double(double)>& f, double a, double b, int npanels,
                    int order) {
    double sum = 0.0;
    const double h = (b - a) / npanels;
    for (int i = 0; i < npanels; ++i) sum += gl_panel(f, a + i * h, a + (i + 1) * h, order);
    return sum;
}

double gl_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   int npanels0, int order) {
    double prev = gl_composite(f, a, b, npanels0, order);
    int np = npanels0;
    for (int it = 0; it < 12; ++it) {
        np *= 2;
        double cur = gl_composite(f, a, b, np, order);
        if (std::abs(cur - prev) < abs_tol) return cur;
        prev = cur;
    }
    return prev;
}

double log_2cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax));
}

double logsumexp(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("logsumexp: empty input");
    double m = v[0];
    for (double x : v)
        if (x > m) m = x;
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

VecD hermite_functions(int nmax, double q) {
    VecD h(nmax + 1);
    h[0] = std::pow(PI, -0.25) * std::exp(-0.5 * q * q);
    if (nmax >= 1) h[1] = q * std::sqrt(2.0) * h[0];
    for (int n = 1; n < nmax; ++n) {
        h[n + 1] =
            q * std::sqrt(2.0 / (n + 1.0)) * h[n] - std::sqrt(n / (n + 1.0)) * h[n - 1];
    }
    return h;
}

} // namespace qgibbs
