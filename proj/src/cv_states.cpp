#include "qgibbs/cv_states.hpp"

#include "qgibbs/quadrature.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace qgibbs {

std::string CvState::to_json() const {
    nlohmann::json j;
    j["label"] = label;
    j["params"] = params;
    j["coeffs"] = std::vector<double>(coeffs.data(), coeffs.data() + coeffs.size());
    return j.dump(2);
}

double lorentzian_kernel(double beta, double p) {
    return (beta / (2.0 * PI)) / (p * p + 0.25 * beta * beta);
}

double lorentzian_normalization_quadrature(double beta, int npanels, int order) {
    auto f = [beta](double th) {
        double c = std::cos(th);
        double p = 0.5 * beta * std::tan(th);
        return lorentzian_kernel(beta, p) * 0.5 * beta / (c * c);
    };
    // Gauss-Legendre nodes are interior, so the tan poles at the endpoints are never hit.
    return gl_composite(f, -0.5 * PI, 0.5 * PI, npanels, order);
}

double lorentzian_fourier_quadrature(double beta, double h) {
    h = std::abs(h);
    auto f = [beta, h](double p) { return lorentzian_kernel(beta, p) * std::cos(h * p); };
    if (h < 1e-12) return lorentzian_normalization_quadrature(beta);

    // Even integrand: 2 * int_0^inf. Panels end at the zeros of cos(h p).
    const double half = PI / h;
    double acc = gl_panel(f, 0.0, 0.5 * half);
    double z = 0.5 * half;
    const int direct = 64;
    for (int k = 0; k < direct; ++k) {
        acc += gl_panel(f, z, z + half);
        z += half;
    }
    // Euler acceleration of the remaining alternating tail.
    const int m = 24;
    std::vector<double> a(m);
    for (int k = 0; k < m; ++k) {
        a[k] = gl_panel(f, z, z + half);
        z += half;
    }
    // Repeated averaging of partial sums.
    std::vector<double> s(m);
    double run = 0.0;
    for (int k = 0; k < m; ++k) {
        run += a[k];
        s[k] = run;
    }
    for (int pass = 1; pass < m; ++pass)
        for (int k = 0; k + pass < m; ++k) s[k] = 0.5 * (s[k] + s[k + 1]);
    acc += s[0];
    return 2.0 * acc;
}

CvState resource_state(double beta, int n_c, int cutoff, TruncationReport* report) {
    if (beta <= 0.0) throw std::invalid_argument("resource_state: beta must be > 0");
    if (n_c < 1) throw std::invalid_argument("resource_state: n_c must be >= 1");
    const int n_max = 2 * (n_c - 1);
    if (cutoff <= n_max)
        throw std::invalid_argument("resource_state: cutoff too small for n_c even levels");

    // Integration window: the wavefunction tail is below 1e-14 past 28 ln(10) / beta,
    // and the Hermite functions are evanescent past sqrt(2 n_max + 1) + 12.
    const double q_tail = 28.0 * std::log(10.0) / beta;
    const double q_herm = std::sqrt(2.0 * n_max + 1.0) + 12.0;
    const double Q = std::min(q_tail, q_herm);
    const int npanels = std::max(40, int(Q * 4.0));

    VecD r = VecD::Zero(cutoff);
    const auto& rule = gauss_legendre(32);
    const double hpan = Q / npanels;
    const double wf_norm = std::sqrt(0.5 * beta);
    for (int ip = 0; ip < npanels; ++ip) {
        const double a = ip * hpan;
        const double mid = a + 0.5 * hpan;
        for (int i = 0; i < rule.nodes.size(); ++i) {
            const double q = mid + 0.5 * hpan * rule.nodes[i];
            const double w = 0.5 * hpan * rule.weights[i];
            const double psi = wf_norm * std::exp(-0.5 * beta * q);
            VecD hf = hermite_functions(n_max, q);
            for (int k = 0; k < n_c; ++k) r[2 * k] += 2.0 * w * hf[2 * k] * psi;
        }
    }

    const double captured = r.squaredNorm();
    if (captured <= 0.0) throw std::runtime_error("resource_state: vanishing truncation");
    if (report) *report = TruncationReport{captured, n_max, captured < 0.99};
    r /= std::sqrt(captured);

    CvState st;
    st.label = "resource";
    st.params = {{"beta", beta}, {"n_c", double(n_c)}, {"cutoff", double(cutoff)}};
    st.coeffs = std::move(r);
    return st;
}

CvState squeezed_vacuum(double s, int cutoff, TruncationReport* report) {
    if (s <= 0.0) throw std::invalid_argument("squeezed_vacuum: s must be > 0");
    VecD c = VecD::Zero(cutoff);
    const double lam = (s * s - 1.0) / (s * s + 1.0);
    double val = std::sqrt(2.0 * s / (s * s + 1.0));
    c[0] = val;
    int top = 0;
    for (int m = 1; 2 * m < cutoff; ++m) {
        val *= -lam * std::sqrt(double(2 * m) * double(2 * m - 1)) / double(2 * m);
        c[2 * m] = val;
        top = 2 * m;
    }
    const double captured = c.squaredNorm();
    if (report) *report = TruncationReport{captured, top, captured < 0.99};

    CvState st;
    st.label = "squeezed_vacuum";
    st.params = {{"s", s}, {"cutoff", double(cutoff)}};
    st.coeffs = std::move(c);
    return st;
}

} // namespace qgibbs
