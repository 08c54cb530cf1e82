#include "qgibbs/tqs.hpp"

#include "qgibbs/evolution.hpp"
#include "qgibbs/hilbert.hpp"
#include "qgibbs/oracle.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace qgibbs {

void TqsConfig::validate() const {
    if (beta_target <= 0.0 || beta_resource <= 0.0)
        throw std::invalid_argument("TqsConfig: inverse temperatures must be > 0");
    if (squeeze_s <= 0.0) throw std::invalid_argument("TqsConfig: squeeze_s must be > 0");
    if (n_c < 1) throw std::invalid_argument("TqsConfig: n_c must be >= 1");
    if (cutoff < 0) throw std::invalid_argument("TqsConfig: cutoff must be >= 0");
    if (!std::isfinite(time())) throw std::invalid_argument("TqsConfig: non-finite time");
    if (path.kind == EvolutionPath::Kind::Trotter && (path.steps < 1 || (path.order != 1 && path.order != 2)))
        throw std::invalid_argument("TqsConfig: bad Trotter parameters");
}

int auto_cutoff(int n_c, double x_max) {
    const double needed = (x_max + 10.0) / 1.95;
    const int aliasing = int(std::ceil(needed * needed));
    return std::max(4 * n_c, aliasing);
}

double partition_estimate(double raw_norm_sq, double squeeze_s, double beta_resource,
                          int n_qubits) {
    const double d = std::pow(2.0, n_qubits);
    return squeeze_s * d / (beta_resource * std::sqrt(PI)) * raw_norm_sq;
}

double free_energy_estimate(double z_estimate, double beta) {
    if (z_estimate <= 0.0) throw std::invalid_argument("free_energy_estimate: z must be > 0");
    return -std::log(z_estimate) / beta;
}

std::string TqsResult::to_json() const {
    nlohmann::json j;
    j["success_probability"] = success_probability;
    j["raw_norm"] = raw_norm;
    j["z_estimate"] = z_estimate;
    j["f_estimate"] = f_estimate;
    j["cutoff_used"] = cutoff_used;
    j["diagnostics"] = {
        {"resource_captured_norm_sq", resource_report.captured_norm_sq},
        {"resource_truncation_warning", resource_report.warn},
        {"squeeze_captured_norm_sq", squeeze_report.captured_norm_sq},
        {"squeeze_truncation_warning", squeeze_report.warn},
    };
    std::vector<std::vector<double>> rows;
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
        std::vector<double> row;
        for (Eigen::Index c = 0; c < rho.cols(); ++c) {
            row.push_back(rho(r, c).real());
            row.push_back(rho(r, c).imag());
        }
        rows.push_back(std::move(row));
    }
    j["rho_row_major_re_im"] = rows;
    return j.dump(2);
}

TqsResult run_tqs(const PauliHamiltonian& h, const TqsConfig& cfg) {
    cfg.validate();
    h.validate();
    const int n = h.n_qubits;
    Eigen::SelfAdjointEigenSolver<MatC> es(h.dense());
    if (es.info() != Eigen::Success) throw std::runtime_error("run_tqs: eigensolver failed");
    const double t = cfg.time();
    const double e_max = es.eigenvalues().cwiseAbs().maxCoeff();
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : auto_cutoff(cfg.n_c, e_max * t);

    TqsResult res;
    res.cutoff_used = cutoff;
    CvState resource = resource_state(cfg.beta_resource, cfg.n_c, cutoff, &res.resource_report);
    CvState squeezed = squeezed_vacuum(cfg.squeeze_s, cutoff, &res.squeeze_report);
    FockMode fock(cutoff);

    HybridState state = HybridState::product(bell_pairs(n), resource.coeffs.cast<cxd>());
    if (cfg.path.kind == EvolutionPath::Kind::Exact) {
        apply_joint_evolution(state, es.eigenvalues(), es.eigenvectors(), n, t, fock);
    } else {
        HybridCircuit circuit = trotter_evolution(h, t, cfg.path.steps, cfg.path.order);
        circuit.apply(state, fock);
    }

    VecC projected = state.project_mode(squeezed.coeffs.cast<cxd>());
    const double raw_sq = projected.squaredNorm();
    if (raw_sq < cfg.success_floor)
        throw PostSelectionStarvation("run_tqs: success probability " + std::to_string(raw_sq) +
                                      " below floor");
    res.raw_norm = std::sqrt(raw_sq);
    res.success_probability = raw_sq;
    res.rho = partial_trace_ancilla(projected, n);
    res.z_estimate = partition_estimate(raw_sq, cfg.squeeze_s, cfg.beta_resource, n);
    res.f_estimate = free_energy_estimate(res.z_estimate, cfg.beta_target);
    return res;
}

TqsSpectral::TqsSpectral(const PauliHamiltonian& h, double beta_resource, double squeeze_s,
                         int n_c, int cutoff)
    : beta0_(beta_resource), s_(squeeze_s), n_qubits_(h.n_qubits), cutoff_(cutoff) {
    if (cutoff_ < 2) throw std::invalid_argument("TqsSpectral: cutoff must be >= 2");
    Eigen::SelfAdjointEigenSolver<MatC> es(h.dense());
    if (es.info() != Eigen::Success) throw std::runtime_error("TqsSpectral: eigensolver failed");
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
    CvState resource = resource_state(beta_resource, n_c, cutoff_, &resource_report_);
    CvState squeezed = squeezed_vacuum(squeeze_s, cutoff_, &squeeze_report_);
    FockMode fock(cutoff_);
    P_ = fock.p_eigenvalues();
    w_ = fock.overlap_weights(squeezed.coeffs.cast<cxd>(), resource.coeffs.cast<cxd>());
}

TqsSpectral::Output TqsSpectral::at_time(double t) const {
    const Eigen::Index d = evals_.size();
    Output out;
    out.populations.resize(d);
    double total = 0.0;
    for (Eigen::Index ni = 0; ni < d; ++ni) {
        const double x = evals_[ni] * t;
        cxd g = 0.0;
        for (Eigen::Index j = 0; j < P_.size(); ++j) g += w_[j] * std::polar(1.0, -x * P_[j]);
        const double p = std::norm(g);
        out.populations[ni] = p;
        total += p;
    }
    out.raw_norm_sq = total / d;  // amplitudes carry the 1/sqrt(D) Bell normalization
    if (total <= 0.0) throw PostSelectionStarvation("TqsSpectral: vanishing filter output");
    out.populations /= total;
    out.z_estimate = partition_estimate(out.raw_norm_sq, s_, beta0_, n_qubits_);
    return out;
}

MatC TqsSpectral::rho_at_time(double t) const {
    Output o = at_time(t);
    return evecs_ * o.populations.cast<cxd>().asDiagonal() * evecs_.adjoint();
}

double TqsSpectral::diagonal_expectation(double t, const VecD& diag) const {
    if (diag.size() != evals_.size())
        throw std::invalid_argument("TqsSpectral::diagonal_expectation: size mismatch");
    Output o = at_time(t);
    double acc = 0.0;
    for (Eigen::Index ni = 0; ni < evals_.size(); ++ni) {
        // <u_n| diag |u_n> = sum_b |U(b,n)|^2 diag_b
        double m_n = 0.0;
        for (Eigen::Index b = 0; b < diag.size(); ++b) m_n += std::norm(evecs_(b, ni)) * diag[b];
        acc += o.populations[ni] * m_n;
    }
    return acc;
}

ErrorScalingTable error_scaling_probe(const PauliHamiltonian& h, const VecD& beta_grid,
                                      const VecD& s_grid,
                                      std::optional<double> beta_resource, int n_c,
                                      int cutoff) {
    ErrorScalingTable table;
    table.betas = beta_grid;
    table.ss = s_grid;
    table.e.resize(beta_grid.size(), s_grid.size());
    for (Eigen::Index ib = 0; ib < beta_grid.size(); ++ib) {
        const double beta = beta_grid[ib];
        const double z_oracle = dense_gibbs(h, beta).second;
        for (Eigen::Index is = 0; is < s_grid.size(); ++is) {
            TqsConfig cfg;
            cfg.beta_target = beta;
            cfg.beta_resource = beta_resource.value_or(beta);
            cfg.squeeze_s = s_grid[is];
            cfg.n_c = n_c;
            cfg.cutoff = cutoff;
            TqsResult r = run_tqs(h, cfg);
            table.e(ib, is) = std::abs(r.z_estimate - z_oracle) / z_oracle;
        }
    }
    return table;
}

double loglog_slope(const VecD& xs, const VecD& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 points");
    const Eigen::Index n = xs.size();
    VecD lx(n), ly(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const double mx = lx.mean(), my = ly.mean();
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

} // namespace qgibbs
