#include "qgibbs/config.hpp"
#include "qgibbs/evolution.hpp"
#include "qgibbs/models.hpp"
#include "qgibbs/observables.hpp"
#include "qgibbs/oracle.hpp"
#include "qgibbs/tqs.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace qgibbs;

namespace {

constexpr double J_DEFAULT = 1.0;

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mtx;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            int i;
            while ((i = next.fetch_add(1)) < n) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mtx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

// Resolved-config provenance block plus column header; bodies below it are
// deterministic for identical configs.
std::string csv_header(const std::string& experiment,
                       const std::map<std::string, std::string>& resolved,
                       const std::string& columns) {
    std::ostringstream os;
    os << "# experiment = " << experiment << '\n';
    os << "# version = " << QGIBBS_VERSION << '\n';
    std::time_t now = std::time(nullptr);
    char ts[64];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated_at = " << ts << '\n';
    for (const auto& [k, v] : resolved) os << "# " << k << " = " << v << '\n';
    os << columns << '\n';
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << '\n';
}

std::vector<int> grid_to_ints(const VecD& g, const std::string& what) {
    std::vector<int> out;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (g[i] != std::floor(g[i])) throw ConfigError(what + " must be integers");
        out.push_back(int(g[i]));
    }
    return out;
}

std::string grid_to_string(const VecD& g) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (i) os << ',';
        os << fmt_g(g[i]);
    }
    return os.str();
}

// Contiguous global-minimum block strictly inside the axis, with non-increasing
// approach and non-decreasing exit (tolerance absorbs refinement jitter).
bool v_shaped(const VecD& vals, double tol) {
    const Eigen::Index n = vals.size();
    Eigen::Index imin = 0;
    const double m = vals.minCoeff(&imin);
    Eigen::Index lo = imin, hi = imin;
    while (lo > 0 && vals[lo - 1] <= m + tol) --lo;
    while (hi + 1 < n && vals[hi + 1] <= m + tol) ++hi;
    if (lo == 0 || hi == n - 1) return false;
    for (Eigen::Index i = 0; i < lo; ++i)
        if (vals[i + 1] > vals[i] + tol) return false;
    for (Eigen::Index i = hi; i + 1 < n; ++i)
        if (vals[i + 1] < vals[i] - tol) return false;
    return true;
}

double max_rel_dev(const VecD& axis_a, const VecD& a, const VecD& axis_b, const VecD& b,
                   double lo, double hi) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < axis_a.size(); ++i) {
        if (axis_a[i] < lo - 1e-12 || axis_a[i] > hi + 1e-12) continue;
        for (Eigen::Index j = 0; j < axis_b.size(); ++j) {
            if (std::abs(axis_b[j] - axis_a[i]) > 1e-9) continue;
            dev = std::max(dev, std::abs(a[i] - b[j]) / std::min(a[i], b[j]));
        }
    }
    return dev;
}

struct CmdArgs {
    ExperimentConfig cfg;
    fs::path outdir;
    int workers = int(std::thread::hardware_concurrency());
};

int cmd_single_qubit(const CmdArgs& args) {
    const auto& cfg = args.cfg;
    cfg.restrict_keys({"g", "c", "betas", "s_grid", "n_c", "cutoff", "adaptive_beta0",
                       "success_floor"});
    const double g = cfg.get_double("g", 1.0);
    const double c = cfg.get_double("c", 1.0);
    const VecD betas = cfg.get_grid("betas", "1,2,3");
    const VecD s_grid = cfg.get_grid("s_grid", "2:2:20");
    const int n_c = cfg.get_int("n_c", 35);
    const int cutoff = cfg.get_int("cutoff", 0);
    const double beta0_adaptive = cfg.get_double("adaptive_beta0", 1.0);
    const double floor = cfg.get_double("success_floor", 1e-12);

    std::map<std::string, std::string> resolved = {
        {"g", fmt_g(g)},           {"c", fmt_g(c)},
        {"betas", grid_to_string(betas)}, {"s_grid", grid_to_string(s_grid)},
        {"n_c", std::to_string(n_c)},     {"cutoff", std::to_string(cutoff)},
        {"adaptive_beta0", fmt_g(beta0_adaptive)}, {"success_floor", fmt_g(floor)},
    };

    const PauliHamiltonian h = single_qubit_model(g, c);
    struct Row {
        std::string mode;
        double beta, s, dr, succ;
    };
    const int nb = int(betas.size()), ns = int(s_grid.size());
    std::vector<Row> rows(2 * nb * ns);
    parallel_for(2 * nb * ns, args.workers, [&](int idx) {
        const int mode = idx / (nb * ns);
        const int ib = (idx / ns) % nb;
        const int is = idx % ns;
        TqsConfig tc;
        tc.beta_target = betas[ib];
        tc.beta_resource = mode == 0 ? betas[ib] : beta0_adaptive;
        tc.squeeze_s = s_grid[is];
        tc.n_c = n_c;
        tc.cutoff = cutoff;
        tc.success_floor = floor;
        TqsResult r = run_tqs(h, tc);
        rows[idx] = {mode == 0 ? "direct" : "adaptive", betas[ib], s_grid[is],
                     trace_distance_to_oracle(r.rho, h, betas[ib]), r.success_probability};
    });

    std::ostringstream body;
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.9g,%.9g,%.9g,%.9g\n", r.mode.c_str(), r.beta, r.s,
                      r.dr, r.succ);
        body << buf;
    }
    write_file(args.outdir / "single_qubit.csv",
               csv_header("single-qubit", resolved,
                          "mode,beta,s,trace_distance,success_probability") +
                   body.str());

    json summary;
    summary["rows"] = 2 * nb * ns;
    for (int mode = 0; mode < 2; ++mode) {
        for (int ib = 0; ib < nb; ++ib) {
            bool dr_mono = true, succ_dec = true;
            for (int is = 1; is < ns; ++is) {
                const Row& prev = rows[mode * nb * ns + ib * ns + is - 1];
                const Row& cur = rows[mode * nb * ns + ib * ns + is];
                dr_mono = dr_mono && cur.dr <= prev.dr + 1e-12;
                succ_dec = succ_dec && cur.succ < prev.succ;
            }
            json entry;
            entry["trace_distance_nonincreasing_in_s"] = dr_mono;
            entry["success_decreasing_in_s"] = succ_dec;
            entry["trace_distance_at_s_max"] = rows[mode * nb * ns + ib * ns + ns - 1].dr;
            summary[(mode == 0 ? "direct_beta_" : "adaptive_beta_") + fmt_g(betas[ib])] = entry;
        }
    }
    bool adaptive_le_direct = true;
    for (int ib = 0; ib < nb; ++ib) {
        if (betas[ib] < 1.5) continue;  // adaptive advantage claimed for beta in {2,3}
        for (int is = 0; is < ns; ++is)
            adaptive_le_direct = adaptive_le_direct &&
                                 rows[nb * ns + ib * ns + is].dr <= rows[ib * ns + is].dr + 1e-12;
    }
    summary["adaptive_dr_le_direct_for_beta_ge_2"] = adaptive_le_direct;
    write_file(args.outdir / "single_qubit_summary.json", summary.dump(2) + "\n");
    return 0;
}

int cmd_phase_diagram(const CmdArgs& args) {
    const auto& cfg = args.cfg;
    cfg.restrict_keys({"J", "t_grid", "lambda_grid", "ising_L", "kitaev_L", "include_limit",
                       "delta_h"});
    const double J = cfg.get_double("J", J_DEFAULT);
    const VecD t_grid = cfg.get_grid("t_grid", "0.1:0.02:2.0");
    const VecD lambda_grid = cfg.get_grid("lambda_grid", "0.5:0.05:1.5");
    const auto ising_L = grid_to_ints(cfg.get_grid("ising_L", "10,20,80"), "ising_L");
    const auto kitaev_L = grid_to_ints(cfg.get_grid("kitaev_L", "2,3,4,5,6"), "kitaev_L");
    const bool include_limit = cfg.get_bool("include_limit", true);
    const double delta_h = cfg.get_double("delta_h", 1e-4);

    std::map<std::string, std::string> resolved = {
        {"J", fmt_g(J)},
        {"t_grid", grid_to_string(t_grid)},
        {"lambda_grid", grid_to_string(lambda_grid)},
        {"ising_L", grid_to_string(cfg.get_grid("ising_L", "10,20,80"))},
        {"kitaev_L", grid_to_string(cfg.get_grid("kitaev_L", "2,3,4,5,6"))},
        {"include_limit", include_limit ? "true" : "false"},
        {"delta_h", fmt_g(delta_h)},
    };

    struct Curve {
        ModelFamily family;
        int L;  // 0 = thermodynamic limit
        std::string name;
        VecD t_star;
        std::vector<bool> boundary;
    };
    std::vector<Curve> curves;
    for (int L : ising_L) curves.push_back({ModelFamily::Ising, L, "ising_L" + std::to_string(L), {}, {}});
    for (int L : kitaev_L)
        curves.push_back({ModelFamily::Kitaev, L, "kitaev_L" + std::to_string(L), {}, {}});
    if (include_limit) curves.push_back({ModelFamily::Kitaev, 0, "kitaev_limit", {}, {}});

    const int nl = int(lambda_grid.size());
    for (auto& cv : curves) {
        cv.t_star.resize(nl);
        cv.boundary.assign(nl, false);
    }
    parallel_for(int(curves.size()) * nl, args.workers, [&](int idx) {
        Curve& cv = curves[idx / nl];
        const int il = idx % nl;
        VecD chi(t_grid.size());
        for (Eigen::Index it = 0; it < t_grid.size(); ++it)
            chi[it] =
                susceptibility_oracle(cv.family, cv.L, J, lambda_grid[il], t_grid[it], delta_h);
        PeakEstimate pk = refine_peak(t_grid, chi);
        cv.t_star[il] = pk.location;
        cv.boundary[il] = pk.boundary;
    });

    json summary;
    for (const auto& cv : curves) {
        ThermoCurve curve;
        curve.axis = lambda_grid;
        curve.values = cv.t_star;
        curve.metadata["model"] = cv.family == ModelFamily::Kitaev ? "kitaev" : "ising";
        curve.metadata["L"] = cv.L == 0 ? "limit" : std::to_string(cv.L);
        curve.metadata["method"] = "oracle_free_energy";
        curve.metadata["experiment"] = "phase-diagram";
        curve.metadata["version"] = QGIBBS_VERSION;
        for (const auto& [k, v] : resolved) curve.metadata["config." + k] = v;
        write_file(args.outdir / ("phase_diagram_" + cv.name + ".csv"),
                   curve.to_csv("lambda", "t_star"));
        summary["v_shaped"][cv.name] = v_shaped(cv.t_star, 1e-9);
        std::vector<double> blam;
        for (int il = 0; il < nl; ++il)
            if (cv.boundary[il]) blam.push_back(lambda_grid[il]);
        summary["boundary_lambdas"][cv.name] = blam;
    }

    const Curve* limit = nullptr;
    for (const auto& cv : curves)
        if (cv.L == 0) limit = &cv;
    if (limit) {
        for (const auto& cv : curves) {
            if (cv.L == 0) continue;
            summary["max_rel_dev_vs_limit_window_0.7_1.3"][cv.name] = max_rel_dev(
                lambda_grid, cv.t_star, lambda_grid, limit->t_star, 0.7, 1.3);
        }
        for (const auto& cv : curves) {
            if (cv.family != ModelFamily::Ising) continue;
            for (int il = 0; il < nl; ++il)
                if (std::abs(lambda_grid[il] - 0.7) < 1e-9)
                    summary["rel_dev_vs_limit_at_0.7"][cv.name] =
                        std::abs(cv.t_star[il] - limit->t_star[il]) / limit->t_star[il];
        }
    }
    write_file(args.outdir / "phase_diagram_summary.json", summary.dump(2) + "\n");
    return 0;
}

int cmd_crossover_tqs(const CmdArgs& args) {
    const auto& cfg = args.cfg;
    cfg.restrict_keys({"J", "t_grid", "lambda_grid", "n_c_sweep", "L_sweep", "beta0", "s",
                       "n_c", "delta_h", "cutoff"});
    const double J = cfg.get_double("J", J_DEFAULT);
    const VecD t_grid = cfg.get_grid("t_grid", "0.1:0.02:2.0");
    // The default grid skips lambda = 1.0: the finite ring has an exact level
    // crossing there, and the filter's energy resolution 1/(s t) cannot track the
    // delta_h-regularized crossing susceptibility. The oracle route still covers it.
    const VecD lambda_grid = cfg.get_grid("lambda_grid", "0.6:0.05:0.95,1.05:0.05:1.4");
    const auto n_c_sweep = grid_to_ints(cfg.get_grid("n_c_sweep", "3,7,15,35"), "n_c_sweep");
    const auto L_sweep = grid_to_ints(cfg.get_grid("L_sweep", "2,3,4,5"), "L_sweep");
    const double beta0 = cfg.get_double("beta0", 4.0);
    const double s = cfg.get_double("s", 10.0);
    const int n_c = cfg.get_int("n_c", 35);
    const double delta_h = cfg.get_double("delta_h", 1e-4);
    const int cutoff = cfg.get_int("cutoff", 0);

    std::map<std::string, std::string> resolved = {
        {"J", fmt_g(J)},
        {"t_grid", grid_to_string(t_grid)},
        {"lambda_grid", grid_to_string(lambda_grid)},
        {"n_c_sweep", grid_to_string(cfg.get_grid("n_c_sweep", "3,7,15,35"))},
        {"L_sweep", grid_to_string(cfg.get_grid("L_sweep", "2,3,4,5"))},
        {"beta0", fmt_g(beta0)},
        {"s", fmt_g(s)},
        {"n_c", std::to_string(n_c)},
        {"delta_h", fmt_g(delta_h)},
        {"cutoff", std::to_string(cutoff)},
    };

    const int nl = int(lambda_grid.size());

    auto run_tqs_curve = [&](int L, int nc) {
        std::pair<VecD, std::vector<bool>> out{VecD(nl), std::vector<bool>(nl, false)};
        parallel_for(nl, args.workers, [&](int il) {
            TqsSweepSettings st;
            st.beta_resource = beta0;
            st.squeeze_s = s;
            st.n_c = nc;
            st.cutoff = cutoff;
            st.delta_h = delta_h;
            CrossoverPoint pt =
                tqs_crossover_at_lambda(ModelFamily::Kitaev, L, J, lambda_grid[il], t_grid, st);
            out.first[il] = pt.t_star;
            out.second[il] = pt.boundary;
        });
        return out;
    };
    auto run_oracle_curve = [&](int L) {
        VecD out(nl);
        parallel_for(nl, args.workers, [&](int il) {
            VecD chi(t_grid.size());
            for (Eigen::Index it = 0; it < t_grid.size(); ++it)
                chi[it] = susceptibility_oracle(ModelFamily::Kitaev, L, J, lambda_grid[il],
                                                t_grid[it], delta_h);
            out[il] = refine_peak(t_grid, chi).location;
        });
        return out;
    };

    auto emit = [&](const std::string& name, const VecD& vals,
                    const std::map<std::string, std::string>& extra) {
        ThermoCurve curve;
        curve.axis = lambda_grid;
        curve.values = vals;
        curve.metadata["experiment"] = "crossover-tqs";
        curve.metadata["version"] = QGIBBS_VERSION;
        for (const auto& [k, v] : resolved) curve.metadata["config." + k] = v;
        for (const auto& [k, v] : extra) curve.metadata[k] = v;
        write_file(args.outdir / (name + ".csv"), curve.to_csv("lambda", "t_star"));
    };

    json summary;

    // n_c sweep at L = 2 against the oracle reference.
    VecD oracle2 = run_oracle_curve(2);
    emit("crossover_oracle_L2", oracle2, {{"model", "kitaev"}, {"L", "2"}, {"method", "oracle"}});
    double prev_sup = -1.0;
    bool nonincreasing = true;
    for (int nc : n_c_sweep) {
        auto [vals, bnd] = run_tqs_curve(2, nc);
        emit("crossover_tqs_L2_nc" + std::to_string(nc), vals,
             {{"model", "kitaev"}, {"L", "2"}, {"method", "tqs"}, {"n_c", std::to_string(nc)}});
        const double sup = (vals - oracle2).cwiseAbs().maxCoeff();
        summary["supnorm_to_oracle_by_n_c"][std::to_string(nc)] = sup;
        if (prev_sup >= 0.0 && sup > prev_sup + 1e-12) nonincreasing = false;
        prev_sup = sup;
    }
    summary["supnorm_nonincreasing_in_n_c"] = nonincreasing;

    // L sweep at fixed n_c.
    std::vector<VecD> l_curves;
    for (int L : L_sweep) {
        auto [vals, bnd] = run_tqs_curve(L, n_c);
        emit("crossover_tqs_L" + std::to_string(L) + "_nc" + std::to_string(n_c), vals,
             {{"model", "kitaev"},
              {"L", std::to_string(L)},
              {"method", "tqs"},
              {"n_c", std::to_string(n_c)}});
        VecD oracle_l = run_oracle_curve(L);
        emit("crossover_oracle_L" + std::to_string(L), oracle_l,
             {{"model", "kitaev"}, {"L", std::to_string(L)}, {"method", "oracle"}});
        l_curves.push_back(vals);
    }
    double mutual = 0.0;
    for (std::size_t a = 0; a < l_curves.size(); ++a)
        for (std::size_t b = a + 1; b < l_curves.size(); ++b) {
            const double dev = max_rel_dev(lambda_grid, l_curves[a], lambda_grid, l_curves[b],
                                           lambda_grid[0], lambda_grid[nl - 1]);
            summary["mutual_rel_dev"][std::to_string(L_sweep[a]) + "_vs_" +
                                      std::to_string(L_sweep[b])] = dev;
            mutual = std::max(mutual, dev);
        }
    summary["mutual_rel_dev_max"] = mutual;
    write_file(args.outdir / "crossover_tqs_summary.json", summary.dump(2) + "\n");
    return 0;
}

int cmd_free_energy(const CmdArgs& args) {
    const auto& cfg = args.cfg;
    cfg.restrict_keys({"L", "J", "n_c", "beta0", "s_grid", "s", "t_panel_a", "lambda_grid",
                       "lambdas_b", "t_grid", "cutoff"});
    const int L = cfg.get_int("L", 2);
    const double J = cfg.get_double("J", J_DEFAULT);
    const int n_c = cfg.get_int("n_c", 35);
    const double beta0 = cfg.get_double("beta0", 4.0);
    const VecD s_grid = cfg.get_grid("s_grid", "2:2:10");
    const double s_b = cfg.get_double("s", 10.0);
    const double t_panel_a = cfg.get_double("t_panel_a", 0.4);
    const VecD lambda_grid = cfg.get_grid("lambda_grid", "0.5:0.05:1.5");
    const VecD lambdas_b = cfg.get_grid("lambdas_b", "0.5,1.0,1.5");
    const VecD t_grid = cfg.get_grid("t_grid", "0.2:0.05:2.0");
    const int cutoff_cfg = cfg.get_int("cutoff", 0);

    std::map<std::string, std::string> resolved = {
        {"L", std::to_string(L)},       {"J", fmt_g(J)},
        {"n_c", std::to_string(n_c)},   {"beta0", fmt_g(beta0)},
        {"s_grid", grid_to_string(s_grid)}, {"s", fmt_g(s_b)},
        {"t_panel_a", fmt_g(t_panel_a)},    {"lambda_grid", grid_to_string(lambda_grid)},
        {"lambdas_b", grid_to_string(lambdas_b)}, {"t_grid", grid_to_string(t_grid)},
        {"cutoff", std::to_string(cutoff_cfg)},
    };

    struct Row {
        char panel;
        double lambda, T, s, f_tqs, f_exact;
        bool ok;
    };
    std::vector<Row> rows;

    auto spectral_for = [&](double lambda, double s_val, double t_max) {
        PauliHamiltonian h = kitaev_spin_model(L, J, 2.0 * J * lambda);
        int cutoff = cutoff_cfg;
        if (cutoff == 0) {
            Eigen::SelfAdjointEigenSolver<MatC> es(h.dense(), Eigen::EigenvaluesOnly);
            cutoff = auto_cutoff(n_c, es.eigenvalues().maxCoeff() * t_max);
        }
        return std::pair<TqsSpectral, PauliHamiltonian>(
            TqsSpectral(h, beta0, s_val, n_c, cutoff), h);
    };
    auto exact_f = [&](const PauliHamiltonian& h, double beta) {
        return -std::log(dense_gibbs(h, beta).second) / beta;
    };

    // Panel A: F vs lambda at fixed T, one series per squeezing factor.
    const double beta_a = 1.0 / t_panel_a;
    const double t_a = beta_a / beta0;
    for (Eigen::Index is = 0; is < s_grid.size(); ++is) {
        for (Eigen::Index il = 0; il < lambda_grid.size(); ++il) {
            auto [spec, h] = spectral_for(lambda_grid[il], s_grid[is], t_a);
            const auto out = spec.at_time(t_a);
            const double f_tqs = free_energy_estimate(out.z_estimate, beta_a);
            const double f_ex = exact_f(h, beta_a);
            rows.push_back({'A', lambda_grid[il], t_panel_a, s_grid[is], f_tqs, f_ex,
                            f_tqs >= f_ex - 1e-12});
        }
    }
    // Panel B: F vs T at fixed squeezing, one series per lambda.
    const double t_max_b = (1.0 / t_grid.minCoeff()) / beta0;
    for (Eigen::Index il = 0; il < lambdas_b.size(); ++il) {
        auto [spec, h] = spectral_for(lambdas_b[il], s_b, t_max_b);
        for (Eigen::Index it = 0; it < t_grid.size(); ++it) {
            const double beta = 1.0 / t_grid[it];
            const auto out = spec.at_time(beta / beta0);
            const double f_tqs = free_energy_estimate(out.z_estimate, beta);
            const double f_ex = exact_f(h, beta);
            rows.push_back({'B', lambdas_b[il], t_grid[it], s_b, f_tqs, f_ex,
                            f_tqs >= f_ex - 1e-12});
        }
    }

    std::ostringstream body;
    char buf[200];
    int violations = 0;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%c,%.9g,%.9g,%.9g,%.9g,%.9g,%d\n", r.panel, r.lambda,
                      r.T, r.s, r.f_tqs, r.f_exact, int(r.ok));
        body << buf;
        violations += !r.ok;
    }
    write_file(args.outdir / "free_energy.csv",
               csv_header("free-energy", resolved,
                          "panel,lambda,T,s,f_tqs,f_exact,lower_bound_ok") +
                   body.str());

    json summary;
    summary["rows"] = rows.size();
    summary["lower_bound_violations"] = violations;
    write_file(args.outdir / "free_energy_summary.json", summary.dump(2) + "\n");
    return 0;
}

int cmd_error_scaling(const CmdArgs& args) {
    const auto& cfg = args.cfg;
    cfg.restrict_keys({"g", "c", "betas_direct", "s_grid", "betas_adaptive", "s_adaptive",
                       "adaptive_beta0", "n_c", "cutoff", "s_ref"});
    const double g = cfg.get_double("g", 1.0);
    const double c = cfg.get_double("c", 1.0);
    const VecD betas_direct = cfg.get_grid("betas_direct", "1,2");
    const VecD s_grid = cfg.get_grid("s_grid", "5,10,20,40");
    const VecD betas_adaptive = cfg.get_grid("betas_adaptive", "1,2,3");
    const double s_adaptive = cfg.get_double("s_adaptive", 10.0);
    const double beta0 = cfg.get_double("adaptive_beta0", 1.0);
    const int n_c = cfg.get_int("n_c", 35);
    const int cutoff = cfg.get_int("cutoff", 0);
    const double s_ref = cfg.get_double("s_ref", 200.0);

    std::map<std::string, std::string> resolved = {
        {"g", fmt_g(g)},
        {"c", fmt_g(c)},
        {"betas_direct", grid_to_string(betas_direct)},
        {"s_grid", grid_to_string(s_grid)},
        {"betas_adaptive", grid_to_string(betas_adaptive)},
        {"s_adaptive", fmt_g(s_adaptive)},
        {"adaptive_beta0", fmt_g(beta0)},
        {"n_c", std::to_string(n_c)},
        {"cutoff", std::to_string(cutoff)},
        {"s_ref", fmt_g(s_ref)},
    };

    const PauliHamiltonian h = single_qubit_model(g, c);
    ErrorScalingTable direct =
        error_scaling_probe(h, betas_direct, s_grid, std::nullopt, n_c, cutoff);
    VecD s_single(1);
    s_single[0] = s_adaptive;
    ErrorScalingTable adaptive =
        error_scaling_probe(h, betas_adaptive, s_single, beta0, n_c, cutoff);

    // Truncation floor estimate: the s -> infinity limit of e at this n_c, probed at
    // s_ref. Subtracting it isolates the finite-squeezing increment.
    VecD floor_direct(betas_direct.size());
    VecD sref_single(1);
    sref_single[0] = s_ref;
    ErrorScalingTable ref =
        error_scaling_probe(h, betas_direct, sref_single, std::nullopt, n_c, cutoff);
    for (Eigen::Index ib = 0; ib < betas_direct.size(); ++ib) floor_direct[ib] = ref.e(ib, 0);

    std::ostringstream body;
    char buf[160];
    for (Eigen::Index ib = 0; ib < betas_direct.size(); ++ib)
        for (Eigen::Index is = 0; is < s_grid.size(); ++is) {
            std::snprintf(buf, sizeof buf, "direct,%.9g,%.9g,%.9g\n", betas_direct[ib],
                          s_grid[is], direct.e(ib, is));
            body << buf;
        }
    for (Eigen::Index ib = 0; ib < betas_adaptive.size(); ++ib) {
        std::snprintf(buf, sizeof buf, "adaptive,%.9g,%.9g,%.9g\n", betas_adaptive[ib],
                      s_adaptive, adaptive.e(ib, 0));
        body << buf;
    }
    write_file(args.outdir / "error_scaling.csv",
               csv_header("error-scaling", resolved, "mode,beta,s,e") + body.str());

    json summary;
    VecD e1 = direct.e.row(0);
    summary["slope_direct_beta1"] = loglog_slope(s_grid, e1);
    if (betas_direct.size() >= 2) {
        std::vector<double> ratios;
        for (Eigen::Index is = 0; is < s_grid.size(); ++is)
            ratios.push_back(direct.e(1, is) / direct.e(0, is));
        summary["ratio_e_beta2_over_beta1"] = ratios;
    }
    {
        double lo = adaptive.e.col(0).minCoeff(), hi = adaptive.e.col(0).maxCoeff();
        summary["adaptive_spread"] = (hi - lo) / lo;
    }
    {
        VecD inc(s_grid.size());
        for (Eigen::Index is = 0; is < s_grid.size(); ++is)
            inc[is] = std::max(direct.e(0, is) - floor_direct[0], 1e-300);
        summary["slope_increment_beta1"] = loglog_slope(s_grid, inc);
        if (betas_direct.size() >= 2) {
            std::vector<double> rinc;
            for (Eigen::Index is = 0; is < s_grid.size(); ++is)
                rinc.push_back((direct.e(1, is) - floor_direct[1]) /
                               std::max(direct.e(0, is) - floor_direct[0], 1e-300));
            summary["ratio_increment_beta2_over_beta1"] = rinc;
        }
        summary["floor_estimate_at_s_ref"] = std::vector<double>(
            floor_direct.data(), floor_direct.data() + floor_direct.size());
    }
    write_file(args.outdir / "error_scaling_summary.json", summary.dump(2) + "\n");
    return 0;
}

int cmd_check_circuits(const CmdArgs& args) {
    const auto& cfg = args.cfg;
    cfg.restrict_keys({"cutoff", "theta", "kitaev_L", "ising_L", "tolerance"});
    const int cutoff = cfg.get_int("cutoff", 24);
    const double theta = cfg.get_double("theta", 0.37);
    const auto kitaev_L = grid_to_ints(cfg.get_grid("kitaev_L", "2,3,4"), "kitaev_L");
    const auto ising_L = grid_to_ints(cfg.get_grid("ising_L", "3"), "ising_L");
    const double tol = cfg.get_double("tolerance", 1e-10);

    std::map<std::string, std::string> resolved = {
        {"cutoff", std::to_string(cutoff)},
        {"theta", fmt_g(theta)},
        {"kitaev_L", grid_to_string(cfg.get_grid("kitaev_L", "2,3,4"))},
        {"ising_L", grid_to_string(cfg.get_grid("ising_L", "3"))},
        {"tolerance", fmt_g(tol)},
    };

    std::vector<std::pair<std::string, PauliHamiltonian>> models;
    models.push_back({"single_qubit", single_qubit_model(1.0, 1.0)});
    for (int L : kitaev_L)
        models.push_back({"kitaev_L" + std::to_string(L), kitaev_spin_model(L, 1.0, 1.6)});
    for (int L : ising_L)
        models.push_back({"ising_L" + std::to_string(L), ising_pbc_model(L, 1.0, 1.2)});

    const FockMode fock(cutoff);
    std::ostringstream report, listing;
    char buf[240];
    int failures = 0;
    for (const auto& [name, model] : models) {
        for (const auto& term : model.terms) {
            HybridCircuit circuit = compile_pauli_p_evolution(term.ops, theta);
            PauliHamiltonian single;
            single.n_qubits = model.n_qubits;
            single.terms.push_back({1.0, term.ops});
            const MatC expected =
                dense_exp_hermitian(joint_generator_dense(single, fock), theta);
            const MatC got = circuit.dense(model.n_qubits, fock);
            const double err = (got - expected).cwiseAbs().maxCoeff();
            const bool ok = err <= tol;
            failures += !ok;
            PauliTerm label{1.0, term.ops};
            std::snprintf(buf, sizeof buf, "%-14s %-24s max_err=%.3e cnots=%d %s\n",
                          name.c_str(), label.to_string().c_str(), err, circuit.cnot_count(),
                          ok ? "PASS" : "FAIL");
            report << buf;
            listing << "# " << name << "  term " << label.to_string() << '\n'
                    << circuit.to_text() << '\n';
        }
    }
    std::cout << report.str();
    write_file(args.outdir / "check_circuits.txt",
               csv_header("check-circuits", resolved, "") + report.str());
    write_file(args.outdir / "check_circuits_gates.txt", listing.str());
    json summary;
    summary["failures"] = failures;
    summary["tolerance"] = tol;
    write_file(args.outdir / "check_circuits_summary.json", summary.dump(2) + "\n");
    return failures == 0 ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qubit-qumode thermal simulation experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int workers = int(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    const std::vector<std::pair<std::string, int (*)(const CmdArgs&)>> commands = {
        {"single-qubit", cmd_single_qubit},   {"phase-diagram", cmd_phase_diagram},
        {"crossover-tqs", cmd_crossover_tqs}, {"free-energy", cmd_free_energy},
        {"error-scaling", cmd_error_scaling}, {"check-circuits", cmd_check_circuits},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "worker thread count");
        sub->allow_extras();  // trailing key=value overrides
        subs[name] = sub;
    }

    CLI11_PARSE(app, argc, argv);

    try {
        CmdArgs args;
        if (!config_path.empty()) args.cfg = ExperimentConfig::from_file(config_path);
        CLI::App* active = app.get_subcommands().at(0);
        for (const std::string& extra : active->remaining()) args.cfg.override_kv(extra);

        if (out_dir.empty()) {
            const char* env = std::getenv("QUMODE_GIBBS_OUT");
            out_dir = env && *env ? env : "results";
        }
        args.outdir = out_dir;
        fs::create_directories(args.outdir);
        args.workers = std::max(1, workers);

        for (const auto& [name, fn] : commands)
            if (subs[name]->parsed()) return fn(args);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const PostSelectionStarvation& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}
