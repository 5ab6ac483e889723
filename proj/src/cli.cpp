#include "srlaser/cli.hpp"
#include "srlaser/errors.hpp"
#include "srlaser/fluct.hpp"
#include "srlaser/io.hpp"
#include "srlaser/mcsim.hpp"
#include "srlaser/nofluct.hpp"
#include "srlaser/noise.hpp"
#include "srlaser/numerics.hpp"
#include "srlaser/presets.hpp"
#include "srlaser/semiclassical.hpp"
#include "parallel.hpp"
#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <sstream>

namespace srl {

namespace {

// ---- option plumbing -------------------------------------------------------

struct CommonOpts {
    std::string config;
    std::string preset;
    std::string pump;       // LIST "2,4,8" or RANGE "lo:hi:count[:log|lin]"
    std::string grid = "auto";
    std::string format = "csv";
    std::string out;        // empty/- = stdout
    bool no_popfluct = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_pump = true) {
    cmd->add_option("--config", o.config, "JSON config file (physical or dimensionless block)");
    cmd->add_option("--preset", o.preset, "built-in figure preset id supplying parameters");
    if (with_pump)
        cmd->add_option("--pump", o.pump, "pump value(s): LIST a,b,c or RANGE lo:hi:count[:log]");
    cmd->add_option("--grid", o.grid, "frequency grid: auto or WMAX[:NLIN[:NLOG]]");
    cmd->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_flag("--no-popfluct", o.no_popfluct, "switch population fluctuations off");
}

LaserParams resolve_params(const CommonOpts& o) {
    if (!o.config.empty() && !o.preset.empty())
        throw config_error("--config and --preset are mutually exclusive");
    if (!o.config.empty()) return load_config(o.config);
    if (!o.preset.empty()) return find_preset(o.preset).curves.at(0).base;
    throw config_error("parameters required: pass --config FILE or --preset ID");
}

std::vector<double> parse_pumps(const std::string& s) {
    if (s.empty()) return {};
    if (s.find(':') != std::string::npos) {
        // RANGE lo:hi:count[:log|lin]
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() < 3 || parts.size() > 4)
            throw config_error("bad --pump range \"" + s + "\" (want lo:hi:count[:log])");
        try {
            const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
            const int count = std::stoi(parts[2]);
            const bool log = parts.size() == 4 ? parts[3] == "log" : false;
            if (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin")
                throw config_error("bad --pump range scale \"" + parts[3] + "\" (want log or lin)");
            if (count < 1 || !(hi >= lo) || (log && !(lo > 0.0)))
                throw config_error("bad --pump range \"" + s + "\"");
            std::vector<double> v(count);
            for (int i = 0; i < count; ++i) {
                const double t = count == 1 ? 0.0 : i / double(count - 1);
                v[i] = log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
            }
            return v;
        } catch (const std::invalid_argument&) {
            throw config_error("bad --pump range \"" + s + "\"");
        }
    }
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stod(tok));
        } catch (const std::invalid_argument&) {
            throw config_error("bad --pump value \"" + tok + "\"");
        }
    }
    if (v.empty()) throw config_error("empty --pump list");
    return v;
}

std::vector<double> resolve_pumps(const CommonOpts& o, const LaserParams& p) {
    const std::vector<double> from_flag = parse_pumps(o.pump);
    if (!from_flag.empty()) return from_flag;
    if (!o.preset.empty()) return find_preset(o.preset).curves.at(0).pumps;
    if (p.P > 0.0) return {p.P};
    throw config_error("pump required: pass --pump or a config with \"pump\"");
}

Eigen::ArrayXd resolve_grid(const std::string& spec, const LaserParams& p, double omega_ro) {
    if (spec == "auto") {
        const double w_max = 4.0 * std::max({p.gamma_perp, 2.0 * p.kappa, 2.0 * omega_ro});
        return make_grid(w_max);
    }
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    try {
        const double w_max = std::stod(parts.at(0));
        const int n_lin = parts.size() > 1 ? std::stoi(parts[1]) : 2400;
        const int n_log = parts.size() > 2 ? std::stoi(parts[2]) : 60;
        if (parts.size() > 3 || !(w_max > 0.0) || n_lin < 2 || n_log < 2)
            throw config_error("bad --grid \"" + spec + "\" (want auto or WMAX[:NLIN[:NLOG]])");
        return make_grid(w_max, n_log, n_lin);
    } catch (const std::invalid_argument&) {
        throw config_error("bad --grid \"" + spec + "\" (want auto or WMAX[:NLIN[:NLOG]])");
    } catch (const std::out_of_range&) {
        throw config_error("bad --grid \"" + spec + "\"");
    }
}

nlohmann::json derived_to_json(const DerivedParams& d) {
    return {{"Nth", d.Nth},
            {"Pth", std::isfinite(d.Pth) ? nlohmann::json(d.Pth) : nlohmann::json("inf")},
            {"Nc", d.Nc},
            {"beta_tilde", d.beta_tilde},
            {"beta_tilde_c", d.beta_tilde_c},
            {"beta", d.beta},
            {"gamma_c", d.gamma_c}};
}

// steady state with population fluctuations on/off, as requested
SteadyState state_for(const LaserParams& p, const DerivedParams& d, bool no_popfluct) {
    if (!no_popfluct) return solve_steady(p, d);
    const NofluctState nf = solve_N_nofluct(p, d);
    SteadyState s;
    s.N = nf.N;
    s.n = nf.n;
    s.nA_tot = 0.0;
    s.nS_tot = 0.0;
    s.omega_ro = 2.0 * p.Omega0 * std::sqrt(p.f * std::max(0.0, nf.n));
    return s;
}

// ---- subcommands -----------------------------------------------------------

int cmd_derive(const CommonOpts& o) {
    LaserParams p = resolve_params(o);
    const std::vector<double> pumps = o.pump.empty() && o.preset.empty() && p.P == 0.0
                                          ? std::vector<double>{p.P}
                                          : resolve_pumps(o, p);
    const DerivedParams d = derive(p);
    Table t;
    t.meta = {{"command", "derive"}, {"params", params_to_json(p)}, {"derived", derived_to_json(d)}};
    t.columns = {"P", "Nth", "Pth", "Nc", "beta_tilde", "beta_tilde_c", "beta", "gamma_c",
                 "n_semiclassical", "N_semiclassical", "lasing"};
    for (double P : pumps) {
        LaserParams q = p;
        q.P = P;
        const SemiclassicalState s = semiclassical_state(q, d);
        t.add_row({P, d.Nth, d.Pth, d.Nc, d.beta_tilde, d.beta_tilde_c, d.beta, d.gamma_c,
                   s.n, s.N, s.lasing ? 1.0 : 0.0});
    }
    write_table(o.out, o.format, t);
    return 0;
}

int cmd_steady(const CommonOpts& o) {
    LaserParams p = resolve_params(o);
    const std::vector<double> pumps = resolve_pumps(o, p);
    const DerivedParams d = derive(p);
    Table t;
    t.meta = {{"command", "steady"}, {"params", params_to_json(p)},
              {"derived", derived_to_json(d)}, {"popfluct", !o.no_popfluct}};
    t.columns = {"P", "N", "Ne", "n", "nS", "nA", "omega_ro", "region",
                 "N_nofluct", "N_highpump"};
    std::vector<std::vector<nlohmann::json>> rows(pumps.size());
    parallel_for(int(pumps.size()), [&](int i) {
        LaserParams q = p;
        q.P = pumps[i];
        const SteadyState s = state_for(q, d, o.no_popfluct);
        const Region reg = classify_region(q, d, s);
        rows[i] = {pumps[i], s.N, excited_from_inversion(s.N, p.N0), s.n,
                   s.nS_tot, s.nA_tot, s.omega_ro, to_string(reg),
                   solve_N_nofluct(q, d).N, solve_N_highpump(q, d).N};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    write_table(o.out, o.format, t);
    return 0;
}

int cmd_spectrum(const CommonOpts& o, const std::string& kind) {
    LaserParams p = resolve_params(o);
    const std::vector<double> pumps = resolve_pumps(o, p);
    if (pumps.size() != 1)
        throw config_error("spectrum: exactly one pump value required");
    p.P = pumps[0];
    const DerivedParams d = derive(p);
    const std::string k = o.no_popfluct ? "nofluct" : kind;
    const SteadyState s = state_for(p, d, o.no_popfluct);
    const Eigen::ArrayXd grid = mirror_grid(resolve_grid(o.grid, p, s.omega_ro));
    auto eval = [&](double w) -> double {
        if (k == "nofluct") return spectrum_nofluct(p, d, s.N, w);
        if (k == "nA") return nA_spectrum(p, d, s.N, w);
        if (k == "nS") return nS_spectrum(p, d, s.N, s.n, w);
        if (k == "nAS") return nAS_spectrum(p, d, s.N, w);
        if (k == "full") return full_spectrum(p, d, s.N, s.n, w);
        throw config_error("unknown spectrum kind \"" + k + "\" (nofluct, nA, nS, nAS, full)");
    };
    eval(0.0);  // validate kind before computing the sweep
    Table t;
    t.meta = {{"command", "spectrum"}, {"kind", k}, {"params", params_to_json(p)},
              {"N", s.N}, {"n", s.n}, {"omega_ro", s.omega_ro},
              {"popfluct", !o.no_popfluct}};
    t.columns = {"omega", "value"};
    // most-negative full-spectrum excursion is worth surfacing
    double min_v = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double v = eval(grid[i]);
        min_v = std::min(min_v, v);
        t.add_row({grid[i], v});
    }
    if (min_v < 0.0) t.meta["max_negative_excursion"] = min_v;
    write_table(o.out, o.format, t);
    return 0;
}

int cmd_rf(const CommonOpts& o) {
    LaserParams p = resolve_params(o);
    const std::vector<double> pumps = resolve_pumps(o, p);
    if (pumps.size() != 1) throw config_error("rf: exactly one pump value required");
    p.P = pumps[0];
    const DerivedParams d = derive(p);
    const SteadyState s = solve_steady(p, d);
    const Region reg = classify_region(p, d, s);
    if (reg != Region::lasing)
        std::cerr << "warning: intensity-fluctuation spectrum requested in the "
                  << to_string(reg) << " region; the linearized form is reliable "
                  << "only in the lasing region\n";
    const Eigen::ArrayXd grid = mirror_grid(resolve_grid(o.grid, p, s.omega_ro));
    Table t;
    t.meta = {{"command", "rf"}, {"params", params_to_json(p)}, {"N", s.N}, {"n", s.n},
              {"omega_ro", s.omega_ro}, {"region", to_string(reg)}};
    t.columns = {"omega", "value"};
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        t.add_row({grid[i], rf_spectrum(p, d, s, grid[i])});
    write_table(o.out, o.format, t);
    return 0;
}

int cmd_linewidth(const CommonOpts& o) {
    LaserParams p = resolve_params(o);
    const std::vector<double> pumps = resolve_pumps(o, p);
    const DerivedParams d = derive(p);
    Table t;
    t.meta = {{"command", "linewidth"}, {"params", params_to_json(p)},
              {"derived", derived_to_json(d)}, {"popfluct", !o.no_popfluct}};
    t.columns = {"P", "gamma_las", "split", "gamma_low_asymptote", "gamma_high_asymptote"};
    std::vector<std::vector<nlohmann::json>> rows(pumps.size());
    parallel_for(int(pumps.size()), [&](int i) {
        LaserParams q = p;
        q.P = pumps[i];
        const SteadyState s = state_for(q, d, o.no_popfluct);
        const double g_exact = linewidth_exact_formula(q, d, s.N);
        const NofluctState low = solve_N_nofluct(q, d);
        const double g_low = linewidth_nofluct(q, d, low.N, LinewidthMethod::power_form_low);
        const SteadyState hp = highpump_closed_form(q, d);
        const double g_high = linewidth_high(q, d, hp);
        rows[i] = {pumps[i], g_exact, two_peaked(d, s.N) ? 1.0 : 0.0, g_low, g_high};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    write_table(o.out, o.format, t);
    return 0;
}

struct MCOpts {
    double dt = 0.0;           // 0 = auto (0.8 * stability limit)
    double duration = 0.0;     // 0 = auto from segments and dt
    double burn_in = -1.0;     // <0 = auto
    std::uint64_t seed = 1;
    int segments = 256;
    int seg_samples = 8192;    // used when duration is auto
    std::string window = "hann";
    std::string dump;          // optional trajectory dump path (binary)
};

int cmd_mc_validate(const CommonOpts& o, const MCOpts& mo) {
    LaserParams p = resolve_params(o);
    const std::vector<double> pumps = resolve_pumps(o, p);
    if (pumps.size() != 1) throw config_error("mc-validate: exactly one pump value required");
    p.P = pumps[0];
    const DerivedParams d = derive(p);
    const SteadyState s = solve_steady(p, d);
    MCConfig cfg;
    cfg.dt = mo.dt > 0.0 ? mo.dt : 0.8 * max_stable_dt(p, d, s.N, s.n);
    cfg.duration = mo.duration > 0.0 ? mo.duration
                                     : double(mo.segments) * mo.seg_samples * cfg.dt;
    cfg.burn_in = mo.burn_in >= 0.0 ? mo.burn_in : 0.05 * cfg.duration;
    cfg.seed = mo.seed;
    cfg.segments = mo.segments;
    cfg.window = mo.window;
    const MCResult ra = simulate_A(p, d, s.N, cfg);
    const MCResult rs = simulate_S(p, d, s.N, s.n, cfg);
    if (!mo.dump.empty()) {
        MCConfig dump_cfg = cfg;
        dump_cfg.duration = std::min(cfg.duration, 4096.0 * cfg.dt);
        dump_trajectory(mo.dump, p, d, s.N, s.n, true, dump_cfg);
    }
    Table t;
    t.meta = {{"command", "mc-validate"}, {"params", params_to_json(p)},
              {"N", s.N}, {"n", s.n},
              {"dt", cfg.dt}, {"duration", cfg.duration}, {"burn_in", cfg.burn_in},
              {"seed", cfg.seed}, {"segments", cfg.segments}, {"window", cfg.window},
              {"variance_A", ra.a.variance}, {"variance_S", rs.a.variance},
              {"nA_total_analytic", nA_total(p, d, s.N)},
              {"nS_total_analytic", nS_total(p, d, s.N, s.n)}};
    t.columns = {"omega", "psd_A", "stderr_A", "nA_analytic",
                 "psd_S", "stderr_S", "nS_analytic"};
    const Eigen::Index nbin = ra.a.omega.size();
    Eigen::ArrayXd na_grid(nbin), ns_grid(nbin);
    for (Eigen::Index i = 0; i < nbin; ++i) {
        const double w = ra.a.omega[i];
        na_grid[i] = nA_spectrum(p, d, s.N, w);
        ns_grid[i] = nS_spectrum(p, d, s.N, s.n, w);
        t.add_row({w, ra.a.values[i], ra.a.stderr_[i], na_grid[i],
                   rs.a.values[i], rs.a.stderr_[i], ns_grid[i]});
    }
    // compare inside the physical band; near Nyquist the discrete-time PSD
    // deviates from the continuous formula regardless of segment count
    const double rate_sum = 0.05 / max_stable_dt(p, d, s.N, s.n);
    const double band = std::min(4.0 * rate_sum, 0.2 * M_PI / cfg.dt);
    t.meta["rms_band_omega_max"] = band;
    if (nbin > 1)  // Welch bin spacing; narrow features need this small
        t.meta["omega_resolution"] = ra.a.omega[1] - ra.a.omega[0];
    t.meta["rms_rel_error_A"] = psd_rel_rms(ra.a, na_grid, band);
    t.meta["rms_rel_error_S"] = psd_rel_rms(rs.a, ns_grid, band);
    write_table(o.out, o.format, t);
    return 0;
}

// one output file per curve: fig<id>_curve<k>.csv in --out directory
int cmd_figure(const std::string& id, const std::string& out_dir, const std::string& format) {
    const FigurePreset& fp = find_preset(id);
    const std::string dir = out_dir.empty() ? "." : out_dir;
    const std::string ext = format == "json" ? ".json" : ".csv";
    std::vector<int> work;  // (curve index) flattened; pumps stay inside a curve file
    for (size_t c = 0; c < fp.curves.size(); ++c) work.push_back(int(c));

    auto emit = [&](int ci) {
        const FigureCurve& cv = fp.curves[ci];
        LaserParams p = cv.base;
        const DerivedParams d = derive(p);
        Table t;
        t.meta = {{"command", "figure"}, {"preset", fp.id}, {"curve", ci},
                  {"label", cv.label}, {"params", params_to_json(p)},
                  {"description", fp.description}};
        switch (fp.kind) {
            case FigureKind::nofluct_spectrum: {
                p.P = cv.pumps.at(0);
                t.meta["params"] = params_to_json(p);
                const NofluctState nf = solve_N_nofluct(p, d);
                t.meta["N"] = nf.N;
                t.meta["n"] = nf.n;
                const Eigen::ArrayXd g = mirror_grid(resolve_grid("auto", p, 0.0));
                t.columns = {"omega", "value"};
                for (Eigen::Index i = 0; i < g.size(); ++i)
                    t.add_row({g[i], spectrum_nofluct(p, d, nf.N, g[i])});
                break;
            }
            case FigureKind::parts_spectrum: {
                p.P = cv.pumps.at(0);
                t.meta["params"] = params_to_json(p);
                const SteadyState s = solve_steady(p, d);
                t.meta["N"] = s.N;
                t.meta["n"] = s.n;
                t.meta["nS_total"] = s.nS_tot;
                t.meta["nA_total"] = s.nA_tot;
                const Eigen::ArrayXd g = mirror_grid(resolve_grid("auto", p, s.omega_ro));
                t.columns = {"omega", "n_full", "n_narrow", "n_broad"};
                for (Eigen::Index i = 0; i < g.size(); ++i)
                    t.add_row({g[i], full_spectrum(p, d, s.N, s.n, g[i]),
                               spectrum_nofluct(p, d, s.N, g[i]) - nA_spectrum(p, d, s.N, g[i]),
                               nS_spectrum(p, d, s.N, s.n, g[i])});
                break;
            }
            case FigureKind::photon_sweep: {
                t.columns = {"P", "n", "n_nofluct", "n_semiclassical", "N", "N_nofluct"};
                std::vector<std::vector<nlohmann::json>> rows(cv.pumps.size());
                parallel_for(int(cv.pumps.size()), [&](int i) {
                    LaserParams q = p;
                    q.P = cv.pumps[i];
                    const SteadyState s = solve_steady(q, d);
                    const NofluctState nf = solve_N_nofluct(q, d);
                    const SemiclassicalState sc = semiclassical_state(q, d);
                    rows[i] = {cv.pumps[i], s.n, nf.n, sc.n, s.N, nf.N};
                });
                for (auto& r : rows) t.add_row(std::move(r));
                break;
            }
            case FigureKind::linewidth_sweep: {
                t.columns = {"P", "gamma_las", "split", "gamma_low_asymptote",
                             "gamma_high_asymptote"};
                std::vector<std::vector<nlohmann::json>> rows(cv.pumps.size());
                parallel_for(int(cv.pumps.size()), [&](int i) {
                    LaserParams q = p;
                    q.P = cv.pumps[i];
                    const SteadyState s = solve_steady(q, d);
                    const NofluctState low = solve_N_nofluct(q, d);
                    rows[i] = {cv.pumps[i], linewidth_exact_formula(q, d, s.N),
                               two_peaked(d, s.N) ? 1.0 : 0.0,
                               linewidth_nofluct(q, d, low.N, LinewidthMethod::power_form_low),
                               linewidth_high(q, d, highpump_closed_form(q, d))};
                });
                for (auto& r : rows) t.add_row(std::move(r));
                break;
            }
            case FigureKind::full_spectrum: {
                p.P = cv.pumps.at(0);
                t.meta["params"] = params_to_json(p);
                const SteadyState s = solve_steady(p, d);
                // dashed companion curve: the no-popfluct theory at its own state
                const NofluctState nf = solve_N_nofluct(p, d);
                t.meta["N"] = s.N;
                t.meta["n"] = s.n;
                t.meta["N_nofluct"] = nf.N;
                const Eigen::ArrayXd g = mirror_grid(resolve_grid("auto", p, s.omega_ro));
                t.columns = {"omega", "n_full", "n_nofluct"};
                double min_v = 0.0;
                for (Eigen::Index i = 0; i < g.size(); ++i) {
                    const double v = full_spectrum(p, d, s.N, s.n, g[i]);
                    min_v = std::min(min_v, v);
                    t.add_row({g[i], v, spectrum_nofluct(p, d, nf.N, g[i])});
                }
                if (min_v < 0.0) t.meta["max_negative_excursion"] = min_v;
                break;
            }
            case FigureKind::rf_spectrum: {
                p.P = cv.pumps.at(0);
                t.meta["params"] = params_to_json(p);
                const SteadyState s = solve_steady(p, d);
                t.meta["N"] = s.N;
                t.meta["n"] = s.n;
                t.meta["omega_ro"] = s.omega_ro;
                const Eigen::ArrayXd g = mirror_grid(resolve_grid("auto", p, s.omega_ro));
                t.columns = {"omega", "value"};
                for (Eigen::Index i = 0; i < g.size(); ++i)
                    t.add_row({g[i], rf_spectrum(p, d, s, g[i])});
                break;
            }
        }
        std::ostringstream path;
        path << dir << "/" << fp.id << "_curve" << ci << ext;
        write_table(path.str(), format, t);
    };
    parallel_for(int(work.size()), [&](int i) { emit(work[i]); });
    std::cout << "wrote " << fp.curves.size() << " curve file(s) for " << fp.id
              << " into " << dir << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"steady states, spectra, linewidths and intensity fluctuations of a "
                 "single-mode two-level laser with quantum noise"};
    app.require_subcommand(1);

    CommonOpts o_derive, o_steady, o_spec, o_rf, o_lw, o_mc;
    std::string spec_kind = "full";
    MCOpts mo;
    std::string fig_id, fig_out = ".", fig_format = "csv";

    add_common(app.add_subcommand("derive", "derived threshold and coupling parameters"), o_derive);
    add_common(app.add_subcommand("steady", "steady state vs pump"), o_steady);
    auto* c_spec = app.add_subcommand("spectrum", "optical spectrum at one pump");
    add_common(c_spec, o_spec);
    c_spec->add_option("--kind", spec_kind, "nofluct, nA, nS, nAS or full");
    add_common(app.add_subcommand("rf", "intensity-fluctuation spectrum at one pump"), o_rf);
    add_common(app.add_subcommand("linewidth", "linewidth vs pump with asymptotes"), o_lw);
    auto* c_mc = app.add_subcommand("mc-validate",
                                    "Monte-Carlo check of the analytic spectra at one pump");
    add_common(c_mc, o_mc);
    c_mc->add_option("--dt", mo.dt, "integrator step (default 0.8x stability limit)");
    c_mc->add_option("--duration", mo.duration, "integration time (default segments*8192*dt)");
    c_mc->add_option("--burn-in", mo.burn_in, "discarded initial time (default 5% of duration)");
    c_mc->add_option("--seed", mo.seed, "RNG seed");
    c_mc->add_option("--segments", mo.segments, "Welch segments");
    c_mc->add_option("--seg-samples", mo.seg_samples, "samples per segment when duration is auto");
    c_mc->add_option("--window", mo.window, "hann or rect")
        ->check(CLI::IsMember({"hann", "rect"}));
    c_mc->add_option("--dump", mo.dump, "also dump a short raw trajectory to this binary file");
    auto* c_fig = app.add_subcommand("figure", "emit the curve files of a built-in figure preset");
    c_fig->add_option("id", fig_id, "preset id")->required();
    c_fig->add_option("--out", fig_out, "output directory (default .)");
    c_fig->add_option("--format", fig_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("derive")) return cmd_derive(o_derive);
        if (app.got_subcommand("steady")) return cmd_steady(o_steady);
        if (app.got_subcommand("spectrum")) return cmd_spectrum(o_spec, spec_kind);
        if (app.got_subcommand("rf")) return cmd_rf(o_rf);
        if (app.got_subcommand("linewidth")) return cmd_linewidth(o_lw);
        if (app.got_subcommand("mc-validate")) return cmd_mc_validate(o_mc, mo);
        if (app.got_subcommand("figure")) return cmd_figure(fig_id, fig_out, fig_format);
        throw config_error("no subcommand");
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const solver_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const physics_error& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace srl
