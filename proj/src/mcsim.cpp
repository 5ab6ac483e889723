#include "srlaser/mcsim.hpp"
#include "srlaser/errors.hpp"
#include <unsupported/Eigen/FFT>
#include <cmath>
#include <complex>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <vector>

namespace srl {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// independent per-channel generator derived from (seed, channel-id)
std::mt19937_64 channel_rng(std::uint64_t seed, int channel) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(0x5851f42d4c957f2dULL * (channel + 1))));
}

Eigen::ArrayXd window_samples(const std::string& window, int L) {
    Eigen::ArrayXd w(L);
    if (window == "hann") {
        for (int j = 0; j < L; ++j) w[j] = 0.5 - 0.5 * std::cos(two_pi * j / L);
    } else if (window == "rect") {
        w.setOnes();
    } else {
        throw config_error("welch: window must be \"hann\" or \"rect\"");
    }
    return w;
}

// non-overlapping Welch segments accumulated as they stream in
class WelchAccumulator {
public:
    WelchAccumulator(int L, double dt, const std::string& window)
        : L_(L), dt_(dt), w_(window_samples(window, L)), buf_(L) {
        sumw2_ = (w_ * w_).sum();
        const int nbin = L_ / 2 + 1;
        sum_ = Eigen::ArrayXd::Zero(nbin);
        sumsq_ = Eigen::ArrayXd::Zero(nbin);
    }

    void add(double x) {
        buf_[fill_++] = x;
        var_sum_ += x;
        var_sumsq_ += x * x;
        ++nsamp_;
        if (fill_ == L_) flush();
    }

    int segments_done() const { return nseg_; }

    PSDEstimate finalize() const {
        if (nseg_ < 1) throw solver_error("welch: no complete segment accumulated");
        const int nbin = L_ / 2 + 1;
        PSDEstimate e;
        e.omega.resize(nbin);
        for (int k = 0; k < nbin; ++k) e.omega[k] = two_pi * k / (L_ * dt_);
        e.values = sum_ / nseg_;
        e.stderr_.resize(nbin);
        if (nseg_ > 1) {
            for (int k = 0; k < nbin; ++k) {
                const double m = e.values[k];
                const double var = (sumsq_[k] / nseg_ - m * m) * nseg_ / (nseg_ - 1.0);
                e.stderr_[k] = std::sqrt(std::max(0.0, var) / nseg_);
            }
        } else {
            e.stderr_.setZero(nbin);
        }
        const double mean = var_sum_ / nsamp_;
        e.variance = var_sumsq_ / nsamp_ - mean * mean;
        return e;
    }

private:
    void flush() {
        std::vector<double> in(L_);
        for (int j = 0; j < L_; ++j) in[j] = buf_[j] * w_[j];
        std::vector<std::complex<double>> out;
        fft_.fwd(out, in);
        for (int k = 0; k <= L_ / 2; ++k) {
            const double P = dt_ * std::norm(out[k]) / sumw2_;
            sum_[k] += P;
            sumsq_[k] += P * P;
        }
        ++nseg_;
        fill_ = 0;
    }

    int L_;
    double dt_;
    Eigen::ArrayXd w_, buf_, sum_, sumsq_;
    double sumw2_ = 0.0, var_sum_ = 0.0, var_sumsq_ = 0.0;
    long long nsamp_ = 0;
    int fill_ = 0, nseg_ = 0;
    Eigen::FFT<double> fft_;
};

void check_config(const LaserParams& p, const DerivedParams& d, double N, double n,
                  const MCConfig& cfg) {
    if (!(N < d.Nth))
        throw solver_error("simulate: drift is unstable at or above threshold (N >= Nth)");
    const double dt_max = max_stable_dt(p, d, N, n);
    if (!(cfg.dt > 0.0) || cfg.dt > dt_max) {
        std::ostringstream msg;
        msg << "simulate: dt = " << cfg.dt << " violates the stability guard dt <= " << dt_max;
        throw solver_error(msg.str());
    }
    if (cfg.segments < 1) throw config_error("simulate: segments must be >= 1");
    const long long M = (long long)(cfg.duration / cfg.dt);
    if (M < 2LL * cfg.segments) {
        std::ostringstream msg;
        msg << "simulate: insufficient samples (" << M << ") for " << cfg.segments
            << " Welch segments; need at least " << 2LL * cfg.segments;
        throw solver_error(msg.str());
    }
}

} // namespace

double max_stable_dt(const LaserParams& p, const DerivedParams&, double N, double n) {
    (void)N;
    const double w_ro = 2.0 * p.Omega0 * std::sqrt(p.f * std::max(0.0, n));
    const double gP = p.P + 1.0;
    return 0.05 / (2.0 * p.kappa + p.gamma_perp + gP + w_ro);
}

PSDEstimate welch_psd(const Eigen::ArrayXd& samples, double dt, int segments,
                      const std::string& window) {
    if (segments < 1) throw config_error("welch_psd: segments must be >= 1");
    if (samples.size() < 2LL * segments) {
        std::ostringstream msg;
        msg << "welch_psd: insufficient samples (" << samples.size() << ") for "
            << segments << " segments; need at least " << 2LL * segments;
        throw solver_error(msg.str());
    }
    const int L = int(samples.size() / segments);
    WelchAccumulator acc(L, dt, window);
    for (Eigen::Index i = 0; i < Eigen::Index(L) * segments; ++i) acc.add(samples[i]);
    return acc.finalize();
}

MCResult simulate_A(const LaserParams& p, const DerivedParams& d, double N,
                    const MCConfig& cfg) {
    check_config(p, d, N, 0.0, cfg);
    const double dt = cfg.dt;
    const long long M = (long long)(cfg.duration / dt);
    const int L = int(M / cfg.segments);
    auto rng_a = channel_rng(cfg.seed, 0);
    auto rng_v = channel_rng(cfg.seed, 1);
    std::normal_distribution<double> gauss;
    const double sig_a = cfg.noise_scale * std::sqrt(0.5 * p.kappa * dt);
    const double sig_v = cfg.noise_scale * std::sqrt(0.25 * p.f * p.gamma_perp * p.N0 * dt);
    const double drift_va = p.Omega0 * p.f * N;
    const double x0 = cfg.noise_scale == 0.0 ? 1.0 : 0.0;
    double a = x0, v = x0;
    const long long burn = (long long)(cfg.burn_in / dt);
    for (long long i = 0; i < burn; ++i) {
        const double na = sig_a * gauss(rng_a), nv = sig_v * gauss(rng_v);
        const double a1 = a + dt * (-p.kappa * a + p.Omega0 * v) + na;
        v += dt * (drift_va * a - 0.5 * p.gamma_perp * v) + nv;
        a = a1;
    }
    WelchAccumulator acc(L, dt, cfg.window);
    for (long long i = 0; i < (long long)L * cfg.segments; ++i) {
        const double na = sig_a * gauss(rng_a), nv = sig_v * gauss(rng_v);
        const double a1 = a + dt * (-p.kappa * a + p.Omega0 * v) + na;
        v += dt * (drift_va * a - 0.5 * p.gamma_perp * v) + nv;
        a = a1;
        acc.add(a);
    }
    MCResult r;
    r.a = acc.finalize();
    r.dt = dt;
    r.seed = cfg.seed;
    return r;
}

MCResult simulate_S(const LaserParams& p, const DerivedParams& d, double N, double n,
                    const MCConfig& cfg, bool want_dNe_psd) {
    check_config(p, d, N, n, cfg);
    const double dt = cfg.dt;
    const long long M = (long long)(cfg.duration / dt);
    const int L = int(M / cfg.segments);
    auto rng_a = channel_rng(cfg.seed, 2);
    auto rng_v = channel_rng(cfg.seed, 3);
    auto rng_e = channel_rng(cfg.seed, 4);
    std::normal_distribution<double> gauss;
    const double Ne = excited_from_inversion(N, p.N0);
    const double Ng = ground_from_inversion(N, p.N0);
    const double sq = std::sqrt(std::max(0.0, n));
    const double gP = p.P + 1.0;
    const double sig_a = cfg.noise_scale * std::sqrt(0.5 * p.kappa * dt);
    const double sig_v = cfg.noise_scale * std::sqrt(0.25 * p.f * p.gamma_perp * p.N0 * dt);
    const double sig_e = cfg.noise_scale * std::sqrt((p.P * Ng + Ne) * dt);
    const double x0 = cfg.noise_scale == 0.0 ? 1.0 : 0.0;
    double a = x0, v = x0, e = x0;
    auto step = [&](double& sa, double& sv, double& se) {
        const double na = sig_a * gauss(rng_a), nv = sig_v * gauss(rng_v),
                     ne = sig_e * gauss(rng_e);
        const double a1 = sa + dt * (-p.kappa * sa + p.Omega0 * sv) + na;
        const double v1 = sv + dt * (p.Omega0 * p.f * N * sa - 0.5 * p.gamma_perp * sv +
                                     2.0 * p.Omega0 * p.f * sq * se) + nv;
        const double e1 = se + dt * (-2.0 * sq * (p.Omega0 * sv + p.kappa * sa) - gP * se) + ne;
        sa = a1; sv = v1; se = e1;
    };
    const long long burn = (long long)(cfg.burn_in / dt);
    for (long long i = 0; i < burn; ++i) step(a, v, e);
    WelchAccumulator acc(L, dt, cfg.window);
    std::unique_ptr<WelchAccumulator> acc_e;
    if (want_dNe_psd) acc_e = std::make_unique<WelchAccumulator>(L, dt, cfg.window);
    for (long long i = 0; i < (long long)L * cfg.segments; ++i) {
        step(a, v, e);
        acc.add(a);
        if (acc_e) acc_e->add(e);
    }
    MCResult r;
    r.a = acc.finalize();
    if (acc_e) r.dNe = acc_e->finalize();
    r.dt = dt;
    r.seed = cfg.seed;
    return r;
}

Eigen::ArrayXd coherence(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                         double dt, int segments, const std::string& window) {
    (void)dt;
    if (x.size() != y.size()) throw config_error("coherence: series lengths differ");
    if (segments < 2) throw config_error("coherence: need at least 2 segments");
    const int L = int(x.size() / segments);
    if (L < 2) throw solver_error("coherence: insufficient samples");
    const Eigen::ArrayXd w = window_samples(window, L);
    const int nbin = L / 2 + 1;
    Eigen::ArrayXcd cross = Eigen::ArrayXcd::Zero(nbin);
    Eigen::ArrayXd px = Eigen::ArrayXd::Zero(nbin), py = Eigen::ArrayXd::Zero(nbin);
    Eigen::FFT<double> fft;
    std::vector<double> bx(L), by(L);
    std::vector<std::complex<double>> X, Y;
    for (int s = 0; s < segments; ++s) {
        for (int j = 0; j < L; ++j) {
            bx[j] = x[(long long)s * L + j] * w[j];
            by[j] = y[(long long)s * L + j] * w[j];
        }
        fft.fwd(X, bx);
        fft.fwd(Y, by);
        for (int k = 0; k < nbin; ++k) {
            cross[k] += X[k] * std::conj(Y[k]);
            px[k] += std::norm(X[k]);
            py[k] += std::norm(Y[k]);
        }
    }
    Eigen::ArrayXd c(nbin);
    for (int k = 0; k < nbin; ++k)
        c[k] = std::norm(cross[k]) / std::max(1e-300, px[k] * py[k]);
    return c;
}

double coherence_null_threshold(int segments, double p_tail) {
    if (segments < 2) throw config_error("coherence_null_threshold: need >= 2 segments");
    return 1.0 - std::pow(p_tail, 1.0 / (segments - 1.0));
}

double psd_rel_rms(const PSDEstimate& psd, const Eigen::ArrayXd& analytic,
                   double omega_max) {
    if (psd.values.size() != analytic.size())
        throw config_error("psd_rel_rms: grid size mismatch");
    double se2 = 0.0;
    Eigen::Index used = 0;
    for (Eigen::Index i = 0; i < psd.omega.size(); ++i) {
        if (psd.omega[i] > omega_max) break;
        const double e = (psd.values[i] - analytic[i]) / analytic[i];
        se2 += e * e;
        ++used;
    }
    if (used == 0) throw config_error("psd_rel_rms: no bins below omega_max");
    return std::sqrt(se2 / double(used));
}

void dump_trajectory(const std::string& path_bin, const LaserParams& p,
                     const DerivedParams& d, double N, double n, bool s_system,
                     const MCConfig& cfg) {
    check_config(p, d, N, s_system ? n : 0.0, cfg);
    const double dt = cfg.dt;
    const long long M = (long long)(cfg.duration / dt);
    std::ofstream os(path_bin, std::ios::binary);
    if (!os) throw config_error("dump_trajectory: cannot open " + path_bin);
    std::normal_distribution<double> gauss;
    long long rows = 0;
    if (s_system) {
        auto rng_a = channel_rng(cfg.seed, 2);
        auto rng_v = channel_rng(cfg.seed, 3);
        auto rng_e = channel_rng(cfg.seed, 4);
        const double Ne = excited_from_inversion(N, p.N0);
        const double Ng = ground_from_inversion(N, p.N0);
        const double sq = std::sqrt(std::max(0.0, n));
        const double gP = p.P + 1.0;
        const double sig_a = cfg.noise_scale * std::sqrt(0.5 * p.kappa * dt);
        const double sig_v = cfg.noise_scale * std::sqrt(0.25 * p.f * p.gamma_perp * p.N0 * dt);
        const double sig_e = cfg.noise_scale * std::sqrt((p.P * Ng + Ne) * dt);
        double a = 0.0, v = 0.0, e = 0.0;
        for (long long i = 0; i < M; ++i) {
            const double a1 = a + dt * (-p.kappa * a + p.Omega0 * v) + sig_a * gauss(rng_a);
            const double v1 = v + dt * (p.Omega0 * p.f * N * a - 0.5 * p.gamma_perp * v +
                                        2.0 * p.Omega0 * p.f * sq * e) + sig_v * gauss(rng_v);
            const double e1 = e + dt * (-2.0 * sq * (p.Omega0 * v + p.kappa * a) - gP * e) +
                              sig_e * gauss(rng_e);
            a = a1; v = v1; e = e1;
            const double row[4] = {i * dt, a, v, e};
            os.write(reinterpret_cast<const char*>(row), sizeof(row));
            ++rows;
        }
    } else {
        auto rng_a = channel_rng(cfg.seed, 0);
        auto rng_v = channel_rng(cfg.seed, 1);
        const double sig_a = cfg.noise_scale * std::sqrt(0.5 * p.kappa * dt);
        const double sig_v = cfg.noise_scale * std::sqrt(0.25 * p.f * p.gamma_perp * p.N0 * dt);
        double a = 0.0, v = 0.0;
        for (long long i = 0; i < M; ++i) {
            const double a1 = a + dt * (-p.kappa * a + p.Omega0 * v) + sig_a * gauss(rng_a);
            v += dt * (p.Omega0 * p.f * N * a - 0.5 * p.gamma_perp * v) + sig_v * gauss(rng_v);
            a = a1;
            const double row[3] = {i * dt, a, v};
            os.write(reinterpret_cast<const char*>(row), sizeof(row));
            ++rows;
        }
    }
    os.close();
    nlohmann::json meta;
    meta["columns"] = s_system ? nlohmann::json{"time", "a_S", "v_S", "dNe"}
                               : nlohmann::json{"time", "a_A", "v_A"};
    meta["dtype"] = "float64";
    meta["layout"] = "row-major";
    meta["rows"] = rows;
    meta["dt"] = dt;
    meta["seed"] = cfg.seed;
    meta["system"] = s_system ? "S" : "A";
    meta["N"] = N;
    meta["n"] = n;
    meta["params"] = {{"kappa", p.kappa}, {"gamma_perp", p.gamma_perp},
                      {"Omega0", p.Omega0}, {"f", p.f}, {"N0", p.N0}, {"P", p.P}};
    std::ofstream js(path_bin + ".json");
    if (!js) throw config_error("dump_trajectory: cannot open " + path_bin + ".json");
    js << meta.dump(2) << "\n";
}

} // namespace srl
