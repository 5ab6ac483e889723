#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srlaser/errors.hpp"
#include "srlaser/fluct.hpp"
#include "srlaser/mcsim.hpp"
#include "srlaser/params.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace srl;

namespace {

LaserParams base(double gamma_perp, double P) {
    LaserParams p;
    p.kappa = 50.0;
    p.gamma_perp = gamma_perp;
    p.Omega0 = 34.0;
    p.f = 0.5;
    p.N0 = 100.0;
    p.P = P;
    return p;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

// (1/2pi) integral of a one-sided PSD over the full line: bins 1..n-2 appear
// twice (positive and negative frequency), the DC and Nyquist bins once.
double psd_integral(const PSDEstimate& psd) {
    const Eigen::Index n = psd.values.size();
    const double dw = psd.omega[1] - psd.omega[0];
    double s = psd.values[0] + psd.values[n - 1];
    for (Eigen::Index k = 1; k < n - 1; ++k) s += 2.0 * psd.values[k];
    return s * dw / (2.0 * M_PI);
}

// largest omega of the contiguous low-frequency band where the analytic
// spectrum stays above frac of its grid peak (matches psd_rel_rms's [0, wmax])
double band_edge(const PSDEstimate& psd, const Eigen::ArrayXd& analytic, double frac) {
    const double floor_val = frac * analytic.maxCoeff();
    double wmax = psd.omega[0];
    for (Eigen::Index k = 0; k < analytic.size(); ++k) {
        if (analytic[k] < floor_val) break;
        wmax = psd.omega[k];
    }
    return wmax;
}

// fraction of in-band bins whose deviation from the analytic value is within
// 3 standard errors
double inband_z_ok(const PSDEstimate& psd, const Eigen::ArrayXd& analytic, double wmax) {
    int n = 0, ok = 0;
    for (Eigen::Index k = 0; k < analytic.size(); ++k) {
        if (psd.omega[k] > wmax) break;
        ++n;
        if (std::abs(psd.values[k] - analytic[k]) < 3.0 * psd.stderr_[k]) ++ok;
    }
    REQUIRE(n > 0);
    return double(ok) / n;
}

Eigen::ArrayXd analytic_on_grid(const PSDEstimate& psd, const std::function<double(double)>& f) {
    Eigen::ArrayXd out(psd.omega.size());
    for (Eigen::Index k = 0; k < psd.omega.size(); ++k) out[k] = f(psd.omega[k]);
    return out;
}

// frozen working points used throughout (gamma_perp=50 P=16 and fig3's 700/40)
constexpr double N_p16 = -1.1038156505608834;
constexpr double n_p16 = 7.5938243339170537;
constexpr double N_f3 = 28.16397855360061;
constexpr double n_f3 = 13.72638439639682;

} // namespace

TEST_CASE("welch recovers an exact-bin sinusoid with a rect window") {
    const int L = 4096, K = 8, m = 37;
    const double dt = 0.02, A = 1.7;
    Eigen::ArrayXd x(L * K);
    for (int j = 0; j < L * K; ++j) x[j] = A * std::sin(2.0 * M_PI * m * j / double(L));

    PSDEstimate psd = welch_psd(x, dt, K, "rect");
    CHECK(psd.omega.size() == L / 2 + 1);
    CHECK(psd.values.size() == psd.omega.size());
    CHECK(psd.omega[0] == 0.0);
    CHECK(close(psd.omega[1], 2.0 * M_PI / (L * dt), 1e-12));
    CHECK(close(psd.omega[m], 2.0 * M_PI * m / (L * dt), 1e-12));

    // all power in bin m: S_m = dt A^2 L / 4, everything else is fp leakage
    CHECK(close(psd.values[m], dt * A * A * L / 4.0, 1e-9));
    double off_peak = 0.0;
    for (Eigen::Index k = 0; k < psd.values.size(); ++k)
        if (k != m) off_peak = std::max(off_peak, psd.values[k]);
    CHECK(off_peak < 1e-12 * psd.values[m]);

    // Parseval: (1/2pi) integral equals the time-domain variance A^2/2
    CHECK(close(psd_integral(psd), A * A / 2.0, 1e-9));
    CHECK(close(psd.variance, A * A / 2.0, 1e-9));
    CHECK((psd.values >= 0.0).all());
}

TEST_CASE("welch of white noise is flat at dt times the variance") {
    const int L = 512, K = 64;
    const double dt = 0.05, sigma = 1.3;
    std::mt19937_64 rng(777);
    std::normal_distribution<double> gauss(0.0, sigma);
    Eigen::ArrayXd x(L * K);
    for (int j = 0; j < L * K; ++j) x[j] = gauss(rng);

    PSDEstimate psd = welch_psd(x, dt, K, "rect");
    CHECK(close(psd.values.mean(), dt * sigma * sigma, 0.02));
    CHECK(close(psd_integral(psd), psd.variance, 0.02));

    // per-bin scatter matches the reported standard errors
    int ok = 0;
    for (Eigen::Index k = 0; k < psd.values.size(); ++k)
        if (std::abs(psd.values[k] - dt * sigma * sigma) < 3.0 * psd.stderr_[k]) ++ok;
    CHECK(double(ok) / double(psd.values.size()) > 0.95);

    // hann window keeps the integral-variance identity within leakage error
    PSDEstimate psd_h = welch_psd(x, dt, K, "hann");
    CHECK(close(psd_integral(psd_h), psd_h.variance, 0.02));
}

TEST_CASE("welch of an Ornstein-Uhlenbeck process matches the Lorentzian oracle") {
    // dx = -theta x dt + sigma dW integrated by the same explicit scheme the
    // simulator uses; S(w) = sigma^2/(theta^2 + w^2), variance sigma^2/(2 theta)
    const double theta = 1.0, sigma2 = 2.0, dt = 0.01;
    const int L = 2048, K = 1024;
    std::mt19937_64 rng(20240818);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sig_step = std::sqrt(sigma2 * dt);
    double xcur = 0.0;
    for (int j = 0; j < 800; ++j) xcur += -theta * xcur * dt + sig_step * gauss(rng);
    Eigen::ArrayXd x(L * K);
    for (int j = 0; j < L * K; ++j) {
        xcur += -theta * xcur * dt + sig_step * gauss(rng);
        x[j] = xcur;
    }

    PSDEstimate psd = welch_psd(x, dt, K, "hann");
    Eigen::ArrayXd ref = analytic_on_grid(
        psd, [&](double w) { return sigma2 / (theta * theta + w * w); });
    const double wmax = band_edge(psd, ref, 0.01);
    CHECK(wmax > 5.0 * theta);
    CHECK(psd_rel_rms(psd, ref, wmax) < 0.05);
    CHECK(inband_z_ok(psd, ref, wmax) > 0.9);
    CHECK(close(psd.variance, sigma2 / (2.0 * theta), 0.03));
    CHECK(close(psd_integral(psd), psd.variance, 0.01));
}

TEST_CASE("welch input guards") {
    Eigen::ArrayXd x = Eigen::ArrayXd::Zero(64);
    CHECK_THROWS_AS(welch_psd(x, 0.01, 64, "hann"), solver_error);
    CHECK_THROWS_AS(welch_psd(x, 0.01, 0, "hann"), config_error);
    CHECK_THROWS_WITH_AS(welch_psd(x, 0.01, 4, "boxcar"), doctest::Contains("window"),
                         config_error);
}

TEST_CASE("psd_rel_rms guards and band restriction") {
    Eigen::ArrayXd x(256);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < 256; ++j) x[j] = gauss(rng);
    PSDEstimate psd = welch_psd(x, 0.1, 4, "rect");

    Eigen::ArrayXd wrong_size(3);
    wrong_size << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(psd_rel_rms(psd, wrong_size, 1.0), config_error);
    CHECK_THROWS_AS(psd_rel_rms(psd, psd.values, -1.0), config_error);

    // restricting to the first bin only compares that bin
    Eigen::ArrayXd ref = psd.values;
    ref[0] *= 2.0;
    const double r = psd_rel_rms(psd, ref, 0.5 * psd.omega[1]);
    CHECK(close(r, 0.5, 1e-12));
}

TEST_CASE("coherence null threshold") {
    CHECK(close(coherence_null_threshold(16), 1.0 - std::pow(0.0027, 1.0 / 15.0), 1e-12));
    CHECK(close(coherence_null_threshold(2, 0.5), 0.5, 1e-12));
    CHECK(coherence_null_threshold(64) < coherence_null_threshold(16));
    CHECK(coherence_null_threshold(64) > 0.0);
    CHECK(coherence_null_threshold(64) < 1.0);
}

TEST_CASE("with the noise switched off both systems decay to zero") {
    LaserParams p = base(50.0, 16.0);
    DerivedParams d = derive(p);

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N_p16, n_p16);
    cfg.duration = 2.5;
    // the S system's weak relaxation mode decays at ~0.5 here (the explicit
    // scheme shifts its damping down), so the burn must be generous
    cfg.burn_in = 80.0;
    cfg.segments = 4;
    cfg.noise_scale = 0.0;

    MCResult ra = simulate_A(p, d, N_p16, cfg);
    CHECK(ra.a.variance <= 1e-20);
    CHECK(ra.a.values.maxCoeff() <= 1e-18);

    MCResult rs = simulate_S(p, d, N_p16, n_p16, cfg);
    CHECK(rs.a.variance <= 1e-20);
    CHECK(rs.a.values.maxCoeff() <= 1e-18);
}

TEST_CASE("identical seeds reproduce bitwise; seeds and channels decorrelate") {
    LaserParams p = base(50.0, 16.0);
    DerivedParams d = derive(p);

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N_p16, n_p16);
    cfg.duration = 1024 * 8 * cfg.dt;
    cfg.burn_in = 0.5;
    cfg.segments = 8;
    cfg.seed = 7;

    MCResult r1 = simulate_A(p, d, N_p16, cfg);
    MCResult r2 = simulate_A(p, d, N_p16, cfg);
    CHECK((r1.a.values == r2.a.values).all());
    CHECK((r1.a.stderr_ == r2.a.stderr_).all());
    CHECK(r1.a.variance == r2.a.variance);
    CHECK(r1.seed == 7);

    cfg.seed = 8;
    MCResult r3 = simulate_A(p, d, N_p16, cfg);
    CHECK_FALSE((r1.a.values == r3.a.values).all());

    // the S system draws from separate noise channels at the same seed
    cfg.seed = 7;
    MCResult r4 = simulate_S(p, d, N_p16, n_p16, cfg);
    CHECK_FALSE((r1.a.values == r4.a.values).all());
}

TEST_CASE("A-system spectrum matches the narrow analytic part in band") {
    LaserParams p = base(50.0, 16.0);
    DerivedParams d = derive(p);

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N_p16, n_p16);
    cfg.segments = 128;
    cfg.duration = double(cfg.segments) * 16384 * cfg.dt;
    cfg.burn_in = 2.0;
    cfg.seed = 11;

    MCResult r = simulate_A(p, d, N_p16, cfg);
    Eigen::ArrayXd ref =
        analytic_on_grid(r.a, [&](double w) { return nA_spectrum(p, d, N_p16, w); });
    const double wmax = band_edge(r.a, ref, 0.01);
    CHECK(wmax > 10.0);
    CHECK(psd_rel_rms(r.a, ref, wmax) < 0.15);
    CHECK(inband_z_ok(r.a, ref, wmax) > 0.9);
    CHECK(close(r.a.variance, nA_total(p, d, N_p16), 0.05));
    CHECK((r.a.values >= 0.0).all());
    CHECK_FALSE(r.dNe.has_value());
}

TEST_CASE("S-system spectrum matches the broad analytic part in band") {
    // gamma_perp=700 P=40 working point: the relaxation sidebands sit inside
    // the band and the slow mode is damped fast enough for the step guard
    LaserParams p = base(700.0, 40.0);
    DerivedParams d = derive(p);

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N_f3, n_f3);
    cfg.segments = 96;
    cfg.duration = double(cfg.segments) * 16384 * cfg.dt;
    cfg.burn_in = 1.0;
    cfg.seed = 12;

    MCResult r = simulate_S(p, d, N_f3, n_f3, cfg);
    Eigen::ArrayXd ref =
        analytic_on_grid(r.a, [&](double w) { return nS_spectrum(p, d, N_f3, n_f3, w); });
    const double wmax = band_edge(r.a, ref, 0.01);
    CHECK(wmax > 50.0);
    CHECK(psd_rel_rms(r.a, ref, wmax) < 0.18);
    CHECK(inband_z_ok(r.a, ref, wmax) > 0.9);
    CHECK(close(r.a.variance, nS_total(p, d, N_f3, n_f3), 0.05));
}

TEST_CASE("S-system at zero photon number reproduces the narrow-part shape") {
    // with n = 0 the amplitude pair decouples from the population and its
    // drift and noise coincide with the phase pair's
    LaserParams p = base(50.0, 2.0);
    DerivedParams d = derive(p);
    const double N = -16.4718107156082;

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N, 0.0);
    cfg.segments = 128;
    cfg.duration = double(cfg.segments) * 8192 * cfg.dt;
    cfg.burn_in = 1.0;
    cfg.seed = 13;

    MCResult r = simulate_S(p, d, N, 0.0, cfg);
    Eigen::ArrayXd ref =
        analytic_on_grid(r.a, [&](double w) { return nA_spectrum(p, d, N, w); });
    const double wmax = band_edge(r.a, ref, 0.01);
    CHECK(psd_rel_rms(r.a, ref, wmax) < 0.15);
    CHECK(close(r.a.variance, nA_total(p, d, N), 0.05));
}

TEST_CASE("population spectrum integrates back to its own variance") {
    LaserParams p = base(700.0, 40.0);
    DerivedParams d = derive(p);

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N_f3, n_f3);
    cfg.segments = 64;
    cfg.duration = double(cfg.segments) * 8192 * cfg.dt;
    cfg.burn_in = 1.0;
    cfg.seed = 14;
    cfg.window = "rect";

    MCResult r = simulate_S(p, d, N_f3, n_f3, cfg, true);
    REQUIRE(r.dNe.has_value());
    const PSDEstimate& pop = *r.dNe;
    CHECK((pop.values >= 0.0).all());
    CHECK(pop.variance > 0.0);
    CHECK(close(psd_integral(pop), pop.variance, 0.02));
}

TEST_CASE("halving the step leaves the in-band spectrum statistically unchanged") {
    LaserParams p = base(50.0, 16.0);
    DerivedParams d = derive(p);

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N_p16, n_p16);
    cfg.segments = 64;
    cfg.duration = double(cfg.segments) * 8192 * cfg.dt;
    cfg.burn_in = 2.0;
    cfg.seed = 21;
    MCResult r1 = simulate_A(p, d, N_p16, cfg);

    cfg.dt /= 2.0; // same duration: twice the samples, identical bin spacing
    cfg.seed = 22;
    MCResult r2 = simulate_A(p, d, N_p16, cfg);
    REQUIRE(close(r2.a.omega[1], r1.a.omega[1], 1e-12));

    Eigen::ArrayXd ref =
        analytic_on_grid(r1.a, [&](double w) { return nA_spectrum(p, d, N_p16, w); });
    const double wmax = band_edge(r1.a, ref, 0.01);
    double z2 = 0.0;
    int nb = 0;
    for (Eigen::Index k = 0; k < r1.a.values.size(); ++k) {
        if (r1.a.omega[k] > wmax) break;
        const double se = std::hypot(r1.a.stderr_[k], r2.a.stderr_[k]);
        const double z = (r1.a.values[k] - r2.a.values[k]) / se;
        z2 += z * z;
        ++nb;
    }
    REQUIRE(nb > 10);
    CHECK(std::sqrt(z2 / nb) < 2.0);
}

TEST_CASE("trajectory dumps round-trip and the two systems are incoherent") {
    LaserParams p = base(50.0, 16.0);
    DerivedParams d = derive(p);

    MCConfig cfg;
    cfg.dt = 0.999 * max_stable_dt(p, d, N_p16, n_p16);
    cfg.duration = 131072 * cfg.dt;
    cfg.burn_in = 0.0;
    cfg.segments = 32;
    cfg.seed = 5;

    const std::string path_a = "mc_dump_test_A.bin";
    const std::string path_s = "mc_dump_test_S.bin";
    dump_trajectory(path_a, p, d, N_p16, n_p16, false, cfg);
    dump_trajectory(path_s, p, d, N_p16, n_p16, true, cfg);

    auto read_sidecar = [](const std::string& path) {
        std::ifstream is(path + ".json");
        REQUIRE(is.good());
        nlohmann::json j;
        is >> j;
        return j;
    };
    nlohmann::json ja = read_sidecar(path_a);
    nlohmann::json js = read_sidecar(path_s);
    CHECK(ja["system"] == "A");
    CHECK(js["system"] == "S");
    CHECK(ja["columns"] == nlohmann::json({"time", "a_A", "v_A"}));
    CHECK(js["columns"] == nlohmann::json({"time", "a_S", "v_S", "dNe"}));
    CHECK(ja["dtype"] == "float64");
    CHECK(ja["layout"] == "row-major");
    CHECK(ja["dt"].get<double>() == cfg.dt);
    CHECK(ja["seed"].get<std::uint64_t>() == 5);

    auto read_column = [](const std::string& path, int ncols, int col,
                          std::size_t rows) {
        std::ifstream is(path, std::ios::binary);
        REQUIRE(is.good());
        std::vector<double> row(ncols);
        Eigen::ArrayXd out(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            is.read(reinterpret_cast<char*>(row.data()), ncols * sizeof(double));
            REQUIRE(is.good());
            out[Eigen::Index(r)] = row[col];
        }
        return out;
    };
    const auto rows_a = ja["rows"].get<std::size_t>();
    const auto rows_s = js["rows"].get<std::size_t>();
    CHECK(rows_a > 100000);

    // file size must match the declared shape exactly
    std::ifstream fa(path_a, std::ios::binary | std::ios::ate);
    CHECK(std::size_t(fa.tellg()) == rows_a * 3 * sizeof(double));
    fa.close();

    Eigen::ArrayXd t_col = read_column(path_a, 3, 0, 3);
    CHECK(t_col[0] == 0.0);
    CHECK(close(t_col[1], cfg.dt, 1e-12));
    CHECK(close(t_col[2], 2.0 * cfg.dt, 1e-12));

    const std::size_t rows = std::min(rows_a, rows_s);
    Eigen::ArrayXd a_series = read_column(path_a, 3, 1, rows);
    Eigen::ArrayXd s_series = read_column(path_s, 4, 1, rows);
    CHECK(a_series.abs().maxCoeff() > 0.0);

    const int K = 32;
    const std::size_t usable = (rows / K) * K;
    Eigen::ArrayXd msc = coherence(a_series.head(usable), s_series.head(usable),
                                   cfg.dt, K, "hann");
    const double thresh = coherence_null_threshold(K);
    const double frac_below = double((msc < thresh).count()) / double(msc.size());
    CHECK(frac_below > 0.97);

    // trivially coherent input saturates the estimator
    Eigen::ArrayXd self = coherence(a_series.head(usable), a_series.head(usable),
                                    cfg.dt, K, "hann");
    CHECK(self.minCoeff() > 0.999);

    std::remove(path_a.c_str());
    std::remove(path_s.c_str());
    std::remove((path_a + ".json").c_str());
    std::remove((path_s + ".json").c_str());
}

TEST_CASE("coherence input guards") {
    Eigen::ArrayXd x = Eigen::ArrayXd::Zero(64);
    Eigen::ArrayXd y = Eigen::ArrayXd::Zero(32);
    CHECK_THROWS_AS(coherence(x, y, 0.01, 4, "hann"), config_error);
    CHECK_THROWS_AS(coherence(x, x, 0.01, 1, "hann"), config_error);
}

TEST_CASE("step-size and stability guards refuse bad configurations") {
    LaserParams p = base(50.0, 16.0);
    DerivedParams d = derive(p);

    const double dmax = max_stable_dt(p, d, N_p16, n_p16);
    const double rates = 2.0 * p.kappa + p.gamma_perp + (p.P + 1.0) +
                         2.0 * p.Omega0 * std::sqrt(p.f * n_p16);
    CHECK(close(dmax, 0.05 / rates, 1e-12));

    MCConfig cfg;
    // each system applies the guard with its own photon number: n = 0 for the
    // phase pair, the working-point n for the amplitude/population system
    cfg.dt = 1.5 * max_stable_dt(p, d, N_p16, 0.0);
    cfg.duration = 10.0;
    cfg.burn_in = 0.1;
    cfg.segments = 4;
    CHECK_THROWS_AS(simulate_A(p, d, N_p16, cfg), solver_error);
    cfg.dt = 1.5 * dmax;
    CHECK_THROWS_AS(simulate_S(p, d, N_p16, n_p16, cfg), solver_error);

    cfg.dt = 0.5 * dmax;
    CHECK_THROWS_WITH_AS(simulate_A(p, d, d.Nth, cfg), doctest::Contains("unstable"),
                         solver_error);
    CHECK_THROWS_AS(simulate_S(p, d, d.Nth * 1.01, n_p16, cfg), solver_error);

    cfg.duration = 4.0 * cfg.dt; // fewer than 2 samples per segment
    CHECK_THROWS_AS(simulate_A(p, d, N_p16, cfg), solver_error);

    cfg.duration = 10.0;
    cfg.segments = 0;
    CHECK_THROWS_AS(simulate_A(p, d, N_p16, cfg), config_error);
}
