#pragma once
#include "srlaser/fluct.hpp"
#include "srlaser/noise.hpp"
#include "srlaser/params.hpp"
#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace srl {

// Monte-Carlo integration of the linearized Langevin systems at a fixed
// working point, used to validate the analytic spectra.

struct MCConfig {
    double dt;                 // integrator step (units 1/gamma_par)
    double duration;           // post-burn-in integration time
    double burn_in;            // discarded initial time
    std::uint64_t seed = 1;
    int segments = 256;        // Welch segments (non-overlapping)
    std::string window = "hann";   // "hann" or "rect"
    // multiplies every Langevin increment; 0 runs the pure drift from a unit
    // initial condition (validation knob: trajectories must decay to zero)
    double noise_scale = 1.0;
};

struct PSDEstimate {
    Eigen::ArrayXd omega;      // angular frequency bins (>= 0)
    Eigen::ArrayXd values;     // PSD, convention (1/2pi) integral = variance
    Eigen::ArrayXd stderr_;    // per-bin standard error from segment scatter
    double variance = 0.0;     // time-domain variance of the analyzed samples
};

// Welch PSD of a real series sampled at dt: non-overlapping segments, chosen
// window, S(w_k) = dt |FFT(w x)_k|^2 / sum(w^2).  Throws if fewer than
// segments * 2 samples are available.
PSDEstimate welch_psd(const Eigen::ArrayXd& samples, double dt, int segments,
                      const std::string& window);

struct MCResult {
    PSDEstimate a;                     // field-quadrature PSD
    std::optional<PSDEstimate> dNe;    // population PSD (S system, on request)
    double dt;
    std::uint64_t seed;
};

// Phase/antisymmetric quadrature pair (a_A, v_A) at inversion N.
MCResult simulate_A(const LaserParams& p, const DerivedParams& d, double N,
                    const MCConfig& cfg);

// Amplitude/symmetric system (a_S, v_S, dNe) at inversion N, photon number n.
MCResult simulate_S(const LaserParams& p, const DerivedParams& d, double N, double n,
                    const MCConfig& cfg, bool want_dNe_psd = false);

// Magnitude-squared coherence between two equally-sampled series, estimated
// over the same Welch segmentation.  Used to verify A/S noise independence.
Eigen::ArrayXd coherence(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                         double dt, int segments, const std::string& window);

// Chance level for coherence: with K segments, a fraction (1-p_tail) of bins
// of two independent series falls below 1 - p_tail^(1/(K-1)).
double coherence_null_threshold(int segments, double p_tail = 0.0027);

// Relative rms deviation between a measured PSD and analytic values on the
// same grid, restricted to bins with omega <= omega_max.  Bins near Nyquist
// carry O(1) discrete-time bias and must stay out of the comparison.
double psd_rel_rms(const PSDEstimate& psd, const Eigen::ArrayXd& analytic,
                   double omega_max);

// Raw-trajectory dump: rows of float64 (time, a, v[, dNe]) plus a JSON
// sidecar describing columns, dt, seed, and the working point.
void dump_trajectory(const std::string& path_bin, const LaserParams& p,
                     const DerivedParams& d, double N, double n, bool s_system,
                     const MCConfig& cfg);

// Step-size guard shared by both systems (throws solver_error if violated).
double max_stable_dt(const LaserParams& p, const DerivedParams& d, double N, double n);

} // namespace srl
