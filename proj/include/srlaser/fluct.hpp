#pragma once
#include "srlaser/params.hpp"
#include "srlaser/spectrum.hpp"
#include <string>
#include <vector>

namespace srl {

// Spectra and steady state with population fluctuations included.
// The optical spectrum splits into a narrow field-fluctuation part n_A and a
// broad amplitude/population part n_S; the full spectrum combines them with
// the no-fluctuation core.

// Narrow (phase-diffusion) part at inversion N; pole at N = Nth.
double nA_spectrum(const LaserParams& p, const DerivedParams& d, double N, double w);

// (1/2pi) integral of nA_spectrum, closed form; pole at N = Nth.
double nA_total(const LaserParams& p, const DerivedParams& d, double N);

// Broad part at inversion N with photon number n and pump P (p.P).
double nS_spectrum(const LaserParams& p, const DerivedParams& d, double N, double n, double w);

// (1/2pi) integral of nS_spectrum via a Lyapunov solve of the linearized
// amplitude/population system (exact, no quadrature).
double nS_total(const LaserParams& p, const DerivedParams& d, double N, double n);

// Cross-quadrature combination 2 nA - n_nofluct (w^-2 tail coefficient kappa).
double nAS_spectrum(const LaserParams& p, const DerivedParams& d, double N, double w);

// Full optical spectrum n_S + (n_nofluct - n_A); its w^-2 tails cancel and it
// integrates exactly to the photon number.  May go slightly negative in
// crossover regions; values are reported as computed, not clamped.
double full_spectrum(const LaserParams& p, const DerivedParams& d, double N, double n, double w);

// Photon number implied by energy conservation at inversion N (clamped at 0).
double photon_number_from_inversion(const LaserParams& p, const DerivedParams& d, double N);

// Energy-balance residual at inversion N: nS_tot + nA_tot - 1/2 minus the
// pump-side photon number.  Evaluated by quadrature of the spectra (contract
// form); throws outside the admissible inversion window.
double balance_residual(const LaserParams& p, const DerivedParams& d, double N);

struct SteadyState {
    double N;            // inversion
    double n;            // photon number  (= nS_tot + nA_tot - 1/2)
    double nS_tot;       // broad-part photon number
    double nA_tot;       // narrow-part photon number
    double omega_ro;     // relaxation-oscillation frequency sqrt(4 Omega0^2 f n)
};

// Steady state with population fluctuations: root of the energy balance in N,
// located by a bracketing scan (>= 512 points) plus Brent refinement.
// Uses closed-form variance totals inside the scan (machine-identical to the
// quadrature form) and truncates the scan at the drift-stability boundary,
// where the balance residual diverges to +inf and the Lyapunov form stops
// being meaningful.  Diagnostic error on zero or multiple sign changes.
SteadyState solve_steady(const LaserParams& p, const DerivedParams& d, int scan_points = 512);

// High-pump closed form mapped to a SteadyState (no balance solve).
SteadyState highpump_closed_form(const LaserParams& p, const DerivedParams& d);

// Linewidth deep above threshold from the steady state (power form with
// population fluctuations' photon number); n = 0 is an error.
double linewidth_high(const LaserParams& p, const DerivedParams& d, const SteadyState& s);

// Intensity-fluctuation (radio-frequency) spectrum: 4 n nS(w).
double rf_spectrum(const LaserParams& p, const DerivedParams& d, const SteadyState& s, double w);

enum class Region { led, intermediate, lasing };
std::string to_string(Region r);

// Classify by proximity (5%) of the steady inversion to the no-fluctuation
// closed form (LED side) or the high-pump closed form (lasing side).
Region classify_region(const LaserParams& p, const DerivedParams& d, const SteadyState& s);

// Evaluate a pointwise spectrum over a grid.
template <typename F>
Spectrum sample_spectrum(const Eigen::ArrayXd& grid, F&& f) {
    Spectrum s;
    s.omega = grid;
    s.values.resize(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) s.values[i] = f(grid[i]);
    return s;
}

} // namespace srl
