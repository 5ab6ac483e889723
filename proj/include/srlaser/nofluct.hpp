#pragma once
#include "srlaser/params.hpp"
#include <optional>
#include <string>

namespace srl {

// Steady state and optical spectrum with population fluctuations switched off
// (spontaneous emission retained).  Valid for N < Nth.

struct NofluctState {
    double N;              // inversion
    double n;              // photon number
    bool used_other_branch = false;  // quadratic branch swapped to stay in [-N0, Nth)
    std::string warning;   // populated when used_other_branch
};

// Closed-form steady state (quadratic in N).  The -sqrt(Q) branch of the
// quartic-free reduction is physical; if it leaves [-N0, Nth) the other branch
// is taken and flagged.
NofluctState solve_N_nofluct(const LaserParams& p, const DerivedParams& d);

// High-pump variant of the closed form (spontaneous-emission bookkeeping at
// the clamped inversion); accurate deep above threshold.  Reported literally
// (no admissible-window fallback): at low pump it strays far from the state.
NofluctState solve_N_highpump(const LaserParams& p, const DerivedParams& d);

// Residual of the defining quadratic for solve_N_nofluct at inversion N.
double nofluct_residual(const LaserParams& p, const DerivedParams& d, double N);

// Spectral density at offset w from line center for inversion N.
// Requires N < Nth (pole at threshold).
double spectrum_nofluct(const LaserParams& p, const DerivedParams& d, double N, double w);

// (1/2pi) integral of spectrum_nofluct, in closed form.
double photon_number_nofluct(const LaserParams& p, const DerivedParams& d, double N);

// True iff the spectrum at inversion N has two symmetric peaks (r > 1, i.e. N < -Nc).
bool two_peaked(const DerivedParams& d, double N);

// Boundary pump where the two-peak regime ends: N(Pc) = -Nc, with two peaks
// for P < Pc.  Empty result when Nc >= N0 (no pump can split the spectrum).
struct PcResult {
    std::optional<double> Pc;
    std::string note;      // reason when Pc is absent
};
PcResult solve_Pc(const LaserParams& p, const DerivedParams& d);

enum class LinewidthMethod { exact, first_order, power_form_low, power_form_high };

// FWHM of the no-population-fluctuation line for inversion N.
//   exact          : closed form, any single-peaked state
//   first_order    : gamma_c (1 - N/Nth), small-r limit of exact
//   power_form_low : gamma_c^2 (Ne/Nth) / (2 kappa n), n and Ne computed from N
//   power_form_high: gamma_c^2 Nsp / (2 kappa n), Nsp = (N0+Nth)/(2 Nth)
// exact and first_order require a single-peaked spectrum (physics_error
// otherwise: FWHM undefined for split spectrum).
double linewidth_nofluct(const LaserParams& p, const DerivedParams& d, double N,
                         LinewidthMethod method);

// The exact-form expression evaluated without the single-peak guard (used for
// sweep outputs where the formula is plotted through its whole domain).
double linewidth_exact_formula(const LaserParams& p, const DerivedParams& d, double N);

// Residual commutator defect 1 - <[a, a+]> of the truncated model at photon
// number n (diagnostic of where the no-fluctuation truncation strains).
double commutator_defect(const LaserParams& p, const DerivedParams& d, double n);

} // namespace srl
