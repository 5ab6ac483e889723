#pragma once
#include <optional>
#include <string>

namespace srl {

// Physical (SI) description of the emitter/cavity system.  Everything the
// simulator needs is reduced to four dimensionless rate ratios plus N0.
struct PhysicalInputs {
    double lambda0;       // vacuum wavelength [m]
    double n_ref;         // refractive index
    double Vc;            // cavity mode volume [m^3]; if vc_in_cubic_wavelengths, in units of (lambda0/n_ref)^3
    bool vc_in_cubic_wavelengths = false;
    double N0;            // number of emitters
    double gamma_par;     // population decay rate [1/s]; sets the time unit
    double gamma_perp;    // polarization decay rate [1/s]
    double dipole;        // dipole moment [C m]
    double Q;             // cavity quality factor
    double f = 0.5;       // average emitter-mode coupling factor (dimensionless)
};

// Dimensionless working parameters; all rates in units of gamma_par.
struct LaserParams {
    double kappa;         // field (amplitude) decay rate
    double gamma_perp;    // polarization decay rate
    double Omega0;        // single-emitter coupling rate
    double f;             // overlap/projection factor
    double N0;            // number of emitters
    double P = 0.0;       // pump ratio (pump rate / decay rate)
};

struct DerivedParams {
    double Nth;           // inversion clamp value at threshold
    double Pth;           // semiclassical threshold pump (inf if N0 <= Nth)
    double Nc;            // inversion magnitude where the spectrum splits
    double beta_tilde;    // 4 Omega0^2 f / gamma_perp
    double beta_tilde_c;  // beta_tilde / (1 + 2 kappa / gamma_perp)
    double beta;          // conventional spontaneous-emission factor beta_tilde/(1+beta_tilde)
    double gamma_c;       // cold-cavity/polarization composite rate 2 kappa gamma_perp/(2 kappa + gamma_perp)
};

// Reduce SI inputs to dimensionless params (time unit 1/gamma_par).
LaserParams normalize(const PhysicalInputs& in);

// Threshold and coupling quantities that depend only on LaserParams.
DerivedParams derive(const LaserParams& p);

// Convenience: emitter populations from total inversion N (N = Ne - Ng, Ne + Ng = N0).
inline double excited_from_inversion(double N, double N0) { return (N + N0) / 2.0; }
inline double ground_from_inversion(double N, double N0) { return (N0 - N) / 2.0; }

} // namespace srl
