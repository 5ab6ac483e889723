#pragma once
#include "srlaser/params.hpp"

namespace srl {

// Langevin diffusion coefficients at working point Ne (excited population).
// 2D convention: <F_x(t) F_y(t')> = 2 D_xy delta(t - t'); the struct stores
// the 2D values.  Quadrature components (A/S split) carry half the pair value.
struct NoiseModel {
    double D_aa_plus;        // field, normally unordered pair: 2 kappa
    double D_aplus_a;        // thermal occupation neglected: 0
    double D_vpv_full;       // polarization v+v, full: f [g_perp Ne + (P Ng - Ne)]
    double D_vpv_nofluct;    // polarization v+v with population fluctuations off: f g_perp Ne
    double D_vv_plus;        // polarization v v+: f [g_perp Ng - (P Ng - Ne)]
    bool vv_plus_negative;   // true when D_vv_plus < 0 (bookkeeping, not a physical rate)
    double D_aA_aA;          // field quadrature (A or S): kappa / 2
    double D_aS_aS;
    double D_vA_vA;          // polarization quadrature (A or S): f g_perp N0 / 4
    double D_vS_vS;
    double D_NeNe;           // population: P Ng + Ne
    double D_vNe_cross;      // polarization-population cross terms vanish: 0
};

// Requires 0 <= Ne <= N0 (validation error otherwise).  P from p.P.
NoiseModel noise_model(const LaserParams& p, const DerivedParams& d, double Ne);

} // namespace srl
