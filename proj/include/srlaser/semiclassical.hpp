#pragma once
#include "srlaser/params.hpp"

namespace srl {

// Mean-field steady state with hard inversion clamping at threshold.
struct SemiclassicalState {
    double n;          // photon number (0 below threshold)
    double N;          // inversion (clamped at Nth above threshold)
    bool lasing;       // true iff P > Pth and a lasing solution exists
};

// Below threshold: n = 0, N = N0 (P-1)/(P+1).
// Above: N = Nth, n = (N0 + Nth)(P/Pth - 1) / (4 kappa).
// If N0 <= Nth no pump can reach threshold; lasing stays false for all P.
SemiclassicalState semiclassical_state(const LaserParams& p, const DerivedParams& d);

} // namespace srl
