#include "srlaser/noise.hpp"
#include "srlaser/errors.hpp"
#include <sstream>

namespace srl {

NoiseModel noise_model(const LaserParams& p, const DerivedParams&, double Ne) {
    if (!(Ne >= 0.0 && Ne <= p.N0)) {
        std::ostringstream msg;
        msg << "noise_model: Ne = " << Ne << " outside [0, N0 = " << p.N0 << "]";
        throw config_error(msg.str());
    }
    const double Ng = p.N0 - Ne;
    const double pump_net = p.P * Ng - Ne;   // net upward population flow (units gamma_par)

    NoiseModel m;
    m.D_aa_plus = 2.0 * p.kappa;
    m.D_aplus_a = 0.0;
    m.D_vpv_full = p.f * (p.gamma_perp * Ne + pump_net);
    m.D_vpv_nofluct = p.f * p.gamma_perp * Ne;
    m.D_vv_plus = p.f * (p.gamma_perp * Ng - pump_net);
    m.vv_plus_negative = m.D_vv_plus < 0.0;
    m.D_aA_aA = 0.5 * p.kappa;
    m.D_aS_aS = 0.5 * p.kappa;
    m.D_vA_vA = 0.25 * p.f * p.gamma_perp * p.N0;
    m.D_vS_vS = 0.25 * p.f * p.gamma_perp * p.N0;
    m.D_NeNe = p.P * Ng + Ne;
    m.D_vNe_cross = 0.0;
    return m;
}

} // namespace srl
