#include "srlaser/semiclassical.hpp"
#include "srlaser/errors.hpp"
#include <cmath>

namespace srl {

SemiclassicalState semiclassical_state(const LaserParams& p, const DerivedParams& d) {
    if (!(p.P >= 0.0)) throw config_error("semiclassical_state: P must be nonnegative");
    SemiclassicalState s;
    if (!(p.N0 > d.Nth)) {
        // gain can never clamp: no semiclassical lasing possible at any pump
        s.lasing = false;
        s.n = 0.0;
        s.N = p.N0 * (p.P - 1.0) / (p.P + 1.0);
        return s;
    }
    if (p.P > d.Pth) {
        s.lasing = true;
        s.N = d.Nth;
        s.n = (p.N0 + d.Nth) * (p.P / d.Pth - 1.0) / (4.0 * p.kappa);
    } else {
        s.lasing = false;
        s.N = p.N0 * (p.P - 1.0) / (p.P + 1.0);
        s.n = 0.0;
    }
    return s;
}

} // namespace srl
