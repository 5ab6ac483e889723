#include "srlaser/params.hpp"
#include "srlaser/errors.hpp"
#include <cmath>
#include <limits>

namespace srl {

namespace {
constexpr double c_light = 299792458.0;          // m/s
constexpr double eps0 = 8.8541878128e-12;        // F/m
constexpr double hbar = 1.054571817e-34;         // J s
constexpr double pi = 3.141592653589793238462643383279503;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw config_error(std::string("normalize: ") + name + " must be positive and finite");
}
} // namespace

LaserParams normalize(const PhysicalInputs& in) {
    require_positive(in.lambda0, "lambda0");
    require_positive(in.n_ref, "n_ref");
    require_positive(in.Vc, "Vc");
    require_positive(in.N0, "N0");
    require_positive(in.gamma_par, "gamma_par");
    require_positive(in.gamma_perp, "gamma_perp");
    require_positive(in.dipole, "dipole");
    require_positive(in.Q, "Q");
    require_positive(in.f, "f");

    const double omega0 = 2.0 * pi * c_light / in.lambda0;
    const double lam_med = in.lambda0 / in.n_ref;
    const double Vc = in.vc_in_cubic_wavelengths ? in.Vc * lam_med * lam_med * lam_med : in.Vc;
    const double Omega0 = (in.dipole / in.n_ref) * std::sqrt(omega0 / (eps0 * hbar * Vc));
    const double kappa = omega0 / (2.0 * in.Q);

    LaserParams p;
    p.kappa = kappa / in.gamma_par;
    p.gamma_perp = in.gamma_perp / in.gamma_par;
    p.Omega0 = Omega0 / in.gamma_par;
    p.f = in.f;
    p.N0 = in.N0;
    return p;
}

DerivedParams derive(const LaserParams& p) {
    require_positive(p.kappa, "kappa");
    require_positive(p.gamma_perp, "gamma_perp");
    require_positive(p.Omega0, "Omega0");
    require_positive(p.f, "f");
    require_positive(p.N0, "N0");

    DerivedParams d;
    d.Nth = p.kappa * p.gamma_perp / (2.0 * p.Omega0 * p.Omega0 * p.f);
    d.Pth = (p.N0 > d.Nth) ? (p.N0 + d.Nth) / (p.N0 - d.Nth)
                           : std::numeric_limits<double>::infinity();
    d.Nc = 0.5 * (2.0 * p.kappa / p.gamma_perp + p.gamma_perp / (2.0 * p.kappa)) * d.Nth;
    d.beta_tilde = 4.0 * p.Omega0 * p.Omega0 * p.f / p.gamma_perp;
    d.beta_tilde_c = d.beta_tilde / (1.0 + 2.0 * p.kappa / p.gamma_perp);
    d.beta = d.beta_tilde / (1.0 + d.beta_tilde);
    d.gamma_c = 2.0 * p.kappa * p.gamma_perp / (2.0 * p.kappa + p.gamma_perp);
    return d;
}

} // namespace srl
