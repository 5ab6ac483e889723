#include "srlaser/nofluct.hpp"
#include "srlaser/errors.hpp"
#include "srlaser/numerics.hpp"
#include <cmath>
#include <sstream>

namespace srl {

namespace {

// quadratic-root machinery shared by the two closed forms; the steady state
// solves beta_tilde_c-weighted spontaneous emission against the energy law
struct Roots {
    double N_minus, N_plus;    // inversion from the -sqrt(Q)/+sqrt(Q) branches
    double n_minus, n_plus;    // photon numbers paired with them
};

Roots roots_from(const LaserParams& p, const DerivedParams& d, double M, double Q) {
    if (Q < 0.0) throw solver_error("no-fluctuation closed form: negative discriminant");
    const double sq = std::sqrt(Q);
    const double pre = d.Nth / (2.0 * (p.P + 1.0));
    const double base = 2.0 * (p.P - 1.0) * p.N0 / d.Nth;
    Roots r;
    r.N_minus = pre * (base - M - sq);
    r.N_plus = pre * (base - M + sq);
    r.n_minus = (M + sq) / (4.0 * d.beta_tilde);   // pairs with N_minus via energy law
    r.n_plus = (M - sq) / (4.0 * d.beta_tilde);
    return r;
}

NofluctState pick_branch(const LaserParams& p, const DerivedParams& d, const Roots& r) {
    auto in_window = [&](double N) { return N >= -p.N0 && N < d.Nth; };
    NofluctState s;
    if (in_window(r.N_minus)) {
        s.N = r.N_minus;
        s.n = r.n_minus;
    } else if (in_window(r.N_plus)) {
        s.N = r.N_plus;
        s.n = r.n_plus;
        s.used_other_branch = true;
        std::ostringstream w;
        w << "primary branch N = " << r.N_minus << " outside [-N0, Nth); using other branch";
        s.warning = w.str();
    } else {
        std::ostringstream msg;
        msg << "no-fluctuation steady state: both branches outside [-N0, Nth) (N = "
            << r.N_minus << ", " << r.N_plus << ")";
        throw physics_error(msg.str());
    }
    return s;
}

} // namespace

NofluctState solve_N_nofluct(const LaserParams& p, const DerivedParams& d) {
    const double M = (p.P - 1.0) * p.N0 / d.Nth - p.P - 1.0 - d.beta_tilde_c;
    const double Q = M * M + 8.0 * p.P * d.beta_tilde_c * p.N0 / d.Nth;
    return pick_branch(p, d, roots_from(p, d, M, Q));
}

NofluctState solve_N_highpump(const LaserParams& p, const DerivedParams& d) {
    const double M = (p.P - 1.0) * p.N0 / d.Nth - p.P - 1.0;
    const double Q = M * M + 2.0 * (p.P + 1.0) * d.beta_tilde_c * (p.N0 / d.Nth + 1.0);
    // asymptote formula: the physical branch is reported as-is, with no window
    // fallback -- at low pump it simply strays far from the true state
    const Roots r = roots_from(p, d, M, Q);
    NofluctState s;
    s.N = r.N_minus;
    s.n = r.n_minus;
    return s;
}

double nofluct_residual(const LaserParams& p, const DerivedParams& d, double N) {
    const double lhs = d.beta_tilde_c * (p.N0 + N);
    const double rhs = (p.P * (p.N0 - N) - p.N0 - N) * (1.0 - N / d.Nth);
    return lhs - rhs;
}

double spectrum_nofluct(const LaserParams& p, const DerivedParams& d, double N, double w) {
    if (!(N < d.Nth))
        throw physics_error("no stationary no-fluctuation spectrum at or above threshold (N >= Nth)");
    const double Ne = excited_from_inversion(N, p.N0);
    const double b = p.kappa + 0.5 * p.gamma_perp;
    const double c = (1.0 - N / d.Nth) * p.kappa * p.gamma_perp * 0.5;
    const double D = (c - w * w) * (c - w * w) + w * w * b * b;
    return 0.5 * p.kappa * p.gamma_perp * p.gamma_perp * (Ne / d.Nth) / D;
}

double photon_number_nofluct(const LaserParams& p, const DerivedParams& d, double N) {
    if (!(N < d.Nth))
        throw physics_error("no stationary no-fluctuation spectrum at or above threshold (N >= Nth)");
    const double Ne = excited_from_inversion(N, p.N0);
    return p.gamma_perp * Ne / ((2.0 * p.kappa + p.gamma_perp) * (d.Nth - N));
}

bool two_peaked(const DerivedParams& d, double N) {
    return N < -d.Nc;
}

PcResult solve_Pc(const LaserParams& p, const DerivedParams& d) {
    PcResult out;
    if (d.Nc >= p.N0) {
        out.note = "no splitting regime: Nc >= N0, the inversion never reaches -Nc";
        return out;
    }
    auto g = [&](double P) {
        LaserParams q = p;
        q.P = P;
        return solve_N_nofluct(q, d).N + d.Nc;
    };
    // N(P) rises monotonically from -N0; expand upward until the sign flips
    double lo = 1e-9, hi = 1.0;
    while (g(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw solver_error("solve_Pc: no sign change found while expanding bracket");
    }
    const double Pc = find_root(g, lo, hi, 1e-13 * hi);
    LaserParams q = p;
    q.P = Pc;
    const double resid = std::abs(solve_N_nofluct(q, d).N + d.Nc);
    if (resid > 1e-8 * p.N0) {
        std::ostringstream msg;
        msg << "solve_Pc: residual " << resid << " exceeds tolerance";
        throw solver_error(msg.str());
    }
    out.Pc = Pc;
    return out;
}

double linewidth_exact_formula(const LaserParams& p, const DerivedParams& d, double N) {
    const double sum = 2.0 * p.kappa + p.gamma_perp;
    const double r = 4.0 * p.kappa * p.gamma_perp / (sum * sum) * (1.0 - N / d.Nth);
    const double X = r - 1.0 + std::sqrt((r - 1.0) * (r - 1.0) + r * r);
    return sum / std::sqrt(2.0) * std::sqrt(X);
}

double linewidth_nofluct(const LaserParams& p, const DerivedParams& d, double N,
                         LinewidthMethod method) {
    switch (method) {
        case LinewidthMethod::exact:
            if (two_peaked(d, N))
                throw physics_error("FWHM undefined for split spectrum (N < -Nc)");
            return linewidth_exact_formula(p, d, N);
        case LinewidthMethod::first_order:
            if (two_peaked(d, N))
                throw physics_error("FWHM undefined for split spectrum (N < -Nc)");
            return d.gamma_c * (1.0 - N / d.Nth);
        case LinewidthMethod::power_form_low: {
            const double Ne = excited_from_inversion(N, p.N0);
            const double n = photon_number_nofluct(p, d, N);
            return d.gamma_c * d.gamma_c * (Ne / d.Nth) / (2.0 * p.kappa * n);
        }
        case LinewidthMethod::power_form_high: {
            const double n = photon_number_nofluct(p, d, N);
            const double Nsp = (p.N0 + d.Nth) / (2.0 * d.Nth);
            return 0.5 * d.gamma_c * d.gamma_c * Nsp / (2.0 * p.kappa * n);
        }
    }
    throw config_error("linewidth_nofluct: unknown method");
}

double commutator_defect(const LaserParams& p, const DerivedParams& d, double n) {
    const double ratio = 4.0 * p.kappa * n / (p.gamma_perp * (d.Nth + p.N0));
    return 1.0 - ratio * (2.0 * n + 1.0 / (1.0 + 2.0 * p.kappa / p.gamma_perp));
}

} // namespace srl
