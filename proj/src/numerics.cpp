#include "srlaser/numerics.hpp"
#include "srlaser/errors.hpp"
#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace srl {

namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss (QUADPACK values).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, integral, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = wgk[7] * fc, resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    return Panel{a, b, resk * h, std::abs((resk - resg) * h)};
}

} // namespace

IntegrationResult integrate_spectrum(const std::function<double(double)>& s,
                                     double tail_coefficient, double W,
                                     double rel_target, int max_panels) {
    if (!(W > 0.0)) throw config_error("integrate_spectrum: W must be positive");
    // seed one panel per decade so narrow features near zero are found
    std::vector<double> brk{0.0};
    for (double x = 1e-4; x < W; x *= 10.0) brk.push_back(x);
    brk.push_back(W);
    std::priority_queue<Panel> panels;
    double total = 0.0, err = 0.0;
    int count = 0;
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        Panel p = gk15(s, brk[i], brk[i + 1]);
        total += p.integral;
        err += p.error;
        panels.push(p);
        ++count;
    }
    while (err > rel_target * std::abs(total) && err > 1e-300) {
        if (count >= max_panels) {
            Panel worst = panels.top();
            std::ostringstream msg;
            msg << "integrate_spectrum failed to converge: " << count
                << " panels, abs error " << err << " vs total " << total
                << ", worst panel [" << worst.a << ", " << worst.b
                << "] error " << worst.error;
            throw solver_error(msg.str());
        }
        Panel worst = panels.top();
        panels.pop();
        total -= worst.integral;
        err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (Panel half : {gk15(s, worst.a, mid), gk15(s, mid, worst.b)}) {
            total += half.integral;
            err += half.error;
            panels.push(half);
        }
        ++count;
    }
    constexpr double two_pi = 6.283185307179586476925286766559;
    IntegrationResult r;
    r.value = (2.0 * total + 2.0 * tail_coefficient / W) / two_pi;
    r.abs_error = 2.0 * err / two_pi;
    r.panels = count;
    return r;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol, int max_iter) {
    double a = lo, b = hi, fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream msg;
        msg << "find_root: no sign change on [" << lo << ", " << hi << "] (f(lo)="
            << fa << ", f(hi)=" << fb << ")";
        throw solver_error(msg.str());
    }
    // Brent's method
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = b - a; e = d; }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r2;
            const double s2 = fb / fa;
            if (a == c) { p = 2.0 * xm * s2; q = 1.0 - s2; }
            else {
                q = fa / fc; r2 = fb / fc;
                p = s2 * (2.0 * xm * q * (q - r2) - (b - a) * (r2 - 1.0));
                q = (q - 1.0) * (r2 - 1.0) * (s2 - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else { d = xm; e = d; }
        } else { d = xm; e = d; }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw solver_error("find_root: Brent iteration limit reached");
}

double fwhm(const std::function<double(double)>& s, double w_max, double rel_tol) {
    const double s0 = s(0.0);
    if (!(s0 > 0.0)) throw physics_error("fwhm: spectrum not positive at center");
    // probe for an off-center global maximum (split spectrum) and bracket the
    // half-maximum crossing in one sweep
    const int n_probe = 2000;
    double prev_w = 0.0, prev_v = s0;
    double cross_lo = -1.0, cross_hi = -1.0;
    const double lw = std::log(w_max * 1e-10), hw = std::log(w_max);
    for (int i = 0; i < n_probe; ++i) {
        const double w = std::exp(lw + (hw - lw) * (i + 1) / double(n_probe));
        const double v = s(w);
        if (v > s0 * (1.0 + 1e-9))
            throw physics_error("fwhm undefined for split spectrum (global maximum off center)");
        if (cross_lo < 0.0 && prev_v >= 0.5 * s0 && v < 0.5 * s0) {
            cross_lo = prev_w;
            cross_hi = w;
            // keep sweeping: a later, higher off-center max must still be caught
        }
        prev_w = w;
        prev_v = v;
    }
    if (cross_lo < 0.0)
        throw solver_error("fwhm: no half-maximum crossing found below w_max");
    const double w_half = find_root([&](double w) { return s(w) - 0.5 * s0; },
                                    cross_lo, cross_hi, rel_tol * std::max(1.0, cross_hi));
    return 2.0 * w_half;
}

std::vector<Peak> find_peaks(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& values,
                             double min_prominence, int min_separation) {
    const Eigen::Index n = grid.size();
    std::vector<Peak> candidates;
    std::vector<Eigen::Index> cand_idx;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] > values[i + 1])) continue;
        if (grid[i] < 0.0) continue;  // symmetric twin reported at +w only
        // walk down to the flanking minima
        Eigen::Index l = i;
        while (l > 0 && values[l - 1] <= values[l]) --l;
        Eigen::Index r = i;
        while (r + 1 < n && values[r + 1] <= values[r]) ++r;
        const double floor_v = std::max(values[l], values[r]);
        const double prom = (values[i] - floor_v) / values[i];
        if (prom < min_prominence) continue;
        candidates.push_back({grid[i], values[i], prom});
        cand_idx.push_back(i);
    }
    // enforce separation, keeping the taller peak
    std::vector<size_t> order(candidates.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return candidates[x].value > candidates[y].value;
    });
    std::vector<bool> keep(candidates.size(), false);
    std::vector<Eigen::Index> kept_idx;
    for (size_t k : order) {
        bool clash = false;
        for (Eigen::Index j : kept_idx)
            if (std::abs(long(j - cand_idx[k])) < min_separation) clash = true;
        if (!clash) {
            keep[k] = true;
            kept_idx.push_back(cand_idx[k]);
        }
    }
    std::vector<Peak> out;
    for (size_t k = 0; k < candidates.size(); ++k)
        if (keep[k]) out.push_back(candidates[k]);
    std::sort(out.begin(), out.end(), [](const Peak& x, const Peak& y) {
        return x.omega < y.omega;
    });
    return out;
}

Eigen::ArrayXd make_grid(double w_max, int n_log, int n_lin) {
    if (!(w_max > 0.0)) throw config_error("make_grid: w_max must be positive");
    std::vector<double> pts{0.0};
    const double top_log = std::min(1.0, w_max);
    for (int i = 0; i < n_log; ++i)
        pts.push_back(std::pow(10.0, -4.0 + (std::log10(top_log) + 4.0) * i / double(n_log - 1)));
    if (w_max > 1.0)
        for (int i = 1; i <= n_lin; ++i)
            pts.push_back(1.0 + (w_max - 1.0) * i / double(n_lin));
    Eigen::ArrayXd g(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) g[i] = pts[i];
    return g;
}

Eigen::ArrayXd mirror_grid(const Eigen::ArrayXd& nonneg) {
    const Eigen::Index n = nonneg.size();
    const bool has_zero = n > 0 && nonneg[0] == 0.0;
    const Eigen::Index n_pos = has_zero ? n - 1 : n;
    Eigen::ArrayXd full(n_pos + n);
    for (Eigen::Index i = 0; i < n_pos; ++i) full[i] = -nonneg[n - 1 - i];
    for (Eigen::Index i = 0; i < n; ++i) full[n_pos + i] = nonneg[i];
    return full;
}

} // namespace srl
