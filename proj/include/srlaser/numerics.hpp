#pragma once
#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace srl {

// Integrate a symmetric spectral density over the full frequency axis and
// divide by 2*pi (the photon-number convention used throughout):
//   (1/2pi) [ integral_{-W}^{W} s(w) dw + 2 * tail_coefficient / W ]
// The closure term is exact for tails s(w) -> tail_coefficient / w^2.
// Adaptive Gauss-Kronrod 7/15 on [0, W], doubled by symmetry.
struct IntegrationResult {
    double value;          // (1/2pi) * full-axis integral including tail closure
    double abs_error;      // quadrature error estimate (same normalization)
    int panels;            // number of adapted panels used
};

IntegrationResult integrate_spectrum(const std::function<double(double)>& s,
                                     double tail_coefficient, double W,
                                     double rel_target = 1e-8,
                                     int max_panels = 4000);

// Brent root finder on [lo, hi]; requires a sign change.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol, int max_iter = 200);

// Full width at half maximum of an even function peaked at w = 0, computed as
// twice the half-maximum crossing on w >= 0.  If the global maximum on the
// probe grid is off-center the spectrum is split and no FWHM exists.
double fwhm(const std::function<double(double)>& s, double w_max,
            double rel_tol = 1e-10);

// Strict local maxima of samples 'values' on 'grid' (ascending), keeping only
// peaks at grid[i] >= 0 (symmetric negative-frequency twins deduplicated) and
// requiring a prominence (peak minus higher flanking minimum, over peak) of at
// least 'min_prominence' and a separation of at least 'min_separation' grid
// steps between reported peaks.
struct Peak {
    double omega;
    double value;
    double prominence;     // (value - max(flanking minima)) / value
};

std::vector<Peak> find_peaks(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& values,
                             double min_prominence = 0.01, int min_separation = 5);

// Composite frequency grid for spectra: log-spaced 1e-4..1 then linear up to
// w_max; returned ascending, nonnegative.  mirror() produces the full axis.
Eigen::ArrayXd make_grid(double w_max, int n_log = 60, int n_lin = 2400);
Eigen::ArrayXd mirror_grid(const Eigen::ArrayXd& nonneg);

} // namespace srl
