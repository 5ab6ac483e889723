#include "srlaser/presets.hpp"
#include "srlaser/errors.hpp"
#include <cmath>
#include <sstream>

namespace srl {

namespace {

LaserParams base_params(double gamma_perp) {
    LaserParams p;
    p.kappa = 50.0;
    p.gamma_perp = gamma_perp;
    p.Omega0 = 34.0;
    p.f = 0.5;
    p.N0 = 100.0;
    return p;
}

std::vector<double> log_pumps(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo * std::pow(hi / lo, i / double(n - 1));
    return v;
}

std::vector<FigureCurve> one_curve_per_pump(double gamma_perp, std::vector<double> pumps) {
    std::vector<FigureCurve> cs;
    for (double P : pumps) {
        std::ostringstream label;
        label << "P=" << P;
        cs.push_back({base_params(gamma_perp), {P}, label.str()});
    }
    return cs;
}

std::vector<FigurePreset> build() {
    const std::vector<double> spectrum_pumps{2.0, 4.0, 8.0, 10.0, 16.0};
    const std::vector<double> high_pumps{2.0, 8.0, 16.0, 28.0, 40.0};
    const std::vector<double> low_pumps{0.16, 0.48, 0.8, 1.12, 2.0};
    std::vector<FigurePreset> ps;
    ps.push_back({"fig2a", FigureKind::nofluct_spectrum, one_curve_per_pump(700.0, spectrum_pumps),
                  "optical spectra without population fluctuations, broad-line emitters"});
    ps.push_back({"fig2b", FigureKind::nofluct_spectrum, one_curve_per_pump(50.0, spectrum_pumps),
                  "optical spectra without population fluctuations, superradiant regime"});
    ps.push_back({"fig3", FigureKind::parts_spectrum,
                  {{base_params(700.0), {40.0}, "P=40"}},
                  "full spectrum and its narrow/broad parts at high pump"});
    ps.push_back({"fig4", FigureKind::photon_sweep,
                  {{base_params(50.0), log_pumps(0.02, 40.0, 24), "gamma_perp=50"},
                   {base_params(1500.0), log_pumps(0.02, 40.0, 24), "gamma_perp=1500"}},
                  "photon number vs pump with and without population fluctuations"});
    ps.push_back({"fig5", FigureKind::linewidth_sweep,
                  {{base_params(50.0), log_pumps(0.02, 40.0, 33), "gamma_perp=50"}},
                  "linewidth vs pump, superradiant regime"});
    ps.push_back({"fig6", FigureKind::linewidth_sweep,
                  {{base_params(1500.0), log_pumps(0.02, 40.0, 33), "gamma_perp=1500"}},
                  "linewidth vs pump, broad-line emitters"});
    ps.push_back({"fig7a", FigureKind::full_spectrum, one_curve_per_pump(50.0, high_pumps),
                  "full optical spectra across the threshold region, superradiant regime"});
    ps.push_back({"fig7b", FigureKind::full_spectrum, one_curve_per_pump(500.0, high_pumps),
                  "full optical spectra across the threshold region, broad-line emitters"});
    ps.push_back({"fig8a", FigureKind::full_spectrum, one_curve_per_pump(50.0, low_pumps),
                  "full optical spectra at low pump, superradiant regime"});
    ps.push_back({"fig8b", FigureKind::full_spectrum, one_curve_per_pump(500.0, low_pumps),
                  "full optical spectra at low pump, broad-line emitters"});
    ps.push_back({"fig9a", FigureKind::rf_spectrum, one_curve_per_pump(50.0, high_pumps),
                  "intensity-fluctuation spectra, superradiant regime"});
    ps.push_back({"fig9b", FigureKind::rf_spectrum, one_curve_per_pump(500.0, high_pumps),
                  "intensity-fluctuation spectra, broad-line emitters"});
    return ps;
}

} // namespace

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> ps = build();
    return ps;
}

const FigurePreset& find_preset(const std::string& id) {
    for (const auto& p : figure_presets())
        if (p.id == id) return p;
    std::ostringstream msg;
    msg << "unknown preset \"" << id << "\"; valid ids:";
    for (const auto& p : figure_presets()) msg << " " << p.id;
    throw config_error(msg.str());
}

} // namespace srl
