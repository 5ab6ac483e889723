#pragma once
#include "srlaser/params.hpp"
#include <string>
#include <vector>

namespace srl {

enum class FigureKind {
    nofluct_spectrum,   // spectrum with population fluctuations off, one curve per pump
    parts_spectrum,     // full spectrum + narrow/broad parts at one pump
    photon_sweep,       // photon number vs pump, one curve per parameter set
    linewidth_sweep,    // linewidth vs pump with asymptote columns
    full_spectrum,      // full + no-fluctuation spectrum, one curve per pump
    rf_spectrum,        // intensity-fluctuation spectrum, one curve per pump
};

struct FigureCurve {
    LaserParams base;            // P ignored for multi-pump curves
    std::vector<double> pumps;   // sweep values (spectrum kinds: one per curve)
    std::string label;
};

struct FigurePreset {
    std::string id;
    FigureKind kind;
    std::vector<FigureCurve> curves;
    std::string description;
};

// Catalogue of built-in parameter sets reproducing the reference figures.
const std::vector<FigurePreset>& figure_presets();

// Lookup by id; config_error listing valid ids when unknown.
const FigurePreset& find_preset(const std::string& id);

} // namespace srl
