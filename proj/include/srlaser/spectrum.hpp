#pragma once
#include <Eigen/Dense>

namespace srl {

// Sampled spectral density on a frequency grid (offsets from line center).
struct Spectrum {
    Eigen::ArrayXd omega;
    Eigen::ArrayXd values;
};

} // namespace srl
