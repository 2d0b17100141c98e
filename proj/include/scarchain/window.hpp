#pragma once

#include <stdexcept>

namespace scarchain {

/// Microcanonical energy window [center - half_width, center + half_width],
/// in units of omega.
struct EnergyWindow {
    double center = 0.0;
    double half_width = 0.5;

    EnergyWindow() = default;
    EnergyWindow(double c, double hw) : center(c), half_width(hw) {
        if (!(half_width > 0.0)) throw std::invalid_argument("EnergyWindow: half_width must be > 0");
    }
    bool contains(double energy) const {
        return energy >= center - half_width && energy <= center + half_width;
    }
};

/// Window preset with separate centers for even and odd chain lengths.
struct WindowPreset {
    double half_width;
    double center_even;
    double center_odd;

    EnergyWindow at(int length, double omega = 1.0) const {
        const double c = (length % 2 == 0) ? center_even : center_odd;
        return EnergyWindow(c * omega, half_width * omega);
    }
};

/// Window used for level-spacing statistics.
inline constexpr WindowPreset kStatsWindowPreset{0.45, 0.5, 1.0};

/// Window used for eigenstate-expectation-value indicators.
inline constexpr WindowPreset kEevWindowPreset{0.5, 1.0, 1.5};

}  // namespace scarchain
