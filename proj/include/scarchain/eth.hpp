#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scarchain/spectral.hpp"
#include "scarchain/window.hpp"

namespace scarchain {

/// Eigenstate expectation values of one observable over one spectrum,
/// ordered by energy.
struct EevSeries {
    std::vector<double> energies;
    std::vector<double> values;
    std::string observable_tag;
    std::string source_tag;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

/// O_aa = v_a^T O v_a for every eigenvector. The observable must carry the
/// same basis tag as the spectrum's source.
EevSeries eigenstate_expectation_values(const Spectrum& spec, const OperatorMatrix& obs);

struct MicrocanonicalAverage {
    double value = 0.0;
    std::int64_t n_states = 0;
};

/// Arithmetic mean of the in-window expectation values.
MicrocanonicalAverage microcanonical_average(const EevSeries& eevs, const EnergyWindow& window);

struct EthIndicators {
    double I_s = 0.0;         // max |O_aa - mean|
    double I_s_signed = 0.0;  // max (O_aa - mean)
    double I_w = 0.0;         // rms fluctuation about the mean
    double microcanonical = 0.0;
    EnergyWindow window;
    std::int64_t n_states = 0;
};

/// Strong (max-deviation, both signed and absolute) and weak (rms) ETH
/// indicators about the window's microcanonical average.
EthIndicators eth_indicators(const EevSeries& eevs, const EnergyWindow& window);

struct ScalingFit {
    double gamma = 0.0;
    double gamma_err = 0.0;
    double intercept = 0.0;      // log-space intercept
    double r_squared = 0.0;
    std::int64_t n_points = 0;
    std::string model = "I_w ~ D^-gamma";
};

/// Ordinary least squares on (log D, log I_w); gamma is minus the slope,
/// with its standard error from the residual variance.
ScalingFit fit_weak_decay(const std::vector<std::pair<double, double>>& points);

struct GammaCurveFit {
    double a = 0.0;
    double a_err = 0.0;
    double b = 0.0;
    double b_err = 0.0;
    double r_squared = 0.0;
    bool unweighted_fallback = false;
    std::int64_t n_points = 0;
};

struct GammaPoint {
    double ell = 0.0;
    double gamma = 0.0;
    double gamma_err = 0.0;
};

/// Weighted linear fit of 1/gamma against ell for the model
/// gamma = 1 / (a ell + b); weights propagate the gamma error bars.
GammaCurveFit fit_gamma_curve(const std::vector<GammaPoint>& points);

}  // namespace scarchain
