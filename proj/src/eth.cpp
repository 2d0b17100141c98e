#include "scarchain/eth.hpp"

#include <cmath>
#include <stdexcept>

#include "scarchain/errors.hpp"

namespace scarchain {

EevSeries eigenstate_expectation_values(const Spectrum& spec, const OperatorMatrix& obs) {
    if (!spec.eigenvectors) {
        throw std::invalid_argument("eigenstate_expectation_values: spectrum lacks eigenvectors");
    }
    if (obs.dim() != spec.dim()) {
        throw std::invalid_argument("eigenstate_expectation_values: dimension mismatch");
    }
    // Tags are "<basis>,op=<name>"; the basis part must agree.
    const std::string obs_basis = obs.basis_tag.substr(0, obs.basis_tag.find(",op="));
    if (spec.source_tag.compare(0, obs_basis.size(), obs_basis) != 0) {
        throw std::invalid_argument("eigenstate_expectation_values: basis mismatch between '" +
                                    spec.source_tag + "' and '" + obs.basis_tag + "'");
    }
    const auto& v = *spec.eigenvectors;
    const std::int64_t n = spec.dim();
    EevSeries out;
    out.energies.resize(static_cast<std::size_t>(n));
    out.values.resize(static_cast<std::size_t>(n));
    out.observable_tag = obs.basis_tag;
    out.source_tag = spec.source_tag;
    if (obs.mat.isDiagonal(0.0)) {
        const Eigen::VectorXd d = obs.mat.diagonal();
        for (std::int64_t a = 0; a < n; ++a) {
            out.energies[static_cast<std::size_t>(a)] = spec.eigenvalues(a);
            out.values[static_cast<std::size_t>(a)] = v.col(a).cwiseAbs2().dot(d);
        }
        return out;
    }
    const Eigen::MatrixXd ov = obs.mat * v;
    for (std::int64_t a = 0; a < n; ++a) {
        out.energies[static_cast<std::size_t>(a)] = spec.eigenvalues(a);
        out.values[static_cast<std::size_t>(a)] = v.col(a).dot(ov.col(a));
    }
    return out;
}

MicrocanonicalAverage microcanonical_average(const EevSeries& eevs, const EnergyWindow& window) {
    MicrocanonicalAverage out;
    double sum = 0.0;
    for (std::int64_t i = 0; i < eevs.size(); ++i) {
        if (!window.contains(eevs.energies[static_cast<std::size_t>(i)])) continue;
        sum += eevs.values[static_cast<std::size_t>(i)];
        ++out.n_states;
    }
    if (out.n_states == 0) throw std::invalid_argument("microcanonical_average: empty window");
    out.value = sum / static_cast<double>(out.n_states);
    return out;
}

EthIndicators eth_indicators(const EevSeries& eevs, const EnergyWindow& window) {
    EthIndicators out;
    out.window = window;
    const auto mc = microcanonical_average(eevs, window);
    if (mc.n_states < 2) {
        throw std::invalid_argument("eth_indicators: window must contain at least 2 states");
    }
    out.microcanonical = mc.value;
    out.n_states = mc.n_states;
    double sq = 0.0;
    double max_abs = 0.0;
    double max_signed = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < eevs.size(); ++i) {
        if (!window.contains(eevs.energies[static_cast<std::size_t>(i)])) continue;
        const double d = eevs.values[static_cast<std::size_t>(i)] - mc.value;
        sq += d * d;
        max_abs = std::max(max_abs, std::abs(d));
        max_signed = std::max(max_signed, d);
    }
    out.I_s = max_abs;
    out.I_s_signed = max_signed;
    out.I_w = std::sqrt(sq / static_cast<double>(mc.n_states));
    return out;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double slope_err = 0.0;
    double intercept = 0.0;
    double intercept_err = 0.0;
    double r_squared = 0.0;
};

LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& w) {
    const std::size_t n = x.size();
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
        swxx += w[i] * x[i] * x[i];
        swxy += w[i] * x[i] * y[i];
    }
    const double delta = sw * swxx - swx * swx;
    if (!(delta > 0.0)) throw NumericalError("line fit: degenerate abscissae");
    LineFit fit;
    fit.slope = (sw * swxy - swx * swy) / delta;
    fit.intercept = (swxx * swy - swx * swxy) / delta;

    // R^2 against the weighted mean.
    const double ybar = swy / sw;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += w[i] * r * r;
        ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;

    // Parameter errors: covariance from the weight matrix, inflated by the
    // residual variance when the weights are not inverse variances.
    const double dof = static_cast<double>(n) - 2.0;
    const double scale = (dof > 0.0) ? ss_res / dof : 0.0;
    fit.slope_err = std::sqrt(std::max(0.0, scale * sw / delta));
    fit.intercept_err = std::sqrt(std::max(0.0, scale * swxx / delta));
    return fit;
}

}  // namespace

ScalingFit fit_weak_decay(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_weak_decay: need at least 3 points");
    std::vector<double> x, y, w;
    double prev = 0.0;
    for (const auto& [dim, iw] : points) {
        if (!(dim > prev)) throw std::invalid_argument("fit_weak_decay: D must increase strictly");
        if (!(iw > 0.0)) throw std::invalid_argument("fit_weak_decay: I_w must be positive");
        prev = dim;
        x.push_back(std::log(dim));
        y.push_back(std::log(iw));
        w.push_back(1.0);
    }
    const LineFit fit = weighted_line_fit(x, y, w);
    ScalingFit out;
    out.gamma = -fit.slope;
    out.gamma_err = fit.slope_err;
    out.intercept = fit.intercept;
    out.r_squared = fit.r_squared;
    out.n_points = static_cast<std::int64_t>(points.size());
    return out;
}

GammaCurveFit fit_gamma_curve(const std::vector<GammaPoint>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_gamma_curve: need at least 3 points");
    GammaCurveFit out;
    out.n_points = static_cast<std::int64_t>(points.size());
    std::vector<double> x, y, w;
    bool all_weighted = true;
    for (const auto& p : points) {
        if (!(p.gamma > 0.0)) throw std::invalid_argument("fit_gamma_curve: gamma must be > 0");
        if (!(p.gamma_err > 0.0)) all_weighted = false;
    }
    for (const auto& p : points) {
        x.push_back(p.ell);
        y.push_back(1.0 / p.gamma);
        if (all_weighted) {
            // sigma(1/gamma) = sigma_gamma / gamma^2
            const double sigma = p.gamma_err / (p.gamma * p.gamma);
            w.push_back(1.0 / (sigma * sigma));
        } else {
            w.push_back(1.0);
        }
    }
    out.unweighted_fallback = !all_weighted;
    const LineFit fit = weighted_line_fit(x, y, w);
    out.a = fit.slope;
    out.a_err = fit.slope_err;
    out.b = fit.intercept;
    out.b_err = fit.intercept_err;
    out.r_squared = fit.r_squared;
    return out;
}

}  // namespace scarchain
