#include "scarchain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <lapacke.h>

#include "scarchain/errors.hpp"

namespace scarchain {

std::string SpectrumParams::tag() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "L=%d,ell=%d,bc=%s,k=%d,p=%s,omega=%.12g,lambda=%.12g",
                  length, ell, scarchain::to_string(bc).c_str(), k,
                  scarchain::to_string(parity).c_str(), omega, lambda);
    return buf;
}

Spectrum diagonalize(const OperatorMatrix& matrix, bool want_vectors, SpectrumParams params) {
    const std::int64_t n = matrix.dim();
    if (n < 1) throw std::invalid_argument("diagonalize: empty matrix");
    if (!matrix.mat.allFinite()) throw std::invalid_argument("diagonalize: non-finite entries");

    Eigen::MatrixXd work = matrix.mat;  // dsyevd overwrites its input
    Eigen::VectorXd evals(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L',
                                           static_cast<lapack_int>(n), work.data(),
                                           static_cast<lapack_int>(n), evals.data());
    if (info != 0) {
        throw NumericalError("diagonalize: dsyevd failed with info=" + std::to_string(info) +
                             " at dim=" + std::to_string(n));
    }
    Spectrum spec;
    spec.eigenvalues = std::move(evals);
    if (want_vectors) spec.eigenvectors = std::move(work);
    spec.source_tag = matrix.basis_tag;
    spec.params = params;
    return spec;
}

Histogram density_of_states(const Spectrum& spec, double bin_width) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("density_of_states: bin_width must be > 0");
    Histogram h;
    const std::int64_t n = spec.dim();
    const double lo = spec.eigenvalues(0);
    const double hi = spec.eigenvalues(n - 1);
    const std::int64_t nbins = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil((hi - lo) / bin_width)) + ((hi == lo) ? 1 : 0));
    h.lo = lo;
    h.bin_width = bin_width;
    h.counts.assign(static_cast<std::size_t>(nbins), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        auto b = static_cast<std::int64_t>((spec.eigenvalues(i) - lo) / bin_width);
        b = std::clamp<std::int64_t>(b, 0, nbins - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    h.total = n;
    return h;
}

std::vector<DegeneracyCluster> detect_degeneracies(const Spectrum& spec, double tol) {
    if (tol < 0.0) tol = 1e-8 * spec.params.omega;
    const std::int64_t n = spec.dim();
    std::vector<DegeneracyCluster> clusters;
    std::int64_t start = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        if (i < n && spec.eigenvalues(i) - spec.eigenvalues(i - 1) <= tol) continue;
        DegeneracyCluster c;
        c.multiplicity = static_cast<int>(i - start);
        double sum = 0.0;
        for (std::int64_t j = start; j < i; ++j) {
            c.members.push_back(j);
            sum += spec.eigenvalues(j);
        }
        c.center = sum / c.multiplicity;
        c.spread = spec.eigenvalues(i - 1) - spec.eigenvalues(start);
        const double omega = spec.params.omega;
        c.nearest_half_multiple = std::round(2.0 * c.center / omega) * 0.5 * omega;
        c.distance_to_multiple = std::abs(c.center - c.nearest_half_multiple);
        clusters.push_back(std::move(c));
        start = i;
    }
    return clusters;
}

SpacingDistribution level_spacing_distribution(const Spectrum& spec, const EnergyWindow& window,
                                               int n_bins, bool keep_degenerate,
                                               double degeneracy_tol) {
    if (n_bins < 1) throw std::invalid_argument("level_spacing_distribution: n_bins must be >= 1");
    if (degeneracy_tol < 0.0) degeneracy_tol = 1e-8 * spec.params.omega;

    std::vector<double> levels;
    for (std::int64_t i = 0; i < spec.dim(); ++i) {
        const double e = spec.eigenvalues(i);
        if (window.contains(e)) levels.push_back(e);
    }
    SpacingDistribution out;
    if (levels.size() < 2) {
        throw std::invalid_argument("level_spacing_distribution: fewer than 2 levels in window");
    }
    if (!keep_degenerate) {
        // Collapse degenerate multiplets to one representative level.
        std::vector<double> collapsed;
        collapsed.push_back(levels[0]);
        for (std::size_t i = 1; i < levels.size(); ++i) {
            if (levels[i] - collapsed.back() <= degeneracy_tol) {
                ++out.excluded_degenerate;
            } else {
                collapsed.push_back(levels[i]);
            }
        }
        levels = std::move(collapsed);
    }
    out.levels_in_window = static_cast<std::int64_t>(levels.size());
    out.low_statistics = levels.size() < 50;
    if (levels.size() < 2) {
        throw std::invalid_argument(
            "level_spacing_distribution: fewer than 2 distinct levels in window");
    }

    std::vector<double> spacings(levels.size() - 1);
    double mean = 0.0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        spacings[i] = levels[i + 1] - levels[i];
        if (spacings[i] == 0.0) ++out.zero_spacings;
        mean += spacings[i];
    }
    mean /= static_cast<double>(spacings.size());
    out.mean_spacing = mean;
    if (!(mean > 0.0)) throw NumericalError("level_spacing_distribution: zero mean spacing");

    out.ratios.reserve(spacings.size());
    double max_ratio = 0.0;
    for (const double s : spacings) {
        out.ratios.push_back(s / mean);
        max_ratio = std::max(max_ratio, s / mean);
    }

    Histogram h;
    h.lo = 0.0;
    h.bin_width = std::max(max_ratio, 1e-12) / n_bins;
    h.counts.assign(static_cast<std::size_t>(n_bins), 0);
    for (const double r : out.ratios) {
        auto b = static_cast<std::int64_t>(r / h.bin_width);
        b = std::clamp<std::int64_t>(b, 0, n_bins - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    h.total = static_cast<std::int64_t>(out.ratios.size());
    out.histogram = h;
    out.density.resize(h.counts.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        out.density[i] = static_cast<double>(h.counts[i]) / (h.total * h.bin_width);
    }
    return out;
}

double wigner_surmise_goe(double s) {
    if (s < 0.0) throw std::invalid_argument("wigner_surmise_goe: s must be >= 0");
    return 0.5 * std::numbers::pi * s * std::exp(-0.25 * std::numbers::pi * s * s);
}

RValueResult r_value(const Spectrum& spec) {
    const std::int64_t n = spec.dim();
    if (n < 3) throw std::invalid_argument("r_value: need at least 3 levels");
    RValueResult out;
    double sum = 0.0;
    for (std::int64_t i = 0; i + 2 < n; ++i) {
        const double s0 = spec.eigenvalues(i + 1) - spec.eigenvalues(i);
        const double s1 = spec.eigenvalues(i + 2) - spec.eigenvalues(i + 1);
        if (s0 == 0.0 || s1 == 0.0) {
            ++out.zero_spacings_excluded;
            continue;
        }
        sum += std::min(s0, s1) / std::max(s0, s1);
        ++out.pairs_used;
    }
    if (out.pairs_used == 0) throw NumericalError("r_value: all spacing pairs degenerate");
    out.value = sum / static_cast<double>(out.pairs_used);
    return out;
}

double ks_distance_to_density(const SpacingDistribution& dist, double (*reference_pdf)(double)) {
    // Reference CDF integrated bin by bin with Simpson's rule.
    const auto& h = dist.histogram;
    double empirical = 0.0;
    double reference = 0.0;
    double max_diff = 0.0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        empirical += static_cast<double>(h.counts[i]) / h.total;
        const double a = h.lo + i * h.bin_width;
        const double b = a + h.bin_width;
        reference += (h.bin_width / 6.0) *
                     (reference_pdf(a) + 4.0 * reference_pdf(0.5 * (a + b)) + reference_pdf(b));
        max_diff = std::max(max_diff, std::abs(empirical - reference));
    }
    return max_diff;
}

}  // namespace scarchain
