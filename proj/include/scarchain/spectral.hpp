#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scarchain/hamiltonian.hpp"
#include "scarchain/window.hpp"

namespace scarchain {

/// Identifying parameters of a spectrum; momentum -1 and parity None mean
/// the full constrained basis.
struct SpectrumParams {
    int length = 0;
    int ell = 0;
    Boundary bc = Boundary::Periodic;
    int k = -1;
    Parity parity = Parity::None;
    double omega = 1.0;
    double lambda = 0.0;

    std::string tag() const;
};

/// Full eigendecomposition of a real symmetric operator: ascending
/// eigenvalues, optionally the orthonormal eigenvector columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    std::optional<Eigen::MatrixXd> eigenvectors;
    std::string source_tag;
    SpectrumParams params;

    std::int64_t dim() const { return eigenvalues.size(); }
};

/// Dense symmetric eigensolver (LAPACK divide and conquer). Deterministic
/// for identical input; rejects non-finite entries.
Spectrum diagonalize(const OperatorMatrix& matrix, bool want_vectors,
                     SpectrumParams params = {});

struct Histogram {
    double lo = 0.0;
    double bin_width = 0.0;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    double bin_center(std::size_t i) const { return lo + (i + 0.5) * bin_width; }
};

/// Counts per fixed-width bin across [E_min, E_max].
Histogram density_of_states(const Spectrum& spec, double bin_width);

struct DegeneracyCluster {
    double center = 0.0;
    int multiplicity = 0;
    std::vector<std::int64_t> members;
    double nearest_half_multiple = 0.0;   // closest m*omega/2 in units of energy
    double distance_to_multiple = 0.0;
    double spread = 0.0;
};

/// Group consecutive eigenvalues whose gaps stay below `tol` (default
/// 1e-8 * omega). Multiplicities preserve the total state count.
std::vector<DegeneracyCluster> detect_degeneracies(const Spectrum& spec, double tol = -1.0);

struct SpacingDistribution {
    std::vector<double> ratios;          // s / s_bar within the window
    double mean_spacing = 0.0;
    std::int64_t levels_in_window = 0;
    std::int64_t excluded_degenerate = 0;  // multiplet members dropped
    std::int64_t zero_spacings = 0;
    bool low_statistics = false;           // fewer than 50 levels
    Histogram histogram;                   // normalized to unit integral
    std::vector<double> density;           // counts / (N * bin_width)
};

/// Normalized level-spacing distribution p(s / s_bar) in an energy window.
/// Degenerate multiplets are collapsed to one representative unless
/// `keep_degenerate` is set; the drop count is reported either way.
SpacingDistribution level_spacing_distribution(const Spectrum& spec, const EnergyWindow& window,
                                               int n_bins, bool keep_degenerate = false,
                                               double degeneracy_tol = -1.0);

/// GOE Wigner surmise (pi s / 2) exp(-pi s^2 / 4); unit norm and unit mean.
double wigner_surmise_goe(double s);

struct RValueResult {
    double value = 0.0;
    std::int64_t pairs_used = 0;
    std::int64_t zero_spacings_excluded = 0;
};

/// Mean min/max ratio of consecutive level spacings, skipping exact-zero
/// spacings (count reported).
RValueResult r_value(const Spectrum& spec);

/// Largest absolute difference between the cumulative histogram density
/// and a reference cumulative distribution, evaluated at the bin edges.
double ks_distance_to_density(const SpacingDistribution& dist, double (*reference_pdf)(double));

}  // namespace scarchain
