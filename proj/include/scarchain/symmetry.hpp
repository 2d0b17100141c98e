#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scarchain/basis.hpp"

namespace scarchain {

enum class Parity { Even = +1, Odd = -1, None = 0 };

std::string to_string(Parity p);
Parity parity_from_string(const std::string& s);

/// Cycle of a basis state under translation, identified by its minimal
/// bitmask. The period always divides L.
struct TranslationOrbit {
    state_t representative = 0;
    int period = 1;
};

/// Partition the periodic constrained basis into translation orbits,
/// ordered by representative.
std::vector<TranslationOrbit> build_orbits(const ConstrainedBasis& basis);

/// One orthonormal symmetry-adapted basis vector, stored sparsely over the
/// parent basis. Supports of distinct vectors in a sector never overlap.
struct SectorVector {
    state_t representative = 0;        // minimal bitmask over the support
    int period = 1;                    // translation period of that orbit
    std::vector<std::int64_t> parent_index;
    std::vector<std::complex<double>> amplitude;
};

/// Momentum / reflection-parity symmetry sector of a periodic constrained
/// basis. Translation by one site multiplies a sector state by
/// exp(+i 2 pi k / L); amplitudes are real exactly at k = 0 and k = L/2.
class SymmetrySector {
public:
    SymmetrySector(std::shared_ptr<const ConstrainedBasis> parent, int k, Parity parity,
                   std::vector<SectorVector> entries);

    const ConstrainedBasis& parent() const { return *parent_; }
    std::shared_ptr<const ConstrainedBasis> parent_ptr() const { return parent_; }
    int momentum() const { return k_; }
    Parity parity() const { return parity_; }
    std::int64_t dim() const { return static_cast<std::int64_t>(entries_.size()); }
    const std::vector<SectorVector>& entries() const { return entries_; }

    /// True when all amplitudes are real (k = 0 or k = L/2).
    bool is_real() const;

    /// Sector vector index owning a parent basis state, or -1.
    std::int64_t owner(std::int64_t parent_index) const { return owner_[static_cast<std::size_t>(parent_index)]; }
    std::complex<double> amplitude_at(std::int64_t parent_index) const {
        return amplitude_[static_cast<std::size_t>(parent_index)];
    }

    /// Map sector coordinates to parent-basis coordinates (real sectors).
    Eigen::VectorXd lift(const Eigen::VectorXd& sector_coords) const;

    /// Dense parent x dim embedding matrix; intended for small systems.
    Eigen::MatrixXcd embedding() const;

    std::string tag() const;

private:
    std::shared_ptr<const ConstrainedBasis> parent_;
    int k_;
    Parity parity_;
    std::vector<SectorVector> entries_;
    std::vector<std::int64_t> owner_;            // parent index -> entry index
    std::vector<std::complex<double>> amplitude_;  // parent index -> amplitude
};

/// Build the (k, p) sector of a periodic constrained basis. Parity may be
/// resolved only at k = 0 or k = L/2.
SymmetrySector build_sector(std::shared_ptr<const ConstrainedBasis> basis, int k,
                            Parity parity = Parity::None);

/// Dimensions of every momentum sector, plus the parity-resolved pair at
/// the reflection-compatible momenta. Keys are (k, parity).
std::map<std::pair<int, Parity>, std::int64_t> sector_dimension_table(const ConstrainedBasis& basis);

}  // namespace scarchain
