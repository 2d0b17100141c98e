#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "scarchain/bits.hpp"

namespace scarchain {

enum class Boundary { Open, Periodic };

std::string to_string(Boundary bc);
Boundary boundary_from_string(const std::string& s);

/// Product-basis configuration of an L-site spin-1/2 chain.
/// Site 1 is the least-significant bit; a set bit is an up spin.
struct SpinConfiguration {
    state_t bits = 0;
    int length = 1;
};

/// True iff the configuration contains no run of `ell` or more consecutive
/// up spins (runs wrap around the chain under periodic boundaries).
/// `ell = 0` stands for the unconstrained chain and always passes.
bool is_allowed(state_t bits, int length, int ell, Boundary bc);
bool is_allowed(const SpinConfiguration& config, int ell, Boundary bc);

/// The admissible configurations for a given constraint radius, sorted
/// ascending by bitmask. Immutable after construction.
class ConstrainedBasis {
public:
    ConstrainedBasis(int length, int ell, Boundary bc, std::vector<state_t> states);

    int length() const { return length_; }
    int ell() const { return ell_; }
    Boundary bc() const { return bc_; }
    std::int64_t dim() const { return static_cast<std::int64_t>(states_.size()); }
    state_t state(std::int64_t index) const { return states_[static_cast<std::size_t>(index)]; }
    const std::vector<state_t>& states() const { return states_; }

    /// Index of a configuration, or -1 if it is not admissible.
    std::int64_t index_of(state_t bits) const;
    bool contains(state_t bits) const { return index_of(bits) >= 0; }

    /// Short identifier, e.g. "L=12,ell=2,bc=pbc", used to tag operators
    /// and spectra derived from this basis.
    std::string tag() const;

private:
    int length_;
    int ell_;
    Boundary bc_;
    std::vector<state_t> states_;
};

/// Enumerate the constrained state space by scanning all 2^L bitmasks.
/// The count is checked against the closed-form dimension. Lengths above
/// 28 sites are rejected as over budget.
ConstrainedBasis enumerate_basis(int length, int ell, Boundary bc);

/// Constrained dimension for an open chain, via the order-ell linear
/// recurrence with closed-form seeds (2^L below the radius, 2^L - 1 at it).
/// Exact integer arithmetic; ell = 0 gives the unconstrained 2^L.
mpz_class dimension_obc(int length, int ell);

/// Constrained dimension for a periodic chain, assembled from open-chain
/// dimensions. Closed forms cover length <= ell.
mpz_class dimension_pbc(int length, int ell);

mpz_class dimension(int length, int ell, Boundary bc);

/// Asymptotic per-site growth factor d solving d^ell * (2 - d) = 1 on
/// (1, 2), found by bisection to within `tol`.
double growth_rate(int ell, double tol = 1e-12);

/// Finite-size estimate D(L_max) / D(L_max - 1) of the growth factor.
double empirical_growth_rate(int ell, Boundary bc, int L_max);

}  // namespace scarchain
