#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scarchain/basis.hpp"
#include "scarchain/symmetry.hpp"

namespace scarchain {

/// Model parameters: energy scale omega, two-site perturbation strength
/// lambda, and the chain geometry.
struct ModelParams {
    double omega = 1.0;
    double lambda = 0.0;
    int length = 1;
    int ell = 2;
    Boundary bc = Boundary::Periodic;

    void validate() const;  // omega > 0; warns when |lambda| > 0.1 omega
    std::string tag() const;
};

/// Dense real symmetric operator matrix, tagged with the basis or sector
/// it is expressed in. Entries are assigned pairwise, never symmetrized
/// after the fact, so mat equals its transpose exactly.
struct OperatorMatrix {
    Eigen::MatrixXd mat;
    std::string basis_tag;

    std::int64_t dim() const { return mat.rows(); }
};

/// Generator of one column of an operator in the z-product basis:
/// invokes emit(target_state, coefficient) for every term of O|s>.
using LocalAction =
    std::function<void(state_t, const std::function<void(state_t, double)>&)>;

/// Flip-type action of the constrained Hamiltonian: single spin flips with
/// weight omega/2 plus, for lambda != 0, the z-neighbor-weighted flips of
/// the two-site perturbation. Boundary handling follows the chain's bc.
LocalAction hamiltonian_action(const ModelParams& params);

enum class Observable {
    Jx,               // half the sum of spin flips, projected
    JySquaredPart,    // square of the projected y component (real matrix)
    Jz,               // diagonal magnetization (popcount - L/2)
    Jsquared,         // sum of squares of the three projected components
    JsquaredFull,     // projection of the unconstrained total-spin squared
};

std::string to_string(Observable kind);

/// Assemble an operator directly in the constrained basis (flip-and-test;
/// no 2^L intermediate).
OperatorMatrix build_basis_operator(const ConstrainedBasis& basis, const LocalAction& action,
                                    const std::string& name);

OperatorMatrix build_constrained_hamiltonian(const ConstrainedBasis& basis,
                                             const ModelParams& params);

/// Operator restricted to a symmetry sector. Real-matrix path; requires
/// k = 0 or k = L/2.
OperatorMatrix build_sector_operator(const SymmetrySector& sector, const LocalAction& action,
                                     const std::string& name);

OperatorMatrix build_sector_hamiltonian(const SymmetrySector& sector, const ModelParams& params);

/// Complex Hermitian sector matrix for a general momentum.
Eigen::MatrixXcd build_sector_operator_complex(const SymmetrySector& sector,
                                               const LocalAction& action);

/// Real 2n x 2n doubling [[Re, -Im], [Im, Re]] of the complex sector
/// Hamiltonian at momentum k; its spectrum is the union of the k and L-k
/// sector spectra.
OperatorMatrix build_sector_hamiltonian_doubled(const SymmetrySector& sector,
                                                const ModelParams& params);

OperatorMatrix build_observable(const ConstrainedBasis& basis, Observable kind);
OperatorMatrix build_observable(const SymmetrySector& sector, Observable kind);

/// Number of all-up windows of width ell in the configuration.
int window_count(state_t bits, int length, int ell, Boundary bc);

/// Diagonal 0/1 projector onto the window-count-r eigenspace, materialized
/// in the full 2^L product space (L <= 14).
OperatorMatrix build_fragment_projector(int length, int ell, int r, Boundary bc);

struct FragmentationReport {
    int length = 0;
    int ell = 0;
    Boundary bc = Boundary::Open;
    bool projectors_complete = false;   // window counts partition the space
    bool allowed_set_matches = false;   // r = 0 support equals the basis
    bool hamiltonian_matches = false;   // p0 H0 p0 equals the direct build
    double max_entry_difference = 0.0;
    std::vector<std::int64_t> sector_dims;  // indexed by r
    bool passed() const {
        return projectors_complete && allowed_set_matches && hamiltonian_matches;
    }
};

/// Check that the window-count projectors fragment the full space and that
/// the r = 0 block of the free Hamiltonian reproduces the constrained one.
/// Failures are reported, not thrown (L <= 12).
FragmentationReport verify_fragmentation(int length, int ell, Boundary bc);

// Matrix-free operators on full 2^L product-space vectors, used for
// embedding residuals and small-system oracles.
Eigen::VectorXd apply_h0_full(const Eigen::VectorXd& psi, int length, double omega);
Eigen::VectorXd apply_jx_full(const Eigen::VectorXd& psi, int length);
Eigen::VectorXd apply_jz_full(const Eigen::VectorXd& psi, int length);
Eigen::VectorXd apply_j2_full(const Eigen::VectorXd& psi, int length);

/// Expand constrained-basis coordinates into the full 2^L space.
Eigen::VectorXd embed_full(const ConstrainedBasis& basis, const Eigen::VectorXd& coords);

}  // namespace scarchain
