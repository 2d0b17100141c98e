#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scarchain/eth.hpp"
#include "scarchain/spectral.hpp"

namespace scarchain {

/// One candidate scar state after resolving any degeneracy with the
/// restricted J^x (then J^2) rotation.
struct ScarRecord {
    double energy = 0.0;
    std::string sector_tag;
    double m_x = 0.0;          // candidate quantum number from E / omega
    double j = 0.0;            // from the resolved J^2 eigenvalue
    double residual_jx = 0.0;  // |(J^x - m_x) psi|
    double residual_j2 = 0.0;  // |(J^2 - j(j+1)) psi|
    double eev_jz = 0.0;
    double j2_projected = 0.0;       // <psi| P J^2 P |psi>
    double j2_sum_of_squares = 0.0;  // sum-of-squared-projections variant
    bool variants_differ = false;    // the two J^2 readings differ > 1e-9
    bool full_space_residuals = false;
    bool flagged = false;
};

struct DickeTolerances {
    double cluster = -1.0;       // degeneracy clustering; default 1e-8 * omega
    double special_energy = 1e-6;  // distance to an integer/half-integer * omega
    double scar = 1e-7;          // residual threshold for flagging
};

/// Coordinate context for lifting sector spectra and embedding into the
/// full product space; at most one of the two pointers is set.
struct ScarContext {
    const SymmetrySector* sector = nullptr;
    const ConstrainedBasis* basis = nullptr;
};

/// Scan eigenstates at integer (even L) or half-integer (odd L) multiples
/// of omega; within each cluster diagonalize the restricted J^x and then
/// J^2, and test residuals state by state. Residuals are evaluated in the
/// full 2^L space whenever the context allows the embedding.
std::vector<ScarRecord> find_dicke_scars(const Spectrum& spec, const OperatorMatrix& jx,
                                         const OperatorMatrix& j2_projected,
                                         const OperatorMatrix& j2_sum_sq,
                                         const OperatorMatrix& jz, double omega,
                                         const DickeTolerances& tol, const ScarContext& ctx);

/// Build everything for one (L, ell, k, p) point and run the Dicke scan.
/// k < 0 scans the full constrained basis without symmetry reduction.
std::vector<ScarRecord> scan_dicke_scars(const ModelParams& params, int k, Parity parity,
                                         const DickeTolerances& tol = {});

struct ScarCountRow {
    int length = 0;
    std::int64_t sector_dim = 0;
    std::int64_t degenerate_multiplicity = 0;  // states in multi-member special clusters
};

/// Degeneracy growth table: per L, the total multiplicity of degenerate
/// clusters centered at integer/half-integer multiples of omega.
std::vector<ScarCountRow> count_scars_vs_size(int ell, const std::vector<int>& L_list, int k,
                                              Parity parity, double omega = 1.0);

struct SpecialScarResult {
    bool found = false;
    std::string message;
    std::vector<ScarRecord> records;   // the +-sqrt(7)/2 pair when found
    std::vector<ScarRecord> nearest;   // diagnostics when the search fails
};

/// The two analytic ell = 3 eigenstates at E = +-sqrt(7)/2 omega with
/// <J^z> = -3/7 and total angular momentum j = 3/2 (odd L >= 7, periodic
/// chain, both k = 0 parity sectors searched).
SpecialScarResult find_ell3_special_scars(int length, double omega = 1.0);

}  // namespace scarchain
