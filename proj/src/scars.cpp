#include "scarchain/scars.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "scarchain/errors.hpp"

namespace scarchain {

namespace {

constexpr int kMaxEmbedLength = 20;

double round_to_half_grid(double x, bool half_integer_grid) {
    const double offset = half_integer_grid ? 0.5 : 0.0;
    return std::round(x - offset) + offset;
}

bool at_special_multiple(double energy, double omega, int length, double tol) {
    const double x = energy / omega;
    const double target = round_to_half_grid(x, length % 2 != 0);
    return std::abs(x - target) <= tol;
}

/// Eigen-based resolver for the small restricted blocks inside one cluster.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small_eig(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("cluster resolution failed");
    return es;
}

}  // namespace

std::vector<ScarRecord> find_dicke_scars(const Spectrum& spec, const OperatorMatrix& jx,
                                         const OperatorMatrix& j2_projected,
                                         const OperatorMatrix& j2_sum_sq,
                                         const OperatorMatrix& jz, double omega,
                                         const DickeTolerances& tol, const ScarContext& ctx) {
    if (!spec.eigenvectors) throw std::invalid_argument("find_dicke_scars: vectors required");
    if (jx.dim() != spec.dim() || j2_projected.dim() != spec.dim() || jz.dim() != spec.dim() ||
        j2_sum_sq.dim() != spec.dim()) {
        throw std::invalid_argument("find_dicke_scars: operator dimension mismatch");
    }
    const int length = spec.params.length;
    const bool odd = length % 2 != 0;
    const ConstrainedBasis* basis = ctx.basis;
    if (ctx.sector != nullptr) basis = &ctx.sector->parent();
    const bool can_embed = basis != nullptr && length <= kMaxEmbedLength;

    const double cluster_tol = tol.cluster > 0.0 ? tol.cluster : 1e-8 * omega;
    const auto clusters = detect_degeneracies(spec, cluster_tol);
    const auto& vecs = *spec.eigenvectors;

    std::vector<ScarRecord> records;
    for (const auto& cluster : clusters) {
        if (!at_special_multiple(cluster.center, omega, length, tol.special_energy)) continue;
        const double m_x = round_to_half_grid(cluster.center / omega, odd);
        const int m = cluster.multiplicity;

        Eigen::MatrixXd span(spec.dim(), m);
        for (int c = 0; c < m; ++c) span.col(c) = vecs.col(cluster.members[c]);

        // Resolve the arbitrary mixing: restricted J^x first, then J^2
        // within each J^x eigenvalue group.
        const auto jx_eig = small_eig(span.transpose() * (jx.mat * span));
        const Eigen::MatrixXd jx_states = span * jx_eig.eigenvectors();

        int g0 = 0;
        for (int g = 1; g <= m; ++g) {
            if (g < m && jx_eig.eigenvalues()(g) - jx_eig.eigenvalues()(g0) <= 1e-6) continue;
            Eigen::MatrixXd group = jx_states.middleCols(g0, g - g0);
            const double mu = jx_eig.eigenvalues().segment(g0, g - g0).mean();
            const auto j2_eig = small_eig(group.transpose() * (j2_projected.mat * group));
            const Eigen::MatrixXd resolved = group * j2_eig.eigenvectors();
            for (int c = 0; c < resolved.cols(); ++c) {
                const Eigen::VectorXd psi = resolved.col(c);
                const double lambda = j2_eig.eigenvalues()(c);
                double j = 0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * lambda)));
                j = std::max(0.0, round_to_half_grid(j, std::abs(m_x) - std::floor(std::abs(m_x)) > 0.25));
                const double j_ref = j * (j + 1.0);

                ScarRecord rec;
                rec.energy = cluster.center;
                rec.sector_tag = spec.source_tag;
                rec.m_x = m_x;
                rec.j = j;
                rec.j2_sum_of_squares = psi.dot(j2_sum_sq.mat * psi);
                rec.j2_projected = psi.dot(j2_projected.mat * psi);
                rec.variants_differ = std::abs(rec.j2_projected - rec.j2_sum_of_squares) > 1e-9;
                if (can_embed) {
                    Eigen::VectorXd parent =
                        ctx.sector != nullptr ? ctx.sector->lift(psi) : psi;
                    const Eigen::VectorXd full = embed_full(*basis, parent);
                    rec.residual_jx = (apply_jx_full(full, length) - m_x * full).norm();
                    rec.residual_j2 = (apply_j2_full(full, length) - j_ref * full).norm();
                    rec.eev_jz = full.dot(apply_jz_full(full, length));
                    rec.full_space_residuals = true;
                } else {
                    rec.residual_jx = (jx.mat * psi - mu * psi).norm();
                    rec.residual_j2 = (j2_projected.mat * psi - j_ref * psi).norm();
                    rec.eev_jz = psi.dot(jz.mat * psi);
                }
                rec.flagged = rec.residual_jx <= tol.scar && rec.residual_j2 <= tol.scar;
                records.push_back(std::move(rec));
            }
            g0 = g;
        }
    }
    return records;
}

namespace {

struct SectorBundle {
    std::shared_ptr<const ConstrainedBasis> basis;
    std::unique_ptr<SymmetrySector> sector;  // null for a full-basis run
    OperatorMatrix h;
    std::string tag;
};

SectorBundle make_bundle(const ModelParams& params, int k, Parity parity) {
    SectorBundle b;
    b.basis = std::make_shared<ConstrainedBasis>(enumerate_basis(params.length, params.ell, params.bc));
    if (k >= 0) {
        b.sector = std::make_unique<SymmetrySector>(build_sector(b.basis, k, parity));
        b.h = build_sector_hamiltonian(*b.sector, params);
        b.tag = b.sector->tag();
    } else {
        b.h = build_constrained_hamiltonian(*b.basis, params);
        b.tag = b.basis->tag();
    }
    return b;
}

SpectrumParams spectrum_params(const ModelParams& params, int k, Parity parity) {
    SpectrumParams sp;
    sp.length = params.length;
    sp.ell = params.ell;
    sp.bc = params.bc;
    sp.k = k;
    sp.parity = parity;
    sp.omega = params.omega;
    sp.lambda = params.lambda;
    return sp;
}

}  // namespace

std::vector<ScarRecord> scan_dicke_scars(const ModelParams& params, int k, Parity parity,
                                         const DickeTolerances& tol) {
    params.validate();
    SectorBundle b = make_bundle(params, k, parity);
    const Spectrum spec = diagonalize(b.h, true, spectrum_params(params, k, parity));

    OperatorMatrix jx, j2p, j2s, jz;
    if (b.sector) {
        jx = build_observable(*b.sector, Observable::Jx);
        j2p = build_observable(*b.sector, Observable::JsquaredFull);
        j2s = build_observable(*b.sector, Observable::Jsquared);
        jz = build_observable(*b.sector, Observable::Jz);
    } else {
        jx = build_observable(*b.basis, Observable::Jx);
        j2p = build_observable(*b.basis, Observable::JsquaredFull);
        j2s = build_observable(*b.basis, Observable::Jsquared);
        jz = build_observable(*b.basis, Observable::Jz);
    }
    ScarContext ctx;
    if (b.sector) ctx.sector = b.sector.get(); else ctx.basis = b.basis.get();
    return find_dicke_scars(spec, jx, j2p, j2s, jz, params.omega, tol, ctx);
}

std::vector<ScarCountRow> count_scars_vs_size(int ell, const std::vector<int>& L_list, int k,
                                              Parity parity, double omega) {
    std::vector<ScarCountRow> rows;
    for (const int L : L_list) {
        ModelParams params;
        params.length = L;
        params.ell = ell;
        params.bc = Boundary::Periodic;
        params.omega = omega;
        SectorBundle b = make_bundle(params, k, parity);
        const Spectrum spec = diagonalize(b.h, false, spectrum_params(params, k, parity));
        ScarCountRow row;
        row.length = L;
        row.sector_dim = spec.dim();
        for (const auto& cluster : detect_degeneracies(spec)) {
            if (cluster.multiplicity < 2) continue;
            if (!at_special_multiple(cluster.center, omega, L, 1e-6)) continue;
            row.degenerate_multiplicity += cluster.multiplicity;
        }
        rows.push_back(row);
    }
    return rows;
}

SpecialScarResult find_ell3_special_scars(int length, double omega) {
    if (length < 7 || length % 2 == 0) {
        throw std::invalid_argument("find_ell3_special_scars: length must be odd and >= 7");
    }
    const double target = 0.5 * std::sqrt(7.0) * omega;
    constexpr double kEnergyTol = 1e-8;
    constexpr double kEevTol = 1e-8;
    constexpr double kJ2Tol = 1e-6;

    SpecialScarResult result;
    ModelParams params;
    params.length = length;
    params.ell = 3;
    params.bc = Boundary::Periodic;
    params.omega = omega;

    auto basis = std::make_shared<const ConstrainedBasis>(enumerate_basis(length, 3, Boundary::Periodic));
    for (const Parity parity : {Parity::Even, Parity::Odd}) {
        const SymmetrySector sector = build_sector(basis, 0, parity);
        if (sector.dim() == 0) continue;
        const OperatorMatrix h = build_sector_hamiltonian(sector, params);
        const Spectrum spec = diagonalize(h, true, spectrum_params(params, 0, parity));
        const OperatorMatrix jz = build_observable(sector, Observable::Jz);

        for (std::int64_t a = 0; a < spec.dim(); ++a) {
            const double e = spec.eigenvalues(a);
            if (std::min(std::abs(e - target), std::abs(e + target)) > 10.0 * omega * kEnergyTol &&
                result.found) {
                continue;
            }
            const Eigen::VectorXd psi = spec.eigenvectors->col(a);
            const Eigen::VectorXd full = embed_full(*basis, sector.lift(psi));
            const double eev_jz = full.dot(apply_jz_full(full, length));
            const double j2 = full.dot(apply_j2_full(full, length));
            const double res_j2 = (apply_j2_full(full, length) - 3.75 * full).norm();

            ScarRecord rec;
            rec.energy = e;
            rec.sector_tag = spec.source_tag;
            rec.m_x = e / omega;
            rec.j = 1.5;
            rec.eev_jz = eev_jz;
            rec.j2_projected = j2;
            rec.j2_sum_of_squares = j2;
            rec.residual_j2 = res_j2;
            rec.full_space_residuals = true;
            const bool energy_ok = std::min(std::abs(e - target), std::abs(e + target)) <= kEnergyTol;
            const bool eev_ok = std::abs(eev_jz + 3.0 / 7.0) <= kEevTol;
            const bool j2_ok = std::abs(j2 - 3.75) <= kJ2Tol;
            rec.flagged = energy_ok && eev_ok && j2_ok;
            if (rec.flagged) {
                result.records.push_back(rec);
            } else if (std::min(std::abs(e - target), std::abs(e + target)) <= 0.05 * omega) {
                result.nearest.push_back(rec);
            }
        }
    }
    std::sort(result.records.begin(), result.records.end(),
              [](const ScarRecord& x, const ScarRecord& y) { return x.energy < y.energy; });
    result.found = result.records.size() == 2 &&
                   std::abs(result.records[0].energy + target) <= kEnergyTol &&
                   std::abs(result.records[1].energy - target) <= kEnergyTol;
    result.message = result.found
                         ? "found the +-sqrt(7)/2 pair"
                         : "expected exactly two states at +-sqrt(7)/2 with <Jz> = -3/7";
    return result;
}

}  // namespace scarchain
