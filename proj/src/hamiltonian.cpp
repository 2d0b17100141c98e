#include "scarchain/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "scarchain/errors.hpp"

namespace scarchain {

namespace {
constexpr int kMaxFullSpaceLength = 24;       // matrix-free vector ops
constexpr int kMaxProjectorLength = 14;       // dense 2^L materialization
constexpr int kMaxFragmentCheckLength = 12;
}

void ModelParams::validate() const {
    if (length < 1) throw std::invalid_argument("ModelParams: length must be >= 1");
    if (ell < 0 || ell > length) throw std::invalid_argument("ModelParams: ell out of range");
    if (!(omega > 0.0)) throw std::invalid_argument("ModelParams: omega must be positive");
    if (std::abs(lambda) > 0.1 * omega) {
        std::cerr << "warning: |lambda| = " << std::abs(lambda) << " exceeds 0.1*omega = "
                  << 0.1 * omega << "; the perturbative regime is left\n";
    }
}

std::string ModelParams::tag() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "L=%d,ell=%d,bc=%s,omega=%.12g,lambda=%.12g", length, ell,
                  to_string(bc).c_str(), omega, lambda);
    return buf;
}

std::string to_string(Observable kind) {
    switch (kind) {
        case Observable::Jx: return "Jx";
        case Observable::JySquaredPart: return "Jy2";
        case Observable::Jz: return "Jz";
        case Observable::Jsquared: return "J2";
        case Observable::JsquaredFull: return "J2full";
    }
    return "?";
}

LocalAction hamiltonian_action(const ModelParams& params) {
    const int L = params.length;
    const double half_omega = 0.5 * params.omega;
    const double lambda = params.lambda;
    const bool periodic = params.bc == Boundary::Periodic;
    return [L, half_omega, lambda, periodic](state_t s,
                                             const std::function<void(state_t, double)>& emit) {
        for (int m = 0; m < L; ++m) {
            double coeff = half_omega;
            if (lambda != 0.0 && L > 1) {
                // sigma^x_m sigma^z_{m+1} and sigma^z_{m-1} sigma^x_m pick up
                // the z sign of the untouched neighbor on an existing bond.
                if (periodic || m + 1 < L) coeff += lambda * z_sign(s, (m + 1) % L);
                if (periodic || m - 1 >= 0) coeff += lambda * z_sign(s, (m - 1 + L) % L);
            }
            emit(s ^ (state_t{1} << m), coeff);
        }
    };
}

namespace {

LocalAction jx_action(int L) {
    return [L](state_t s, const std::function<void(state_t, double)>& emit) {
        for (int m = 0; m < L; ++m) emit(s ^ (state_t{1} << m), 0.5);
    };
}

LocalAction jz_action(int L) {
    return [L](state_t s, const std::function<void(state_t, double)>& emit) {
        emit(s, popcount(s) - 0.5 * L);
    };
}

/// (P J^y P)^2 with the constraint projector applied between the factors.
/// Matrix elements of J^y are +-i/2; the two factors of i combine to a
/// real coefficient -g(s,m1) g(s1,m2) with g = +1/2 on an up spin.
LocalAction jy_squared_action(int L, std::function<bool(state_t)> allowed) {
    return [L, allowed = std::move(allowed)](state_t s,
                                             const std::function<void(state_t, double)>& emit) {
        for (int m1 = 0; m1 < L; ++m1) {
            const double g1 = (s >> m1) & 1 ? 0.5 : -0.5;
            const state_t s1 = s ^ (state_t{1} << m1);
            if (!allowed(s1)) continue;
            for (int m2 = 0; m2 < L; ++m2) {
                const double g2 = (s1 >> m2) & 1 ? 0.5 : -0.5;
                emit(s1 ^ (state_t{1} << m2), -g1 * g2);
            }
        }
    };
}

/// Projection of the unconstrained J^2: diagonal m_z^2 + L/2 plus unit
/// matrix elements between configurations related by one up-spin move.
LocalAction j2_full_action(int L) {
    return [L](state_t s, const std::function<void(state_t, double)>& emit) {
        const double mz = popcount(s) - 0.5 * L;
        emit(s, mz * mz + 0.5 * L);
        for (int i = 0; i < L; ++i) {
            if (!((s >> i) & 1)) continue;
            for (int j = 0; j < L; ++j) {
                if ((s >> j) & 1) continue;
                emit((s ^ (state_t{1} << i)) | (state_t{1} << j), 1.0);
            }
        }
    };
}

/// Column-wise assembly with projection onto the basis; only the lower
/// triangle is computed and the matrix is mirrored entry by entry.
OperatorMatrix assemble_basis_operator(const ConstrainedBasis& basis, const LocalAction& action,
                                       const std::string& name) {
    const std::int64_t n = basis.dim();
    OperatorMatrix op;
    op.basis_tag = basis.tag();
    op.mat = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> scratch(static_cast<std::size_t>(n), 0.0);
    std::vector<std::int64_t> touched;
    for (std::int64_t j = 0; j < n; ++j) {
        action(basis.state(j), [&](state_t target, double coeff) {
            const std::int64_t i = basis.index_of(target);
            if (i < 0) return;  // projected out
            if (scratch[static_cast<std::size_t>(i)] == 0.0) touched.push_back(i);
            scratch[static_cast<std::size_t>(i)] += coeff;
        });
        for (const auto i : touched) {
            if (i >= j) op.mat(i, j) = scratch[static_cast<std::size_t>(i)];
            scratch[static_cast<std::size_t>(i)] = 0.0;
        }
        touched.clear();
    }
    for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = j + 1; i < n; ++i) op.mat(j, i) = op.mat(i, j);
    op.basis_tag += ",op=" + name;
    return op;
}

}  // namespace

OperatorMatrix build_basis_operator(const ConstrainedBasis& basis, const LocalAction& action,
                                    const std::string& name) {
    return assemble_basis_operator(basis, action, name);
}

OperatorMatrix build_constrained_hamiltonian(const ConstrainedBasis& basis,
                                             const ModelParams& params) {
    params.validate();
    if (params.length != basis.length() || params.ell != basis.ell() || params.bc != basis.bc()) {
        throw std::invalid_argument("build_constrained_hamiltonian: params do not match the basis");
    }
    return assemble_basis_operator(basis, hamiltonian_action(params), "H");
}

OperatorMatrix build_sector_operator(const SymmetrySector& sector, const LocalAction& action,
                                     const std::string& name) {
    if (!sector.is_real()) {
        throw UnsupportedFeatureError(
            "build_sector_operator: general momentum needs the doubled complex path");
    }
    const ConstrainedBasis& parent = sector.parent();
    const std::int64_t n = sector.dim();
    OperatorMatrix op;
    op.basis_tag = sector.tag() + ",op=" + name;
    op.mat = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> scratch(static_cast<std::size_t>(parent.dim()), 0.0);
    std::vector<std::int64_t> touched;
    for (std::int64_t j = 0; j < n; ++j) {
        const auto& column = sector.entries()[static_cast<std::size_t>(j)];
        for (std::size_t t = 0; t < column.parent_index.size(); ++t) {
            const double a = column.amplitude[t].real();
            action(parent.state(column.parent_index[t]), [&](state_t target, double coeff) {
                const std::int64_t q = parent.index_of(target);
                if (q < 0) return;                 // constraint projection
                if (sector.owner(q) < 0) return;   // no weight in this sector
                if (scratch[static_cast<std::size_t>(q)] == 0.0) touched.push_back(q);
                scratch[static_cast<std::size_t>(q)] += a * coeff;
            });
        }
        for (const auto q : touched) {
            const std::int64_t i = sector.owner(q);
            if (i >= j) op.mat(i, j) += sector.amplitude_at(q).real() * scratch[static_cast<std::size_t>(q)];
            scratch[static_cast<std::size_t>(q)] = 0.0;
        }
        touched.clear();
    }
    for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = j + 1; i < n; ++i) op.mat(j, i) = op.mat(i, j);
    return op;
}

OperatorMatrix build_sector_hamiltonian(const SymmetrySector& sector, const ModelParams& params) {
    params.validate();
    const ConstrainedBasis& parent = sector.parent();
    if (params.length != parent.length() || params.ell != parent.ell() ||
        params.bc != parent.bc()) {
        throw std::invalid_argument("build_sector_hamiltonian: params do not match the sector");
    }
    return build_sector_operator(sector, hamiltonian_action(params), "H");
}

Eigen::MatrixXcd build_sector_operator_complex(const SymmetrySector& sector,
                                               const LocalAction& action) {
    const ConstrainedBasis& parent = sector.parent();
    const std::int64_t n = sector.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(parent.dim()), 0.0);
    std::vector<std::int64_t> touched;
    for (std::int64_t j = 0; j < n; ++j) {
        const auto& column = sector.entries()[static_cast<std::size_t>(j)];
        for (std::size_t t = 0; t < column.parent_index.size(); ++t) {
            const std::complex<double> a = column.amplitude[t];
            action(parent.state(column.parent_index[t]), [&](state_t target, double coeff) {
                const std::int64_t q = parent.index_of(target);
                if (q < 0) return;
                if (sector.owner(q) < 0) return;
                if (scratch[static_cast<std::size_t>(q)] == 0.0) touched.push_back(q);
                scratch[static_cast<std::size_t>(q)] += a * coeff;
            });
        }
        for (const auto q : touched) {
            m(sector.owner(q), j) += std::conj(sector.amplitude_at(q)) * scratch[static_cast<std::size_t>(q)];
            scratch[static_cast<std::size_t>(q)] = 0.0;
        }
        touched.clear();
    }
    // Hermitize from the lower triangle (roundoff only).
    for (std::int64_t j = 0; j < n; ++j) {
        m(j, j) = m(j, j).real();
        for (std::int64_t i = j + 1; i < n; ++i) m(j, i) = std::conj(m(i, j));
    }
    return m;
}

OperatorMatrix build_sector_hamiltonian_doubled(const SymmetrySector& sector,
                                                const ModelParams& params) {
    params.validate();
    const Eigen::MatrixXcd h = build_sector_operator_complex(sector, hamiltonian_action(params));
    const std::int64_t n = h.rows();
    OperatorMatrix op;
    op.basis_tag = sector.tag() + ",op=H,doubled";
    op.mat.resize(2 * n, 2 * n);
    op.mat.topLeftCorner(n, n) = h.real();
    op.mat.bottomRightCorner(n, n) = h.real();
    op.mat.topRightCorner(n, n) = -h.imag();
    op.mat.bottomLeftCorner(n, n) = h.imag();
    return op;
}

namespace {

LocalAction observable_action(Observable kind, int L, std::function<bool(state_t)> allowed) {
    switch (kind) {
        case Observable::Jx: return jx_action(L);
        case Observable::Jz: return jz_action(L);
        case Observable::JySquaredPart: return jy_squared_action(L, std::move(allowed));
        case Observable::JsquaredFull: return j2_full_action(L);
        default:
            throw std::invalid_argument("observable_action: composite kind handled by caller");
    }
}

}  // namespace

OperatorMatrix build_observable(const ConstrainedBasis& basis, Observable kind) {
    const int L = basis.length();
    auto allowed = [&basis](state_t s) { return basis.contains(s); };
    if (kind == Observable::Jsquared) {
        OperatorMatrix jx = build_observable(basis, Observable::Jx);
        OperatorMatrix jy2 = build_observable(basis, Observable::JySquaredPart);
        OperatorMatrix jz = build_observable(basis, Observable::Jz);
        OperatorMatrix op;
        op.basis_tag = basis.tag() + ",op=J2";
        op.mat = jx.mat * jx.mat + jy2.mat + jz.mat * jz.mat;
        // Squares of exactly symmetric matrices can pick up roundoff skew.
        op.mat = ((op.mat + op.mat.transpose()) * 0.5).eval();
        return op;
    }
    return build_basis_operator(basis, observable_action(kind, L, allowed), to_string(kind));
}

OperatorMatrix build_observable(const SymmetrySector& sector, Observable kind) {
    const ConstrainedBasis& parent = sector.parent();
    const int L = parent.length();
    auto allowed = [&parent](state_t s) { return parent.contains(s); };
    if (kind == Observable::Jsquared) {
        OperatorMatrix jx = build_observable(sector, Observable::Jx);
        OperatorMatrix jy2 = build_observable(sector, Observable::JySquaredPart);
        OperatorMatrix jz = build_observable(sector, Observable::Jz);
        OperatorMatrix op;
        op.basis_tag = sector.tag() + ",op=J2";
        op.mat = jx.mat * jx.mat + jy2.mat + jz.mat * jz.mat;
        op.mat = ((op.mat + op.mat.transpose()) * 0.5).eval();
        return op;
    }
    return build_sector_operator(sector, observable_action(kind, L, allowed), to_string(kind));
}

int window_count(state_t bits, int length, int ell, Boundary bc) {
    if (ell < 1 || ell > length) throw std::invalid_argument("window_count: ell out of range");
    if (bc == Boundary::Periodic) {
        state_t w = bits;
        for (int i = 1; i < ell; ++i) w &= rotate_left(bits, length, length - i);
        return popcount(w);
    }
    state_t w = bits;
    for (int i = 1; i < ell; ++i) w &= (bits >> i);
    return popcount(w & chain_mask(length - ell + 1));
}

OperatorMatrix build_fragment_projector(int length, int ell, int r, Boundary bc) {
    if (length < 1 || length > kMaxProjectorLength) {
        throw ResourceError("build_fragment_projector: L must be within 1.." +
                            std::to_string(kMaxProjectorLength));
    }
    const int max_windows = (bc == Boundary::Periodic) ? length : length - ell + 1;
    if (r < 0 || r > max_windows) {
        throw std::invalid_argument("build_fragment_projector: r out of range");
    }
    const std::int64_t dim = std::int64_t{1} << length;
    OperatorMatrix op;
    op.basis_tag = "full,L=" + std::to_string(length) + ",ell=" + std::to_string(ell) +
                   ",bc=" + to_string(bc) + ",op=p" + std::to_string(r);
    op.mat = Eigen::MatrixXd::Zero(dim, dim);
    for (std::int64_t s = 0; s < dim; ++s) {
        if (window_count(static_cast<state_t>(s), length, ell, bc) == r) op.mat(s, s) = 1.0;
    }
    return op;
}

FragmentationReport verify_fragmentation(int length, int ell, Boundary bc) {
    if (length < 1 || length > kMaxFragmentCheckLength) {
        throw ResourceError("verify_fragmentation: L must be within 1.." +
                            std::to_string(kMaxFragmentCheckLength));
    }
    if (ell < 1 || ell > length) throw std::invalid_argument("verify_fragmentation: ell out of range");

    FragmentationReport report;
    report.length = length;
    report.ell = ell;
    report.bc = bc;

    const std::int64_t dim = std::int64_t{1} << length;
    const int max_windows = (bc == Boundary::Periodic) ? length : length - ell + 1;
    std::vector<int> counts(static_cast<std::size_t>(dim));
    std::vector<std::int64_t> sector_dims(static_cast<std::size_t>(max_windows) + 1, 0);
    bool complete = true;
    for (std::int64_t s = 0; s < dim; ++s) {
        const int r = window_count(static_cast<state_t>(s), length, ell, bc);
        counts[static_cast<std::size_t>(s)] = r;
        if (r < 0 || r > max_windows) { complete = false; continue; }
        ++sector_dims[static_cast<std::size_t>(r)];
    }
    std::int64_t total = 0;
    for (const auto d : sector_dims) total += d;
    report.projectors_complete = complete && total == dim;
    while (!sector_dims.empty() && sector_dims.back() == 0) sector_dims.pop_back();
    report.sector_dims = sector_dims;

    const ConstrainedBasis basis = enumerate_basis(length, ell, bc);
    bool allowed_matches = basis.dim() == report.sector_dims[0];
    for (std::int64_t i = 0; allowed_matches && i < basis.dim(); ++i) {
        if (counts[static_cast<std::size_t>(basis.state(i))] != 0) allowed_matches = false;
    }
    report.allowed_set_matches = allowed_matches;

    // p0 H0 p0 on the r = 0 support vs. the directly assembled matrix.
    ModelParams params;
    params.length = length;
    params.ell = ell;
    params.bc = bc;
    const OperatorMatrix direct = build_constrained_hamiltonian(basis, params);
    double max_diff = 0.0;
    for (std::int64_t a = 0; a < basis.dim(); ++a) {
        for (std::int64_t b = 0; b < basis.dim(); ++b) {
            const double h0 =
                popcount(basis.state(a) ^ basis.state(b)) == 1 ? 0.5 * params.omega : 0.0;
            max_diff = std::max(max_diff, std::abs(h0 - direct.mat(a, b)));
        }
    }
    report.max_entry_difference = max_diff;
    report.hamiltonian_matches = max_diff <= 1e-12 * params.omega;
    return report;
}

Eigen::VectorXd apply_h0_full(const Eigen::VectorXd& psi, int length, double omega) {
    Eigen::VectorXd out = apply_jx_full(psi, length);
    out *= omega;
    return out;
}

Eigen::VectorXd apply_jx_full(const Eigen::VectorXd& psi, int length) {
    if (length > kMaxFullSpaceLength) throw ResourceError("apply_jx_full: L over full-space budget");
    const std::int64_t dim = std::int64_t{1} << length;
    if (psi.size() != dim) throw std::invalid_argument("apply_jx_full: dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (std::int64_t s = 0; s < dim; ++s) {
        const double c = 0.5 * psi(s);
        if (c == 0.0) continue;
        for (int m = 0; m < length; ++m) out(s ^ (std::int64_t{1} << m)) += c;
    }
    return out;
}

Eigen::VectorXd apply_jz_full(const Eigen::VectorXd& psi, int length) {
    const std::int64_t dim = std::int64_t{1} << length;
    if (psi.size() != dim) throw std::invalid_argument("apply_jz_full: dimension mismatch");
    Eigen::VectorXd out(dim);
    for (std::int64_t s = 0; s < dim; ++s) {
        out(s) = (popcount(static_cast<state_t>(s)) - 0.5 * length) * psi(s);
    }
    return out;
}

Eigen::VectorXd apply_j2_full(const Eigen::VectorXd& psi, int length) {
    if (length > kMaxFullSpaceLength) throw ResourceError("apply_j2_full: L over full-space budget");
    const std::int64_t dim = std::int64_t{1} << length;
    if (psi.size() != dim) throw std::invalid_argument("apply_j2_full: dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (std::int64_t s = 0; s < dim; ++s) {
        const double c = psi(s);
        if (c == 0.0) continue;
        const double mz = popcount(static_cast<state_t>(s)) - 0.5 * length;
        out(s) += (mz * mz + 0.5 * length) * c;
        for (int i = 0; i < length; ++i) {
            if (!((s >> i) & 1)) continue;
            for (int j = 0; j < length; ++j) {
                if ((s >> j) & 1) continue;
                out((s ^ (std::int64_t{1} << i)) | (std::int64_t{1} << j)) += c;
            }
        }
    }
    return out;
}

Eigen::VectorXd embed_full(const ConstrainedBasis& basis, const Eigen::VectorXd& coords) {
    if (basis.length() > kMaxFullSpaceLength) throw ResourceError("embed_full: L over budget");
    if (coords.size() != basis.dim()) throw std::invalid_argument("embed_full: size mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(std::int64_t{1} << basis.length());
    for (std::int64_t i = 0; i < basis.dim(); ++i) {
        out(static_cast<std::int64_t>(basis.state(i))) = coords(i);
    }
    return out;
}

}  // namespace scarchain
