#include "scarchain/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scarchain/errors.hpp"

namespace scarchain {

std::string to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "+1";
        case Parity::Odd: return "-1";
        default: return "none";
    }
}

Parity parity_from_string(const std::string& s) {
    if (s == "+1" || s == "even" || s == "+") return Parity::Even;
    if (s == "-1" || s == "odd" || s == "-") return Parity::Odd;
    if (s == "none" || s.empty()) return Parity::None;
    throw std::invalid_argument("unknown parity '" + s + "'");
}

std::vector<TranslationOrbit> build_orbits(const ConstrainedBasis& basis) {
    if (basis.bc() != Boundary::Periodic) {
        throw std::invalid_argument("build_orbits: translation orbits require periodic boundaries");
    }
    const int L = basis.length();
    std::vector<bool> visited(static_cast<std::size_t>(basis.dim()), false);
    std::vector<TranslationOrbit> orbits;
    for (std::int64_t i = 0; i < basis.dim(); ++i) {
        if (visited[static_cast<std::size_t>(i)]) continue;
        const state_t rep = basis.state(i);  // ascending scan makes this minimal
        int period = 0;
        state_t s = rep;
        do {
            visited[static_cast<std::size_t>(basis.index_of(s))] = true;
            s = rotate_left(s, L, 1);
            ++period;
        } while (s != rep);
        orbits.push_back({rep, period});
    }
    return orbits;
}

SymmetrySector::SymmetrySector(std::shared_ptr<const ConstrainedBasis> parent, int k, Parity parity,
                               std::vector<SectorVector> entries)
    : parent_(std::move(parent)), k_(k), parity_(parity), entries_(std::move(entries)) {
    owner_.assign(static_cast<std::size_t>(parent_->dim()), -1);
    amplitude_.assign(static_cast<std::size_t>(parent_->dim()), {0.0, 0.0});
    for (std::size_t e = 0; e < entries_.size(); ++e) {
        const auto& v = entries_[e];
        for (std::size_t t = 0; t < v.parent_index.size(); ++t) {
            owner_[static_cast<std::size_t>(v.parent_index[t])] = static_cast<std::int64_t>(e);
            amplitude_[static_cast<std::size_t>(v.parent_index[t])] = v.amplitude[t];
        }
    }
}

bool SymmetrySector::is_real() const {
    return k_ == 0 || 2 * k_ == parent_->length();
}

Eigen::VectorXd SymmetrySector::lift(const Eigen::VectorXd& sector_coords) const {
    if (!is_real()) throw UnsupportedFeatureError("lift: real lift requires k = 0 or k = L/2");
    if (sector_coords.size() != dim()) throw std::invalid_argument("lift: coordinate size mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(parent_->dim());
    for (std::int64_t e = 0; e < dim(); ++e) {
        const auto& v = entries_[static_cast<std::size_t>(e)];
        for (std::size_t t = 0; t < v.parent_index.size(); ++t) {
            out(v.parent_index[t]) += v.amplitude[t].real() * sector_coords(e);
        }
    }
    return out;
}

Eigen::MatrixXcd SymmetrySector::embedding() const {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(parent_->dim(), dim());
    for (std::int64_t e = 0; e < dim(); ++e) {
        const auto& v = entries_[static_cast<std::size_t>(e)];
        for (std::size_t t = 0; t < v.parent_index.size(); ++t) {
            b(v.parent_index[t], e) = v.amplitude[t];
        }
    }
    return b;
}

std::string SymmetrySector::tag() const {
    return parent_->tag() + ",k=" + std::to_string(k_) + ",p=" + to_string(parity_);
}

namespace {

/// Momentum phase exp(-i 2 pi k r / L); exact +-1 at k = 0 and k = L/2.
std::complex<double> momentum_phase(int k, int r, int L) {
    if (k == 0) return {1.0, 0.0};
    if (2 * k == L) return {(r % 2 == 0) ? 1.0 : -1.0, 0.0};
    const double arg = -2.0 * std::numbers::pi * k * r / L;
    return {std::cos(arg), std::sin(arg)};
}

SectorVector momentum_vector(const ConstrainedBasis& basis, const TranslationOrbit& orbit, int k) {
    const int L = basis.length();
    SectorVector v;
    v.representative = orbit.representative;
    v.period = orbit.period;
    const double norm = 1.0 / std::sqrt(static_cast<double>(orbit.period));
    state_t s = orbit.representative;
    for (int r = 0; r < orbit.period; ++r) {
        v.parent_index.push_back(basis.index_of(s));
        v.amplitude.push_back(norm * momentum_phase(k, r, L));
        s = rotate_left(s, L, 1);
    }
    return v;
}

state_t orbit_representative(state_t bits, int L) {
    state_t rep = bits;
    state_t s = bits;
    for (int r = 1; r < L; ++r) {
        s = rotate_left(s, L, 1);
        rep = std::min(rep, s);
    }
    return rep;
}

/// Image of a sparse vector under the site reflection i -> L - i + 1.
SectorVector reflect_vector(const ConstrainedBasis& basis, const SectorVector& v) {
    const int L = basis.length();
    SectorVector out;
    out.period = v.period;
    out.amplitude = v.amplitude;
    out.parent_index.reserve(v.parent_index.size());
    for (const auto idx : v.parent_index) {
        const state_t image = reverse_bits(basis.state(idx), L);
        out.parent_index.push_back(basis.index_of(image));
    }
    out.representative = orbit_representative(reverse_bits(v.representative, L), L);
    return out;
}

/// (v + p X v) / sqrt(2) for a reflection-paired pair of orbits; the two
/// supports are disjoint, so the combination stays normalized.
SectorVector pair_vector(const SectorVector& v, const SectorVector& xv, Parity p) {
    const double sign = (p == Parity::Even) ? 1.0 : -1.0;
    const double norm = 1.0 / std::sqrt(2.0);
    SectorVector out;
    out.representative = std::min(v.representative, xv.representative);
    out.period = v.period;
    out.parent_index = v.parent_index;
    out.amplitude = v.amplitude;
    for (auto& a : out.amplitude) a *= norm;
    for (std::size_t t = 0; t < xv.parent_index.size(); ++t) {
        out.parent_index.push_back(xv.parent_index[t]);
        out.amplitude.push_back(sign * norm * xv.amplitude[t]);
    }
    return out;
}

std::vector<SectorVector> sector_entries(const ConstrainedBasis& basis,
                                         const std::vector<TranslationOrbit>& orbits, int k,
                                         Parity parity) {
    const int L = basis.length();
    std::vector<SectorVector> entries;
    for (const auto& orbit : orbits) {
        if ((static_cast<long long>(k) * orbit.period) % L != 0) continue;
        SectorVector v = momentum_vector(basis, orbit, k);
        if (parity == Parity::None) {
            entries.push_back(std::move(v));
            continue;
        }
        SectorVector xv = reflect_vector(basis, v);
        if (xv.representative == orbit.representative) {
            // Orbit maps to itself: X v = sigma v; keep v when sigma matches.
            const std::int64_t probe = v.parent_index[0];
            double sigma = 0.0;
            for (std::size_t t = 0; t < xv.parent_index.size(); ++t) {
                if (xv.parent_index[t] == probe) {
                    sigma = xv.amplitude[t].real() / v.amplitude[0].real();
                    break;
                }
            }
            if (sigma == 0.0) throw NumericalError("build_sector: reflection image lost its orbit");
            if ((sigma > 0) == (parity == Parity::Even)) entries.push_back(std::move(v));
        } else if (xv.representative > orbit.representative) {
            entries.push_back(pair_vector(v, xv, parity));
        }
        // Smaller reflected representative: the partner orbit already paired.
    }
    return entries;
}

}  // namespace

SymmetrySector build_sector(std::shared_ptr<const ConstrainedBasis> basis, int k, Parity parity) {
    if (!basis) throw std::invalid_argument("build_sector: null basis");
    if (basis->bc() != Boundary::Periodic) {
        throw std::invalid_argument("build_sector: symmetry sectors require periodic boundaries");
    }
    const int L = basis->length();
    if (k < 0 || k >= L) throw std::invalid_argument("build_sector: momentum index out of range");
    if (parity != Parity::None && k != 0 && 2 * k != L) {
        throw std::invalid_argument("build_sector: parity can be resolved only at k = 0 or k = L/2");
    }
    auto entries = sector_entries(*basis, build_orbits(*basis), k, parity);
    return SymmetrySector(std::move(basis), k, parity, std::move(entries));
}

std::map<std::pair<int, Parity>, std::int64_t> sector_dimension_table(const ConstrainedBasis& basis) {
    if (basis.bc() != Boundary::Periodic) {
        throw std::invalid_argument("sector_dimension_table: requires periodic boundaries");
    }
    const int L = basis.length();
    const auto orbits = build_orbits(basis);
    std::map<std::pair<int, Parity>, std::int64_t> table;
    for (int k = 0; k < L; ++k) {
        table[{k, Parity::None}] =
            static_cast<std::int64_t>(sector_entries(basis, orbits, k, Parity::None).size());
        if (k == 0 || 2 * k == L) {
            for (Parity p : {Parity::Even, Parity::Odd}) {
                table[{k, p}] = static_cast<std::int64_t>(sector_entries(basis, orbits, k, p).size());
            }
        }
    }
    return table;
}

}  // namespace scarchain
