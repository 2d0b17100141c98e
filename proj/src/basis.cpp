#include "scarchain/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scarchain/errors.hpp"

namespace scarchain {

namespace {
constexpr int kMaxEnumerationLength = 28;
}

std::string to_string(Boundary bc) {
    return bc == Boundary::Open ? "obc" : "pbc";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "obc" || s == "open") return Boundary::Open;
    if (s == "pbc" || s == "periodic") return Boundary::Periodic;
    throw std::invalid_argument("unknown boundary condition '" + s + "'");
}

bool is_allowed(state_t bits, int length, int ell, Boundary bc) {
    if (length < 1 || length > 63) throw std::invalid_argument("is_allowed: length out of range");
    if (ell < 0 || ell > length) throw std::invalid_argument("is_allowed: ell out of range");
    if (bits > chain_mask(length)) throw std::invalid_argument("is_allowed: bits exceed 2^L");
    if (ell == 0) return true;  // unconstrained chain
    // AND of the first ell shifts is nonzero iff some site ends a run of
    // ell consecutive up spins.
    state_t run = bits;
    for (int i = 1; i < ell && run != 0; ++i) {
        run &= (bc == Boundary::Periodic) ? rotate_left(bits, length, i) : (bits << i);
    }
    return run == 0;
}

bool is_allowed(const SpinConfiguration& config, int ell, Boundary bc) {
    return is_allowed(config.bits, config.length, ell, bc);
}

ConstrainedBasis::ConstrainedBasis(int length, int ell, Boundary bc, std::vector<state_t> states)
    : length_(length), ell_(ell), bc_(bc), states_(std::move(states)) {}

std::int64_t ConstrainedBasis::index_of(state_t bits) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), bits);
    if (it == states_.end() || *it != bits) return -1;
    return it - states_.begin();
}

std::string ConstrainedBasis::tag() const {
    return "L=" + std::to_string(length_) + ",ell=" + std::to_string(ell_) +
           ",bc=" + to_string(bc_);
}

ConstrainedBasis enumerate_basis(int length, int ell, Boundary bc) {
    if (length < 1) throw std::invalid_argument("enumerate_basis: length must be >= 1");
    if (ell < 0 || ell > length) throw std::invalid_argument("enumerate_basis: ell out of range");
    if (length > kMaxEnumerationLength) {
        throw ResourceError("enumerate_basis: L=" + std::to_string(length) +
                            " exceeds the enumeration budget (L <= " +
                            std::to_string(kMaxEnumerationLength) + ")");
    }
    std::vector<state_t> states;
    const state_t end = state_t{1} << length;
    for (state_t s = 0; s < end; ++s) {
        if (is_allowed(s, length, ell, bc)) states.push_back(s);
    }
    const mpz_class expected = dimension(length, ell, bc);
    if (mpz_class(static_cast<unsigned long>(states.size())) != expected) {
        throw NumericalError("enumerate_basis: count disagrees with the recurrence dimension");
    }
    return ConstrainedBasis(length, ell, bc, std::move(states));
}

mpz_class dimension_obc(int length, int ell) {
    if (length < 1) throw std::invalid_argument("dimension_obc: length must be >= 1");
    if (ell < 0) throw std::invalid_argument("dimension_obc: ell must be >= 0");
    mpz_class pow2 = mpz_class(1) << length;
    if (ell == 0) return pow2;
    if (length < ell) return pow2;
    if (length == ell) return pow2 - 1;
    // D_L = D_{L-1} + D_{L-2} + ... + D_{L-ell}, seeded below the radius.
    // Index 0 holds the empty chain (one state).
    std::vector<mpz_class> d(static_cast<std::size_t>(length) + 1);
    for (int n = 0; n <= length; ++n) {
        if (n < ell) {
            d[n] = mpz_class(1) << n;
        } else if (n == ell) {
            d[n] = (mpz_class(1) << n) - 1;
        } else {
            mpz_class sum = 0;
            for (int j = 1; j <= ell; ++j) sum += d[n - j];
            d[n] = sum;
        }
    }
    return d[length];
}

mpz_class dimension_pbc(int length, int ell) {
    if (length < 1) throw std::invalid_argument("dimension_pbc: length must be >= 1");
    if (ell < 0) throw std::invalid_argument("dimension_pbc: ell must be >= 0");
    mpz_class pow2 = mpz_class(1) << length;
    if (ell == 0) return pow2;
    if (length < ell) return pow2;
    if (length == ell) return pow2 - 1;
    // Open-chain dimensions up to L-1, with the empty-chain convention
    // D_0 = 1 so the shortest gap terms are meaningful.
    auto obc = [ell](int n) -> mpz_class {
        if (n == 0) return 1;
        return dimension_obc(n, ell);
    };
    mpz_class total = obc(length - 1);
    // A gap of g sites around the added up spin leaves an open chain of
    // length L - g; g runs from 3 to ell + 1 with multiplicity g - 2.
    for (int g = 3; g <= ell + 1 && length - g >= 0; ++g) {
        total += mpz_class(g - 2) * obc(length - g);
    }
    return total;
}

mpz_class dimension(int length, int ell, Boundary bc) {
    return bc == Boundary::Open ? dimension_obc(length, ell) : dimension_pbc(length, ell);
}

double growth_rate(int ell, double tol) {
    if (ell < 2) throw std::invalid_argument("growth_rate: ell must be >= 2");
    if (!(tol > 0.0) || tol > 1e-6) throw std::invalid_argument("growth_rate: tol out of (0, 1e-6]");
    // Root of f(d) = ell*log(d) + log(2 - d) on (1, 2); f > 0 near 1 and
    // f -> -inf at 2, so plain bisection converges.
    auto f = [ell](double d) { return ell * std::log(d) + std::log(2.0 - d); };
    double lo = 1.0 + 1e-12;
    double hi = 2.0 - 1e-15;
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo > 0.0) || !(fhi < 0.0)) {
        throw NumericalError("growth_rate: no sign change in the (1, 2) bracket");
    }
    while (hi - lo > tol * 0.5) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double empirical_growth_rate(int ell, Boundary bc, int L_max) {
    if (ell < 1) throw std::invalid_argument("empirical_growth_rate: ell must be >= 1");
    if (L_max < ell + 10) {
        throw std::invalid_argument("empirical_growth_rate: L_max must be >= ell + 10");
    }
    const mpz_class num = dimension(L_max, ell, bc);
    const mpz_class den = dimension(L_max - 1, ell, bc);
    return num.get_d() / den.get_d();
}

}  // namespace scarchain
