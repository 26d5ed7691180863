#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nfsasy/bi_series.hpp"

namespace nfsasy {

// Indeterminates standing for not-yet-known limits of the optimizer's
// normalized remainders: abar, bbar, dbar at the current A, B, D slots and
// atil for the existence perturbation.
enum Unknown : int { kAbar = 0, kBbar = 1, kDbar = 2, kAtil = 3, kNumUnknowns = 4 };

// Polynomial in the unknowns with LogConstant coefficients.
class UnknownPoly {
public:
    using Mono = std::uint32_t;  // one byte per unknown, unknown 0 in the top byte
    struct Term {
        Mono m;
        LogConstant c;
    };

    UnknownPoly() = default;
    UnknownPoly(const LogConstant& c);  // NOLINT
    UnknownPoly(const Rational& c) : UnknownPoly(LogConstant(c)) {}  // NOLINT
    UnknownPoly(long c) : UnknownPoly(LogConstant(c)) {}  // NOLINT

    static UnknownPoly unknown(Unknown u);
    static Mono make_mono(Unknown u, int e) { return static_cast<Mono>(e) << (24 - 8 * u); }
    static int exponent(Mono m, Unknown u) { return static_cast<int>((m >> (24 - 8 * u)) & 0xff); }
    static int degree(Mono m) { return static_cast<int>(((m * 0x01010101u) >> 24) & 0xff); }

    bool is_zero() const { return t_.empty(); }
    const std::vector<Term>& terms() const { return t_; }
    int degree() const;
    int degree_in(Unknown u) const;
    LogConstant coeff(Mono m) const;
    LogConstant constant() const { return coeff(0); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == 0); }
    UnknownPoly substitute(Unknown u, const LogConstant& v) const;

    UnknownPoly operator-() const;
    UnknownPoly& operator+=(const UnknownPoly& o);
    UnknownPoly& operator-=(const UnknownPoly& o) { return *this += -o; }
    friend UnknownPoly operator+(UnknownPoly a, const UnknownPoly& b) { return a += b; }
    friend UnknownPoly operator-(UnknownPoly a, const UnknownPoly& b) { return a -= b; }
    friend UnknownPoly operator*(const UnknownPoly& a, const UnknownPoly& b);
    friend bool operator==(const UnknownPoly& a, const UnknownPoly& b);
    friend bool operator!=(const UnknownPoly& a, const UnknownPoly& b) { return !(a == b); }

    std::string render() const;

private:
    std::vector<Term> t_;  // sorted by ascending key, no zero coefficients
};

inline UnknownPoly ring_inverse(const UnknownPoly& p) {
    if (!p.is_constant() || p.is_zero()) throw SingularError("unknown poly: constant term not invertible");
    return UnknownPoly(p.constant().inverse());
}
inline std::optional<Rational> ring_as_rational(const UnknownPoly& p) {
    if (!p.is_constant()) return std::nullopt;
    return p.constant().as_rational();
}
inline std::string ring_render(const UnknownPoly& p) { return p.render(); }
template <>
inline UnknownPoly ring_lift<UnknownPoly>(const LogConstant& c) { return UnknownPoly(c); }

using UnknownSeries = TruncatedBiSeries<UnknownPoly>;

}  // namespace nfsasy
