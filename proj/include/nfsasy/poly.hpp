#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nfsasy/rational.hpp"

namespace nfsasy {

// Sparse multivariate polynomial over Q in at most 16 generators. A monomial is
// packed one byte per generator (generator 0 in the top byte), total degree
// below 256. Terms are kept sorted by descending graded-lex order, so equal
// polynomials have identical term vectors.
class Poly {
public:
    using Mono = unsigned __int128;
    static constexpr int kMaxGenerators = 16;

    struct Term {
        Mono m;
        Rational c;
    };

    Poly() = default;
    Poly(const Rational& c);  // NOLINT: implicit constant embedding is intended
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT

    static Poly generator(int g, int exponent = 1);
    static Poly monomial(Mono m, const Rational& c);

    static int exponent(Mono m, int g) { return static_cast<int>((m >> (120 - 8 * g)) & 0xff); }
    static int degree(Mono m) {
        constexpr std::uint64_t ones = 0x0101010101010101ULL;
        auto hi = static_cast<std::uint64_t>(m >> 64), lo = static_cast<std::uint64_t>(m);
        return static_cast<int>(((hi * ones) >> 56) + ((lo * ones) >> 56));
    }
    static Mono make_mono(int g, int e);
    static bool mono_greater(Mono a, Mono b) {
        int da = degree(a), db = degree(b);
        return da != db ? da > db : a > b;
    }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == 0); }
    Rational constant_term() const;
    const std::vector<Term>& terms() const { return t_; }
    const Term& leading() const { return t_.front(); }
    int total_degree() const { return t_.empty() ? -1 : degree(t_.front().m); }
    int degree_in(int g) const;
    bool uses_generator(int g) const { return degree_in(g) > 0; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
    Poly shifted(Mono m) const;  // multiply by a monomial

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Exact quotient a/b, or nullopt when b does not divide a.
    static std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
    // Monic greatest common divisor (gcd(0,0) = 0).
    static Poly gcd(const Poly& a, const Poly& b);
    Poly monic() const;

    double evaluate(const std::vector<double>& values) const;

    // Renders with generator names supplied by the caller. `pretty` folds signs
    // into the separators; otherwise every coefficient is parenthesized.
    std::string to_string(const std::function<std::string(int)>& name, bool pretty) const;

private:
    explicit Poly(std::vector<Term> t) : t_(std::move(t)) {}
    static Poly from_unsorted(std::vector<Term> t);
    std::vector<Term> t_;
};

}  // namespace nfsasy
