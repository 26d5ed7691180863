#include "nfsasy/rational.hpp"

#include "nfsasy/errors.hpp"

namespace nfsasy {

Rational make_rational(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("bad rational: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational pow(const Rational& q, long e) {
    if (e < 0) {
        if (q == 0) throw DomainError("zero to a negative power");
        Rational inv = 1 / q;
        return pow(inv, -e);
    }
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

Rational floor(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

std::map<unsigned long, long> factor(const Integer& n0) {
    if (n0 <= 0) throw DomainError("factor: non-positive integer");
    std::map<unsigned long, long> out;
    Integer n = n0;
    for (unsigned long p = 2; p < 1000000; p += (p == 2 ? 1 : 2)) {
        if (Integer(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++out[p];
        }
    }
    if (n > 1) {
        if (!n.fits_ulong_p() || mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw DomainError("factor: cofactor " + n.get_str() + " out of range");
        ++out[n.get_ui()];
    }
    return out;
}

}  // namespace nfsasy
