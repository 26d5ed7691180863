#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace nfsasy {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);
Rational pow(const Rational& q, long e);
Rational floor(const Rational& q);

// Prime factorization of a positive integer. Throws DomainError if a cofactor
// is too large to factor by trial division and is not a probable prime.
std::map<unsigned long, long> factor(const Integer& n);

}  // namespace nfsasy
