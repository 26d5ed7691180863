#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nfsasy/poly.hpp"

namespace nfsasy {

// Process-wide intern table mapping the formal generator lambda_p = log p to a
// polynomial generator slot. Append-only; 2 and 3 are always slots 0 and 1.
class Generators {
public:
    static int index_of(unsigned long prime);  // registers on first use
    static unsigned long prime_of(int index);
    static int count();
    static std::string name(int index);  // "l2", "l3", ...
    // Called (outside the table lock) whenever a new generator is created.
    static void set_extension_hook(std::function<void(unsigned long)> hook);
};

// Element of Q(log 2, log 3, ...) as a reduced fraction of polynomials in the
// generators. The denominator is monic in graded-lex order and is exactly 1
// for polynomial values, so equality is syntactic.
class LogConstant {
public:
    LogConstant() = default;
    LogConstant(const Rational& q) : num_(q) {}  // NOLINT
    LogConstant(long q) : num_(Rational(q)) {}  // NOLINT
    LogConstant(Poly num, Poly den);

    static LogConstant lambda(unsigned long prime);

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    std::optional<Rational> as_rational() const;

    LogConstant operator-() const;
    LogConstant& operator+=(const LogConstant& o);
    LogConstant& operator-=(const LogConstant& o);
    LogConstant& operator*=(const LogConstant& o);
    LogConstant& operator/=(const LogConstant& o);
    friend LogConstant operator+(LogConstant a, const LogConstant& b) { return a += b; }
    friend LogConstant operator-(LogConstant a, const LogConstant& b) { return a -= b; }
    friend LogConstant operator*(LogConstant a, const LogConstant& b) { return a *= b; }
    friend LogConstant operator/(LogConstant a, const LogConstant& b) { return a /= b; }
    LogConstant inverse() const;

    friend bool operator==(const LogConstant& a, const LogConstant& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const LogConstant& a, const LogConstant& b) { return !(a == b); }

    // Canonical cache form, e.g. "(-2)*l2 + (1/6)*l3 + (-2)"; fractions are
    // written "[num]/[den]".
    std::string to_string() const;
    // Human form, e.g. "-2*l2 + (1/6)*l3 - 2".
    std::string pretty() const;
    static LogConstant parse(const std::string& s);

private:
    Poly num_;
    Poly den_ = Poly(1);
};

LogConstant log_of_rational(const Rational& q);

// Substitutes lambda_p := log p. Throws DomainError on a (near-)zero
// denominator; warns through the installed sink when a nonzero value lands
// below 1e-12 in magnitude.
double logconst_eval_f64(const LogConstant& c);
void set_warning_sink(std::function<void(const std::string&)> sink);
void warn(const std::string& msg);

}  // namespace nfsasy
