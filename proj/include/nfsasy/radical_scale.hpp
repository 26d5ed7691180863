#pragma once

#include <map>
#include <optional>
#include <string>

#include "nfsasy/log_constant.hpp"
#include "nfsasy/rational.hpp"

namespace nfsasy {

// Positive constant q * prod p^(e_p). Canonical form keeps every e_p in (0, 1),
// integer parts folded into q, so equal values compare equal.
class RadicalScale {
public:
    RadicalScale() = default;
    RadicalScale(const Rational& q);  // NOLINT
    // base^exponent for a positive rational base.
    static RadicalScale power(const Rational& base, const Rational& exponent);

    const Rational& coefficient() const { return q_; }
    const std::map<unsigned long, Rational>& exponents() const { return e_; }
    bool is_rational() const { return e_.empty(); }

    RadicalScale operator*(const RadicalScale& o) const;
    RadicalScale operator/(const RadicalScale& o) const;
    RadicalScale pow(const Rational& k) const;
    friend bool operator==(const RadicalScale& a, const RadicalScale& b) { return a.q_ == b.q_ && a.e_ == b.e_; }
    friend bool operator!=(const RadicalScale& a, const RadicalScale& b) { return !(a == b); }

    double to_double() const;
    std::string to_string() const;  // "q=1/2;3^1/3"
    static RadicalScale parse(const std::string& s);

private:
    void fold(unsigned long p, const Rational& e);
    Rational q_ = 1;
    std::map<unsigned long, Rational> e_;
};

LogConstant scale_log(const RadicalScale& s);
// s1/s2 when it is rational, nullopt otherwise.
std::optional<Rational> scale_ratio_as_rational(const RadicalScale& s1, const RadicalScale& s2);

}  // namespace nfsasy
