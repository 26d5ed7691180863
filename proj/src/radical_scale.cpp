#include "nfsasy/radical_scale.hpp"

#include <cmath>
#include <sstream>

#include "nfsasy/errors.hpp"

namespace nfsasy {

RadicalScale::RadicalScale(const Rational& q) : q_(q) {
    if (q <= 0) throw DomainError("radical scale: non-positive coefficient");
}

void RadicalScale::fold(unsigned long p, const Rational& add) {
    Rational e = e_.count(p) ? e_[p] + add : add;
    Rational whole = floor(e);
    e -= whole;
    q_ *= nfsasy::pow(Rational(static_cast<long>(p)), whole.get_num().get_si());
    if (e == 0)
        e_.erase(p);
    else
        e_[p] = e;
}

RadicalScale RadicalScale::power(const Rational& base, const Rational& exponent) {
    if (base <= 0) throw DomainError("radical scale: non-positive base");
    RadicalScale r;
    if (exponent == 0) return r;
    for (auto [p, k] : factor(base.get_num())) r.fold(p, exponent * k);
    for (auto [p, k] : factor(base.get_den())) r.fold(p, -exponent * k);
    return r;
}

RadicalScale RadicalScale::operator*(const RadicalScale& o) const {
    RadicalScale r = *this;
    r.q_ *= o.q_;
    for (const auto& [p, e] : o.e_) r.fold(p, e);
    return r;
}

RadicalScale RadicalScale::pow(const Rational& k) const {
    RadicalScale r = power(q_, k);
    for (const auto& [p, e] : e_) r.fold(p, e * k);
    return r;
}

RadicalScale RadicalScale::operator/(const RadicalScale& o) const { return *this * o.pow(-1); }

double RadicalScale::to_double() const {
    double v = q_.get_d();
    for (const auto& [p, e] : e_) v *= std::pow(static_cast<double>(p), e.get_d());
    return v;
}

std::string RadicalScale::to_string() const {
    std::string s = "q=" + nfsasy::to_string(q_);
    for (const auto& [p, e] : e_) s += ";" + std::to_string(p) + "^" + nfsasy::to_string(e);
    return s;
}

RadicalScale RadicalScale::parse(const std::string& s) {
    std::stringstream ss(s);
    std::string part;
    if (!std::getline(ss, part, ';') || part.rfind("q=", 0) != 0) throw ParseError("radical scale: " + s);
    RadicalScale r(parse_rational(part.substr(2)));
    while (std::getline(ss, part, ';')) {
        size_t caret = part.find('^');
        if (caret == std::string::npos) throw ParseError("radical scale: " + s);
        r = r * power(parse_rational(part.substr(0, caret)), parse_rational(part.substr(caret + 1)));
    }
    return r;
}

LogConstant scale_log(const RadicalScale& s) {
    LogConstant out = log_of_rational(s.coefficient());
    for (const auto& [p, e] : s.exponents()) out += LogConstant::lambda(p) * LogConstant(e);
    return out;
}

std::optional<Rational> scale_ratio_as_rational(const RadicalScale& s1, const RadicalScale& s2) {
    RadicalScale r = s1 / s2;
    if (!r.is_rational()) return std::nullopt;
    return r.coefficient();
}

}  // namespace nfsasy
