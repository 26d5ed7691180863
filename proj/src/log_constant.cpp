#include "nfsasy/log_constant.hpp"

#include <cctype>
#include <cmath>
#include <iostream>
#include <mutex>

#include "nfsasy/errors.hpp"

namespace nfsasy {

namespace {

struct GeneratorTable {
    std::mutex mu;
    std::vector<unsigned long> primes{2, 3};
    std::function<void(unsigned long)> hook;
};

GeneratorTable& table() {
    static GeneratorTable t;
    return t;
}

std::mutex sink_mu;
std::function<void(const std::string&)>& sink() {
    static std::function<void(const std::string&)> s = [](const std::string& m) {
        std::cerr << "warning: " << m << "\n";
    };
    return s;
}

// Normalizes num/den: common factors removed, denominator monic.
void reduce(Poly& num, Poly& den) {
    if (den.is_zero()) throw DomainError("log constant: zero denominator");
    if (num.is_zero()) {
        den = Poly(1);
        return;
    }
    if (!den.is_constant()) {
        Poly g = Poly::gcd(num, den);
        if (!g.is_constant()) {
            num = *Poly::divide_exact(num, g);
            den = *Poly::divide_exact(den, g);
        }
    }
    Rational lc = den.leading().c;
    if (lc != 1) {
        num = num.scaled(1 / lc);
        den = den.scaled(1 / lc);
    }
}

}  // namespace

int Generators::index_of(unsigned long prime) {
    std::function<void(unsigned long)> hook;
    int idx;
    {
        auto& t = table();
        std::lock_guard<std::mutex> lock(t.mu);
        for (size_t i = 0; i < t.primes.size(); ++i)
            if (t.primes[i] == prime) return static_cast<int>(i);
        if (static_cast<int>(t.primes.size()) >= Poly::kMaxGenerators)
            throw DomainError("log constant: too many log generators");
        t.primes.push_back(prime);
        idx = static_cast<int>(t.primes.size()) - 1;
        hook = t.hook;
    }
    if (hook) hook(prime);
    warn("log generator l" + std::to_string(prime) + " added");
    return idx;
}

unsigned long Generators::prime_of(int index) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.primes.at(static_cast<size_t>(index));
}

int Generators::count() {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return static_cast<int>(t.primes.size());
}

std::string Generators::name(int index) { return "l" + std::to_string(prime_of(index)); }

void Generators::set_extension_hook(std::function<void(unsigned long)> hook) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    t.hook = std::move(hook);
}

void set_warning_sink(std::function<void(const std::string&)> s) {
    std::lock_guard<std::mutex> lock(sink_mu);
    sink() = std::move(s);
}

void warn(const std::string& msg) {
    std::function<void(const std::string&)> s;
    {
        std::lock_guard<std::mutex> lock(sink_mu);
        s = sink();
    }
    if (s) s(msg);
}

LogConstant::LogConstant(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    reduce(num_, den_);
}

LogConstant LogConstant::lambda(unsigned long prime) {
    LogConstant c;
    c.num_ = Poly::generator(Generators::index_of(prime));
    return c;
}

std::optional<Rational> LogConstant::as_rational() const {
    if (num_.is_constant() && den_.is_constant()) return num_.constant_term();
    return std::nullopt;
}

LogConstant LogConstant::operator-() const {
    LogConstant r = *this;
    r.num_ = -r.num_;
    return r;
}

LogConstant& LogConstant::operator+=(const LogConstant& o) {
    if (o.is_zero()) return *this;
    if (is_polynomial() && o.is_polynomial()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    reduce(num_, den_);
    return *this;
}

LogConstant& LogConstant::operator-=(const LogConstant& o) { return *this += -o; }

LogConstant& LogConstant::operator*=(const LogConstant& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = LogConstant();
    if (is_polynomial() && o.is_polynomial()) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    reduce(num_, den_);
    return *this;
}

LogConstant LogConstant::inverse() const {
    if (is_zero()) throw SingularError("log constant: inverse of zero");
    if (num_.is_constant()) {
        LogConstant r;
        r.num_ = den_.scaled(1 / num_.constant_term());
        return r;
    }
    return LogConstant(den_, num_);
}

LogConstant& LogConstant::operator/=(const LogConstant& o) { return *this *= o.inverse(); }

std::string LogConstant::to_string() const {
    auto nm = [](int g) { return Generators::name(g); };
    if (is_polynomial()) return num_.to_string(nm, false);
    return "[" + num_.to_string(nm, false) + "]/[" + den_.to_string(nm, false) + "]";
}

std::string LogConstant::pretty() const {
    auto nm = [](int g) { return Generators::name(g); };
    if (is_polynomial()) return num_.to_string(nm, true);
    return "(" + num_.to_string(nm, true) + ")/(" + den_.to_string(nm, true) + ")";
}

namespace {

// Parses "(c)*l2^2*l3 + (c) + ..." as produced by Poly::to_string(.., false).
Poly parse_poly(const std::string& s) {
    Poly out;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    for (;;) {
        skip_ws();
        if (i >= s.size() || s[i] != '(') throw ParseError("log constant: expected '(' in " + s);
        size_t close = s.find(')', i);
        if (close == std::string::npos) throw ParseError("log constant: unbalanced '(' in " + s);
        Poly term(parse_rational(s.substr(i + 1, close - i - 1)));
        i = close + 1;
        while (i < s.size() && s[i] == '*') {
            ++i;
            if (i >= s.size() || s[i] != 'l') throw ParseError("log constant: expected generator in " + s);
            ++i;
            size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (start == i) throw ParseError("log constant: bad generator in " + s);
            unsigned long p = std::stoul(s.substr(start, i - start));
            int e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                start = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (start == i) throw ParseError("log constant: bad exponent in " + s);
                e = std::stoi(s.substr(start, i - start));
            }
            term = term * Poly::generator(Generators::index_of(p), e);
        }
        out += term;
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] != '+') throw ParseError("log constant: expected '+' in " + s);
        ++i;
    }
    return out;
}

}  // namespace

LogConstant LogConstant::parse(const std::string& s) {
    if (!s.empty() && s.front() == '[') {
        size_t mid = s.find("]/[");
        if (mid == std::string::npos || s.back() != ']') throw ParseError("log constant: bad fraction " + s);
        return LogConstant(parse_poly(s.substr(1, mid - 1)), parse_poly(s.substr(mid + 3, s.size() - mid - 4)));
    }
    LogConstant c;
    c.num_ = parse_poly(s);
    return c;
}

LogConstant log_of_rational(const Rational& q) {
    if (q <= 0) throw DomainError("log of non-positive rational " + to_string(q));
    LogConstant out;
    for (auto [p, e] : factor(q.get_num())) out += LogConstant::lambda(p) * LogConstant(e);
    for (auto [p, e] : factor(q.get_den())) out -= LogConstant::lambda(p) * LogConstant(e);
    return out;
}

double logconst_eval_f64(const LogConstant& c) {
    std::vector<double> logs;
    for (int g = 0; g < Generators::count(); ++g) logs.push_back(std::log(static_cast<double>(Generators::prime_of(g))));
    double num = c.numerator().evaluate(logs);
    double den = c.denominator().evaluate(logs);
    double den_size = 0;
    for (const auto& t : c.denominator().terms())
        den_size += std::fabs(Poly::monomial(t.m, t.c).evaluate(logs));
    if (std::fabs(den) <= 1e-12 * den_size) throw DomainError("log constant: denominator evaluates to zero");
    double v = num / den;
    if (!c.is_zero() && std::fabs(v) < 1e-12) warn("nonzero log constant " + c.pretty() + " evaluates below 1e-12");
    return v;
}

}  // namespace nfsasy
