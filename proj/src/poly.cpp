#include "nfsasy/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nfsasy/errors.hpp"

namespace nfsasy {

namespace {

bool divides(Poly::Mono d, Poly::Mono m) {
    for (int g = 0; g < Poly::kMaxGenerators; ++g)
        if (Poly::exponent(d, g) > Poly::exponent(m, g)) return false;
    return true;
}

Poly::Mono mono_mul(Poly::Mono a, Poly::Mono b) {
    if (Poly::degree(a) + Poly::degree(b) > 255) throw DomainError("poly: total degree overflow");
    return a + b;
}

// View p as a univariate polynomial in generator g: exponent -> coefficient.
std::map<int, Poly> split(const Poly& p, int g) {
    std::map<int, Poly> out;
    for (const auto& t : p.terms()) {
        int e = Poly::exponent(t.m, g);
        out[e] += Poly::monomial(t.m - Poly::make_mono(g, e), t.c);
    }
    return out;
}

Poly coeff_in(const Poly& p, int g, int e) {
    Poly out;
    for (const auto& t : p.terms())
        if (Poly::exponent(t.m, g) == e) out += Poly::monomial(t.m - Poly::make_mono(g, e), t.c);
    return out;
}

int first_generator(const Poly& a, const Poly& b) {
    for (int g = 0; g < Poly::kMaxGenerators; ++g)
        if (a.uses_generator(g) || b.uses_generator(g)) return g;
    return -1;
}

Poly content_in(const Poly& p, int g) {
    Poly c;
    for (auto& [e, q] : split(p, g)) {
        c = Poly::gcd(c, q);
        if (c.is_constant() && !c.is_zero()) break;
    }
    return c;
}

Poly primitive_part(const Poly& p, int g) {
    if (p.is_zero()) return p;
    return *Poly::divide_exact(p, content_in(p, g));
}

Poly pseudo_remainder(Poly a, const Poly& b, int g) {
    const int db = b.degree_in(g);
    const Poly lb = coeff_in(b, g, db);
    while (!a.is_zero()) {
        int da = a.degree_in(g);
        if (da < db) break;
        Poly la = coeff_in(a, g, da);
        a = lb * a - (la * b).shifted(Poly::make_mono(g, da - db));
    }
    return a;
}

}  // namespace

Poly::Poly(const Rational& c) {
    if (c != 0) t_.push_back({0, c});
}

Poly::Mono Poly::make_mono(int g, int e) {
    if (g < 0 || g >= kMaxGenerators || e < 0 || e > 255) throw DomainError("poly: bad monomial");
    return static_cast<Mono>(e) << (120 - 8 * g);
}

Poly Poly::generator(int g, int exponent) { return monomial(make_mono(g, exponent), 1); }

Poly Poly::monomial(Mono m, const Rational& c) {
    Poly p;
    if (c != 0) p.t_.push_back({m, c});
    return p;
}

Poly Poly::from_unsorted(std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return mono_greater(a.m, b.m); });
    std::vector<Term> out;
    out.reserve(t.size());
    for (auto& x : t) {
        if (!out.empty() && out.back().m == x.m) {
            out.back().c += x.c;
        } else {
            if (!out.empty() && out.back().c == 0) out.pop_back();
            out.push_back(std::move(x));
        }
    }
    if (!out.empty() && out.back().c == 0) out.pop_back();
    return Poly(std::move(out));
}

Rational Poly::constant_term() const {
    if (!t_.empty() && t_.back().m == 0) return t_.back().c;
    return 0;
}

int Poly::degree_in(int g) const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, exponent(t.m, g));
    return d;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && mono_greater(t_[i].m, o.t_[j].m))) {
            out.push_back(std::move(t_[i++]));
        } else if (i == t_.size() || mono_greater(o.t_[j].m, t_[i].m)) {
            out.push_back(o.t_[j++]);
        } else {
            Rational c = t_[i].c + o.t_[j].c;
            if (c != 0) out.push_back({t_[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    t_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.t_.empty() || b.t_.empty()) return {};
    if (b.is_constant()) return a.scaled(b.t_[0].c);
    if (a.is_constant()) return b.scaled(a.t_[0].c);
    std::vector<Poly::Term> prods;
    prods.reserve(a.t_.size() * b.t_.size());
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) prods.push_back({mono_mul(x.m, y.m), x.c * y.c});
    return Poly::from_unsorted(std::move(prods));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return {};
    Poly r = *this;
    for (auto& t : r.t_) t.c *= c;
    return r;
}

Poly Poly::shifted(Mono m) const {
    Poly r = *this;
    for (auto& t : r.t_) t.m = mono_mul(t.m, m);
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (size_t i = 0; i < a.t_.size(); ++i)
        if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

std::optional<Poly> Poly::divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("poly: division by zero");
    if (b.is_constant()) return a.scaled(1 / b.t_[0].c);
    Poly rem = a, q;
    const Term& lb = b.leading();
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        if (!divides(lb.m, lr.m)) return std::nullopt;
        Poly step = monomial(lr.m - lb.m, lr.c / lb.c);
        rem -= step * b;
        q += step;
    }
    return q;
}

Poly Poly::monic() const {
    if (t_.empty()) return *this;
    return scaled(1 / t_.front().c);
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    const int g = first_generator(a, b);
    if (!a.uses_generator(g)) return gcd(a, content_in(b, g));
    if (!b.uses_generator(g)) return gcd(content_in(a, g), b);

    Poly ca = content_in(a, g), cb = content_in(b, g);
    Poly c = gcd(ca, cb);
    Poly r0 = *divide_exact(a, ca), r1 = *divide_exact(b, cb);
    if (r0.degree_in(g) < r1.degree_in(g)) std::swap(r0, r1);
    Poly result;
    for (;;) {
        Poly r = pseudo_remainder(r0, r1, g);
        if (r.is_zero()) {
            result = r1;
            break;
        }
        if (r.degree_in(g) == 0) {
            result = Poly(1);
            break;
        }
        r0 = std::move(r1);
        r1 = primitive_part(r, g);
    }
    return (c * primitive_part(result, g)).monic();
}

double Poly::evaluate(const std::vector<double>& values) const {
    double s = 0;
    for (const auto& t : t_) {
        double v = t.c.get_d();
        for (int g = 0; g < kMaxGenerators; ++g) {
            int e = exponent(t.m, g);
            if (e == 0) continue;
            if (static_cast<size_t>(g) >= values.size()) throw DomainError("poly: missing generator value");
            v *= std::pow(values[g], e);
        }
        s += v;
    }
    return s;
}

std::string Poly::to_string(const std::function<std::string(int)>& name, bool pretty) const {
    if (t_.empty()) return pretty ? "0" : "(0)";
    std::string out;
    for (size_t i = 0; i < t_.size(); ++i) {
        const Term& t = t_[i];
        std::string mono;
        for (int g = 0; g < kMaxGenerators; ++g) {
            int e = exponent(t.m, g);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += name(g);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (!pretty) {
            if (i) out += " + ";
            out += "(" + nfsasy::to_string(t.c) + ")";
            if (!mono.empty()) out += "*" + mono;
            continue;
        }
        Rational mag = abs(t.c);
        if (i == 0)
            out += t.c < 0 ? "-" : "";
        else
            out += t.c < 0 ? " - " : " + ";
        std::string cs = nfsasy::to_string(mag);
        if (!is_integer(mag)) cs = "(" + cs + ")";
        if (mono.empty())
            out += cs;
        else if (mag == 1)
            out += mono;
        else
            out += cs + "*" + mono;
    }
    return out;
}

}  // namespace nfsasy
