#include "nfsasy/unknown_poly.hpp"

#include <algorithm>

namespace nfsasy {

namespace {
const char* kNames[kNumUnknowns] = {"abar", "bbar", "dbar", "atil"};
}

UnknownPoly::UnknownPoly(const LogConstant& c) {
    if (!c.is_zero()) t_.push_back({0, c});
}

UnknownPoly UnknownPoly::unknown(Unknown u) {
    UnknownPoly p;
    p.t_.push_back({make_mono(u, 1), LogConstant(1)});
    return p;
}

int UnknownPoly::degree() const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, degree(t.m));
    return d;
}

int UnknownPoly::degree_in(Unknown u) const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, exponent(t.m, u));
    return d;
}

LogConstant UnknownPoly::coeff(Mono m) const {
    for (const auto& t : t_)
        if (t.m == m) return t.c;
    return {};
}

UnknownPoly UnknownPoly::substitute(Unknown u, const LogConstant& v) const {
    UnknownPoly out;
    for (const auto& t : t_) {
        int e = exponent(t.m, u);
        LogConstant c = t.c;
        for (int k = 0; k < e; ++k) c *= v;
        UnknownPoly term;
        if (!c.is_zero()) term.t_.push_back({t.m - make_mono(u, e), c});
        out += term;
    }
    return out;
}

UnknownPoly UnknownPoly::operator-() const {
    UnknownPoly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

UnknownPoly& UnknownPoly::operator+=(const UnknownPoly& o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    if (t_.size() == 1 && o.t_.size() == 1 && t_[0].m == o.t_[0].m) {
        t_[0].c += o.t_[0].c;
        if (t_[0].c.is_zero()) t_.clear();
        return *this;
    }
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].m < o.t_[j].m)) {
            out.push_back(std::move(t_[i++]));
        } else if (i == t_.size() || o.t_[j].m < t_[i].m) {
            out.push_back(o.t_[j++]);
        } else {
            LogConstant c = t_[i].c + o.t_[j].c;
            if (!c.is_zero()) out.push_back({t_[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    t_ = std::move(out);
    return *this;
}

UnknownPoly operator*(const UnknownPoly& a, const UnknownPoly& b) {
    UnknownPoly r;
    if (a.t_.empty() || b.t_.empty()) return r;
    if (a.t_.size() == 1 && b.t_.size() == 1) {
        LogConstant c = a.t_[0].c * b.t_[0].c;
        if (!c.is_zero()) r.t_.push_back({a.t_[0].m + b.t_[0].m, std::move(c)});
        return r;
    }
    std::vector<UnknownPoly::Term> prods;
    prods.reserve(a.t_.size() * b.t_.size());
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) prods.push_back({x.m + y.m, x.c * y.c});
    std::stable_sort(prods.begin(), prods.end(), [](const auto& p, const auto& q) { return p.m < q.m; });
    for (auto& p : prods) {
        if (!r.t_.empty() && r.t_.back().m == p.m)
            r.t_.back().c += p.c;
        else {
            if (!r.t_.empty() && r.t_.back().c.is_zero()) r.t_.pop_back();
            r.t_.push_back(std::move(p));
        }
    }
    if (!r.t_.empty() && r.t_.back().c.is_zero()) r.t_.pop_back();
    return r;
}

bool operator==(const UnknownPoly& a, const UnknownPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (size_t i = 0; i < a.t_.size(); ++i)
        if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

std::string UnknownPoly::render() const {
    if (t_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < t_.size(); ++i) {
        if (i) out += " + ";
        out += "(" + t_[i].c.pretty() + ")";
        for (int u = 0; u < kNumUnknowns; ++u) {
            int e = exponent(t_[i].m, static_cast<Unknown>(u));
            if (e == 0) continue;
            out += std::string("*") + kNames[u];
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

}  // namespace nfsasy
