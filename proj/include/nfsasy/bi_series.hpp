#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nfsasy/errors.hpp"
#include "nfsasy/log_constant.hpp"

namespace nfsasy {

// Exponent pair of X^(x2/2) Y^(y2/2); everything is stored doubled so that
// half-integer exponents stay exact.
struct Exp2 {
    int x2 = 0;
    int y2 = 0;
    int deg2() const { return x2 + y2; }
    bool integral() const { return x2 % 2 == 0 && y2 % 2 == 0; }
    friend bool operator==(const Exp2& a, const Exp2& b) { return a.x2 == b.x2 && a.y2 == b.y2; }
    friend bool operator!=(const Exp2& a, const Exp2& b) { return !(a == b); }
};

// Graded-lex with X before Y: lower total degree first, then larger X power.
// For X, Y -> 0 with Y = o(X) this lists monomials from most to least dominant.
struct GradedLex {
    bool operator()(const Exp2& a, const Exp2& b) const {
        if (a.deg2() != b.deg2()) return a.deg2() < b.deg2();
        return a.x2 > b.x2;
    }
};

inline bool more_dominant(const Exp2& a, const Exp2& b) { return GradedLex{}(a, b); }

std::string render_monomial(const Exp2& e);  // "X^2*Y^(1/2)", "" for 1

// Coefficient-ring hooks for LogConstant. Other rings (the unknown-coefficient
// ring of the optimizer) provide the same overloads.
inline LogConstant ring_inverse(const LogConstant& c) { return c.inverse(); }
inline std::optional<Rational> ring_as_rational(const LogConstant& c) { return c.as_rational(); }
inline std::string ring_render(const LogConstant& c) { return c.pretty(); }
template <class R>
R ring_lift(const LogConstant& c);
template <>
inline LogConstant ring_lift<LogConstant>(const LogConstant& c) { return c; }

// Power series in X, Y truncated at total degree order2/2. All terms of total
// degree <= order are exact; nothing is known beyond.
template <class R>
class TruncatedBiSeries {
public:
    using Terms = std::map<Exp2, R, GradedLex>;

    explicit TruncatedBiSeries(int order2 = 0) : order2_(order2) {
        if (order2 < 0) throw DomainError("series: negative order");
    }
    static TruncatedBiSeries constant(const R& c, int order2) {
        TruncatedBiSeries s(order2);
        s.set({0, 0}, c);
        return s;
    }
    static TruncatedBiSeries monomial(Exp2 e, const R& c, int order2) {
        TruncatedBiSeries s(order2);
        if (e.deg2() <= order2) s.set(e, c);
        return s;
    }

    int order2() const { return order2_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    R coeff(Exp2 e) const {
        auto it = t_.find(e);
        return it == t_.end() ? R() : it->second;
    }
    R constant_term() const { return coeff({0, 0}); }
    void set(Exp2 e, const R& c) {
        if (e.x2 < 0 || e.y2 < 0) throw DomainError("series: negative exponent");
        if (e.deg2() > order2_) throw PrecisionError("series: term beyond truncation order");
        if (c.is_zero())
            t_.erase(e);
        else
            t_[e] = c;
    }
    // Smallest total degree (doubled) of a nonzero term; order2+1 for zero.
    int valuation2() const {
        int v = order2_ + 1;
        for (const auto& [e, c] : t_) v = std::min(v, e.deg2());
        return v;
    }
    bool integral() const {
        for (const auto& [e, c] : t_)
            if (!e.integral()) return false;
        return true;
    }

    TruncatedBiSeries truncated(int order2) const {
        TruncatedBiSeries s(std::min(order2, order2_));
        for (const auto& [e, c] : t_)
            if (e.deg2() <= s.order2_) s.t_.emplace(e, c);
        return s;
    }
    // Same terms under a different truncation order. Raising the order is only
    // sound when the caller knows the missing terms cannot matter.
    TruncatedBiSeries relabeled(int order2) const {
        if (order2 <= order2_) return truncated(order2);
        TruncatedBiSeries s = *this;
        s.order2_ = order2;
        return s;
    }
    // Multiply by X^(dx2/2) Y^(dy2/2); negative shifts must divide exactly.
    TruncatedBiSeries shifted(int dx2, int dy2) const {
        TruncatedBiSeries s(order2_ + dx2 + dy2);
        for (const auto& [e, c] : t_) s.set({e.x2 + dx2, e.y2 + dy2}, c);
        return s;
    }

    TruncatedBiSeries operator-() const {
        TruncatedBiSeries s = *this;
        for (auto& [e, c] : s.t_) c = -c;
        return s;
    }
    friend TruncatedBiSeries operator+(const TruncatedBiSeries& a, const TruncatedBiSeries& b) {
        TruncatedBiSeries s = a.truncated(std::min(a.order2_, b.order2_));
        for (const auto& [e, c] : b.t_) {
            if (e.deg2() > s.order2_) continue;
            auto it = s.t_.find(e);
            if (it == s.t_.end()) {
                s.t_.emplace(e, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) s.t_.erase(it);
            }
        }
        return s;
    }
    friend TruncatedBiSeries operator-(const TruncatedBiSeries& a, const TruncatedBiSeries& b) { return a + (-b); }
    friend TruncatedBiSeries operator*(const TruncatedBiSeries& a, const TruncatedBiSeries& b) {
        const int o = std::min(a.order2_, b.order2_);
        // dense accumulator indexed by (x2, y2)
        const int w = o + 1;
        std::vector<R> acc(static_cast<size_t>(w * w));
        std::vector<char> used(static_cast<size_t>(w * w), 0);
        for (const auto& [ea, ca] : a.t_) {
            if (ea.deg2() > o) break;
            for (const auto& [eb, cb] : b.t_) {
                if (ea.deg2() + eb.deg2() > o) break;
                size_t k = static_cast<size_t>((ea.x2 + eb.x2) * w + ea.y2 + eb.y2);
                if (used[k])
                    acc[k] += ca * cb;
                else
                    acc[k] = ca * cb;
                used[k] = 1;
            }
        }
        TruncatedBiSeries s(o);
        for (int x = 0; x < w; ++x)
            for (int y = 0; x + y < w; ++y) {
                size_t k = static_cast<size_t>(x * w + y);
                if (used[k] && !acc[k].is_zero()) s.t_.emplace(Exp2{x, y}, std::move(acc[k]));
            }
        return s;
    }
    TruncatedBiSeries scaled(const R& k) const {
        TruncatedBiSeries s(order2_);
        if (k.is_zero()) return s;
        for (const auto& [e, c] : t_) {
            R v = c * k;
            if (!v.is_zero()) s.t_.emplace(e, std::move(v));
        }
        return s;
    }

    friend bool operator==(const TruncatedBiSeries& a, const TruncatedBiSeries& b) {
        return a.order2_ == b.order2_ && a.t_ == b.t_;
    }
    friend bool operator!=(const TruncatedBiSeries& a, const TruncatedBiSeries& b) { return !(a == b); }

private:
    int order2_;
    Terms t_;
};

using Series = TruncatedBiSeries<LogConstant>;

// Product whose order uses the operands' valuations: an unknown tail of a
// beyond its order meets b no earlier than order_a + val_b.
template <class R>
TruncatedBiSeries<R> series_mul_tracked(const TruncatedBiSeries<R>& a, const TruncatedBiSeries<R>& b) {
    const int o = std::min(a.order2() + b.valuation2(), b.order2() + a.valuation2());
    return a.relabeled(o) * b.relabeled(o);
}

// X and Y as series of the given order.
template <class R>
TruncatedBiSeries<R> series_x(int order2) {
    return TruncatedBiSeries<R>::monomial({2, 0}, R(1), order2);
}
template <class R>
TruncatedBiSeries<R> series_y(int order2) {
    return TruncatedBiSeries<R>::monomial({0, 2}, R(1), order2);
}

namespace detail {

// Coefficients are produced one monomial at a time in increasing degree, each
// from a convolution against the already finished ones. Costs about one
// product, against one product per power of a for the plain power sums.
template <class R>
class Recurrence {
public:
    explicit Recurrence(int order2) : o_(order2), w_(order2 + 1), v_(static_cast<size_t>(w_ * w_)), nz_(v_.size(), 0) {}

    int order2() const { return o_; }
    void put(Exp2 e, R c) {
        if (c.is_zero()) return;
        v_[idx(e)] = std::move(c);
        nz_[idx(e)] = 1;
    }
    // sum over the nonconstant terms f of h of h_f out_(e - f)
    R convolve(const std::vector<std::pair<Exp2, R>>& h, Exp2 e) const {
        R acc;
        for (const auto& [f, c] : h) {
            if (f.deg2() > e.deg2()) break;
            const int rx = e.x2 - f.x2, ry = e.y2 - f.y2;
            if (rx < 0 || ry < 0) continue;
            const size_t k = idx({rx, ry});
            if (!nz_[k]) continue;
            acc += c * v_[k];
        }
        return acc;
    }
    template <class F>
    void for_each_monomial(F f) {
        for (int d = 1; d <= o_; ++d)
            for (int x = d; x >= 0; --x) f(Exp2{x, d - x});
    }
    TruncatedBiSeries<R> finish() const {
        TruncatedBiSeries<R> out(o_);
        for (int x = 0; x < w_; ++x)
            for (int y = 0; x + y < w_; ++y)
                if (nz_[idx({x, y})]) out.set({x, y}, v_[idx({x, y})]);
        return out;
    }

private:
    size_t idx(Exp2 e) const { return static_cast<size_t>(e.x2 * w_ + e.y2); }
    int o_, w_;
    std::vector<R> v_;
    std::vector<char> nz_;
};

template <class R>
std::vector<std::pair<Exp2, R>> nonconstant_terms(const TruncatedBiSeries<R>& a) {
    std::vector<std::pair<Exp2, R>> h;
    for (const auto& [e, c] : a.terms())
        if (e.deg2() > 0) h.emplace_back(e, c);
    return h;
}

}  // namespace detail

template <class R>
TruncatedBiSeries<R> series_inverse(const TruncatedBiSeries<R>& a) {
    const R c0 = a.constant_term();
    if (c0.is_zero()) throw SingularError("series inverse: zero constant term");
    const R inv0 = ring_inverse(c0);
    const auto h = detail::nonconstant_terms(a);
    detail::Recurrence<R> r(a.order2());
    r.put({0, 0}, inv0);
    r.for_each_monomial([&](Exp2 e) {
        // a * b = 1:  b_e = -inv0 * sum_f a_f b_(e-f)
        R s = r.convolve(h, e);
        if (!s.is_zero()) r.put(e, -(s * inv0));
    });
    return r.finish();
}

// log of a series whose constant term is a positive rational. With E the
// degree operator, m = E log a solves m * (a/q) = E(a/q).
template <class R>
TruncatedBiSeries<R> series_log(const TruncatedBiSeries<R>& a) {
    const R c0 = a.constant_term();
    auto q = ring_as_rational(c0);
    if (!q || *q <= 0) throw DomainError("series log: constant term is not a positive rational");
    const auto h = detail::nonconstant_terms(a.scaled(R(1 / *q)));
    detail::Recurrence<R> m(a.order2());
    std::map<Exp2, R, GradedLex> eh;
    for (const auto& [f, c] : h) eh.emplace(f, c * R(Rational(f.deg2())));
    TruncatedBiSeries<R> out = TruncatedBiSeries<R>::constant(ring_lift<R>(log_of_rational(*q)), a.order2());
    m.for_each_monomial([&](Exp2 e) {
        auto it = eh.find(e);
        R v = it == eh.end() ? R() : it->second;
        v -= m.convolve(h, e);
        if (v.is_zero()) return;
        out.set(e, v * R(make_rational(1, e.deg2())));
        m.put(e, std::move(v));
    });
    return out;
}

// exp of a series with zero constant term: E y = (E h) y.
template <class R>
TruncatedBiSeries<R> series_exp(const TruncatedBiSeries<R>& h0) {
    if (!h0.constant_term().is_zero()) throw DomainError("series exp: nonzero constant term");
    std::vector<std::pair<Exp2, R>> eh;
    for (const auto& [f, c] : h0.terms()) eh.emplace_back(f, c * R(Rational(f.deg2())));
    detail::Recurrence<R> y(h0.order2());
    y.put({0, 0}, R(1));
    y.for_each_monomial([&](Exp2 e) {
        R s = y.convolve(eh, e);
        if (!s.is_zero()) y.put(e, s * R(make_rational(1, e.deg2())));
    });
    return y.finish();
}

// Derivation with D1 = 0, DX = Y^2 - XY, DY = -Y^2; models eta * d/d eta.
template <class R>
TruncatedBiSeries<R> delta(const TruncatedBiSeries<R>& t) {
    if (!t.integral()) throw DomainError("delta: half-integer exponent");
    TruncatedBiSeries<R> out(t.order2());
    auto add = [&](Exp2 e, const R& c) {
        if (e.deg2() > t.order2() || c.is_zero()) return;
        out.set(e, out.coeff(e) + c);
    };
    for (const auto& [e, c] : t.terms()) {
        long i = e.x2 / 2, j = e.y2 / 2;
        if (i > 0) {
            add({e.x2 - 2, e.y2 + 4}, c * R(Rational(i)));
            add({e.x2, e.y2 + 2}, c * R(Rational(-i)));
        }
        if (j > 0) add({e.x2, e.y2 + 2}, c * R(Rational(-j)));
    }
    return out;
}

// (1 + delta)^(-1) t as the finite sum of (-delta)^k t.
template <class R>
TruncatedBiSeries<R> neumann_inverse_one_plus_delta(const TruncatedBiSeries<R>& t) {
    TruncatedBiSeries<R> sum = t, term = t;
    while (true) {
        term = -delta(term);
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum;
}

// q(x, y) for an integer-exponent polynomial series q and arguments without
// constant terms. The result order accounts for q's own truncation.
template <class R>
TruncatedBiSeries<R> compose(const Series& q, const TruncatedBiSeries<R>& x, const TruncatedBiSeries<R>& y) {
    if (!q.integral()) throw DomainError("compose: half-integer exponent in outer series");
    const int v2 = std::min(x.valuation2(), y.valuation2());
    if (!x.constant_term().is_zero() || !y.constant_term().is_zero() || v2 < 1)
        throw DomainError("compose: arguments must vanish at the origin");
    int o = (q.order2() / 2 + 1) * v2 - 1;
    bool uses_x = false, uses_y = false;
    int max_i = 0, max_j = 0;
    for (const auto& [e, c] : q.terms()) {
        uses_x |= e.x2 > 0;
        uses_y |= e.y2 > 0;
        max_i = std::max(max_i, e.x2 / 2);
        max_j = std::max(max_j, e.y2 / 2);
    }
    if (uses_x) o = std::min(o, x.order2());
    if (uses_y) o = std::min(o, y.order2());
    // Horner in x over the y-polynomials q_i(y). The partial sum that still
    // gets multiplied by x^i only matters through order o - i * val(x).
    const int vx = x.valuation2(), vy = y.valuation2();
    auto reach = [&](int i) { return std::max(o - i * vx, 0); };
    const TruncatedBiSeries<R> yt = y.truncated(o);
    std::vector<TruncatedBiSeries<R>> yp{TruncatedBiSeries<R>::constant(R(1), o)};
    for (int k = 1; k <= max_j && k * vy <= o; ++k) yp.push_back(yp.back() * yt);
    std::vector<TruncatedBiSeries<R>> inner;
    for (int i = 0; i <= max_i; ++i) inner.emplace_back(reach(i));
    for (const auto& [e, c] : q.terms()) {
        const auto i = static_cast<size_t>(e.x2 / 2), j = static_cast<size_t>(e.y2 / 2);
        if (j >= yp.size()) continue;
        inner[i] = inner[i] + yp[j].truncated(inner[i].order2()).scaled(ring_lift<R>(c));
    }
    TruncatedBiSeries<R> out = inner.back();
    for (int i = max_i - 1; i >= 0; --i) {
        const int r = reach(i);
        // out is exact through r - vx and x starts at vx
        out = out.relabeled(r) * x.truncated(r) + inner[static_cast<size_t>(i)];
    }
    return out.relabeled(o);
}

double series_eval_f64(const Series& a, double x, double y);

template <class R>
std::string render(const TruncatedBiSeries<R>& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : a.terms()) {
        std::string mono = render_monomial(e);
        auto q = ring_as_rational(c);
        std::string sep = first ? "" : " + ";
        std::string body;
        if (q) {
            Rational mag = abs(*q);
            if (*q < 0) sep = first ? "-" : " - ";
            std::string cs = to_string(mag);
            if (!is_integer(mag)) cs = "(" + cs + ")";
            if (mono.empty())
                body = cs;
            else
                body = mag == 1 ? mono : cs + "*" + mono;
        } else {
            body = "(" + ring_render(c) + ")" + (mono.empty() ? "" : "*" + mono);
        }
        out += sep + body;
        first = false;
    }
    return out;
}

}  // namespace nfsasy
