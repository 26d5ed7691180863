#pragma once

#include <string>
#include <vector>

#include "nfsasy/bi_series.hpp"
#include "nfsasy/dickman.hpp"
#include "nfsasy/radical_scale.hpp"

namespace nfsasy {

// A term dropped by asym_add because it is smaller than every power of
// 1/log nu relative to the term it was added to.
struct AbsorptionEvent {
    RadicalScale scale;
    Rational alpha;
    Rational beta;
    Rational kept_alpha;
};
using AuditTrail = std::vector<AbsorptionEvent>;

// scale * nu^alpha * (log nu)^beta * F(X(nu), Y(nu)) with F known through its
// order. The exact zero is a separate flag; a zero series at finite order is
// "o(Y^order)" relative to its scale.
template <class R>
struct ScaledAsymptotic {
    RadicalScale scale;
    Rational alpha = 0;
    Rational beta = 0;
    TruncatedBiSeries<R> series;
    bool exact_zero = false;

    int order2() const { return series.order2(); }

    static ScaledAsymptotic zero() {
        ScaledAsymptotic z;
        z.exact_zero = true;
        return z;
    }
    static ScaledAsymptotic make(RadicalScale s, Rational a, Rational b, TruncatedBiSeries<R> f) {
        return {std::move(s), std::move(a), std::move(b), std::move(f), false};
    }
    // A constant (rational or radical) known exactly; `order2` only sets the
    // series truncation so it never limits the other factor.
    static ScaledAsymptotic constant(RadicalScale s, int order2) {
        return make(std::move(s), 0, 0, TruncatedBiSeries<R>::constant(R(1), order2));
    }
};

template <class R>
ScaledAsymptotic<R> asym_neg(const ScaledAsymptotic<R>& f) {
    if (f.exact_zero) return f;
    auto r = f;
    r.series = -r.series;
    return r;
}

template <class R>
ScaledAsymptotic<R> asym_mul(const ScaledAsymptotic<R>& f, const ScaledAsymptotic<R>& g) {
    if (f.exact_zero || g.exact_zero) return ScaledAsymptotic<R>::zero();
    return ScaledAsymptotic<R>::make(f.scale * g.scale, f.alpha + g.alpha, f.beta + g.beta,
                                     series_mul_tracked(f.series, g.series));
}

template <class R>
ScaledAsymptotic<R> asym_div(const ScaledAsymptotic<R>& f, const ScaledAsymptotic<R>& g) {
    if (g.exact_zero || g.series.constant_term().is_zero()) throw SingularError("asym: division by a zero element");
    if (f.exact_zero) return f;
    return ScaledAsymptotic<R>::make(f.scale / g.scale, f.alpha - g.alpha, f.beta - g.beta,
                                     series_mul_tracked(f.series, series_inverse(g.series)));
}

template <class R>
ScaledAsymptotic<R> asym_add(const ScaledAsymptotic<R>& f, const ScaledAsymptotic<R>& g, AuditTrail* audit = nullptr) {
    if (f.exact_zero) return g;
    if (g.exact_zero) return f;
    if (f.alpha != g.alpha) {
        const auto& big = f.alpha > g.alpha ? f : g;
        const auto& small = f.alpha > g.alpha ? g : f;
        if (audit) audit->push_back({small.scale, small.alpha, small.beta, big.alpha});
        return big;
    }
    // Equal log powers: lead with the larger scale so the result does not
    // depend on argument order.
    bool f_leads = f.beta > g.beta;
    if (f.beta == g.beta) {
        double sf = f.scale.to_double(), sg = g.scale.to_double();
        f_leads = sf != sg ? sf > sg : f.scale.to_string() >= g.scale.to_string();
    }
    const auto& big = f_leads ? f : g;
    const auto& small = f_leads ? g : f;
    const Rational gap2 = 2 * (big.beta - small.beta);
    auto ratio = scale_ratio_as_rational(small.scale, big.scale);
    if (!is_integer(gap2) || !ratio)
        throw IncompatibleScales("asym: cannot combine " + big.scale.to_string() + " with " + small.scale.to_string());
    const int k2 = static_cast<int>(gap2.get_num().get_si());
    auto folded = small.series.scaled(R(*ratio)).shifted(0, k2);
    auto r = big;
    r.series = big.series + folded;
    return r;
}

// log f = log nu * (alpha + beta X + Y (log F + log scale)), exponents (0, 1).
// With alpha = beta = 0 the result is log F + log scale at exponents (0, 0).
template <class R>
ScaledAsymptotic<R> asym_log(const ScaledAsymptotic<R>& f) {
    if (f.exact_zero) throw DomainError("asym log: zero element");
    auto c0 = ring_as_rational(f.series.constant_term());
    if (!c0 || *c0 <= 0) throw DomainError("asym log: leading coefficient is not a positive rational");
    TruncatedBiSeries<R> lf = series_log(f.series) + TruncatedBiSeries<R>::constant(ring_lift<R>(scale_log(f.scale)), f.order2());
    if (f.alpha == 0) {
        if (f.beta != 0) throw DomainError("asym log: pure log-power growth is not supported");
        return ScaledAsymptotic<R>::make(RadicalScale(), 0, 0, lf);
    }
    TruncatedBiSeries<R> g = lf.shifted(0, 2);
    g = g + TruncatedBiSeries<R>::constant(R(f.alpha), g.order2());
    if (f.beta != 0) g = g + TruncatedBiSeries<R>::monomial({2, 0}, R(f.beta), g.order2());
    return ScaledAsymptotic<R>::make(RadicalScale(), 0, 1, g);
}

namespace detail {
template <class R>
TruncatedBiSeries<R> log_series_of(const ScaledAsymptotic<R>& f) {
    if (f.exact_zero || f.alpha <= 0) throw DomainError("asym: X/Y of an element requires alpha > 0");
    return asym_log(f).series;
}
// From g = log f / log nu and its inverse.
template <class R>
TruncatedBiSeries<R> y_from(const TruncatedBiSeries<R>& g_inv) {
    return g_inv.shifted(0, 2);
}
template <class R>
TruncatedBiSeries<R> x_from(const TruncatedBiSeries<R>& g, const TruncatedBiSeries<R>& g_inv) {
    auto num = series_log(g).shifted(0, 2);
    num = num + series_x<R>(num.order2());
    return series_mul_tracked(num, g_inv);
}
}  // namespace detail

// 1/log f as a series in X(nu), Y(nu).
template <class R>
TruncatedBiSeries<R> y_of(const ScaledAsymptotic<R>& f) {
    return detail::y_from(series_inverse(detail::log_series_of(f)));
}

// log log f / log f as a series in X(nu), Y(nu).
template <class R>
TruncatedBiSeries<R> x_of(const ScaledAsymptotic<R>& f) {
    auto g = detail::log_series_of(f);
    return detail::x_from(g, series_inverse(g));
}

// Log-probability -u log u Q(X(u), Y(u)) that a number of size e^u is smooth.
template <class R>
ScaledAsymptotic<R> p_of(const ScaledAsymptotic<R>& u, const Series& q) {
    const auto g = detail::log_series_of(u);
    const auto g_inv = series_inverse(g);
    auto qc = compose(q, detail::x_from(g, g_inv), detail::y_from(g_inv));
    auto body = series_mul_tracked(series_mul_tracked(u.series, g), qc);
    return ScaledAsymptotic<R>::make(u.scale, u.alpha, u.beta + 1, -body);
}

template <class R>
ScaledAsymptotic<R> p_of(const ScaledAsymptotic<R>& u, int n) {
    return p_of(u, q_series(n).series);
}

}  // namespace nfsasy
