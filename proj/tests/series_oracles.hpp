#pragma once

// Term-by-term power sums for inverse, log and exp. Slow but written
// independently of the coefficient recurrences the library uses.

#include "nfsasy/bi_series.hpp"

namespace oracle {
using namespace nfsasy;

template <class R>
TruncatedBiSeries<R> geometric_inverse(const TruncatedBiSeries<R>& a) {
    const R c0 = a.constant_term();
    if (c0.is_zero()) throw SingularError("series inverse: zero constant term");
    const R inv0 = ring_inverse(c0);
    TruncatedBiSeries<R> h = a;
    h.set({0, 0}, R());
    h = h.scaled(-inv0);
    TruncatedBiSeries<R> sum = TruncatedBiSeries<R>::constant(R(1), a.order2());
    TruncatedBiSeries<R> term = sum;
    while (true) {
        term = term * h;
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum.scaled(inv0);
}

// log of a series whose constant term is a positive rational.
template <class R>
TruncatedBiSeries<R> geometric_log(const TruncatedBiSeries<R>& a) {
    const R c0 = a.constant_term();
    auto q = ring_as_rational(c0);
    if (!q || *q <= 0) throw DomainError("series log: constant term is not a positive rational");
    TruncatedBiSeries<R> h = a.scaled(R(1 / *q));
    h.set({0, 0}, R());
    TruncatedBiSeries<R> sum = TruncatedBiSeries<R>::constant(ring_lift<R>(log_of_rational(*q)), a.order2());
    TruncatedBiSeries<R> power = TruncatedBiSeries<R>::constant(R(1), a.order2());
    for (long k = 1;; ++k) {
        power = power * h;
        if (power.is_zero()) break;
        Rational w = make_rational(k % 2 ? 1 : -1, k);
        sum = sum + power.scaled(R(w));
    }
    return sum;
}

// exp of a series with zero constant term.
template <class R>
TruncatedBiSeries<R> geometric_exp(const TruncatedBiSeries<R>& h) {
    if (!h.constant_term().is_zero()) throw DomainError("series exp: nonzero constant term");
    TruncatedBiSeries<R> sum = TruncatedBiSeries<R>::constant(R(1), h.order2());
    TruncatedBiSeries<R> term = sum;
    for (long k = 1;; ++k) {
        term = (term * h).scaled(R(make_rational(1, k)));
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum;
}


// q(x, y) summed monomial by monomial from full powers of x and y.
template <class R>
TruncatedBiSeries<R> naive_compose(const Series& q, const TruncatedBiSeries<R>& x, const TruncatedBiSeries<R>& y, int o) {
    TruncatedBiSeries<R> out(o);
    for (const auto& [e, c] : q.terms()) {
        TruncatedBiSeries<R> t = TruncatedBiSeries<R>::constant(ring_lift<R>(c), o);
        for (int k = 0; k < e.x2 / 2; ++k) t = t * x.truncated(o);
        for (int k = 0; k < e.y2 / 2; ++k) t = t * y.truncated(o);
        out = out + t;
    }
    return out;
}

}  // namespace oracle
