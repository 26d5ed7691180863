#include "nfsasy/dickman.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace nfsasy {

Integer stirling_first_signed(int i, int k) {
    if (i < 0 || k < 0) throw DomainError("stirling: negative index");
    if (k > i) return 0;
    std::vector<Integer> row{1};  // row n holds s(n, 0..n)
    for (int n = 0; n < i; ++n) {
        std::vector<Integer> next(static_cast<size_t>(n + 2), 0);
        for (int m = 0; m <= n + 1; ++m) {
            Integer v = 0;
            if (m >= 1) v += row[static_cast<size_t>(m - 1)];
            if (m <= n) v -= Integer(n) * row[static_cast<size_t>(m)];
            next[static_cast<size_t>(m)] = v;
        }
        row = std::move(next);
    }
    return row[static_cast<size_t>(k)];
}

namespace {

void check_p_invariants(const Series& p, int n) {
    if (p.constant_term() != LogConstant(1)) throw ShapeError("P series: constant term is not 1");
    if (n >= 1 && p.coeff({2, 0}) != LogConstant(1)) throw ShapeError("P series: X coefficient is not 1");
    for (const auto& [e, c] : p.terms())
        if (!c.as_rational()) throw ShapeError("P series: non-rational coefficient");
}

}  // namespace

PSeries p_series_recurrence(int n) {
    if (n < 0) throw DomainError("P series: negative order");
    Series p = Series::constant(1, 0);
    for (int k = 0; k < n; ++k) {
        Series next = series_log(p).shifted(0, 2);  // Y log P_k, order k+1
        next = next + Series::constant(1, next.order2()) + series_x<LogConstant>(next.order2());
        p = next;
    }
    check_p_invariants(p, n);
    return {p, PMethod::recurrence};
}

PSeries p_series_stirling(int n) {
    if (n < 0) throw DomainError("P series: negative order");
    Series p = Series::constant(1, 2 * n);
    if (n >= 1) p.set({2, 0}, 1);
    std::vector<Integer> factorial{1};
    for (int j = 1; j <= n; ++j) factorial.push_back(factorial.back() * j);
    // term S(i, i-j+1)/j! X^j Y^(i-j+1) has total degree i+1
    for (int i = 1; i + 1 <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            Rational c(stirling_first_signed(i, i - j + 1), factorial[static_cast<size_t>(j)]);
            c.canonicalize();
            Exp2 e{2 * j, 2 * (i - j + 1)};
            p.set(e, p.coeff(e) + LogConstant(c));
        }
    check_p_invariants(p, n);
    return {p, PMethod::stirling};
}

namespace {

QSeries build_q(int n) {
    if (n == 0) return {Series::constant(1, 0)};
    const Series p = p_series_recurrence(n).series;
    if (p != p_series_stirling(n).series) throw ShapeError("P series: recurrence and Stirling forms disagree");
    const int o = 2 * n;
    Series dp = delta(p);
    Series dp_over_y = dp.shifted(0, -2);  // exact: delta lands in Y*ring
    Series inner = dp.truncated(o - 2) - dp_over_y;
    Series tail = neumann_inverse_one_plus_delta(inner).shifted(0, 2);
    Series one_minus_y = Series::constant(1, o) - series_y<LogConstant>(o);
    Series q = one_minus_y * p + tail;
    if (q.constant_term() != LogConstant(1)) throw ShapeError("Q series: constant term is not 1");
    if (n >= 2 && q.truncated(4) != cep_series()) throw ShapeError("Q series: degree-2 part mismatch");
    return {q};
}

}  // namespace

const QSeries& q_series(int n) {
    if (n < 0 || n > kMaxQOrder) throw DomainError("Q series: order out of range");
    static std::mutex mu;
    static std::map<int, QSeries> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_q(n)).first;
    return it->second;
}

Series cep_series() {
    Series s(4);
    s.set({0, 0}, 1);
    s.set({2, 0}, 1);
    s.set({0, 2}, -1);
    s.set({2, 2}, 1);
    s.set({0, 4}, -1);
    return s;
}

double x_of_eta(double eta) { return std::log(std::log(eta)) / std::log(eta); }
double y_of_eta(double eta) { return 1 / std::log(eta); }

double s_numeric_from_log(double log_eta) {
    if (!(log_eta > 0)) throw DomainError("s: requires eta > 1");
    const double inv_eta = std::exp(-log_eta);
    // s = log(1 + s eta) rewritten as s - log eta - log(s + 1/eta) = 0
    auto f = [&](double s) { return s - log_eta - std::log(s + inv_eta); };
    auto df = [&](double s) { return 1 - 1 / (s + inv_eta); };
    double lo = log_eta, hi = 2 * log_eta + 1;
    while (f(hi) <= 0) hi *= 2;
    double s = log_eta > 1 ? log_eta + std::log(log_eta) : 0.5 * (lo + hi);
    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double v = f(s);
        if (v == 0) return s;
        (v < 0 ? lo : hi) = s;
        double d = df(s);
        double next = d > 0 ? s - v / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - s) <= 1e-15 * std::fabs(s)) return next;
        s = next;
    }
    return s;
}

double s_numeric(double eta) {
    if (!(eta > 1)) throw DomainError("s: requires eta > 1");
    return s_numeric_from_log(std::log(eta));
}

namespace {

// Integral of s(e^t) e^t over t in [a, b].
double integral_s_log_range(double a, double b) {
    auto g = [](double t) { return s_numeric_from_log(t) * std::exp(t); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 15, 1e-12);
}

}  // namespace

double integral_s_numeric(double u) {
    if (!(u > std::numbers::e)) throw DomainError("integral of s: requires u > e");
    return integral_s_log_range(1, std::log(u));
}

namespace {

// Piecewise Chebyshev representation of rho(u)/rho(k) on [k, k+1]. Each piece
// solves u rho(u) = integral of rho over [u-1, u] by collocation at the
// Lobatto nodes; every term is positive, so relative accuracy survives even
// where rho underflows.
class RhoTable {
public:
    RhoTable(int intervals, int degree) : n_(degree) {
        const size_t np = static_cast<size_t>(n_ + 1);
        nodes_.resize(np);
        for (int j = 0; j <= n_; ++j) nodes_[static_cast<size_t>(j)] = std::cos(std::numbers::pi * j / n_);
        // integ_[j][i]: integral over [-1, x_j] of the i-th Lagrange basis polynomial
        integ_.assign(np, std::vector<double>(np, 0.0));
        for (size_t i = 0; i < np; ++i) {
            std::vector<double> unit(np, 0.0);
            unit[i] = 1;
            std::vector<double> b = antiderivative(coefficients(unit));
            for (size_t j = 0; j < np; ++j) integ_[j][i] = clenshaw(b, nodes_[j]);
        }
        pieces_.push_back(std::vector<double>(np, 0.0));
        pieces_[0][0] = 1;  // rho = 1 on [0, 1]
        log_start_ = {0, 0};
        for (int k = 1; k < intervals; ++k) {
            const auto& prev = pieces_.back();
            const double ratio = 1 / clenshaw(prev, 1.0);  // rho(k-1)/rho(k)
            const std::vector<double> prev_int = antiderivative(prev);
            const double prev_total = clenshaw(prev_int, 1.0);
            // (u_j - S/2) v = ratio/2 * integral of the previous piece over [x_j, 1]
            std::vector<std::vector<double>> m(np, std::vector<double>(np + 1, 0.0));
            for (size_t j = 0; j < np; ++j) {
                for (size_t i = 0; i < np; ++i) m[j][i] = -0.5 * integ_[j][i];
                m[j][j] += k + 0.5 * (nodes_[j] + 1);
                m[j][np] = 0.5 * ratio * (prev_total - clenshaw(prev_int, nodes_[j]));
            }
            pieces_.push_back(coefficients(solve(m)));
            log_start_.push_back(log_start_.back() + std::log(clenshaw(pieces_.back(), 1.0)));
        }
    }

    double log_rho(double u) const {
        if (u <= 1) return 0;
        size_t k = static_cast<size_t>(std::floor(u));
        if (k >= pieces_.size()) k = pieces_.size() - 1;
        double x = 2 * (u - static_cast<double>(k)) - 1;
        return log_start_[k] + std::log(clenshaw(pieces_[k], x));
    }

private:
    static double clenshaw(const std::vector<double>& a, double x) {
        double b1 = 0, b2 = 0;
        for (size_t m = a.size(); m-- > 1;) {
            double t = 2 * x * b1 - b2 + a[m];
            b2 = b1;
            b1 = t;
        }
        return x * b1 - b2 + a[0];
    }

    // Chebyshev coefficients from values at the Lobatto nodes cos(pi j/n).
    std::vector<double> coefficients(const std::vector<double>& v) const {
        std::vector<double> a(static_cast<size_t>(n_ + 1));
        for (int m = 0; m <= n_; ++m) {
            double s = 0;
            for (int j = 0; j <= n_; ++j) {
                double w = (j == 0 || j == n_) ? 0.5 : 1.0;
                s += w * v[static_cast<size_t>(j)] * std::cos(std::numbers::pi * m * j / n_);
            }
            a[static_cast<size_t>(m)] = 2 * s / n_;
        }
        a[0] *= 0.5;
        a[static_cast<size_t>(n_)] *= 0.5;
        return a;
    }

    // Antiderivative vanishing at x = -1.
    static std::vector<double> antiderivative(const std::vector<double>& a) {
        const size_t n = a.size();
        std::vector<double> b(n + 1, 0.0);
        auto at = [&](size_t m) { return m < n ? a[m] : 0.0; };
        for (size_t m = 1; m <= n; ++m)
            b[m] = ((m == 1 ? 2 : 1) * at(m - 1) - at(m + 1)) / (2.0 * static_cast<double>(m));
        double s = 0;
        for (size_t m = 1; m <= n; ++m) s += (m % 2 ? -1.0 : 1.0) * b[m];
        b[0] = -s;
        return b;
    }

    // Gaussian elimination with partial pivoting on an augmented matrix.
    static std::vector<double> solve(std::vector<std::vector<double>> m) {
        const size_t n = m.size();
        for (size_t c = 0; c < n; ++c) {
            size_t p = c;
            for (size_t r = c + 1; r < n; ++r)
                if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
            std::swap(m[c], m[p]);
            for (size_t r = c + 1; r < n; ++r) {
                double f = m[r][c] / m[c][c];
                if (f == 0) continue;
                for (size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
            }
        }
        std::vector<double> x(n);
        for (size_t r = n; r-- > 0;) {
            double s = m[r][n];
            for (size_t k = r + 1; k < n; ++k) s -= m[r][k] * x[k];
            x[r] = s / m[r][r];
        }
        return x;
    }

    int n_;
    std::vector<double> nodes_;
    std::vector<std::vector<double>> integ_;
    std::vector<std::vector<double>> pieces_;
    std::vector<double> log_start_;
};

}  // namespace

RhoValue rho_numeric(double u, int degree) {
    if (!(u >= 0)) throw DomainError("rho: requires u >= 0");
    if (u > 500) throw DomainError("rho: u > 500 is out of range, use log_rho_debruijn");
    if (degree < 4) throw DomainError("rho: collocation degree too small");
    RhoTable table(static_cast<int>(std::floor(u)) + 1, degree);
    return {u, table.log_rho(u), RhoMethod::dde};
}

DeBruijnRho log_rho_debruijn(double u, int order) {
    if (!(u > std::numbers::e)) throw DomainError("de Bruijn rho: requires u > e");
    if (order < 0 || order > kMaxQOrder) throw DomainError("de Bruijn rho: Q order not available");
    const double lu = std::log(u);
    double qv = series_eval_f64(q_series(order).series, std::log(lu) / lu, 1 / lu);
    double series_form = -u * lu * qv;
    double tail = integral_s_log_range(0, 1) + integral_s_numeric(u);
    double integral_form = std::numbers::egamma - 0.5 * std::log(2 * std::numbers::pi * u) - tail;
    return {{u, series_form, RhoMethod::debruijn_series}, {u, integral_form, RhoMethod::debruijn_integral}};
}

LambertWitness radius_witness() {
    const double z = -std::exp(-2.0);
    double w = -3;
    for (int it = 0; it < 50; ++it) {
        double ew = std::exp(w);
        double f = w * ew - z;
        double d1 = ew * (w + 1);
        double d2 = ew * (w + 2);
        double step = f / (d1 - f * d2 / (2 * d1));
        w -= step;
        if (std::fabs(step) < 1e-16 * std::fabs(w)) break;
    }
    return {w, -1 / w};
}

double radius_constant() { return radius_witness().radius; }

bool radius_threshold_check(double eta) {
    if (!(eta > std::numbers::e)) return false;
    return x_of_eta(eta) <= radius_constant();
}

}  // namespace nfsasy
