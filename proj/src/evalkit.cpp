#include "nfsasy/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "nfsasy/dickman.hpp"

namespace nfsasy {

namespace {

double eval_at_log(const Series& s, double log_nu) {
    if (!(log_nu > 1)) throw DomainError("evaluation needs log nu > 1 (nu > e^e)");
    return series_eval_f64(s, std::log(log_nu) / log_nu, 1 / log_nu);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

XiTruncation xi_truncation(const CandidateExpansion& expansion, int i) {
    if (i < 0) throw DomainError("xi: negative degree");
    if (expansion.degA2 < 2 * i)
        throw DomainError("xi: expansion known through degree " + std::to_string(expansion.degA2 / 2) +
                          " only; run compute_proven_expansion for degree " + std::to_string(i));
    XiTruncation xi;
    xi.degree = i;
    xi.poly = Series(2 * i);
    for (const auto& [e, c] : expansion.A.terms())
        if (e.deg2() <= 2 * i && e.deg2() > 0) xi.poly.set(e, c);
    return xi;
}

double xi_eval(const XiTruncation& xi, double nu) {
    if (!(nu > 0)) throw DomainError("xi: nu must be positive");
    return xi_eval_log(xi, std::log(nu));
}

double xi_eval_log(const XiTruncation& xi, double log_nu) {
    if (xi.degree == 0) {
        if (!(log_nu > 1)) throw DomainError("evaluation needs log nu > 1 (nu > e^e)");
        return 0;
    }
    return eval_at_log(xi.poly, log_nu);
}

double complexity_log(const XiTruncation& xi, double nu) {
    const double log_nu = std::log(nu);
    return std::cbrt(64.0 / 9) * std::cbrt(nu) * std::pow(log_nu, 2.0 / 3) * (1 + xi_eval_log(xi, log_nu));
}

GDemo g_demo(double bits) {
    if (!(bits > 1)) throw DomainError("g_demo: bits must exceed 1");
    const double log_n = bits * std::log(2.0);
    const double loglog = std::log(log_n);
    const double e0 = std::cbrt(log_n) * std::pow(loglog, 2.0 / 3);
    // loglog can be negative for tiny N, where 1 + 20/loglog is not > 1;
    // the demo is only meaningful for N > e^e
    return {e0 / std::log(2.0), e0 / (1 + 20 / loglog) / std::log(2.0)};
}

std::vector<double> keysize_ratios(const CandidateExpansion& expansion, int degree, double from_bits,
                                   double to_bits) {
    std::vector<double> out;
    const double nu1 = from_bits * std::log(2.0), nu2 = to_bits * std::log(2.0);
    for (int i = 0; i <= degree; ++i) {
        auto xi = xi_truncation(expansion, i);
        out.push_back((complexity_log(xi, nu2) - complexity_log(xi, nu1)) / std::log(2.0));
    }
    return out;
}

FigureId parse_figure_id(const std::string& s) {
    if (s == "zonecrypto") return FigureId::zonecrypto;
    if (s == "convergence") return FigureId::convergence;
    if (s == "logrho") return FigureId::logrho;
    throw DomainError("unknown figure id '" + s + "'");
}

std::string to_string(FigureId id) {
    switch (id) {
        case FigureId::zonecrypto: return "zonecrypto";
        case FigureId::convergence: return "convergence";
        case FigureId::logrho: return "logrho";
    }
    return "?";
}

Grid default_grid(FigureId id) {
    switch (id) {
        case FigureId::zonecrypto:
            // N from 2^256 to 2^20000
            return {std::log(256 * std::log(2.0)), std::log(20000 * std::log(2.0)), 512};
        case FigureId::convergence:
            return {10, 40, 512};
        case FigureId::logrho:
            return {1, 12, 512};
    }
    return {};
}

FigureSeries figure_data(FigureId id, int i_max, const Grid& grid, const CandidateExpansion* expansion) {
    if (grid.points < 2 || !(grid.hi > grid.lo)) throw DomainError("figure: empty grid");
    if (i_max < 0) throw DomainError("figure: negative degree");
    FigureSeries f{id, grid, {}};
    std::vector<double> xs;
    for (int k = 0; k < grid.points; ++k) xs.push_back(grid.lo + (grid.hi - grid.lo) * k / (grid.points - 1));
    if (id == FigureId::logrho) {
        if (i_max > kMaxQOrder) throw DomainError("figure: smoothness series order too high");
        for (double t : xs)
            if (!(t > 0)) throw DomainError("figure: log u must be positive");
        for (int i = 1; i <= i_max; ++i) {
            const Series& q = q_series(i).series;
            for (double t : xs) f.rows.push_back({t, i, series_eval_f64(q, std::log(t) / t, 1 / t)});
        }
        return f;
    }
    if (!expansion) throw DomainError("figure: the xi figures need an expansion");
    for (int i = 0; i <= i_max; ++i) {
        auto xi = xi_truncation(*expansion, i);
        for (double t : xs) f.rows.push_back({t, i, xi_eval_log(xi, t)});
    }
    return f;
}

std::string figure_csv(const FigureSeries& f) {
    std::string out = "abscissa,curve,value\n";
    for (const auto& r : f.rows) out += num(r.abscissa) + "," + std::to_string(r.curve) + "," + num(r.value) + "\n";
    return out;
}

std::string figure_svg(const FigureSeries& f) {
    const double W = 800, H = 500, pad = 60;
    double ylo = 0, yhi = 0;
    bool first = true;
    for (const auto& r : f.rows) {
        if (!std::isfinite(r.value)) continue;
        ylo = first ? r.value : std::min(ylo, r.value);
        yhi = first ? r.value : std::max(yhi, r.value);
        first = false;
    }
    if (yhi == ylo) yhi = ylo + 1;
    auto px = [&](double x) { return pad + (x - f.grid.lo) / (f.grid.hi - f.grid.lo) * (W - 2 * pad); };
    auto py = [&](double y) { return H - pad - (y - ylo) / (yhi - ylo) * (H - 2 * pad); };
    static const char* colors[] = {"#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                                   "#e377c2"};
    std::map<int, std::string> paths;
    for (const auto& r : f.rows) {
        auto& p = paths[r.curve];
        p += (p.empty() ? "" : " ") + num(px(r.abscissa)) + "," + num(py(r.value));
    }
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << H - 2 * pad
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
    const std::string xlabel = f.id == FigureId::logrho ? "log u" : "log log N";
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << xlabel << " ["
      << num(f.grid.lo) << ", " << num(f.grid.hi) << "]</text>\n";
    s << "<text x=\"10\" y=\"" << pad - 20 << "\">" << to_string(f.id) << ": y in [" << num(ylo) << ", " << num(yhi)
      << "]</text>\n";
    int k = 0;
    for (const auto& [curve, pts] : paths) {
        const char* c = colors[k++ % 8];
        s << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"" << pts << "\"/>\n";
        s << "<text x=\"" << W - pad + 5 << "\" y=\"" << pad + 15 * k << "\" fill=\"" << c << "\">i=" << curve
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace nfsasy
