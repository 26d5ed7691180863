#pragma once

#include <string>
#include <vector>

#include "nfsasy/optimizer.hpp"

namespace nfsasy {

// xi_i = A^(i)(X, Y) - 1 with X = log log nu / log nu, Y = 1 / log nu and
// nu = log N.
struct XiTruncation {
    int degree = 0;
    Series poly;
};

// Throws DomainError when the expansion is not known through degree i.
XiTruncation xi_truncation(const CandidateExpansion& expansion, int i);

double xi_eval(const XiTruncation& xi, double nu);
// Same with log nu given, for N far beyond double range.
double xi_eval_log(const XiTruncation& xi, double log_nu);

// Natural log of (64/9)^(1/3) nu^(1/3) (log nu)^(2/3) A^(i)(X, Y), the
// exponent of the NFS cost for N = e^nu.
double complexity_log(const XiTruncation& xi, double nu);

// log2 of g0(N) and g(N) for N = 2^bits, where
//   g0 = exp((log N)^(1/3) (log log N)^(2/3)),  g = g0^(1 / (1 + 20 / log log N)).
struct GDemo {
    double log2_g0;
    double log2_g;
};
GDemo g_demo(double bits);

// log2 C(2^to_bits) - log2 C(2^from_bits) under each truncation 0..degree.
std::vector<double> keysize_ratios(const CandidateExpansion& expansion, int degree, double from_bits, double to_bits);

enum class FigureId { zonecrypto, convergence, logrho };
FigureId parse_figure_id(const std::string& s);
std::string to_string(FigureId id);

// Abscissa range and sample count. For the xi figures the abscissa is
// log log N = log nu; for logrho it is log u.
struct Grid {
    double lo = 0;
    double hi = 0;
    int points = 512;
};
Grid default_grid(FigureId id);

struct FigureRow {
    double abscissa;
    int curve;  // truncation degree i
    double value;
};

struct FigureSeries {
    FigureId id;
    Grid grid;
    std::vector<FigureRow> rows;  // grouped by curve, abscissa increasing
};

// xi figures need `expansion` through degree i_max; logrho plots
// Q^(i)(X(u), Y(u)) for 1 <= i <= i_max and ignores it.
FigureSeries figure_data(FigureId id, int i_max, const Grid& grid, const CandidateExpansion* expansion = nullptr);

std::string figure_csv(const FigureSeries& f);
std::string figure_svg(const FigureSeries& f);

}  // namespace nfsasy
