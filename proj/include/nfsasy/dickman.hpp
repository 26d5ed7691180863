#pragma once

#include "nfsasy/bi_series.hpp"

namespace nfsasy {

Integer stirling_first_signed(int i, int k);

enum class PMethod { recurrence, stirling };

// Expansion of s(eta)/log eta in X(eta), Y(eta); s solves s = log(1 + s eta).
struct PSeries {
    Series series;
    PMethod method;
};

PSeries p_series_recurrence(int n);
PSeries p_series_stirling(int n);

// Expansion Q with rho(u) = exp(-u log u (Q(X(u), Y(u)) + o(Y^n))).
struct QSeries {
    Series series;
};

// Memoized; built from the recurrence P and checked against the Stirling P.
const QSeries& q_series(int n);
constexpr int kMaxQOrder = 24;

// 1 + X - Y + XY - Y^2, the order-2 smoothness expansion.
Series cep_series();

double x_of_eta(double eta);
double y_of_eta(double eta);

double s_numeric(double eta);
// Same root with eta given as log eta, usable far beyond double range.
double s_numeric_from_log(double log_eta);
// Integral of s over [e, u].
double integral_s_numeric(double u);

enum class RhoMethod { dde, debruijn_series, debruijn_integral };

struct RhoValue {
    double u;
    double log_rho;
    RhoMethod method;
};

// Dickman-de Bruijn rho by Chebyshev collocation on each unit interval,
// carried as log rho. Valid for 0 <= u <= 500.
RhoValue rho_numeric(double u, int degree = 30);

struct DeBruijnRho {
    RhoValue series_form;    // -u log u Q(X(u), Y(u))
    RhoValue integral_form;  // gamma - log(2 pi u)/2 - integral of s over [1, u]
};

DeBruijnRho log_rho_debruijn(double u, int order);

struct LambertWitness {
    double w;       // branch -1 solution of w e^w = -e^-2
    double radius;  // -1/w
};

LambertWitness radius_witness();
double radius_constant();
// X(eta) within the radius of convergence of the X-majorized P series.
bool radius_threshold_check(double eta);

}  // namespace nfsasy
