#include <cmath>
#include <random>

#include "doctest.h"
#include "nfsasy/dickman.hpp"
#include "nfsasy/optimizer.hpp"
#include "random_values.hpp"

using namespace nfsasy;

namespace {

LogConstant q(long n, long d = 1) { return make_rational(n, d); }
LogConstant l2() { return LogConstant::lambda(2); }
LogConstant l3() { return LogConstant::lambda(3); }
Exp2 m(int i, int j) { return {2 * i, 2 * j}; }

// Table values, written out by hand.
LogConstant a01() { return q(-2) * l2() + q(1, 6) * l3() - q(2); }
LogConstant a11() { return q(4, 3) * l2() - q(1, 9) * l3() + q(4); }
LogConstant a02() {
    return -l2() * l2() + q(1, 6) * l2() * l3() - q(6) * l2() - q(7, 36) * l3() * l3() + q(1, 2) * l3() - q(5);
}
LogConstant a21() { return q(-16, 9) * l2() + q(4, 27) * l3() - q(56, 9); }
LogConstant a12() {
    return q(8, 3) * l2() * l2() - q(4, 9) * l2() * l3() + q(56, 3) * l2() + q(14, 27) * l3() * l3() -
           q(14, 9) * l3() + q(64, 3);
}
LogConstant a03() {
    LogConstant L2 = l2(), L3 = l3();
    return q(-4, 3) * L2 * L2 * L2 + q(1, 3) * L2 * L2 * L3 - q(14) * L2 * L2 - q(7, 9) * L2 * L3 * L3 +
           q(7, 3) * L2 * L3 - q(32) * L2 + q(41, 648) * L3 * L3 * L3 - q(49, 18) * L3 * L3 + q(8, 3) * L3 -
           q(85, 3);
}
LogConstant d01() { return l2() - q(5, 6) * l3() + q(1); }

Series poly_of(std::initializer_list<std::pair<Exp2, LogConstant>> terms, int order2) {
    Series s(order2);
    for (const auto& [e, c] : terms) s.set(e, c);
    return s;
}

double x_at(double L) { return std::log(L) / L; }

// The constraint evaluated in floating point straight from its definition,
// divided by (8/9)^(1/3) nu^(1/3) (log nu)^(2/3). L = log nu; nu^(1/3) is
// factored out everywhere and the a/nu^(1/3) part of u0 (relative size
// nu^(-1/3)) is dropped.
double constraint_numeric(const Series& A, const Series& B, const Series& D, double L, int q_order) {
    const double X = x_at(L), Y = 1 / L;
    const double sa = std::cbrt(8.0 / 9.0), sd = std::cbrt(3.0);
    const double a = sa * std::pow(L, 2.0 / 3) * series_eval_f64(A, X, Y);
    const double b = sa * std::pow(L, 2.0 / 3) * series_eval_f64(B, X, Y);
    const double d = sd * std::pow(L, -1.0 / 3) * series_eval_f64(D, X, Y);
    const Series& Q = q_series(q_order).series;
    auto p = [&](double U) {  // u = nu^(1/3) U
        const double log_u = L / 3 + std::log(U);
        return -U * log_u * series_eval_f64(Q, std::log(log_u) / log_u, 1 / log_u);
    };
    const double u0 = (1 / d) / b;
    const double u1 = (d * a + 1 / d) / b;
    return (p(u0) + p(u1) + 2 * a - b) / (sa * std::pow(L, 2.0 / 3));
}

Series constant_series(const ScaledAsymptotic<UnknownPoly>& f) {
    Series s(f.order2());
    for (const auto& [e, c] : f.series.terms()) {
        REQUIRE(c.is_constant());
        s.set(e, c.constant());
    }
    return s;
}

}  // namespace

TEST_CASE("constraint of the all-ones candidate has no constant term") {
    Series one = Series::constant(q(1), 0);
    auto F = build_constraint(one, one, one, 0);
    CHECK(F.alpha == 0);
    CHECK(F.beta == 0);
    CHECK(F.series.coeff({0, 0}).is_zero());
    // by hand: p(u) ~ -u log nu / 3 with u0 ~ (3/8)^(1/3), u1 ~ (3/2) 3^(1/3)
    const double hand = -(std::cbrt(3.0 / 8) + 1.5 * std::cbrt(3.0)) / 3 + std::cbrt(8.0 / 9);
    CHECK(std::abs(hand) < 1e-15);
}

TEST_CASE("constraint with the first-degree expansion vanishes through degree 1") {
    Series A = poly_of({{m(0, 0), q(1)}, {m(1, 0), q(4, 3)}, {m(0, 1), a01()}}, 2);
    Series D = Series::constant(q(1), 2);
    auto F = build_constraint(A, A, D, 2);
    REQUIRE(F.order2() >= 2);
    CHECK(F.series.coeff(m(1, 0)).is_zero());
    CHECK(F.series.coeff(m(0, 1)).is_zero());
    CHECK(F.series.coeff({1, 0}).is_zero());

    Series bumped = A;
    bumped.set(m(1, 0), q(7, 3));
    auto G = build_constraint(bumped, A, D, 2);
    CHECK_FALSE(G.series.coeff(m(1, 0)).is_zero());
}

TEST_CASE("constraint series agrees with direct floating evaluation") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        const int order = 2;
        auto rand_unit = [&] {
            Series s = testgen::random_series(rng, order, 4, trial % 2 == 1);
            s.set({0, 0}, q(1));
            return s;
        };
        Series A = rand_unit(), B = rand_unit(), D = rand_unit();
        const int o2 = 2 * order;
        auto F = build_constraint(A, B, D, o2);
        REQUIRE(F.order2() >= o2);
        const Series Fs = constant_series(F);
        for (double L : {std::exp(14.0), std::exp(18.0)}) {
            const double num = constraint_numeric(A, B, D, L, default_q_order(o2));
            const double ser = series_eval_f64(Fs, x_at(L), 1 / L);
            // F starts at degree 1 and its tail at degree 5/2; X < 1e-5 here
            CHECK(std::abs(ser) > 1e-9);
            CHECK(std::abs(num - ser) < 1e-6 * std::abs(ser) + 1e-14);
        }
    }
}

TEST_CASE("pattern classifier") {
    CHECK(classify_pattern(1, 1) == Pattern::p1);
    CHECK(classify_pattern(0, 2) == Pattern::p2);
    CHECK(classify_pattern(3, 0) == Pattern::p3);
    CHECK(classify_pattern(make_rational(1, 2), make_rational(3, 2)) == Pattern::p1);
    CHECK_THROWS_AS(classify_pattern(0, 0), DomainError);
}

TEST_CASE("guess through degree 1") {
    auto g = guess_terms(1);
    REQUIRE_FALSE(g.failure);
    CHECK(g.cand.A.coeff(m(1, 0)) == q(4, 3));
    CHECK(g.cand.A.coeff(m(0, 1)) == a01());
    CHECK(g.cand.A.coeff(m(0, 1)).pretty() == "-2*l2 + (1/6)*l3 - 2");
    CHECK(g.cand.degA2 == 2);
    CHECK(g.cand.status == Status::guessed);
    // D is pinned at half the degree of A; its X and Y terms need the
    // degree-2 targets
    CHECK(g.cand.degD2 == 1);
}

TEST_CASE("guess through degree 2") {
    auto g = guess_terms(2);
    REQUIRE_FALSE(g.failure);
    const auto& A = g.cand.A;
    CHECK(A.coeff(m(2, 0)) == q(-4, 9));
    CHECK(A.coeff(m(1, 1)) == a11());
    CHECK(A.coeff(m(0, 2)) == a02());
    CHECK(g.cand.D.coeff(m(1, 0)) == q(-2, 3));
    CHECK(g.cand.D.coeff(m(0, 1)) == d01());
    CHECK(g.log.steps.size() == 5);
    // the last first-order step is the one where b sits on its bound
    CHECK(g.log.steps[4].regime == BRegime::capped);
    CHECK(g.log.steps[4].kappa_b - g.log.steps[4].cap == q(3, 2));
}

TEST_CASE("guess through degree 3 and determinism") {
    auto g = guess_terms(3);
    REQUIRE_FALSE(g.failure);
    const auto& A = g.cand.A;
    CHECK(A.coeff(m(3, 0)) == q(32, 81));
    CHECK(A.coeff(m(2, 1)) == a21());
    CHECK(A.coeff(m(1, 2)) == a12());
    CHECK(A.coeff(m(0, 3)) == a03());
    auto again = guess_terms(3);
    CHECK(again.cand.A == g.cand.A);
    CHECK(again.cand.B == g.cand.B);
    CHECK(again.cand.D == g.cand.D);
    CHECK(render(again.cand.A) == render(g.cand.A));
}

TEST_CASE("existence certificates") {
    auto g = guess_terms(4);
    REQUIRE_FALSE(g.failure);
    auto c1 = prove_existence(1, g.cand);
    CHECK(c1.leading == m(3, 0));
    CHECK(c1.kappa == q(32, 81));
    CHECK(c1.slope.as_rational());
    REQUIRE(c1.guessed);
    CHECK(*c1.guessed == c1.kappa);

    // With D cut at degree 3/2 the X^2 term of D is missing from the witness,
    // which shifts its value by (1/3) d20^2 against the guessed a40.
    auto c2 = prove_existence(2, g.cand);
    CHECK(c2.leading == m(4, 0));
    CHECK(c2.kappa == q(-16, 81));
    const LogConstant d20 = g.cand.D.coeff(m(2, 0));
    CHECK(c2.kappa == g.cand.A.coeff(m(4, 0)) + q(1, 3) * d20 * d20);
}

TEST_CASE("existence rejects a corrupted candidate") {
    auto g = guess_terms(2);
    CandidateExpansion bad = g.cand;
    bad.A.set(m(0, 2), bad.A.coeff(m(0, 2)) + q(1));
    bool refused = false;
    try {
        auto c = prove_existence(1, bad);
        refused = !c.guessed || *c.guessed != c.kappa;
    } catch (const AlgorithmFailure& f) {
        refused = f.failure.kind == "existence";
    }
    CHECK(refused);
}

TEST_CASE("minimality through degree 2 replays the first five steps") {
    auto g = guess_terms(2);
    auto cert = prove_existence(1, g.cand);
    ProofLog log = prove_minimality(1, g.cand, cert);
    REQUIRE(log.steps.size() == 5);
    const Pattern expected[] = {Pattern::base, Pattern::p3, Pattern::p2, Pattern::p3, Pattern::p1};
    for (size_t k = 0; k < 5; ++k) CHECK(log.steps[k].pattern == expected[k]);
    CHECK(log.steps[0].kappa_a == q(4, 3));
    CHECK(log.steps[2].kappa_a == q(-4, 9));
    CHECK(log.steps[2].kappa_b == q(4, 3));
    CHECK(log.steps[2].kappa_d == q(-2, 3));
    CHECK(log.steps[4].kappa_d == d01());
    CHECK(log.steps[4].b_value == a01());
}

TEST_CASE("minimality catches a wrong guess") {
    auto g = guess_terms(2);
    auto cert = prove_existence(1, g.cand);
    CandidateExpansion bad = g.cand;
    bad.A.set(m(1, 1), bad.A.coeff(m(1, 1)) + q(1, 7));
    try {
        prove_minimality(1, bad, cert);
        FAIL("corrupted candidate accepted");
    } catch (const AlgorithmFailure& f) {
        CHECK(f.failure.kind == "contradiction");
        CHECK(f.failure.at == m(1, 1));
        CHECK(f.partial.steps.size() == 3);
    }
}

TEST_CASE("proven expansion through degree 3") {
    auto r = compute_proven_expansion(2);
    REQUIRE_FALSE(r.failure);
    const auto& c = r.cand;
    CHECK(c.status == Status::minimality_proven);
    CHECK(c.degA2 == 6);
    CHECK(c.degB2 == 4);
    CHECK(c.degD2 == 3);
    CHECK(c.A.coeff({0, 0}) == q(1));
    CHECK(c.A.coeff(m(1, 0)) == q(4, 3));
    CHECK(c.A.coeff(m(0, 1)) == a01());
    CHECK(c.A.coeff(m(2, 0)) == q(-4, 9));
    CHECK(c.A.coeff(m(1, 1)) == a11());
    CHECK(c.A.coeff(m(0, 2)) == a02());
    CHECK(c.A.coeff(m(3, 0)) == q(32, 81));
    CHECK(c.A.coeff(m(2, 1)) == a21());
    CHECK(c.A.coeff(m(1, 2)) == a12());
    CHECK(c.A.coeff(m(0, 3)) == a03());
    CHECK(r.certificates.size() == 2);
    CHECK_FALSE(check_a_equals_b(c, c.degB2));
    CHECK_FALSE(check_half_slots_zero(c, r.log));
    CHECK_FALSE(check_pattern_adjacency(r.log));
    CHECK_FALSE(check_generators());
    for (size_t k = 0; k + 1 < r.log.steps.size(); ++k)
        if (r.log.steps[k].pattern == Pattern::p2) CHECK(r.log.steps[k + 1].pattern == Pattern::p3);
}

TEST_CASE("smoothness series order below the margin is caught") {
    EngineOptions starved;
    starved.q_order = 1;
    auto r = compute_proven_expansion(2, starved);
    REQUIRE(r.failure);
    CHECK(r.failure->kind == "precision");
    CHECK(r.failure->at == m(2, 0));
    // what was solved before the failure is kept
    CHECK(r.cand.degA2 == 2);
    CHECK(r.cand.A.coeff(m(1, 0)) == q(4, 3));
    CHECK(r.cand.A.coeff(m(0, 1)) == a01());
}

TEST_CASE("constraint vanishing check on guessed and tampered expansions") {
    auto g = guess_terms(3);
    CHECK_FALSE(check_constraint_vanishes(g.cand, 6));
    CandidateExpansion bad = g.cand;
    bad.A.set(m(2, 1), bad.A.coeff(m(2, 1)) + q(1));
    auto msg = check_constraint_vanishes(bad, 6);
    REQUIRE(msg);
    CHECK(msg->find("X^2*Y") != std::string::npos);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(guess_terms(0), DomainError);
    CHECK_THROWS_AS(compute_proven_expansion(1), DomainError);
    auto g = guess_terms(1);
    CHECK_THROWS_AS(prove_existence(1, g.cand), DomainError);
}
