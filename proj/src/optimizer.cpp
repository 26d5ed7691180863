#include "nfsasy/optimizer.hpp"

#include <algorithm>

#include "nfsasy/dickman.hpp"

namespace nfsasy {

namespace {

using UA = ScaledAsymptotic<UnknownPoly>;

const RadicalScale& scale_a() {
    static const RadicalScale s = RadicalScale::power(make_rational(8, 9), make_rational(1, 3));
    return s;
}
const RadicalScale& scale_d() {
    static const RadicalScale s = RadicalScale::power(Rational(3), make_rational(1, 3));
    return s;
}

// Known coefficients are kept in series of this order; they are polynomials.
constexpr int kStore2 = 120;

void require_positive_constant(const UnknownSeries& s, const char* name) {
    auto c = ring_as_rational(s.constant_term());
    if (!c || *c <= 0) throw DomainError(std::string("constraint: ") + name + " needs a positive rational constant term");
}

UnknownPoly unknown_at(Unknown u) { return UnknownPoly::unknown(u); }
UnknownPoly::Mono mono(Unknown u, int e) { return UnknownPoly::make_mono(u, e); }

// Leading coefficient split by the unknowns it involves.
struct Shape {
    LogConstant k0, a1, b1, b2, d1, d2, t1;
    bool other = false;  // any monomial outside the list above
};

Shape decompose(const UnknownPoly& p) {
    Shape s;
    for (const auto& [m, c] : p.terms()) {
        if (m == 0)
            s.k0 = c;
        else if (m == mono(kAbar, 1))
            s.a1 = c;
        else if (m == mono(kBbar, 1))
            s.b1 = c;
        else if (m == mono(kBbar, 2))
            s.b2 = c;
        else if (m == mono(kDbar, 1))
            s.d1 = c;
        else if (m == mono(kDbar, 2))
            s.d2 = c;
        else if (m == mono(kAtil, 1))
            s.t1 = c;
        else
            s.other = true;
    }
    return s;
}

bool strictly_less(const LogConstant& a, const LogConstant& b) {
    return a != b && logconst_eval_f64(a - b) < 0;
}

std::string mono_name(Exp2 e) {
    auto m = render_monomial(e);
    return m.empty() ? "1" : m;
}

Series truncated_poly(const Series& s, int deg2) {
    Series out(std::max(deg2, 0));
    for (const auto& [e, c] : s.terms())
        if (e.deg2() <= deg2) out.set(e, c);
    return out;
}

Exp2 next_target(Exp2 e) {
    if (e.x2 > 0) return {e.x2 - 2, e.y2 + 2};
    return {e.deg2() + 2, 0};
}

// Runs the steps of the expansion. Without a reference it records what it
// solves; with one it checks every solved limit against the reference and
// verifies the step templates on the way.
class Engine {
public:
    Engine(const EngineOptions& opt, const CandidateExpansion* ref) : opt_(opt), ref_(ref) {
        A_.set({0, 0}, LogConstant(1));
        B_.set({0, 0}, LogConstant(1));
        D_.set({0, 0}, LogConstant(1));
    }

    StepRecord step(Exp2 target, Exp2 remainder) {
        StepRecord rec;
        rec.target = target;
        rec.remainder = remainder;
        rec.pattern = remainder == Exp2{0, 0} ? Pattern::base : classify_pattern(remainder);
        const int o = target.deg2();
        for (int guard = 0;; ++guard) {
            if (guard > 4 * o + 8) fail("guess", "B slot schedule does not reach the target", target);
            UnknownSeries Au = lift(A_).relabeled(o) + UnknownSeries::monomial(target, unknown_at(kAbar), o);
            UnknownSeries Bu = lift(B_).relabeled(o) + UnknownSeries::monomial(bslot_, unknown_at(kBbar), o);
            UnknownSeries Du = lift(D_).relabeled(o) + UnknownSeries::monomial(dslot_, unknown_at(kDbar), o);
            AuditTrail audit;
            UA F;
            try {
                F = build_constraint(Au, Bu, Du, o, opt_, &audit);
            } catch (const PrecisionError& e) {
                fail("precision", e.what(), target);
            }
            rec.absorptions += audit.size();
            for (const auto& [e, v] : F.series.terms())
                if (v.degree() > 2) fail("shape", "coefficient of degree > 2 in the unknowns: " + v.render(), e);
            if (F.order2() < o)
                fail("precision", "constraint only known through doubled degree " + std::to_string(F.order2()), target);
            const Shape at = decompose(F.series.coeff(target));
            auto c = at.a1.as_rational();
            if (!c || *c == 0) fail("guess", "abar does not enter the target coefficient linearly", target);
            const auto& [lead, raw] = *F.series.terms().begin();
            UnknownPoly p = raw * UnknownPoly(Rational(-1 / *c));
            if (p.degree() > 2) fail("guess", "leading coefficient of degree > 2: " + p.render(), lead);
            const Shape s = decompose(p);
            if (lead != target) {
                if (!more_dominant(lead, target)) fail("guess", "target coefficient is not leading", lead);
                if (s.other || !s.a1.is_zero() || !s.d1.is_zero() || !s.d2.is_zero() || !s.b2.is_zero() ||
                    s.b1.is_zero())
                    fail("guess", "coefficient ahead of the target is not affine in bbar: " + p.render(), lead);
                BForcing f{lead, bslot_, s.b1, -s.k0 / s.b1};
                if (ref_ && f.slope != LogConstant(-2))
                    fail("minimality", "forcing slope " + f.slope.pretty() + " instead of -2", lead);
                commit(B_, bslot_, f.value, ref_ ? &ref_->B : nullptr, "b");
                rec.forcings.push_back(f);
                bslot_ = next_half_slot(bslot_);
                continue;
            }
            solve_target(rec, p, s);
            return rec;
        }
    }

    CandidateExpansion candidate() const {
        CandidateExpansion c;
        c.A = A_;
        c.B = B_;
        c.D = D_;
        c.degA2 = next_a_.deg2() - 2;
        c.degB2 = bslot_.deg2() - 1;
        c.degD2 = dslot_.deg2() - 1;
        auto tighten = [](Series& s) {
            int top = 0;
            for (const auto& [e, v] : s.terms()) top = std::max(top, e.deg2());
            s = s.truncated(top);
        };
        tighten(c.A);
        tighten(c.B);
        tighten(c.D);
        return c;
    }

    ProofLog log;

    void run(const std::vector<Exp2>& targets) {
        Exp2 rem{0, 0};
        for (const auto& t : targets) {
            log.steps.push_back(step(t, rem));
            next_a_ = next_target(t);
            rem = t;
        }
    }

private:
    [[noreturn]] void fail(const std::string& kind, const std::string& msg, Exp2 at) const {
        throw AlgorithmFailure(Failure{kind, msg, at}, log);
    }

    void commit(Series& store, Exp2 e, const LogConstant& v, const Series* ref, const char* name) {
        if (ref) {
            LogConstant expected = ref->coeff(e);
            if (expected != v)
                fail("contradiction",
                     std::string(name) + " limit " + v.pretty() + " differs from the guess " + expected.pretty(), e);
        }
        store.set(e, v);
    }

    void solve_target(StepRecord& rec, const UnknownPoly& p, const Shape& s) {
        const Exp2 target = rec.target;
        if (s.other || s.a1 != LogConstant(-1)) fail("guess", "cross terms in the leading coefficient: " + p.render(), target);
        if (s.d2 != LogConstant(make_rational(1, 3)))
            fail("guess", "dbar does not enter as (1/3) dbar^2: " + p.render(), target);
        rec.leading = p.render();
        rec.kappa_d = s.d1 * LogConstant(make_rational(-3, 2));
        LogConstant kappa = s.k0 - LogConstant(make_rational(1, 3)) * rec.kappa_d * rec.kappa_d;
        rec.b_slot = bslot_;
        rec.d_slot = dslot_;
        if (!s.b2.is_zero() || !s.b1.is_zero()) {
            if (!bslot_.integral() || more_dominant(bslot_, target))
                rec.cap = bslot_.integral() ? A_.coeff(bslot_) : LogConstant();
            else
                fail("guess", "B slot " + mono_name(bslot_) + " has no known A coefficient to bound it", target);
        }
        if (!s.b2.is_zero()) {
            if (s.b2 != LogConstant(make_rational(2, 3)))
                fail("guess", "bbar does not enter as (2/3) bbar^2: " + p.render(), target);
            rec.kappa_b = s.b1 * LogConstant(make_rational(-3, 4));
            kappa -= LogConstant(make_rational(2, 3)) * rec.kappa_b * rec.kappa_b;
            if (rec.kappa_b == rec.cap || strictly_less(rec.kappa_b, rec.cap)) {
                rec.regime = BRegime::center;
                rec.b_value = rec.kappa_b;
            } else {
                // b <= a: the optimum sits on the bound
                rec.regime = BRegime::capped;
                rec.b_value = rec.cap;
                LogConstant diff = rec.kappa_b - rec.cap;
                kappa += LogConstant(make_rational(2, 3)) * diff * diff;
            }
            rec.b_slope = LogConstant(make_rational(4, 3)) * (rec.cap - rec.kappa_b);
        } else if (!s.b1.is_zero()) {
            if (!strictly_less(s.b1, LogConstant()))
                fail("guess", "abar decreases without bound in bbar: " + p.render(), target);
            rec.regime = BRegime::linear;
            rec.b_slope = s.b1;
            rec.b_value = rec.cap;
            kappa += s.b1 * rec.cap;
        } else {
            rec.regime = BRegime::none;
        }
        rec.kappa_a = kappa;
        if (ref_) verify_template(rec);

        commit(A_, target, kappa, ref_ ? &ref_->A : nullptr, "a");
        if (rec.regime != BRegime::none) {
            commit(B_, bslot_, rec.b_value, ref_ ? &ref_->B : nullptr, "b");
            bslot_ = next_half_slot(bslot_);
        }
        commit(D_, dslot_, rec.kappa_d, ref_ ? &ref_->D : nullptr, "d");
        dslot_ = next_half_slot(dslot_);
    }

    // First two degrees: completed squares (2/3, 1/3). Later: the pattern of
    // the remainder fixes how bbar may enter.
    void verify_template(const StepRecord& rec) const {
        const auto where = rec.target;
        if (where.deg2() <= 4) {
            if (rec.regime != BRegime::center && rec.regime != BRegime::capped)
                fail("minimality", "expected the completed-square form, got regime " + to_string(rec.regime), where);
            return;
        }
        switch (rec.pattern) {
            case Pattern::p1:
            case Pattern::p3:
                if (rec.regime != BRegime::linear || rec.b_slope != LogConstant(-2))
                    fail("minimality",
                         to_string(rec.pattern) + " expects bbar with slope -2, got " + rec.leading, where);
                break;
            case Pattern::p2:
                if (rec.regime != BRegime::none)
                    fail("minimality", "P2 expects no bbar at the target, got " + rec.leading, where);
                break;
            case Pattern::base:
                fail("minimality", "base step past the first degree", where);
        }
    }

    EngineOptions opt_;
    const CandidateExpansion* ref_;
    Series A_{kStore2}, B_{kStore2}, D_{kStore2};
    Exp2 bslot_{1, 0}, dslot_{1, 0};
    Exp2 next_a_{2, 0};
};

}  // namespace

int default_q_order(int order2) { return (order2 + 1) / 2 + 2; }

UnknownSeries lift(const Series& s) {
    UnknownSeries out(s.order2());
    for (const auto& [e, c] : s.terms()) out.set(e, UnknownPoly(c));
    return out;
}

UA build_constraint(const UnknownSeries& A, const UnknownSeries& B, const UnknownSeries& D, int order2,
                    const EngineOptions& opt, AuditTrail* audit) {
    require_positive_constant(A, "A");
    require_positive_constant(B, "B");
    require_positive_constant(D, "D");
    const Rational third = make_rational(1, 3);
    const UA a = UA::make(scale_a(), third, 2 * third, A.relabeled(order2));
    const UA b = UA::make(scale_a(), third, 2 * third, B.relabeled(order2));
    const UA d = UA::make(scale_d(), third, -third, D.relabeled(order2));
    const UA nu = UA::make(RadicalScale(), 1, 0, UnknownSeries::constant(UnknownPoly(1), order2));
    const UA nu_d = asym_div(nu, d);
    const UA u0 = asym_div(asym_add(a, nu_d, audit), b);
    const UA u1 = asym_div(asym_add(asym_mul(d, a), nu_d, audit), b);
    const int qo = opt.q_order.value_or(default_q_order(order2));
    const Series& q = q_series(qo).series;
    UA sum = asym_add(p_of(u0, q), p_of(u1, q), audit);
    sum = asym_add(sum, asym_mul(UA::constant(RadicalScale(2), order2), a), audit);
    sum = asym_add(sum, asym_neg(b), audit);
    const UA unit = UA::make(scale_a(), third, 2 * third, UnknownSeries::constant(UnknownPoly(1), order2));
    UA r = asym_div(sum, unit);
    if (r.alpha != 0 || r.beta != 0 || !r.scale.is_rational())
        throw ShapeError("constraint: normalization left " + r.scale.to_string());
    r.series = r.series.scaled(UnknownPoly(r.scale.coefficient()));
    r.scale = RadicalScale();
    return r;
}

UA build_constraint(const Series& A, const Series& B, const Series& D, int order2, const EngineOptions& opt,
                    AuditTrail* audit) {
    return build_constraint(lift(A), lift(B), lift(D), order2, opt, audit);
}

std::string to_string(Pattern p) {
    switch (p) {
        case Pattern::base: return "base";
        case Pattern::p1: return "P1";
        case Pattern::p2: return "P2";
        case Pattern::p3: return "P3";
    }
    return "?";
}

Pattern classify_pattern(const Rational& i, const Rational& j) {
    if (i < 0 || j < 0 || (i == 0 && j == 0)) throw DomainError("classify_pattern: need a nonconstant monomial");
    if (i == 0) return Pattern::p2;
    if (j == 0) return Pattern::p3;
    return Pattern::p1;
}

Pattern classify_pattern(Exp2 r) { return classify_pattern(make_rational(r.x2, 2), make_rational(r.y2, 2)); }

std::string to_string(Status s) {
    switch (s) {
        case Status::guessed: return "guessed";
        case Status::existence_certified: return "existence-certified";
        case Status::minimality_proven: return "minimality-proven";
    }
    return "?";
}

std::string to_string(BRegime r) {
    switch (r) {
        case BRegime::none: return "none";
        case BRegime::center: return "center";
        case BRegime::capped: return "capped";
        case BRegime::linear: return "linear";
    }
    return "?";
}

std::vector<Exp2> a_targets(int n) {
    std::vector<Exp2> out;
    for (int k = 1; k <= n; ++k)
        for (int i = k; i >= 0; --i) out.push_back({2 * i, 2 * (k - i)});
    return out;
}

Exp2 next_half_slot(Exp2 e) {
    if (e.x2 > 0) return {e.x2 - 1, e.y2 + 1};
    return {e.deg2() + 1, 0};
}

GuessResult guess_terms(int n, const EngineOptions& opt) {
    if (n < 1) throw DomainError("guess_terms: n must be >= 1");
    Engine eng(opt, nullptr);
    GuessResult res;
    try {
        eng.run(a_targets(n));
    } catch (const AlgorithmFailure& f) {
        res.failure = f.failure;
    }
    res.cand = eng.candidate();
    res.log = eng.log;
    return res;
}

ExistenceCertificate prove_existence(int n, const CandidateExpansion& cand, const EngineOptions& opt) {
    if (n < 1) throw DomainError("prove_existence: n must be >= 1");
    const int top = 2 * (n + 1);
    if (cand.degA2 < top || cand.degD2 < n + 1)
        throw DomainError("prove_existence: candidate must be known through degree n + 1");
    const int o = 2 * (n + 2);
    const Exp2 lead_expected{o, 0};
    UnknownSeries A = lift(truncated_poly(cand.A, top)).relabeled(o) +
                      UnknownSeries::monomial(lead_expected, unknown_at(kAtil), o);
    UnknownSeries B = lift(truncated_poly(cand.A, top)).relabeled(o);
    UnknownSeries D = lift(truncated_poly(cand.D, n + 1)).relabeled(o);
    auto fail = [&](const std::string& msg, Exp2 at) -> void {
        throw AlgorithmFailure(Failure{"existence", msg, at});
    };
    UA F;
    try {
        F = build_constraint(A, B, D, o, opt);
    } catch (const PrecisionError& e) {
        fail(e.what(), lead_expected);
    }
    if (F.order2() < o) fail("constraint not known through the perturbation degree", lead_expected);
    if (F.series.is_zero()) fail("constraint vanishes identically", lead_expected);
    const auto& [lead, coeff] = *F.series.terms().begin();
    if (lead != lead_expected)
        fail("leading monomial is " + mono_name(lead) + " with coefficient " + coeff.render(), lead);
    const Shape s = decompose(coeff);
    if (s.other || !s.a1.is_zero() || !s.b1.is_zero() || !s.b2.is_zero() || !s.d1.is_zero() || !s.d2.is_zero())
        fail("leading coefficient is not affine in atil: " + coeff.render(), lead);
    if (s.t1.is_zero()) fail("leading coefficient does not depend on atil", lead);
    if (!s.t1.as_rational()) fail("slope is not rational: " + s.t1.pretty(), lead);
    ExistenceCertificate cert;
    cert.n = n;
    cert.leading = lead;
    cert.slope = s.t1;
    cert.kappa = -s.k0 / s.t1;
    for (const auto& [e, c] : F.series.terms()) {
        if (e == lead) continue;
        if (!more_dominant(lead, e)) fail("term " + mono_name(e) + " is not smaller than the leading one", e);
        for (const auto& t : c.terms())
            if (t.m != 0 && t.m != mono(kAtil, UnknownPoly::exponent(t.m, kAtil)))
                fail("epsilon term involves an unknown other than atil", e);
        ++cert.epsilon_terms;
    }
    if (cand.degA2 >= o) cert.guessed = cand.A.coeff(lead);
    return cert;
}

ProofLog prove_minimality(int n, const CandidateExpansion& cand, const ExistenceCertificate& cert,
                          const EngineOptions& opt) {
    if (n < 1) throw DomainError("prove_minimality: n must be >= 1");
    if (cert.n != n) throw DomainError("prove_minimality: certificate is for another degree");
    if (cand.degA2 < 2 * (n + 1)) throw DomainError("prove_minimality: candidate must be guessed through degree n + 1");
    Engine eng(opt, &cand);
    eng.run(a_targets(n + 1));
    return eng.log;
}

namespace {

CandidateExpansion proven_prefix(const CandidateExpansion& cand, const ProofLog& log) {
    // the last step fully proven fixes how far each series goes
    CandidateExpansion c;
    int degA2 = 0, degD2 = 0, degB2 = 0;
    if (!log.steps.empty()) {
        Exp2 next = next_target(log.steps.back().target);
        degA2 = next.deg2() - 2;
        Exp2 b{1, 0}, d{1, 0};
        for (const auto& s : log.steps) {
            for (std::size_t k = 0; k < s.forcings.size(); ++k) b = next_half_slot(b);
            if (s.regime != BRegime::none) b = next_half_slot(b);
            d = next_half_slot(d);
        }
        degB2 = b.deg2() - 1;
        degD2 = d.deg2() - 1;
    }
    c.A = truncated_poly(cand.A, degA2);
    c.B = truncated_poly(cand.B, degB2);
    c.D = truncated_poly(cand.D, degD2);
    c.degA2 = degA2;
    c.degB2 = degB2;
    c.degD2 = degD2;
    c.status = cand.status;
    return c;
}

}  // namespace

ProvenExpansion compute_proven_expansion(int n, const EngineOptions& opt) {
    if (n < 2) throw DomainError("compute_proven_expansion: n must be >= 2");
    ProvenExpansion out;
    GuessResult g = guess_terms(n + 1, opt);
    out.cand = g.cand;
    if (g.failure) {
        // terms solved before the failure are kept, still only guessed
        out.failure = g.failure;
        out.log = g.log;
        return out;
    }
    try {
        for (int k = 1; k <= n; ++k) out.certificates.push_back(prove_existence(k, g.cand, opt));
        out.cand.status = Status::existence_certified;
        out.log = prove_minimality(n, g.cand, out.certificates.back(), opt);
    } catch (const AlgorithmFailure& f) {
        out.failure = f.failure;
        out.log = f.partial;
        out.cand = proven_prefix(g.cand, f.partial);
        return out;
    }
    out.cand = proven_prefix(g.cand, out.log);
    out.cand.status = Status::minimality_proven;
    // b is only proven up to a degree one less than a
    out.cand.degB2 = std::min(out.cand.degB2, 2 * n);
    out.cand.B = truncated_poly(out.cand.B, out.cand.degB2);
    for (auto check : {check_a_equals_b(out.cand, 2 * n), check_half_slots_zero(out.cand, out.log),
                       check_pattern_adjacency(out.log), check_generators()}) {
        if (check) {
            out.failure = Failure{"invariant", *check, {0, 0}};
            break;
        }
    }
    return out;
}

std::optional<std::string> check_a_equals_b(const CandidateExpansion& c, int deg2) {
    for (int k = 0; k <= deg2; k += 2)
        for (int i = k; i >= 0; i -= 2) {
            Exp2 e{i, k - i};
            if (c.A.coeff(e) != c.B.coeff(e))
                return "A and B differ at " + mono_name(e) + ": " + c.A.coeff(e).pretty() + " vs " +
                       c.B.coeff(e).pretty();
        }
    return std::nullopt;
}

std::optional<std::string> check_half_slots_zero(const CandidateExpansion& c, const ProofLog& log) {
    for (const Series* s : {&c.A, &c.B, &c.D})
        for (const auto& [e, v] : s->terms())
            if (!e.integral()) return "nonzero coefficient at " + mono_name(e) + ": " + v.pretty();
    for (const auto& st : log.steps)
        for (const auto& f : st.forcings)
            if (!f.slot.integral() && !f.value.is_zero())
                return "forced nonzero B coefficient at " + mono_name(f.slot);
    return std::nullopt;
}

std::optional<std::string> check_pattern_adjacency(const ProofLog& log) {
    for (std::size_t k = 0; k < log.steps.size(); ++k) {
        if (log.steps[k].pattern != Pattern::p2) continue;
        if (k + 1 < log.steps.size() && log.steps[k + 1].pattern != Pattern::p3)
            return "step " + std::to_string(k + 2) + " follows P2 with " + to_string(log.steps[k + 1].pattern);
    }
    return std::nullopt;
}

std::optional<std::string> check_generators() {
    if (Generators::count() > 2)
        return "coefficient field grew beyond log 2, log 3 (" + Generators::name(Generators::count() - 1) + ")";
    return std::nullopt;
}

std::optional<std::string> check_constraint_vanishes(const CandidateExpansion& c, int deg2, const EngineOptions& opt) {
    const Series A = truncated_poly(c.A, deg2);
    const Series D = truncated_poly(c.D, deg2 / 2);
    UA F = build_constraint(A, A, D, deg2, opt);
    if (F.order2() < deg2) return "constraint not known through the requested degree";
    for (const auto& [e, v] : F.series.terms())
        if (e.deg2() <= deg2) return "constraint coefficient at " + mono_name(e) + " is " + v.render();
    return std::nullopt;
}

}  // namespace nfsasy
