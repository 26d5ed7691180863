#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfsasy/scaled_asymptotic.hpp"
#include "nfsasy/unknown_poly.hpp"

namespace nfsasy {

struct EngineOptions {
    // Forces the smoothness-series order instead of the target degree + 2.
    std::optional<int> q_order;
};

// Constraint p(u0) + p(u1) + 2a - b for
//   a = (8/9)^(1/3) nu^(1/3) (log nu)^(2/3) A,  b likewise with B,
//   d = 3^(1/3) nu^(1/3) (log nu)^(-1/3) D,
//   u0 = (a + nu/d)/b,  u1 = (d a + nu/d)/b,
// divided by the scale of a, so the result has scale 1 and no nu or log nu
// power. Inputs are truncated at order2 first.
ScaledAsymptotic<UnknownPoly> build_constraint(const UnknownSeries& A, const UnknownSeries& B,
                                               const UnknownSeries& D, int order2,
                                               const EngineOptions& opt = {}, AuditTrail* audit = nullptr);
ScaledAsymptotic<UnknownPoly> build_constraint(const Series& A, const Series& B, const Series& D, int order2,
                                               const EngineOptions& opt = {}, AuditTrail* audit = nullptr);
int default_q_order(int order2);

UnknownSeries lift(const Series& s);

enum class Pattern { base, p1, p2, p3 };
std::string to_string(Pattern p);
// Pattern of the step whose remainder monomial is X^i Y^j.
Pattern classify_pattern(const Rational& i, const Rational& j);
Pattern classify_pattern(Exp2 remainder);

enum class Status { guessed, existence_certified, minimality_proven };
std::string to_string(Status s);

struct CandidateExpansion {
    Series A, B, D;
    // Doubled degrees through which every coefficient is known.
    int degA2 = 0, degB2 = 0, degD2 = 0;
    Status status = Status::guessed;
};

// How the B unknown entered the leading coefficient of a step.
enum class BRegime { none, center, capped, linear };
std::string to_string(BRegime r);

// A leading monomial ahead of the target that only involves bbar: it pins
// the B slot before the target can be reached.
struct BForcing {
    Exp2 lead;
    Exp2 slot;
    LogConstant slope;
    LogConstant value;
};

struct StepRecord {
    Exp2 target;
    Exp2 remainder;
    Pattern pattern = Pattern::base;
    Exp2 b_slot, d_slot;
    BRegime regime = BRegime::none;
    LogConstant kappa_a, kappa_b, kappa_d;
    LogConstant b_value, b_slope, cap;
    std::vector<BForcing> forcings;
    std::size_t absorptions = 0;
    std::string leading;  // normalized leading coefficient as solved
};

struct ProofLog {
    std::vector<StepRecord> steps;
};

struct Failure {
    std::string kind;  // guess | existence | minimality | contradiction | precision | invariant
    std::string message;
    Exp2 at;
};

struct AlgorithmFailure : std::runtime_error {
    AlgorithmFailure(Failure f, ProofLog partial = {})
        : std::runtime_error(f.kind + " failure at " + render_exp(f.at) + ": " + f.message),
          failure(std::move(f)),
          partial(std::move(partial)) {}
    Failure failure;
    ProofLog partial;

private:
    static std::string render_exp(const Exp2& e) {
        auto m = render_monomial(e);
        return m.empty() ? "1" : m;
    }
};

struct GuessResult {
    CandidateExpansion cand;
    ProofLog log;
    std::optional<Failure> failure;
};

// Solves the targets of A through total degree n one monomial at a time.
GuessResult guess_terms(int n, const EngineOptions& opt = {});

struct ExistenceCertificate {
    int n = 0;
    Exp2 leading;
    LogConstant slope;  // coefficient of atil in the leading coefficient
    LogConstant kappa;  // root of the leading coefficient
    std::size_t epsilon_terms = 0;
    std::optional<LogConstant> guessed;  // cand's coefficient at `leading`, if known
};

// Throws AlgorithmFailure (kind "existence") when the perturbed constraint
// does not have the required shape.
ExistenceCertificate prove_existence(int n, const CandidateExpansion& cand, const EngineOptions& opt = {});

// Replays the steps through degree n + 1 against cand's coefficients.
// Throws AlgorithmFailure (minimality or contradiction) with the partial log.
ProofLog prove_minimality(int n, const CandidateExpansion& cand, const ExistenceCertificate& cert,
                          const EngineOptions& opt = {});

struct ProvenExpansion {
    CandidateExpansion cand;
    ProofLog log;
    std::vector<ExistenceCertificate> certificates;
    std::optional<Failure> failure;
};

ProvenExpansion compute_proven_expansion(int n, const EngineOptions& opt = {});

// Checks kept by compute_proven_expansion; each returns a description of the
// first violation.
std::optional<std::string> check_a_equals_b(const CandidateExpansion& c, int deg2);
std::optional<std::string> check_half_slots_zero(const CandidateExpansion& c, const ProofLog& log);
std::optional<std::string> check_pattern_adjacency(const ProofLog& log);
std::optional<std::string> check_generators();
// Coefficients of the constraint with B := A and D as given vanish through
// total degree deg2/2.
std::optional<std::string> check_constraint_vanishes(const CandidateExpansion& c, int deg2,
                                                     const EngineOptions& opt = {});

std::vector<Exp2> a_targets(int n);
Exp2 next_half_slot(Exp2 e);

}  // namespace nfsasy
