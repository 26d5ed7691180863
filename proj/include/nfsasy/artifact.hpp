#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfsasy/optimizer.hpp"

namespace nfsasy {

// One coefficient of A, B or D at an integral monomial X^i Y^j, named "a30",
// "b11", "d01" (or "a10,2" once an index reaches 10).
struct TableRow {
    std::string name;
    LogConstant value;
};

// Integral monomials through total degree `degree`, or through what is known
// if less; zero coefficients are listed. A first, then B, then D.
std::vector<TableRow> coefficient_table(const CandidateExpansion& c, int degree);
std::string coefficient_name(char series, const Exp2& e);

std::string table_text(const std::vector<TableRow>& rows);   // "a30, 32/81"
std::string table_csv(const std::vector<TableRow>& rows);    // name,value
std::string table_latex(const std::vector<TableRow>& rows);  // array{c|l}
std::string latex_value(const LogConstant& c);
// Plain "32/81" for rationals, the human form otherwise.
std::string table_value(const LogConstant& c);

// Full expand artifact. Key order and number formatting are fixed so the
// output can be diffed.
std::string expansion_json(const CandidateExpansion& c, int degree, const ProofLog* log,
                           const std::vector<ExistenceCertificate>* certs, const std::optional<Failure>& failure);

extern const char* const kEngineVersion;

std::string cache_serialize(const CandidateExpansion& c, const ProofLog& log, const std::string& created);

struct CacheEntry {
    CandidateExpansion cand;
    std::string engine_version;
    std::string created;
    std::size_t steps = 0;
    std::string patterns;
};

// Throws ParseError on malformed input or a different engine version.
CacheEntry cache_parse(const std::string& text);
// Rechecks A = B where B is known and that the constraint vanishes through
// A's degree. Returns the first problem found.
std::optional<std::string> cache_verify(const CandidateExpansion& c);

}  // namespace nfsasy
