#include "nfsasy/artifact.hpp"

#include <regex>

#include "json.hpp"

namespace nfsasy {

const char* const kEngineVersion = "nfsasy-engine/1";

namespace {

using ojson = nlohmann::ordered_json;

std::string mono(const Exp2& e) {
    auto m = render_monomial(e);
    return m.empty() ? "1" : m;
}

ojson series_json(const Series& s) {
    ojson terms = ojson::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({e.x2, e.y2, c.to_string()});
    return {{"order2", s.order2()}, {"terms", terms}};
}

Series series_from(const nlohmann::json& j) {
    Series s(j.at("order2").get<int>());
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3) throw ParseError("cache: malformed term");
        Exp2 e{t[0].get<int>(), t[1].get<int>()};
        if (e.x2 < 0 || e.y2 < 0) throw ParseError("cache: negative exponent");
        s.set(e, LogConstant::parse(t[2].get<std::string>()));
    }
    return s;
}

Status status_from(const std::string& s) {
    for (auto st : {Status::guessed, Status::existence_certified, Status::minimality_proven})
        if (to_string(st) == s) return st;
    throw ParseError("cache: unknown status '" + s + "'");
}

std::string pattern_sequence(const ProofLog& log) {
    std::string out;
    for (const auto& s : log.steps) out += (out.empty() ? "" : " ") + to_string(s.pattern);
    return out;
}

}  // namespace

std::string coefficient_name(char series, const Exp2& e) {
    const int i = e.x2 / 2, j = e.y2 / 2;
    std::string idx = i < 10 && j < 10 ? std::to_string(i) + std::to_string(j)
                                       : std::to_string(i) + "," + std::to_string(j);
    return std::string(1, series) + idx;
}

std::vector<TableRow> coefficient_table(const CandidateExpansion& c, int degree) {
    std::vector<TableRow> rows;
    auto add = [&](char name, const Series& s, int known2) {
        const int top = std::min(degree, known2 / 2);
        for (int k = 0; k <= top; ++k)
            for (int i = k; i >= 0; --i) {
                Exp2 e{2 * i, 2 * (k - i)};
                rows.push_back({coefficient_name(name, e), s.coeff(e)});
            }
    };
    add('a', c.A, c.degA2);
    add('b', c.B, c.degB2);
    add('d', c.D, c.degD2);
    return rows;
}

std::string table_value(const LogConstant& c) {
    if (auto q = c.as_rational()) return to_string(*q);
    return c.pretty();
}

std::string table_text(const std::vector<TableRow>& rows) {
    std::string out;
    for (const auto& r : rows) out += r.name + ", " + table_value(r.value) + "\n";
    return out;
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::string out = "name,value\n";
    for (const auto& r : rows) out += r.name + ",\"" + table_value(r.value) + "\"\n";
    return out;
}

std::string latex_value(const LogConstant& c) {
    std::string s = table_value(c);
    s = std::regex_replace(s, std::regex(R"(l(\d+)\^(\d+))"), "(\\log $1)^{$2}");
    s = std::regex_replace(s, std::regex(R"(\bl(\d+))"), "\\log $1");
    s = std::regex_replace(s, std::regex(R"(\*)"), " ");
    return s;
}

std::string table_latex(const std::vector<TableRow>& rows) {
    std::string out = "\\[\\begin{array}{c|l}\n";
    for (const auto& r : rows) {
        std::string sub = r.name.substr(1);
        out += "  " + r.name.substr(0, 1) + "_{" + sub + "} & " + latex_value(r.value) + "\\\\\n";
    }
    return out + "\\end{array}\\]\n";
}

std::string expansion_json(const CandidateExpansion& c, int degree, const ProofLog* log,
                           const std::vector<ExistenceCertificate>* certs, const std::optional<Failure>& failure) {
    ojson j;
    j["degree"] = degree;
    j["status"] = to_string(c.status);
    j["known_degree"] = {{"A", c.degA2 / 2.0}, {"B", c.degB2 / 2.0}, {"D", c.degD2 / 2.0}};
    ojson rows = ojson::array();
    for (const auto& r : coefficient_table(c, degree))
        rows.push_back({{"name", r.name}, {"value", table_value(r.value)}, {"exact", r.value.to_string()}});
    j["coefficients"] = rows;
    if (log) {
        ojson steps = ojson::array();
        for (const auto& s : log->steps) {
            ojson st = {{"target", mono(s.target)},
                        {"pattern", to_string(s.pattern)},
                        {"b_regime", to_string(s.regime)},
                        {"kappa_a", table_value(s.kappa_a)},
                        {"kappa_d", table_value(s.kappa_d)},
                        {"b_slot", mono(s.b_slot)},
                        {"d_slot", mono(s.d_slot)}};
            if (s.regime != BRegime::none) st["b_value"] = table_value(s.b_value);
            if (!s.forcings.empty()) {
                ojson f = ojson::array();
                for (const auto& x : s.forcings) f.push_back({{"lead", mono(x.lead)}, {"slot", mono(x.slot)}});
                st["forcings"] = f;
            }
            steps.push_back(st);
        }
        j["proof_log"] = steps;
    }
    if (certs) {
        ojson cs = ojson::array();
        for (const auto& x : *certs)
            cs.push_back({{"n", x.n}, {"leading", mono(x.leading)}, {"kappa", table_value(x.kappa)}});
        j["existence"] = cs;
    }
    if (failure)
        j["failure"] = {{"kind", failure->kind}, {"at", mono(failure->at)}, {"message", failure->message}};
    return j.dump(2) + "\n";
}

std::string cache_serialize(const CandidateExpansion& c, const ProofLog& log, const std::string& created) {
    ojson j;
    j["engine_version"] = kEngineVersion;
    j["degree"] = c.degA2 / 2;
    j["status"] = to_string(c.status);
    j["deg2"] = {{"A", c.degA2}, {"B", c.degB2}, {"D", c.degD2}};
    j["A"] = series_json(c.A);
    j["B"] = series_json(c.B);
    j["D"] = series_json(c.D);
    j["proof_log"] = {{"steps", log.steps.size()}, {"patterns", pattern_sequence(log)}};
    j["created"] = created;
    return j.dump(1) + "\n";
}

CacheEntry cache_parse(const std::string& text) {
    CacheEntry out;
    try {
        auto j = nlohmann::json::parse(text);
        out.engine_version = j.at("engine_version").get<std::string>();
        if (out.engine_version != kEngineVersion)
            throw ParseError("cache: engine version " + out.engine_version + ", expected " + kEngineVersion);
        out.cand.status = status_from(j.at("status").get<std::string>());
        out.cand.degA2 = j.at("deg2").at("A").get<int>();
        out.cand.degB2 = j.at("deg2").at("B").get<int>();
        out.cand.degD2 = j.at("deg2").at("D").get<int>();
        out.cand.A = series_from(j.at("A"));
        out.cand.B = series_from(j.at("B"));
        out.cand.D = series_from(j.at("D"));
        out.steps = j.at("proof_log").at("steps").get<std::size_t>();
        out.patterns = j.at("proof_log").at("patterns").get<std::string>();
        out.created = j.value("created", "");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cache: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("cache: ") + e.what());
    }
    return out;
}

std::optional<std::string> cache_verify(const CandidateExpansion& c) {
    if (c.degA2 < 2) return "expansion has no terms";
    if (c.degD2 < c.degA2 / 2) return "D is not known far enough to check A";
    if (auto m = check_a_equals_b(c, c.degB2)) return m;
    return check_constraint_vanishes(c, c.degA2);
}

}  // namespace nfsasy
