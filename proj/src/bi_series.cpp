#include "nfsasy/bi_series.hpp"

namespace nfsasy {

namespace {
std::string power(const char* var, int e2) {
    if (e2 == 0) return "";
    std::string s = var;
    if (e2 % 2) return s + "^(" + std::to_string(e2) + "/2)";
    if (e2 > 2) s += "^" + std::to_string(e2 / 2);
    return s;
}
}  // namespace

std::string render_monomial(const Exp2& e) {
    std::string x = power("X", e.x2), y = power("Y", e.y2);
    if (x.empty()) return y;
    if (y.empty()) return x;
    return x + "*" + y;
}

double series_eval_f64(const Series& a, double x, double y) {
    double s = 0;
    for (const auto& [e, c] : a.terms()) s += logconst_eval_f64(c) * std::pow(x, e.x2 / 2.0) * std::pow(y, e.y2 / 2.0);
    return s;
}

}  // namespace nfsasy
