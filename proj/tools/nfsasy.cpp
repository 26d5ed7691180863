// Command-line front end: expansion tables, rho, xi, figures, key sizes and
// the expansion cache.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nfsasy/artifact.hpp"
#include "nfsasy/dickman.hpp"
#include "nfsasy/evalkit.hpp"

using namespace nfsasy;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kUsage = 1, kAlgorithm = 2;

// Internal errors share the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<fs::path> cache_dir() {
    const char* d = std::getenv("NFSASY_CACHE_DIR");
    if (!d || !*d) return std::nullopt;
    return fs::path(d);
}

fs::path cache_path(const fs::path& dir, int degree) { return dir / ("expansion-" + std::to_string(degree) + ".json"); }

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write " + p.string());
}

std::string now_utc() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Proven expansion whose A is known through `degree`.
int proof_depth(int degree) { return std::max(2, degree - 1); }

void store(const ProvenExpansion& p) {
    auto dir = cache_dir();
    if (!dir || p.failure) return;
    fs::create_directories(*dir);
    write_file(cache_path(*dir, p.cand.degA2 / 2), cache_serialize(p.cand, p.log, now_utc()));
}

// Smallest verified cache entry covering `degree`, if any.
std::optional<CandidateExpansion> from_cache(int degree) {
    auto dir = cache_dir();
    if (!dir || !fs::is_directory(*dir)) return std::nullopt;
    for (int d = degree; d <= degree + 8; ++d) {
        auto p = cache_path(*dir, d);
        if (!fs::exists(p)) continue;
        try {
            auto e = cache_parse(read_file(p));
            if (auto bad = cache_verify(e.cand)) {
                std::cerr << "warning: ignoring " << p.string() << ": " << *bad << "\n";
                continue;
            }
            return e.cand;
        } catch (const std::exception& ex) {
            std::cerr << "warning: ignoring " << p.string() << ": " << ex.what() << "\n";
        }
    }
    return std::nullopt;
}

struct AlgorithmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CandidateExpansion expansion_through(int degree) {
    if (auto c = from_cache(degree)) return *c;
    auto p = compute_proven_expansion(proof_depth(degree));
    if (p.failure) throw AlgorithmError(p.failure->kind + " failure: " + p.failure->message);
    store(p);
    return p.cand;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
}

int cmd_expand(int degree, bool prove, const std::string& out, const std::string& format,
               std::optional<int> q_order) {
    EngineOptions opt;
    opt.q_order = q_order;
    CandidateExpansion cand;
    ProofLog log;
    std::vector<ExistenceCertificate> certs;
    std::optional<Failure> failure;
    std::optional<CandidateExpansion> cached = prove && !q_order ? from_cache(degree) : std::nullopt;
    if (cached) {
        cand = *cached;
    } else if (prove) {
        auto p = compute_proven_expansion(proof_depth(degree), opt);
        if (!q_order) store(p);
        cand = p.cand;
        log = p.log;
        certs = p.certificates;
        failure = p.failure;
    } else {
        auto g = guess_terms(degree, opt);
        cand = g.cand;
        log = g.log;
        failure = g.failure;
    }
    auto rows = coefficient_table(cand, degree);
    std::string text;
    if (format == "json")
        text = expansion_json(cand, degree, prove && !cached ? &log : nullptr, prove && !cached ? &certs : nullptr,
                              failure);
    else if (format == "csv")
        text = table_csv(rows);
    else if (format == "latex")
        text = table_latex(rows);
    else
        text = "# status: " + to_string(cand.status) + "\n" + table_text(rows);
    emit(text, out);
    if (failure) {
        const std::string at = render_monomial(failure->at);
        std::cerr << failure->kind << " failure at " << (at.empty() ? "1" : at) << ": " << failure->message << "\n";
        return kAlgorithm;
    }
    return kOk;
}

int cmd_rho(double u, const std::string& method, int order) {
    double log_rho;
    if (method == "dde")
        log_rho = rho_numeric(u).log_rho;
    else
        log_rho = log_rho_debruijn(u, order).series_form.log_rho;
    std::printf("%.12g\n", std::exp(log_rho));
    return kOk;
}

int cmd_radius() {
    const bool ok = radius_threshold_check(176) && !radius_threshold_check(150);
    std::printf("%.10f, threshold eta >= 176: %s\n", radius_constant(), ok ? "OK" : "FAILED");
    return ok ? kOk : kAlgorithm;
}

int cmd_xi(int degree, std::optional<double> nu, std::optional<double> bits, std::optional<double> loglog) {
    double log_nu;
    if (nu)
        log_nu = std::log(*nu);
    else if (bits)
        log_nu = std::log(*bits * std::log(2.0));
    else
        log_nu = *loglog;
    auto xi = xi_truncation(expansion_through(std::max(degree, 1)), degree);
    std::printf("xi_%d = %.12g at log log N = %.12g\n", degree, xi_eval_log(xi, log_nu), log_nu);
    return kOk;
}

int cmd_figure(const std::string& id_text, const std::string& out, int points, std::optional<int> imax) {
    const FigureId id = parse_figure_id(id_text);
    const int top = imax.value_or(id == FigureId::logrho ? 6 : 5);
    Grid g = default_grid(id);
    g.points = points;
    std::optional<CandidateExpansion> c;
    if (id != FigureId::logrho) c = expansion_through(std::max(top, 1));
    auto f = figure_data(id, top, g, c ? &*c : nullptr);
    const bool svg = out.size() >= 4 && out.substr(out.size() - 4) == ".svg";
    emit(svg ? figure_svg(f) : figure_csv(f), out);
    return kOk;
}

int cmd_keysize(double from_bits, double to_bits, int degree) {
    auto r = keysize_ratios(expansion_through(std::max(degree, 1)), degree, from_bits, to_bits);
    std::printf("log2 C(2^%g) - log2 C(2^%g), C = exp((64/9)^(1/3) nu^(1/3) (log nu)^(2/3) (1 + xi_i)):\n", to_bits,
                from_bits);
    for (std::size_t i = 0; i < r.size(); ++i) std::printf("  xi_%zu: %.4f bits\n", i, r[i]);
    const double g0 = g_demo(to_bits).log2_g0 - g_demo(from_bits).log2_g0;
    std::printf("  g0 demo, no (64/9)^(1/3) factor: %.4f bits\n", g0);
    std::printf(
        "caveat: the expansion of xi seems to diverge for N <= exp(exp(25)); at these sizes its truncations, "
        "xi = 0 included, say little about the true cost of NFS.\n");
    return kOk;
}

int cmd_cache_store(int degree) {
    auto dir = cache_dir();
    if (!dir) throw UsageError("NFSASY_CACHE_DIR is not set");
    auto p = compute_proven_expansion(proof_depth(degree));
    if (p.failure) {
        std::cerr << p.failure->kind << " failure: " << p.failure->message << "\n";
        return kAlgorithm;
    }
    store(p);
    std::cout << cache_path(*dir, p.cand.degA2 / 2).string() << "\n";
    return kOk;
}

int cmd_cache_verify(const std::string& file) {
    auto e = cache_parse(read_file(file));
    if (auto bad = cache_verify(e.cand)) {
        std::cout << "FAILED: " << *bad << "\n";
        return kAlgorithm;
    }
    std::cout << "OK: degree " << e.cand.degA2 / 2 << ", " << to_string(e.cand.status) << ", " << e.steps
              << " steps\n";
    return kOk;
}

int cmd_cache_list() {
    auto dir = cache_dir();
    if (!dir) throw UsageError("NFSASY_CACHE_DIR is not set");
    if (!fs::is_directory(*dir)) return kOk;
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(*dir))
        if (e.path().extension() == ".json") names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) std::cout << n << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic expansion of the NFS complexity exponent"};
    app.require_subcommand(1);

    int degree = 1;
    bool prove = false;
    std::string out, format = "text";
    std::optional<int> q_order;
    auto* expand = app.add_subcommand("expand", "coefficient table of A, B, D");
    expand->add_option("--degree", degree, "total degree, >= 1")->required()->check(CLI::Range(1, 30));
    expand->add_flag("--prove", prove, "run existence and minimality proofs");
    expand->add_option("--out", out, "output file (default stdout)");
    expand->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv", "latex"}));
    expand->add_option("--q-order", q_order, "force the smoothness-series order")->check(CLI::PositiveNumber);

    double u = 0;
    std::string method = "dde";
    int order = 6;
    auto* rho = app.add_subcommand("rho", "Dickman rho");
    rho->add_option("--u", u)->required()->check(CLI::Range(0.0, 500.0));
    rho->add_option("--method", method)->check(CLI::IsMember({"dde", "series"}));
    rho->add_option("--order", order, "series order")->check(CLI::Range(1, kMaxQOrder));

    auto* radius = app.add_subcommand("radius", "radius of convergence constant");

    int xdeg = 1;
    std::optional<double> nu, bits, loglog;
    auto* xi = app.add_subcommand("xi", "truncated xi");
    xi->add_option("--degree", xdeg)->required()->check(CLI::NonNegativeNumber);
    auto* where = xi->add_option_group("abscissa", "exactly one of --nu, --bits, --loglogN");
    where->add_option("--nu", nu, "log N")->check(CLI::PositiveNumber);
    where->add_option("--bits", bits, "N = 2^bits")->check(CLI::PositiveNumber);
    where->add_option("--loglogN", loglog, "log log N");
    where->require_option(1);

    std::string fig_id, fig_out;
    int points = 512;
    std::optional<int> imax;
    auto* figure = app.add_subcommand("figure", "figure data as CSV or SVG");
    figure->add_option("--id", fig_id)->required()->check(CLI::IsMember({"zonecrypto", "convergence", "logrho"}));
    figure->add_option("--out", fig_out, "*.csv or *.svg (default CSV on stdout)");
    figure->add_option("--points", points)->check(CLI::Range(2, 1 << 20));
    figure->add_option("--imax", imax)->check(CLI::NonNegativeNumber);

    double from_bits = 512, to_bits = 2048;
    int kdeg = 0;
    auto* keysize = app.add_subcommand("keysize", "work ratio between two modulus sizes");
    keysize->add_option("--from-bits", from_bits)->check(CLI::PositiveNumber);
    keysize->add_option("--to-bits", to_bits)->check(CLI::PositiveNumber);
    keysize->add_option("--degree", kdeg)->check(CLI::NonNegativeNumber);

    int cdeg = 3;
    std::string cfile;
    auto* cache = app.add_subcommand("cache", "expansion cache in NFSASY_CACHE_DIR");
    cache->require_subcommand(1);
    auto* c_store = cache->add_subcommand("store", "compute and store a proven expansion");
    c_store->add_option("--degree", cdeg)->required()->check(CLI::Range(1, 30));
    auto* c_verify = cache->add_subcommand("verify", "re-verify a cache file");
    c_verify->add_option("file", cfile)->required();
    auto* c_list = cache->add_subcommand("list", "list cache files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*expand) return cmd_expand(degree, prove, out, format, q_order);
        if (*rho) return cmd_rho(u, method, order);
        if (*radius) return cmd_radius();
        if (*xi) return cmd_xi(xdeg, nu, bits, loglog);
        if (*figure) return cmd_figure(fig_id, fig_out, points, imax);
        if (*keysize) return cmd_keysize(from_bits, to_bits, kdeg);
        if (*c_store) return cmd_cache_store(cdeg);
        if (*c_verify) return cmd_cache_verify(cfile);
        if (*c_list) return cmd_cache_list();
    } catch (const AlgorithmFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAlgorithm;
    } catch (const AlgorithmError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAlgorithm;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAlgorithm;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
