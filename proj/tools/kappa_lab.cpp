// kappa-lab: exact conjugacy-probability statistics of S_n and A_n.
//
// Subcommands:
//   compute   exact values of one quantity, single n or a range
//   verify    machine-check the inequality/certificate claims (exit 1 on failure)
//   limits    certified enclosures of A1, A2, B1, B2 and the two limit constants
//   simulate  seeded Monte Carlo estimate (statistical cross-check)
//   table     convergence table of n^2 kappa_E, n^2 Q, n^2 kappa(A_n)
//
// Exit codes: 0 success, 1 failed verification claim, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kappa/bounds.hpp"
#include "kappa/brute_force.hpp"
#include "kappa/io.hpp"
#include "kappa/limits.hpp"
#include "kappa/monte_carlo.hpp"
#include "kappa/statistics.hpp"

namespace {

using namespace kappa;

struct GlobalOpts {
    std::size_t truncation = 300;
    std::size_t precision = 50;
    std::string format = "plain";  // plain|csv|json
    unsigned workers = 0;          // 0 = resolve from env / hardware
};

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("KAPPA_LAB_WORKERS")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::optional<std::pair<std::size_t, std::size_t>> parse_range(const std::string& s) {
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            std::size_t n = std::stoul(s);
            return std::make_pair(n, n);
        }
        std::size_t a = std::stoul(s.substr(0, pos));
        std::size_t b = std::stoul(s.substr(pos + 2));
        if (a > b) return std::nullopt;
        return std::make_pair(a, b);
    } catch (...) {
        return std::nullopt;
    }
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << text;
    }
}

int run_compute(const GlobalOpts& g, const std::string& quantity, const std::string& n_arg,
                std::size_t k, const std::string& sum_mode, const std::string& scale,
                const std::string& method_str, const std::string& out_path) {
    auto q = quantity_from_name(quantity);
    if (!q) {
        std::cerr << "unknown quantity: " << quantity << "\n";
        return 2;
    }
    if (*q == Quantity::s_below && k < 1) {
        std::cerr << "s_below requires --k >= 1\n";
        return 2;
    }
    auto range = parse_range(n_arg);
    if (!range) {
        std::cerr << "bad --n value (expect '4' or '0..15'): " << n_arg << "\n";
        return 2;
    }
    StatEngine stats(g.truncation);
    auto [n_from, n_to] = *range;
    if (n_to > stats.truncation()) {
        std::cerr << "n exceeds truncation order " << stats.truncation() << "\n";
        return 2;
    }

    auto scaled = [&](std::size_t n, const Rational& v) {
        if (scale == "n") return Rational(static_cast<long>(n)) * v;
        if (scale == "n2")
            return Rational(BigInt(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n)) * v;
        return v;
    };
    std::string label = quantity_name(*q, k);
    if (scale == "n") label = "n*" + label;
    if (scale == "n2") label = "n^2*" + label;

    std::vector<ProbTable> tables;
    Rational total = 0;
    for (std::size_t n = n_from; n <= n_to; ++n) {
        if (sum_mode == "odd" && n % 2 == 0) continue;
        if (sum_mode == "even" && n % 2 == 1) continue;
        Method m = method_str == "enumeration"  ? Method::enumeration
                   : method_str == "gf"         ? Method::generating_function
                                                : stats.method_of_record(n);
        Rational v = scaled(n, stats.value(*q, m, n, k));
        total += v;
        ProbTable t{*q, k, m, {}, label};
        t.values[n] = v;
        tables.push_back(std::move(t));
    }

    bool aggregate = sum_mode != "none";
    std::string sum_label = "sum_" + sum_mode + "(" + label + ")";
    if (g.format == "json") {
        Json j;
        if (aggregate) {
            j = rational_json(total, g.precision);
            j["quantity"] = sum_label;
            j["sum"] = sum_mode;
            j["range"] = {n_from, n_to};
        } else {
            j = prob_tables_json(tables, g.precision);
        }
        emit(out_path, j.dump(2));
    } else if (g.format == "csv") {
        if (aggregate) {
            ProbTable t{*q, k, stats.method_of_record(n_to), {}, sum_label};
            t.values[n_to] = total;
            emit(out_path, prob_tables_csv({t}, g.precision));
        } else {
            emit(out_path, prob_tables_csv(tables, g.precision));
        }
    } else {
        std::string text;
        if (aggregate) {
            text = total.str();
        } else if (tables.size() == 1) {
            text = tables[0].values.begin()->second.str();
        } else {
            for (const auto& t : tables)
                for (const auto& [n, v] : t.values)
                    text += std::to_string(n) + " " + v.str() + " (" + method_name(t.method) + ")\n";
        }
        emit(out_path, text);
    }
    return 0;
}

struct Claim {
    std::size_t default_max_n;  // 0 = claim has no range parameter
    std::function<BoundReport(const BoundVerifier&, std::size_t)> run;
};

const std::map<std::string, Claim>& claim_registry() {
    using D = BoundVerifier::Direction;
    static const std::map<std::string, Claim> reg = {
        {"prop_even_upper", {40, [](const BoundVerifier& v, std::size_t m) { return v.prop_even_upper_sweep(m); }}},
        {"prop_even_lower", {60, [](const BoundVerifier& v, std::size_t m) { return v.prop_even_lower_sweep(m); }}},
        {"prop_q_upper", {40, [](const BoundVerifier& v, std::size_t m) { return v.prop_q_sweep(m, D::upper); }}},
        {"prop_q_lower", {60, [](const BoundVerifier& v, std::size_t m) { return v.prop_q_sweep(m, D::lower); }}},
        {"q_uniform_bound", {300, [](const BoundVerifier& v, std::size_t m) { return v.q_uniform_bound(m); }}},
        {"kappa_uniform_bound", {300, [](const BoundVerifier& v, std::size_t m) { return v.kappa_uniform_bound(m); }}},
        {"parity_uniform_bounds", {300, [](const BoundVerifier& v, std::size_t m) { return v.parity_uniform_bounds(m); }}},
        {"uniform_bounds", {300, [](const BoundVerifier& v, std::size_t m) { return v.uniform_bounds(m); }}},
        {"s15_monotone", {300, [](const BoundVerifier& v, std::size_t m) { return v.s15_monotone(m); }}},
        {"s15_at_60", {0, [](const BoundVerifier& v, std::size_t) { return v.s15_at_60(); }}},
        {"tail_sum_lemma", {400, [](const BoundVerifier& v, std::size_t m) { return v.tail_sum_sweep(m); }}},
        {"induction_certificate",
         {0, [](const BoundVerifier& v, std::size_t) { return v.replay_induction_certificate(); }}},
    };
    return reg;
}

int run_verify(const GlobalOpts& g, std::vector<std::string> claims, bool all, std::size_t max_n_override,
               const std::string& report_path) {
    if (all) {
        claims = {"prop_even_upper", "prop_even_lower", "prop_q_upper",  "prop_q_lower",
                  "uniform_bounds",  "s15_monotone",    "s15_at_60",     "tail_sum_lemma",
                  "induction_certificate"};
    }
    if (claims.empty()) {
        std::cerr << "verify: give --claim <id> (repeatable) or --all; known claims:\n";
        for (const auto& [id, c] : claim_registry()) std::cerr << "  " << id << "\n";
        return 2;
    }
    for (const auto& id : claims) {
        if (!claim_registry().count(id)) {
            std::cerr << "unknown claim: " << id << "\n";
            return 2;
        }
    }

    StatEngine stats(g.truncation);
    BoundVerifier verifier(stats, g.precision);
    Json bundle = Json::array();
    bool all_hold = true;
    for (const auto& id : claims) {
        const Claim& c = claim_registry().at(id);
        std::size_t m = max_n_override > 0 ? max_n_override : c.default_max_n;
        BoundReport r = c.run(verifier, m);
        all_hold = all_hold && r.holds;
        bundle.push_back(report_json(r));
        std::cout << id << ": " << (r.holds ? "HOLDS" : "FAILS") << " (cells=" << r.range_checked.size();
        if (r.worst_margin) std::cout << ", worst_margin=" << r.worst_margin->decimal(12);
        std::cout << ")\n";
        for (const auto& cex : r.counterexamples)
            std::cout << "  counterexample n=" << cex.n << " k=" << cex.k << ": " << cex.lhs.str() << " > "
                      << cex.rhs.str() << "\n";
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "cannot open report file: " << report_path << "\n";
            return 2;
        }
        out << bundle.dump(2) << "\n";
    }
    return all_hold ? 0 : 1;
}

int run_limits(const GlobalOpts& g, std::size_t D, const std::string& out_path) {
    StatEngine stats(g.truncation);
    if (D == 0) D = stats.truncation();
    ConstantEnclosures c = enclose_constants(stats, D);
    Theorem1Enclosures t = theorem1_constants(stats, D);
    std::vector<std::pair<std::string, const Enclosure*>> rows = {
        {"A1", &c.a1}, {"A2", &c.a2}, {"B1", &c.b1},
        {"B2", &c.b2}, {"even_limit", &t.even_limit}, {"odd_limit", &t.odd_limit},
    };
    if (g.format == "json") {
        Json arr = Json::array();
        for (const auto& [name, e] : rows) arr.push_back(enclosure_json(name, *e, g.precision));
        emit(out_path, arr.dump(2));
    } else {
        std::string text;
        for (const auto& [name, e] : rows) {
            text += name + ": [" + e->lo.decimal(g.precision) + ", " + e->hi.decimal(g.precision) +
                    "] width=" + e->width().decimal(12) + " D=" + std::to_string(e->terms_used) + "\n";
        }
        emit(out_path, text);
    }
    return 0;
}

int run_simulate(const GlobalOpts& g, const std::string& quantity, std::size_t n, std::uint64_t samples,
                 std::uint64_t seed, std::size_t k, const std::string& out_path) {
    McQuantity q;
    if (quantity == "kappa_sym") q = McQuantity::kappa_sym;
    else if (quantity == "kappa_even") q = McQuantity::kappa_even;
    else if (quantity == "kappa_odd") q = McQuantity::kappa_odd;
    else if (quantity == "q_split") q = McQuantity::q_split;
    else if (quantity == "kappa_alt") q = McQuantity::kappa_alt;
    else if (quantity == "s_below") q = McQuantity::s_below;
    else if (quantity == "split_half_rate") q = McQuantity::split_half_rate;
    else {
        std::cerr << "unknown quantity: " << quantity << "\n";
        return 2;
    }
    McEstimate e = estimate(q, n, samples, seed, resolve_workers(g.workers), k);
    if (g.format == "csv") {
        emit(out_path, estimate_csv(e));
    } else {
        emit(out_path, estimate_json(e).dump(2));
    }
    return 0;
}

int run_table(const GlobalOpts& g, std::size_t from, std::size_t to, const std::string& out_path) {
    StatEngine stats(g.truncation);
    auto rows = convergence_table(stats, from, to);
    if (g.format == "json") {
        emit(out_path, convergence_json(rows, g.precision).dump(2));
    } else {
        emit(out_path, convergence_csv(rows, g.precision));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact conjugacy-probability statistics of symmetric and alternating groups"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("-N,--truncation", g.truncation, "series truncation order (>= 16)")
        ->check(CLI::Range(std::size_t{16}, std::size_t{100000}))
        ->capture_default_str();
    app.add_option("--precision", g.precision, "decimal digits for rendering (>= 20)")
        ->check(CLI::Range(std::size_t{20}, std::size_t{10000}))
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--workers", g.workers, "worker threads (default: KAPPA_LAB_WORKERS or hardware)");

    // compute
    std::string quantity, n_arg, sum_mode = "none", scale = "none", method = "auto", out_path;
    std::size_t k = 0;
    auto* compute = app.add_subcommand("compute", "exact values of a quantity");
    compute->add_option("--quantity", quantity)->required();
    compute->add_option("--n", n_arg, "single n or range a..b")->required();
    compute->add_option("--k", k, "cycle-length bound for s_below");
    compute->add_option("--sum", sum_mode)->check(CLI::IsMember({"none", "odd", "even", "all"}));
    compute->add_option("--scale", scale, "multiply each value by n or n^2")
        ->check(CLI::IsMember({"none", "n", "n2"}));
    compute->add_option("--method", method)->check(CLI::IsMember({"auto", "enumeration", "gf"}));
    compute->add_option("--out", out_path, "write to file instead of stdout");

    // verify
    std::vector<std::string> claims;
    bool verify_all = false;
    std::size_t max_n_override = 0;
    std::string report_path;
    auto* verify = app.add_subcommand("verify", "machine-check the inequality and certificate claims");
    verify->add_option("--claim", claims, "claim id (repeatable)");
    verify->add_flag("--all", verify_all, "run the full claim suite");
    verify->add_option("--max-n", max_n_override, "override the sweep range");
    verify->add_option("--report", report_path, "write JSON reports to this path");

    // limits
    std::size_t D = 0;
    auto* limits = app.add_subcommand("limits", "certified enclosures of the limit constants");
    limits->add_option("--D", D, "partial-sum depth (default: truncation order)");
    limits->add_option("--out", out_path, "write to file instead of stdout");

    // simulate
    std::size_t sim_n = 0;
    std::uint64_t samples = 1000000, seed = 0;
    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo estimate");
    simulate->add_option("--quantity", quantity)->required();
    simulate->add_option("--n", sim_n)->required();
    simulate->add_option("--samples", samples)->capture_default_str();
    simulate->add_option("--seed", seed)->capture_default_str();
    simulate->add_option("--k", k, "cycle-length bound for s_below");
    simulate->add_option("--out", out_path, "write to file instead of stdout");

    // table
    std::size_t from = 2, to = 60;
    auto* table = app.add_subcommand("table", "convergence table");
    table->add_option("--from", from)->capture_default_str();
    table->add_option("--to", to)->capture_default_str();
    table->add_option("--out", out_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (compute->parsed()) return run_compute(g, quantity, n_arg, k, sum_mode, scale, method, out_path);
        if (verify->parsed()) return run_verify(g, claims, verify_all, max_n_override, report_path);
        if (limits->parsed()) return run_limits(g, D, out_path);
        if (simulate->parsed()) return run_simulate(g, quantity, sim_n, samples, seed, k, out_path);
        if (table->parsed()) return run_table(g, from, to, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
