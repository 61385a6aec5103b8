#pragma once

// CSV and JSON rendering. Rationals are serialized as exact "p/q" strings
// (never floats); decimal fields always carry their precision.

#include <string>
#include <vector>

#include <json.hpp>

#include "kappa/bounds.hpp"
#include "kappa/limits.hpp"
#include "kappa/monte_carlo.hpp"
#include "kappa/statistics.hpp"

namespace kappa {

using Json = nlohmann::json;

inline std::string decimal_column_name(std::size_t precision) {
    return "decimal_" + std::to_string(precision) + "dp";
}

inline std::string prob_tables_csv(const std::vector<ProbTable>& tables, std::size_t precision) {
    std::string out = "n,quantity,numerator,denominator," + decimal_column_name(precision) + ",method\n";
    for (const auto& t : tables) {
        for (const auto& [n, v] : t.values) {
            out += std::to_string(n) + "," + t.display_name() + "," + v.num().get_str() +
                   "," + v.den().get_str() + "," + v.decimal(precision) + "," + method_name(t.method) + "\n";
        }
    }
    return out;
}

inline Json rational_json(const Rational& v, std::size_t precision) {
    return Json{{"value", v.str()}, {"decimal", v.decimal(precision)}, {"precision", precision}};
}

inline Json prob_tables_json(const std::vector<ProbTable>& tables, std::size_t precision) {
    Json arr = Json::array();
    for (const auto& t : tables) {
        for (const auto& [n, v] : t.values) {
            Json row = rational_json(v, precision);
            row["n"] = n;
            row["quantity"] = t.display_name();
            row["method"] = method_name(t.method);
            arr.push_back(std::move(row));
        }
    }
    return arr;
}

inline Json report_json(const BoundReport& r) {
    Json j{{"claim", r.claim_id},
           {"holds", r.holds},
           {"cells_checked", r.range_checked.size()}};
    if (!r.range_checked.empty()) {
        auto [lo, hi] = std::minmax_element(r.range_checked.begin(), r.range_checked.end());
        j["first_cell"] = {lo->first, lo->second};
        j["last_cell"] = {hi->first, hi->second};
    }
    if (r.worst_margin) j["worst_margin"] = r.worst_margin->str();
    Json cex = Json::array();
    for (const auto& c : r.counterexamples)
        cex.push_back(Json{{"n", c.n}, {"k", c.k}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}});
    j["counterexamples"] = std::move(cex);
    return j;
}

inline Json enclosure_json(const std::string& constant, const Enclosure& e, std::size_t precision) {
    return Json{{"constant", constant},
                {"D", e.terms_used},
                {"lo", e.lo.str()},
                {"hi", e.hi.str()},
                {"width", e.width().str()},
                {"tail_constant", e.tail_constant.str()},
                {"decimal_mid", e.mid().decimal(precision)},
                {"precision", precision}};
}

inline Json estimate_json(const McEstimate& e) {
    return Json{{"quantity", e.quantity}, {"n", e.n},           {"point", e.point},
                {"std_error", e.std_error}, {"successes", e.successes}, {"samples", e.samples},
                {"seed", e.seed},           {"workers", e.workers},     {"degenerate", e.degenerate}};
}

// per-worker tallies, one row per substream
inline std::string estimate_csv(const McEstimate& e) {
    std::string out = "quantity,n,seed,worker,samples,successes\n";
    for (std::size_t w = 0; w < e.worker_samples.size(); ++w) {
        out += e.quantity + "," + std::to_string(e.n) + "," + std::to_string(e.seed) + "," +
               std::to_string(w) + "," + std::to_string(e.worker_samples[w]) + "," +
               std::to_string(e.worker_successes[w]) + "\n";
    }
    return out;
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows, std::size_t precision) {
    std::string out =
        "n,parity,n2_kappa_even,n2_q_split,n2_kappa_alt,enclosure_mid_distance,delta_allowance,"
        "n2_kappa_even_decimal,n2_q_split_decimal,n2_kappa_alt_decimal,enclosure_mid_distance_decimal\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + (r.even ? "even" : "odd") + "," + r.n2_kappa_even.str() + "," +
               r.n2_q_split.str() + "," + r.n2_kappa_alt.str() + "," + r.mid_distance.str() + "," +
               r.delta_allowance.str() + "," + r.n2_kappa_even.decimal(precision) + "," +
               r.n2_q_split.decimal(precision) + "," + r.n2_kappa_alt.decimal(precision) + "," +
               r.mid_distance.decimal(precision) + "\n";
    }
    return out;
}

inline Json convergence_json(const std::vector<ConvergenceRow>& rows, std::size_t precision) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        arr.push_back(Json{{"n", r.n},
                           {"parity", r.even ? "even" : "odd"},
                           {"n2_kappa_even", r.n2_kappa_even.str()},
                           {"n2_q_split", r.n2_q_split.str()},
                           {"n2_kappa_alt", r.n2_kappa_alt.str()},
                           {"enclosure_mid_distance", r.mid_distance.str()},
                           {"delta_allowance", r.delta_allowance.str()},
                           {"n2_kappa_alt_decimal", r.n2_kappa_alt.decimal(precision)},
                           {"precision", precision}});
    }
    return arr;
}

}  // namespace kappa
