#pragma once

// JSON interchange. Output uses nlohmann's ordered_json so field order is
// fixed by construction and floats print in their shortest round-trip form;
// non-finite moduli (the Kannan infinity sentinel, uncertified bounds)
// serialize as null.

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "pacontract/classify.hpp"
#include "pacontract/generator.hpp"
#include "pacontract/mapping.hpp"
#include "pacontract/oracle.hpp"
#include "pacontract/solver.hpp"
#include "pacontract/space.hpp"

namespace pacontract {

using json = nlohmann::ordered_json;

namespace detail {

inline json pair_or_null(const std::optional<PointPair>& pair) {
    if (!pair) return nullptr;
    return json::array({pair->first, pair->second});
}

inline json index_or_null(const std::optional<std::size_t>& v) {
    if (!v) return nullptr;
    return *v;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace detail

inline json to_json(const ValidationReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) {
        json indices = v.axiom == Axiom::triangle ? json::array({v.i, v.j, v.k})
                                                  : json::array({v.i, v.j});
        violations.push_back({{"axiom", axiom_name(v.axiom)},
                              {"indices", std::move(indices)},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs}});
    }
    return {{"valid", report.valid}, {"violations", std::move(violations)}};
}

inline json to_json(const ClassificationReport& report) {
    return {
        {"banach",
         {{"is_member", report.banach.is_member},
          {"beta_min", report.banach.beta_min},
          {"witness", detail::pair_or_null(report.banach.witness)}}},
        {"kannan",
         {{"is_member", report.kannan.is_member},
          {"beta_min", report.kannan.beta_min},  // null when no finite factor exists
          {"threshold", report.kannan.threshold},
          {"witness", detail::pair_or_null(report.kannan.witness)}}},
        {"pa",
         {{"is_member", report.pa.is_member},
          {"alpha_min", report.pa.alpha_min},
          {"n_min", report.pa.n_min},
          {"witness", detail::pair_or_null(report.pa.witness)}}},
        {"banach_implies_pa_ok", report.banach_implies_pa_ok},
    };
}

inline json to_json(const TheoremVerdict& verdict) {
    return {
        {"pa_member", verdict.pa_member},
        {"s_alpha_product", verdict.s_alpha_product},
        {"hypothesis_met", verdict.hypothesis_met},
        {"fixed_points", verdict.fixed_points},
        {"unique", verdict.unique},
        {"all_orbits_converge", verdict.all_orbits_converge},
        {"theorem_respected", verdict.theorem_respected},
        {"continuity", verdict.continuity_automatic
                           ? "automatic: finite space, discrete topology"
                           : "caller-asserted"},
    };
}

inline json to_json(const CensusReport& report) {
    json cells = json::array();
    for (std::size_t mask = 0; mask < report.cells.size(); ++mask) {
        const CensusCell& cell = report.cells[mask];
        json witness = nullptr;
        if (cell.witness) witness = cell.witness->table;
        cells.push_back({{"banach", (mask & 4) != 0},
                         {"kannan", (mask & 2) != 0},
                         {"pa", (mask & 1) != 0},
                         {"count", cell.count},
                         {"witness", std::move(witness)}});
    }
    return {
        {"points", report.point_count},
        {"maps", report.map_count},
        {"fingerprint", detail::hex64(report.fingerprint)},
        {"counts",
         {{"banach", report.banach_count},
          {"kannan", report.kannan_count},
          {"pa", report.pa_count},
          {"banach_and_pa", report.banach_and_pa},
          {"pa_not_banach", report.pa_not_banach},
          {"banach_not_pa", report.banach_not_pa},
          {"pa_not_kannan", report.pa_not_kannan},
          {"kannan_not_pa", report.kannan_not_pa}}},
        {"cells", std::move(cells)},
        {"theorem_violations", report.theorem_violations},
        {"banach_implies_pa_ok", report.banach_implies_pa_ok},
        {"pa_unique_always", report.pa_unique_always},
    };
}

inline json to_json(const CensusRecord& record) {
    return {{"table", record.map.table},
            {"banach", record.banach},
            {"kannan", record.kannan},
            {"pa", record.pa},
            {"theorem_respected", record.theorem_respected}};
}

inline json to_json(const ConvergenceCertificate& cert) {
    return {
        {"a0", cert.a0},
        {"alpha", cert.alpha},
        {"s", cert.s},
        {"s_alpha", cert.s_alpha},
        {"c_bound", cert.c_bound},
        {"certified", cert.certified},
        {"c_fit", cert.c_fit},
        {"recursion_violation_at", detail::index_or_null(cert.recursion_violation_at)},
        {"sum_bound_violation_at", detail::index_or_null(cert.sum_bound_violation_at)},
    };
}

inline json to_json(const FixedPointResult<double>& result) {
    return {
        {"status", solve_status_name(result.status)},
        {"point", result.point},
        {"iterations", result.iterations},
        {"residual_trace", result.residual_trace},
        {"certificate", to_json(result.certificate)},
    };
}

inline json to_json(const DecayReport& report) {
    return {
        {"holds", report.holds},
        {"c_fit", report.c_fit},
        {"first_violation", detail::index_or_null(report.first_violation)},
        {"c_fit_exceeds_c_bound", report.c_fit_exceeds_c_bound},
    };
}

inline json space_to_json(const FiniteBSpace& space) {
    return {{"points", space.points}, {"dist", space.dist}, {"s", space.s}};
}

inline json map_to_json(const SelfMap& map) { return {{"table", map.table}}; }

/// Raw contents of a space file; `s` stays empty when the file omits it so
/// callers can decide to compute the minimal coefficient.
struct SpaceFileData {
    std::vector<std::string> points;
    DistMatrix dist;
    std::optional<double> s;
};

inline SpaceFileData space_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dist"))
        throw std::invalid_argument("space file must be an object with a \"dist\" matrix");
    SpaceFileData data;
    const auto& dist = j.at("dist");
    if (!dist.is_array() || dist.empty())
        throw std::invalid_argument("\"dist\" must be a non-empty array of rows");
    for (const auto& row : dist) {
        if (!row.is_array()) throw std::invalid_argument("\"dist\" rows must be arrays");
        std::vector<double> out;
        out.reserve(row.size());
        for (const auto& v : row) {
            if (!v.is_number()) throw std::invalid_argument("\"dist\" entries must be numbers");
            out.push_back(v.get<double>());
        }
        data.dist.push_back(std::move(out));
    }
    if (j.contains("points")) {
        const auto& points = j.at("points");
        if (!points.is_array()) throw std::invalid_argument("\"points\" must be an array");
        for (const auto& p : points) {
            data.points.push_back(p.is_string() ? p.get<std::string>() : p.dump());
        }
        if (data.points.size() != data.dist.size())
            throw std::invalid_argument("\"points\" and \"dist\" sizes disagree");
    } else {
        for (std::size_t i = 0; i < data.dist.size(); ++i)
            data.points.push_back(std::to_string(i));
    }
    if (j.contains("s")) {
        if (!j.at("s").is_number()) throw std::invalid_argument("\"s\" must be a number");
        data.s = j.at("s").get<double>();
    }
    return data;
}

/// Builds a validated FiniteBSpace, computing s = minimal_coefficient when
/// the file omitted it. Throws std::invalid_argument on any defect.
inline FiniteBSpace space_from_file_data(const SpaceFileData& data) {
    FiniteBSpace space;
    space.points = data.points;
    space.dist = data.dist;
    space.s = data.s ? *data.s : minimal_coefficient(data.dist);
    require_valid(space);
    return space;
}

inline SelfMap map_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("table"))
        throw std::invalid_argument("map file must be an object with a \"table\" array");
    const auto& table = j.at("table");
    if (!table.is_array()) throw std::invalid_argument("\"table\" must be an array");
    SelfMap map;
    for (const auto& v : table) {
        if (!v.is_number_unsigned())
            throw std::invalid_argument("\"table\" entries must be non-negative integers");
        map.table.push_back(v.get<std::size_t>());
    }
    return map;
}

}  // namespace pacontract
