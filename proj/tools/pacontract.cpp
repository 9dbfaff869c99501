// Command-line front door over the JSON interchange formats.
//
// Exit codes: 0 = success, 1 = negative verdict or violated property,
// 2 = input error. Machine-readable JSON goes to stdout, human summaries to
// stderr. Outputs are byte-deterministic for fixed inputs and seeds.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pacontract/pacontract.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void emit(const pacontract::json& payload, int indent = 2) {
    std::cout << payload.dump(indent) << "\n";
}

int cmd_validate(const std::string& space_path) {
    const auto data = pacontract::space_from_json(read_json_file(space_path));

    std::optional<double> s_min;
    try {
        s_min = pacontract::minimal_coefficient(data.dist);
    } catch (const std::invalid_argument&) {
        // axioms (i)-(ii) fail; the validation below reports the details
    }
    const double s_used = data.s ? *data.s : (s_min ? *s_min : 1.0);
    const auto report = pacontract::validate_b_metric(data.dist, s_used);

    pacontract::json out = pacontract::to_json(report);
    out["s"] = s_used;
    out["s_from_file"] = data.s.has_value();
    out["s_min"] = s_min ? pacontract::json(*s_min) : pacontract::json(nullptr);
    emit(out);

    std::cerr << (report.valid ? "valid b-metric" : "NOT a b-metric") << " (s = " << s_used
              << ", " << report.violations.size() << " violation(s))\n";
    return report.valid ? kExitOk : kExitVerdict;
}

int cmd_classify(const std::string& space_path, const std::string& map_path) {
    const auto space =
        pacontract::space_from_file_data(pacontract::space_from_json(read_json_file(space_path)));
    const auto map = pacontract::map_from_json(read_json_file(map_path));
    pacontract::require_compatible(space, map);

    const auto report = pacontract::classify_all(space, map);
    emit(pacontract::to_json(report));

    std::cerr << "banach: " << (report.banach.is_member ? "yes" : "no")
              << ", kannan: " << (report.kannan.is_member ? "yes" : "no")
              << ", pa: " << (report.pa.is_member ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_census(std::size_t n, const std::string& kind_name, double p, double spread,
               std::uint64_t seed) {
    pacontract::GeneratorSpec spec;
    spec.n = n;
    spec.p = p;
    spec.spread = spread;
    spec.seed = seed;
    if (kind_name == "discrete") spec.kind = pacontract::SpaceKind::discrete;
    else if (kind_name == "power_metric") spec.kind = pacontract::SpaceKind::power_metric;
    else if (kind_name == "random_perturbed") spec.kind = pacontract::SpaceKind::random_perturbed;
    else throw std::invalid_argument("unknown space kind: " + kind_name);

    const auto space = pacontract::make_space(spec);
    const auto report = pacontract::census(space, [](const pacontract::CensusRecord& record) {
        std::cout << pacontract::to_json(record).dump() << "\n";
    });

    pacontract::json out = pacontract::to_json(report);
    out["generator"] = {{"kind", pacontract::space_kind_name(spec.kind)},
                        {"n", spec.n},
                        {"p", spec.p},
                        {"spread", spec.spread},
                        {"seed", spec.seed},
                        {"rng", pacontract::kGeneratorRngId}};
    std::cout << out.dump() << "\n";

    const bool gate_ok =
        report.banach_not_pa == 0 && report.theorem_violations == 0 && report.banach_implies_pa_ok;
    std::cerr << report.map_count << " maps classified; banach " << report.banach_count
              << ", kannan " << report.kannan_count << ", pa " << report.pa_count
              << (gate_ok ? "" : "; CLASS INCLUSION OR THEOREM GATE VIOLATED") << "\n";
    return gate_ok ? kExitOk : kExitVerdict;
}

int cmd_solve(const std::string& expr_src, double metric_power, double x0,
              const pacontract::IterationConfig& config) {
    if (!(metric_power >= 1.0)) throw std::invalid_argument("metric power must be >= 1");
    const auto expr = pacontract::MapExpr::parse(expr_src);

    const auto dist = [metric_power](double a, double b) {
        const double z = std::abs(a - b);
        if (metric_power == 1.0) return z;
        if (metric_power == 2.0) return z * z;
        return std::pow(z, metric_power);
    };
    const auto result = pacontract::picard_solve([&expr](double x) { return expr(x); }, dist, x0,
                                                 config);

    pacontract::json out = pacontract::to_json(result);
    out["decay"] = pacontract::to_json(
        pacontract::verify_decay(result.residual_trace, config.alpha));
    emit(out);

    std::cerr << pacontract::solve_status_name(result.status) << " after " << result.iterations
              << " iteration(s) at x = " << result.point << "\n";
    return result.status == pacontract::SolveStatus::max_iter_reached ? kExitVerdict : kExitOk;
}

// ---------------------------------------------------------------------------
// selftest: the built-in reference example (3-point discrete space, the map
// 0 -> 1 -> 2 -> 2) with its known-good classification, plus the census and
// solver checks that guard the class-inclusion and certificate machinery.

struct Checklist {
    pacontract::json items = pacontract::json::array();
    bool all_pass = true;

    void record(const std::string& name, bool pass, pacontract::json details = {}) {
        all_pass = all_pass && pass;
        pacontract::json item = {{"name", name}, {"pass", pass}};
        if (!details.is_null() && !details.empty()) item["details"] = std::move(details);
        items.push_back(std::move(item));
        std::cerr << (pass ? "ok   " : "FAIL ") << name << "\n";
    }
};

int cmd_selftest(double expect_alpha_min) {
    using namespace pacontract;

    Checklist list;

    GeneratorSpec spec;
    spec.n = 3;
    spec.kind = SpaceKind::discrete;
    const FiniteBSpace space = make_space(spec);
    const SelfMap map{{1, 2, 2}};

    const double s_min = minimal_coefficient(space.dist);
    list.record("discrete 3-point space validates with minimal coefficient 1",
                validate_b_metric(space.dist, space.s).valid && s_min == 1.0,
                {{"s_min", s_min}});

    const BanachReport banach = banach_modulus(space, map);
    list.record("banach modulus is exactly 1 at pair (0,1); not a Banach contraction",
                banach.beta_min == 1.0 && !banach.is_member &&
                    banach.witness == PointPair{0, 1},
                {{"beta_min", banach.beta_min}});

    const KannanReport kannan = kannan_modulus(space, map);
    const double kannan_01 =
        space.d(map(0), map(1)) / (space.d(0, map(0)) + space.d(1, map(1)));
    list.record("kannan constraint at pair (0,1) is 1/2 against threshold 1/2; not Kannan",
                kannan_01 == 0.5 && kannan.threshold == 0.5 && !kannan.is_member,
                {{"constraint_01", kannan_01}, {"threshold", kannan.threshold}});

    const PaReport pa = pa_minimal_alpha(space, map);
    list.record("pa membership with expected minimal alpha and n_min 2",
                pa.is_member && pa.alpha_min == expect_alpha_min && pa.n_min == 2,
                {{"alpha_min", pa.alpha_min}, {"n_min", pa.n_min},
                 {"expected_alpha_min", expect_alpha_min}});

    list.record("direct check accepts alpha 2/3 at N = 2",
                pa_check_direct(space, map, 2.0 / 3.0, 2).holds);

    const PaCheckResult reject = pa_check_direct(space, map, 0.4, 2);
    list.record("direct check rejects alpha 0.4 at N = 2 with witness (0,1), n = 2",
                !reject.holds && reject.failure && reject.failure->pair == PointPair{0, 1} &&
                    reject.failure->n == 2);

    const TheoremVerdict verdict = verify_theorem(space, map);
    list.record("unique fixed point at index 2 and every orbit reaches it",
                verdict.hypothesis_met && verdict.unique && verdict.fixed_points.size() == 1 &&
                    verdict.fixed_points.front() == 2 && verdict.all_orbits_converge &&
                    verdict.theorem_respected);

    const CensusReport censusReport = census(space);
    list.record("census: banach subset of pa, pa exceeds both banach and kannan",
                censusReport.banach_not_pa == 0 && censusReport.pa_not_banach >= 1 &&
                    censusReport.pa_not_kannan >= 1 && censusReport.theorem_violations == 0 &&
                    censusReport.banach_implies_pa_ok,
                {{"pa_not_banach", censusReport.pa_not_banach},
                 {"pa_not_kannan", censusReport.pa_not_kannan}});

    IterationConfig config;
    config.alpha = 0.25;
    config.s = 2.0;
    config.tolerance = 1e-12;
    config.max_iter = 100;
    config.stop_rule = StopRule::certified_bound;
    const auto solve = picard_solve([](double x) { return x / 2.0; },
                                    [](double a, double b) { return (a - b) * (a - b); }, 1.0,
                                    config);
    bool ratios_exact = solve.residual_trace.size() >= 2;
    for (std::size_t k = 0; k + 1 < solve.residual_trace.size(); ++k) {
        ratios_exact =
            ratios_exact && solve.residual_trace[k + 1] == 0.25 * solve.residual_trace[k];
    }
    const auto decay = verify_decay(solve.residual_trace, config.alpha);
    list.record("certified halving demo: exact ratio 1/4, c_fit 1/4, <= 25 iterations",
                solve.status == SolveStatus::converged && solve.certificate.certified &&
                    solve.iterations <= 25 && ratios_exact && decay.holds && decay.c_fit == 0.25,
                {{"iterations", solve.iterations}, {"c_fit", decay.c_fit}});

    pacontract::json out = {
        {"pass", list.all_pass},
        {"alpha_min", pa.alpha_min},
        {"n_min", pa.n_min},
        {"beta_min", banach.beta_min},
        {"checks", list.items},
    };
    emit(out);
    std::cerr << (list.all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
    return list.all_pass ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite b-metric spaces: contraction classification, certified Picard "
                 "iteration, exhaustive verification"};
    app.require_subcommand(1);

    std::string space_path, map_path;
    auto* validate =
        app.add_subcommand("validate", "check the b-metric axioms of a space file");
    validate->add_option("space", space_path, "space JSON file")->required();

    auto* classify = app.add_subcommand(
        "classify", "decide Banach/Kannan/PA membership with minimal moduli and witnesses");
    classify->add_option("space", space_path, "space JSON file")->required();
    classify->add_option("map", map_path, "map JSON file")->required();

    std::size_t census_n = 3;
    std::string census_kind = "discrete";
    double census_p = 2.0;
    double census_spread = 0.25;
    std::uint64_t census_seed = 0;
    auto* census = app.add_subcommand(
        "census", "classify every self-map on a generated space and aggregate class cells");
    census->add_option("--n", census_n, "point count (enumeration guard: n <= 6)");
    census->add_option("--kind", census_kind, "discrete | power_metric | random_perturbed");
    census->add_option("--p", census_p, "exponent for power_metric/random_perturbed");
    census->add_option("--spread", census_spread, "weight spread for random_perturbed");
    census->add_option("--seed", census_seed, "seed for random_perturbed");

    std::string map_expr;
    double solve_power = 1.0, solve_x0 = 0.0;
    pacontract::IterationConfig solve_config;
    std::string stop_rule = "certified_bound";
    auto* solve = app.add_subcommand(
        "solve", "run certified Picard iteration on a 1-d map under dist |x-y|^p");
    solve->add_option("--map-expr", map_expr, "map expression in x, e.g. \"x/2\"")->required();
    solve->add_option("--metric-power", solve_power, "p in dist(x,y) = |x-y|^p (default 1)");
    solve->add_option("--x0", solve_x0, "starting point (default 0)");
    solve->add_option("--alpha", solve_config.alpha, "asserted contraction factor in (0,1)");
    solve->add_option("--s", solve_config.s, "b-metric coefficient of the asserted space");
    solve->add_option("--tol", solve_config.tolerance, "stopping tolerance in distance units");
    solve->add_option("--max-iter", solve_config.max_iter, "iteration cap");
    solve->add_option("--stop-rule", stop_rule, "residual | certified_bound | both");

    double expect_alpha_min = 0.5;
    auto* selftest = app.add_subcommand(
        "selftest", "verify the built-in reference example and class-inclusion gates");
    selftest
        ->add_option("--expect-alpha-min", expect_alpha_min,
                     "expected minimal alpha of the reference map (harness knob for "
                     "exercising the failure path)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (validate->parsed()) return cmd_validate(space_path);
        if (classify->parsed()) return cmd_classify(space_path, map_path);
        if (census->parsed())
            return cmd_census(census_n, census_kind, census_p, census_spread, census_seed);
        if (solve->parsed()) {
            if (stop_rule == "residual") solve_config.stop_rule = pacontract::StopRule::residual;
            else if (stop_rule == "certified_bound")
                solve_config.stop_rule = pacontract::StopRule::certified_bound;
            else if (stop_rule == "both") solve_config.stop_rule = pacontract::StopRule::both;
            else throw std::invalid_argument("unknown stop rule: " + stop_rule);
            return cmd_solve(map_expr, solve_power, solve_x0, solve_config);
        }
        if (selftest->parsed()) return cmd_selftest(expect_alpha_min);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
