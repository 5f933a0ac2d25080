// Problem and result files (JSON, "schema": 1) and their text rendering.
//
// Problem file:
//   {"schema": 1, "mode": "algebraic" | "differential",
//    "ranking": ["a", "x"]                                  (algebraic, ascending)
//             | {"derivations": ["x", "t"], "indeterminates": ["zeta", "eta"],
//                "kind": "orderly" | "elimination", "blocks": [["eta"], ["zeta"]]},
//    "equations": ["..."], "inequations": ["..."],
//    "options": {"factor": false, "coefficient_reduction": false, "max_iterations": N}}
//
// Result file:
//   {"schema": 1, "input": <problem>, "systems": [{"equations": [...], "inequations": [...]}],
//    "statistics": {"iterations", "splits", "discarded"[, "seconds"]}[, "verification": {...}]}
#pragma once

#include "thomas/decompose.hpp"
#include "thomas/diffsys.hpp"
#include "thomas/parser.hpp"
#include "thomas/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace thomas {

using Json = nlohmann::ordered_json;

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Problem {
    bool differential = false;
    VariableContext context;
    Json ranking;
    std::vector<std::string> equation_sources, inequation_sources;
    std::vector<Polynomial> equations, inequations;
    DecomposeOptions options;

    /// Variable keys of an algebraic problem, ascending.
    std::vector<Var> variables() const
    {
        std::vector<Var> out;
        for (std::size_t i = 0; i < context.names().size(); ++i) out.push_back(i);
        return out;
    }
};

namespace detail {

inline std::vector<std::string> string_list(const Json& j, const char* field)
{
    if (!j.contains(field)) return {};
    const Json& v = j.at(field);
    if (!v.is_array()) throw config_error(std::string("'") + field + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
        if (!s.is_string()) throw config_error(std::string("'") + field + "' must be an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

inline std::vector<Polynomial> parse_all(const std::vector<std::string>& src, const VariableContext& ctx,
                                         const char* field)
{
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < src.size(); ++i) {
        try {
            out.push_back(parse_expression(src[i], ctx));
        } catch (const parse_error& e) {
            throw parse_error(std::string(field) + "[" + std::to_string(i) + "]: " + e.what(), e.line(), e.column());
        }
    }
    return out;
}

inline VariableContext context_from(const Json& ranking, bool differential)
{
    if (!differential) {
        std::vector<std::string> names;
        const Json& list = ranking.is_object() && ranking.contains("variables") ? ranking.at("variables") : ranking;
        if (!list.is_array()) throw config_error("algebraic ranking must be a list of variable names");
        for (const auto& s : list) {
            if (!s.is_string()) throw config_error("algebraic ranking must be a list of variable names");
            names.push_back(s.get<std::string>());
        }
        try {
            return VariableContext(std::move(names));
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
    }
    if (!ranking.is_object()) throw config_error("differential ranking must be an object");
    const auto derivations = string_list(ranking, "derivations");
    const auto indeterminates = string_list(ranking, "indeterminates");
    const std::string kind = ranking.value("kind", std::string("orderly"));
    DiffRanking::Kind k;
    if (kind == "orderly") k = DiffRanking::Kind::orderly;
    else if (kind == "elimination") k = DiffRanking::Kind::elimination;
    else throw config_error("ranking kind must be 'orderly' or 'elimination'");
    std::vector<std::vector<std::string>> blocks;
    if (ranking.contains("blocks")) {
        for (const auto& b : ranking.at("blocks")) {
            std::vector<std::string> block;
            for (const auto& s : b) block.push_back(s.get<std::string>());
            blocks.push_back(std::move(block));
        }
    }
    try {
        return VariableContext(DiffRanking(derivations, indeterminates, k, blocks));
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

}  // namespace detail

/// Reads a problem from JSON. Throws config_error on schema problems and
/// parse_error on malformed expressions.
inline Problem load_problem(const Json& j)
{
    if (!j.is_object()) throw config_error("problem must be a JSON object");
    if (j.value("schema", 1) != 1) throw config_error("unsupported schema version");
    Problem p;
    const std::string mode = j.value("mode", std::string("algebraic"));
    if (mode != "algebraic" && mode != "differential") throw config_error("mode must be 'algebraic' or 'differential'");
    p.differential = mode == "differential";
    if (!j.contains("ranking")) throw config_error("missing 'ranking'");
    p.ranking = j.at("ranking");
    p.context = detail::context_from(p.ranking, p.differential);
    p.equation_sources = detail::string_list(j, "equations");
    p.inequation_sources = detail::string_list(j, "inequations");
    p.equations = detail::parse_all(p.equation_sources, p.context, "equations");
    p.inequations = detail::parse_all(p.inequation_sources, p.context, "inequations");
    if (j.contains("options")) {
        const Json& o = j.at("options");
        p.options.factor = o.value("factor", false);
        p.options.coefficient_reduction = o.value("coefficient_reduction", false);
        p.options.max_iterations = o.value("max_iterations", p.options.max_iterations);
    }
    return p;
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

inline Problem load_problem_file(const std::string& path) { return load_problem(read_json_file(path)); }

inline Json problem_json(const Problem& p)
{
    Json j;
    j["schema"] = 1;
    j["mode"] = p.differential ? "differential" : "algebraic";
    j["ranking"] = p.ranking;
    j["equations"] = p.equation_sources;
    j["inequations"] = p.inequation_sources;
    j["options"] = {{"factor", p.options.factor},
                    {"coefficient_reduction", p.options.coefficient_reduction},
                    {"max_iterations", p.options.max_iterations}};
    return j;
}

/// Runs the decomposition a problem asks for.
inline Decomposition solve(const Problem& p, const DecomposeOptions& options)
{
    if (p.differential) return diff_decompose(p.equations, p.inequations, p.context.ranking(), options);
    return decompose(p.equations, p.inequations, options);
}

inline Json system_json(const SimpleSystem& s, const VariableContext& ctx)
{
    Json eqs = Json::array(), ineqs = Json::array();
    for (const auto& r : s.relations) (r.is_equation() ? eqs : ineqs).push_back(ctx.print(r.poly));
    return {{"equations", eqs}, {"inequations", ineqs}};
}

inline Json report_json(const VerificationReport& r)
{
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back(x.message);
    return {{"points", r.points}, {"violations", v}};
}

inline Json result_json(const Problem& p, const Decomposition& d, std::optional<double> seconds = std::nullopt)
{
    Json j;
    j["schema"] = 1;
    j["input"] = problem_json(p);
    Json systems = Json::array();
    for (const auto& s : d.systems) systems.push_back(system_json(s, p.context));
    j["systems"] = systems;
    j["statistics"] = {{"iterations", d.stats.iterations}, {"splits", d.stats.splits}, {"discarded", d.stats.discarded}};
    if (seconds) j["statistics"]["seconds"] = *seconds;
    return j;
}

struct LoadedResult {
    Problem problem;
    std::vector<SimpleSystem> systems;
};

/// Reads a result file back, re-parsing every relation.
inline LoadedResult load_result(const Json& j)
{
    if (!j.is_object() || !j.contains("input") || !j.contains("systems")) throw config_error("not a result file");
    LoadedResult out{load_problem(j.at("input")), {}};
    for (const auto& s : j.at("systems")) {
        SimpleSystem sys;
        for (const auto& e : detail::parse_all(detail::string_list(s, "equations"), out.problem.context, "equations"))
            sys.relations.push_back(eq(e));
        for (const auto& e :
             detail::parse_all(detail::string_list(s, "inequations"), out.problem.context, "inequations"))
            sys.relations.push_back(ineq(e));
        for (const auto& r : sys.relations)
            if (r.poly.is_constant()) throw config_error("result system contains a constant relation");
        std::sort(sys.relations.begin(), sys.relations.end(),
                  [](const Relation& a, const Relation& b) { return a.poly.leader() < b.poly.leader(); });
        out.systems.push_back(std::move(sys));
    }
    return out;
}

/// Plain-text rendering: one block per system, relations ascending by leader.
inline std::string result_text(const Problem& p, const Decomposition& d)
{
    std::ostringstream os;
    os << d.systems.size() << (d.systems.size() == 1 ? " system\n" : " systems\n");
    for (std::size_t i = 0; i < d.systems.size(); ++i) {
        os << "system " << i + 1 << "\n";
        for (const auto& r : d.systems[i].relations)
            os << "  " << p.context.print(r.poly) << (r.is_equation() ? " = 0" : " != 0") << "\n";
    }
    return os.str();
}

/// Independent checks of a decomposition. Algebraic results are sampled
/// (disjointness, agreement with the input and, when the input has finitely
/// many solutions, coverage and counting); differential results are checked
/// symbolically for involutivity, minimality and irreducible inequations.
inline Json verify_result(const Problem& p, const std::vector<SimpleSystem>& systems, const SampleConfig& cfg)
{
    Json out;
    bool ok = true;
    if (p.differential) {
        Json per = Json::array();
        for (const auto& s : systems) {
            const System S = as_system(s, p.context.ranking());
            const bool inv = is_involutive(S, p.context.ranking());
            const bool min = is_minimal(S, p.context.ranking());
            const bool irr = inequations_irreducible(S, p.context.ranking());
            ok = ok && inv && min && irr;
            per.push_back({{"involutive", inv}, {"minimal", min}, {"inequations_irreducible", irr}});
        }
        out["systems"] = per;
        out["ok"] = ok;
        return out;
    }
    std::vector<Relation> input;
    for (const auto& e : p.equations) input.push_back(eq(e));
    for (const auto& e : p.inequations) input.push_back(ineq(e));
    const auto vars = p.variables();
    const VerificationReport disjoint = check_disjoint(systems, vars, cfg, &input);
    out["disjoint"] = report_json(disjoint);
    ok = disjoint.ok();
    const auto solutions = brute_solve(p.equations, p.inequations, vars, cfg);
    bool finite = true;
    std::uint64_t sum = 0;
    for (const auto& s : systems) {
        const auto n = count_zero_dim(s, vars);
        if (!n) {
            finite = false;
            break;
        }
        sum += *n;
    }
    const std::optional<std::uint64_t> total = finite ? std::optional<std::uint64_t>(sum) : std::nullopt;
    auto count = [](const std::optional<std::uint64_t>& n) { return n ? Json(*n) : Json("infinite"); };
    out["count"] = {{"decomposition", count(total)},
                    {"brute_force", count(solutions ? std::optional<std::uint64_t>(solutions->size()) : std::nullopt)}};
    ok = ok && solutions.has_value() == total.has_value();
    if (solutions) {
        const VerificationReport cover = check_cover(systems, *solutions, cfg);
        out["cover"] = report_json(cover);
        ok = ok && cover.ok() && finite && sum == solutions->size();
    }
    out["ok"] = ok;
    return out;
}

}  // namespace thomas
