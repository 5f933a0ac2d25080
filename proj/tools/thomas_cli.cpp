// Command-line front end.
//
//   thomas decompose <problem.json> [--output F] [--format json|text] ...
//   thomas reduce <problem.json> --poly EXPR
//   thomas verify <result.json>
//
// Exit codes: 0 success, 1 empty decomposition with --fail-on-empty or a
// failed verification, 2 configuration or parse error, 3 iteration budget
// exhausted.
#include "thomas/thomas.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

struct EngineFlags {
    bool factor = false;
    bool coeff_reduce = false;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> max_iterations;
    std::string format = "json";
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f)
{
    cmd->add_flag("--factor", f.factor, "Split on factors of every selected polynomial");
    cmd->add_flag("--coeff-reduce", f.coeff_reduce, "Also reduce coefficients by lower equations");
    cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Seed for randomized checks");
    cmd->add_option("--max-iterations", f.max_iterations, "Iteration budget");
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

thomas::DecomposeOptions engine_options(const thomas::Problem& p, const EngineFlags& f)
{
    thomas::DecomposeOptions o = p.options;
    o.factor = o.factor || f.factor;
    o.coefficient_reduction = o.coefficient_reduction || f.coeff_reduce;
    o.jobs = f.jobs;
    if (f.max_iterations) o.max_iterations = *f.max_iterations;
    return o;
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw thomas::config_error("cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Thomas decomposition of algebraic and differential systems"};
    app.require_subcommand(1);

    EngineFlags flags;
    std::string input, output, poly;
    bool fail_on_empty = false, timing = false, with_verification = false;

    auto* dec = app.add_subcommand("decompose", "Decompose a problem file into simple systems");
    dec->add_option("file", input, "Problem file")->required();
    dec->add_option("--output", output, "Write the result here instead of stdout");
    dec->add_flag("--fail-on-empty", fail_on_empty, "Exit 1 when the decomposition is empty");
    dec->add_flag("--timing", timing, "Record the wall-clock time in the statistics");
    dec->add_flag("--verify", with_verification, "Attach a verification report");
    add_engine_flags(dec, flags);

    auto* red = app.add_subcommand("reduce", "Reduce a polynomial modulo each system of the decomposition");
    red->add_option("file", input, "Problem file")->required();
    red->add_option("--poly", poly, "Polynomial to reduce")->required();
    add_engine_flags(red, flags);

    auto* ver = app.add_subcommand("verify", "Check a result file");
    ver->add_option("file", input, "Result file")->required();
    ver->add_option("--output", output, "Write the report here instead of stdout");
    ver->add_option("--seed", flags.seed, "Sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        thomas::SampleConfig cfg;
        cfg.seed = flags.seed;

        if (*dec) {
            const thomas::Problem p = thomas::load_problem_file(input);
            const auto t0 = std::chrono::steady_clock::now();
            const thomas::Decomposition d = thomas::solve(p, engine_options(p, flags));
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (flags.format == "text") {
                emit(thomas::result_text(p, d), output);
            } else {
                thomas::Json j = thomas::result_json(p, d, timing ? std::optional<double>(seconds) : std::nullopt);
                if (with_verification) j["verification"] = thomas::verify_result(p, d.systems, cfg);
                emit(j.dump(2) + "\n", output);
            }
            return fail_on_empty && d.systems.empty() ? 1 : 0;
        }

        if (*red) {
            const thomas::Problem p = thomas::load_problem_file(input);
            const thomas::Polynomial q = thomas::parse_expression(poly, p.context);
            const thomas::Decomposition d = thomas::solve(p, engine_options(p, flags));
            thomas::Json results = thomas::Json::array();
            for (const auto& s : d.systems) {
                thomas::Polynomial r;
                if (p.differential) {
                    r = thomas::diff_reduce(thomas::as_system(s, p.context.ranking()), q, p.context.ranking());
                } else {
                    thomas::System S;
                    for (const auto& rel : s.relations) S.T.emplace(*rel.poly.leader(), rel);
                    r = thomas::reduce(S, q);
                }
                results.push_back(p.context.print(thomas::normalize(r)));
            }
            if (red->count("--format") && flags.format == "json") std::cout << results.dump(2) << "\n";
            else
                for (const auto& r : results) std::cout << r.get<std::string>() << "\n";
            return 0;
        }

        if (*ver) {
            const auto loaded = thomas::load_result(thomas::read_json_file(input));
            const thomas::Json report = thomas::verify_result(loaded.problem, loaded.systems, cfg);
            emit(report.dump(2) + "\n", output);
            return report.at("ok").get<bool>() ? 0 : 1;
        }
    } catch (const thomas::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const thomas::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const thomas::budget_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
