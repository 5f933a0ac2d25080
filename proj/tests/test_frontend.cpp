#include "thomas/thomas.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>

using namespace thomas;

namespace {

const std::string samples = THOMAS_SAMPLES_DIR;

struct CliRun {
    int status;
    std::string out;
};

/// Runs the CLI with the given arguments; stderr is discarded.
CliRun cli(const std::string& args)
{
    const std::string cmd = std::string(THOMAS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("thomas_frontend_" + name);
    std::ofstream(path) << content;
    return path.string();
}

VariableContext algebraic() { return VariableContext({"x", "y"}); }
VariableContext colehopf() { return VariableContext(DiffRanking({"x", "t"}, {"zeta", "eta"})); }

}  // namespace

TEST(Parser, CurvePolynomial)
{
    const auto ctx = algebraic();
    const Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1);
    EXPECT_EQ(parse_expression("y^2 - x^3 - x^2", ctx), y * y - x.pow(3) - x * x);
}

TEST(Parser, ColeHopfJets)
{
    const auto ctx = colehopf();
    const auto& r = ctx.ranking();
    const Polynomial zeta = Polynomial::variable(r.variable(0, {0, 0}));
    const Polynomial eta = Polynomial::variable(r.variable(1, {0, 0}));
    const Polynomial eta_x = Polynomial::variable(r.variable(1, {1, 0}));
    EXPECT_EQ(parse_expression("eta[1,0] - eta[0,0]*zeta[0,0]", ctx), eta_x - eta * zeta);
    EXPECT_EQ(parse_expression("eta[1,0] - eta*zeta", ctx), eta_x - eta * zeta);
}

TEST(Parser, PrecedenceAndRationals)
{
    const auto ctx = algebraic();
    const Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1);
    EXPECT_EQ(parse_expression("-x^2", ctx), -(x * x));
    EXPECT_EQ(parse_expression("2*x^2*y", ctx), 2 * x * x * y);
    EXPECT_EQ(parse_expression("(x+y)^2", ctx), (x + y) * (x + y));
    EXPECT_EQ(parse_expression("3/6*x - -y", ctx), Polynomial(Rational(1, 2)) * x + y);
    EXPECT_EQ(parse_expression("x^0", ctx), Polynomial(1L));
}

TEST(Parser, Errors)
{
    const auto ctx = algebraic();
    EXPECT_THROW(parse_expression("x^(-1)", ctx), parse_error);
    EXPECT_THROW(parse_expression("x^-1", ctx), parse_error);
    EXPECT_THROW(parse_expression("z + 1", ctx), parse_error);
    EXPECT_THROW(parse_expression("x +", ctx), parse_error);
    EXPECT_THROW(parse_expression("(x", ctx), parse_error);
    EXPECT_THROW(parse_expression("x y", ctx), parse_error);
    EXPECT_THROW(parse_expression("1/0", ctx), parse_error);
    EXPECT_THROW(parse_expression("x[1]", ctx), parse_error);
    const auto d = colehopf();
    EXPECT_THROW(parse_expression("eta[1]", d), parse_error);
    EXPECT_THROW(parse_expression("eta[1,0,0]", d), parse_error);
    EXPECT_THROW(parse_expression("u[0,0]", d), parse_error);
}

TEST(Parser, ErrorPosition)
{
    const auto ctx = algebraic();
    try {
        parse_expression("x^2 +\n  2*w", ctx);
        FAIL() << "expected a parse error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 5u);
        EXPECT_NE(std::string(e.what()).find("unknown identifier 'w'"), std::string::npos);
    }
}

TEST(Printer, CanonicalForm)
{
    const auto ctx = algebraic();
    EXPECT_EQ(ctx.print(normalize(parse_expression("-x^3 + y^2 - x^2", ctx))), "y^2 - x^3 - x^2");
    EXPECT_EQ(ctx.print(normalize(parse_expression("1/2*x - 1/3", ctx))), "3*x - 2");
    const auto d = colehopf();
    EXPECT_EQ(d.print(normalize(parse_expression("eta*zeta - eta[1,0]", d))), "eta[1,0] - zeta[0,0]*eta[0,0]");
}

TEST(Printer, RoundTripOnRandomPolynomials)
{
    std::mt19937_64 rng(12);
    const VariableContext ctx({"a", "b", "c"});
    std::uniform_int_distribution<int> coef(-9, 9), den(1, 5), exp(0, 3), var(0, 2), count(1, 6);
    for (int it = 0; it < 300; ++it) {
        Polynomial p;
        for (int t = count(rng); t > 0; --t) {
            Polynomial m(Rational(coef(rng), den(rng)));
            for (int k = 0; k < 2; ++k) m *= Polynomial::variable(var(rng)).pow(exp(rng));
            p += m;
        }
        const std::string s = ctx.print(p);
        EXPECT_EQ(parse_expression(s, ctx), p) << s;
        // Printing the parse of a printed form changes nothing.
        EXPECT_EQ(ctx.print(parse_expression(s, ctx)), s);
    }
}

TEST(ProblemFile, LoadsSamples)
{
    const Problem curve = load_problem_file(samples + "/curve.json");
    EXPECT_FALSE(curve.differential);
    EXPECT_EQ(curve.equations.size(), 1u);
    EXPECT_EQ(curve.variables(), (std::vector<Var>{0, 1}));
    const Problem ch = load_problem_file(samples + "/colehopf.json");
    EXPECT_TRUE(ch.differential);
    EXPECT_EQ(ch.inequations.size(), 1u);
    EXPECT_EQ(load_problem(problem_json(ch)).equations, ch.equations);
}

TEST(ProblemFile, SchemaErrors)
{
    EXPECT_THROW(load_problem(Json::array()), config_error);
    EXPECT_THROW(load_problem(Json{{"schema", 2}, {"ranking", {"x"}}}), config_error);
    EXPECT_THROW(load_problem(Json{{"mode", "other"}, {"ranking", {"x"}}}), config_error);
    EXPECT_THROW(load_problem(Json{{"equations", {"x"}}}), config_error);
    EXPECT_THROW(load_problem(Json{{"ranking", {"x"}}, {"equations", "x"}}), config_error);
    EXPECT_THROW(load_problem(Json{{"ranking", {"x"}}, {"equations", {"y"}}}), parse_error);
    EXPECT_THROW(load_problem_file(samples + "/missing.json"), config_error);
}

TEST(ResultFile, RoundTrip)
{
    for (const char* name : {"curve", "worked", "colehopf", "control"}) {
        const Problem p = load_problem_file(samples + "/" + name + ".json");
        const Decomposition d = solve(p, p.options);
        const Json j = result_json(p, d);
        const LoadedResult back = load_result(Json::parse(j.dump()));
        ASSERT_EQ(back.systems.size(), d.systems.size()) << name;
        EXPECT_EQ(back.systems, d.systems) << name;
        EXPECT_EQ(result_json(back.problem, Decomposition{back.systems, d.stats}).dump(), j.dump()) << name;
    }
}

TEST(Cli, DecomposeCurve)
{
    const CliRun r = cli("decompose " + samples + "/curve.json");
    ASSERT_EQ(r.status, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("schema"), 1);
    EXPECT_EQ(j.at("systems").size(), 2u);
}

TEST(Cli, InconsistentInput)
{
    const CliRun r = cli("decompose " + samples + "/inconsistent.json");
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(Json::parse(r.out).at("systems").empty());
    EXPECT_EQ(cli("decompose --fail-on-empty " + samples + "/inconsistent.json").status, 1);
    EXPECT_EQ(cli("decompose --fail-on-empty " + samples + "/curve.json").status, 0);
}

TEST(Cli, ReduceBurgers)
{
    const CliRun r = cli("reduce " + samples + "/colehopf.json --poly \"zeta[0,1]+zeta[2,0]+2*zeta[1,0]*zeta[0,0]\"");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "0\n");
}

TEST(Cli, ConfigAndParseErrors)
{
    EXPECT_EQ(cli("decompose " + samples + "/missing.json").status, 2);
    EXPECT_EQ(cli("decompose").status, 2);
    EXPECT_EQ(cli("frobnicate x").status, 2);
    EXPECT_EQ(cli("decompose --format yaml " + samples + "/curve.json").status, 2);
    const std::string bad = temp_file("bad.json", R"j({"ranking": ["x"], "equations": ["x^(-1)"]})j");
    EXPECT_EQ(cli("decompose " + bad).status, 2);
    EXPECT_EQ(cli("reduce " + samples + "/curve.json --poly \"q\"").status, 2);
}

TEST(Cli, BudgetExceeded)
{
    EXPECT_EQ(cli("decompose --max-iterations 1 " + samples + "/worked.json").status, 3);
}

TEST(Cli, TextFormatAndOutputFile)
{
    const CliRun r = cli("decompose --format text " + samples + "/worked.json");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("2 systems\n", 0), 0u);
    const auto out = (std::filesystem::temp_directory_path() / "thomas_frontend_worked.json").string();
    ASSERT_EQ(cli("decompose --output " + out + " " + samples + "/worked.json").status, 0);
    EXPECT_EQ(load_result(read_json_file(out)).systems.size(), 2u);
}

TEST(Cli, VerifyResultFiles)
{
    for (const char* name : {"curve", "worked", "colehopf"}) {
        const auto out = (std::filesystem::temp_directory_path() / (std::string("thomas_frontend_v_") + name)).string();
        ASSERT_EQ(cli("decompose --output " + out + " " + samples + "/" + name + ".json").status, 0);
        const CliRun v = cli("verify " + out);
        EXPECT_EQ(v.status, 0) << name;
        EXPECT_TRUE(Json::parse(v.out).at("ok").get<bool>()) << name;
    }
    // Dropping a system breaks coverage of the finite worked example.
    Json j = Json::parse(cli("decompose " + samples + "/worked.json").out);
    j["input"]["equations"].push_back("a^2 - a + 1");
    j["systems"].erase(0);
    j["systems"].erase(0);
    j["systems"].push_back({{"equations", {"x + a"}}, {"inequations", Json::array()}});
    EXPECT_EQ(cli("verify " + temp_file("broken.json", j.dump())).status, 1);
}

TEST(Cli, JobsDoNotChangeOutput)
{
    for (const char* name : {"curve", "worked", "colehopf", "control"}) {
        const std::string file = samples + "/" + name + ".json";
        EXPECT_EQ(cli("decompose --jobs 1 " + file).out, cli("decompose --jobs 4 " + file).out) << name;
    }
}
