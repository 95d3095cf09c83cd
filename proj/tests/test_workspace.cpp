#include <doctest.h>

#include <fstream>

#include "bcoh/errors.hpp"
#include "bcoh/jobs.hpp"
#include "bcoh/lp.hpp"
#include "bcoh/relative.hpp"
#include "oracle.hpp"

using namespace bcoh;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Workspace ws_from(const std::string& text)
{
    return parse_workspace(json::parse(text));
}

const char* kTwoTrivial = R"({
  "blowup": {"group": {"cyclic": 2}, "objects": 2},
  "pairs": [{"name": "t", "kind": "trivial", "objects": [0, 1]}]
})";

/** First (a, b, c) with (ab)c != a(bc), by direct search. */
std::string first_nonassociative(const std::vector<std::vector<std::size_t>>& t)
{
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
            for (std::size_t c = 0; c < t.size(); ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]])
                    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
    return "";
}

/** Sup-norm distance from z to the image of d, as one LP over all coordinates. */
Rational oracle_seminorm(const Matrix& d, const Vector& z)
{
    const std::size_t m = d.cols();
    LPProblem lp;
    lp.variables = m + 1;
    lp.objective = Vector(m + 1, Rational(0));
    lp.objective[m] = 1;
    auto dense = d.to_dense();
    for (std::size_t i = 0; i < z.size(); ++i)
        for (int s : {1, -1})
        {
            LinearConstraint row{Vector(m + 1), Relation::LessEqual, Rational(s) * z[i]};
            for (std::size_t j = 0; j < m; ++j)
                row.coefficients[j] = Rational(s) * dense[i][j];
            row.coefficients[m] = -1;
            lp.constraints.push_back(row);
        }
    return solve_lp(lp).value;
}

Vector from_json(const ordered_json& a)
{
    Vector v;
    for (const auto& x : a)
        v.push_back(parse_rational(x.get<std::string>()));
    return v;
}

bool has_float(const ordered_json& j)
{
    if (j.is_number_float())
        return true;
    if (j.is_structured())
        for (const auto& x : j)
            if (has_float(x))
                return true;
    return false;
}

}   // namespace

TEST_CASE("a Z/2 table loads as a one-object groupoid")
{
    Workspace ws = ws_from(R"({"group_table": [[0, 1], [1, 0]]})");
    CHECK(ws.groupoid->object_count() == 1);
    CHECK(ws.groupoid->morphism_count() == 2);
    CHECK(ws.module.fiber_dim(0) == 1);
    CHECK(ws.pairs.empty());
    CHECK(ws.jobs.empty());
}

TEST_CASE("group shorthands and constructors")
{
    CHECK(ws_from(R"({"group_table": {"product": [{"cyclic": 2}, {"cyclic": 3}]}})").groupoid->morphism_count() == 6);
    CHECK(ws_from(R"({"group_table": {"symmetric": 3}})").groupoid->morphism_count() == 6);
    Workspace a = ws_from(R"({"action": {"group": {"cyclic": 2}, "act": [[0, 1, 2], [1, 0, 2]]}})");
    CHECK(a.groupoid->object_count() == 3);
    CHECK(a.groupoid->morphism_count() == 6);
    Workspace b = ws_from(R"({"blowup": {"group": {"cyclic": 3}, "objects": 2}})");
    CHECK(b.groupoid->morphism_count() == 12);
    Workspace u = ws_from(R"({"groupoid": {"disjoint_union": [{"group_table": {"cyclic": 2}}, {"blowup": {"group": {"cyclic": 1}, "objects": 2}}]}})");
    CHECK(u.groupoid->object_count() == 3);
    CHECK(u.groupoid->morphism_count() == 6);
}

TEST_CASE("modules from the workspace")
{
    Workspace l = ws_from(R"({"group_table": {"cyclic": 3}, "module": {"kind": "linf"}})");
    CHECK(l.module.fiber_dim(0) == 3);
    Workspace d = ws_from(R"({"group_table": {"cyclic": 3}, "module": {"kind": "dual", "of": {"kind": "linf"}}})");
    CHECK(d.module.fiber_dim(0) == 3);
    CHECK(d.module.fiber_norm(0).eval({Rational(1), Rational(-1), Rational(1, 2)}) == Rational(5, 2));
    Workspace e = ws_from(R"({"group_table": [[0, 1], [1, 0]],
        "module": {"kind": "explicit", "fibers": [{"dim": 2, "norm": "l1"}], "action": [[[1, 0], [0, 1]], [["0", "1"], ["1", "0"]]]}})");
    CHECK(e.module.fiber_dim(0) == 2);
}

TEST_CASE("axiom violations name what failed")
{
    std::vector<std::vector<std::size_t>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    const std::string triple = first_nonassociative(loop);
    REQUIRE_FALSE(triple.empty());
    json doc;
    doc["group_table"] = loop;
    try
    {
        parse_workspace(doc);
        FAIL("accepted a non-associative table");
    }
    catch (const AxiomViolation& e)
    {
        CHECK(std::string(e.what()).find(triple) != std::string::npos);
    }

    const char* missing = R"({"groupoid": {"objects": 1,
        "morphisms": [{"source": 0, "target": 0}, {"source": 0, "target": 0}],
        "compose": [[0, 1], [1, 1]]}})";
    CHECK_THROWS_WITH_AS(ws_from(missing), doctest::Contains("inverse"), AxiomViolation);

    // a non-isometric action
    CHECK_THROWS_AS(ws_from(R"({"group_table": [[0, 1], [1, 0]],
        "module": {"kind": "explicit", "fibers": [{"dim": 1, "norm": "linf"}], "action": [[[1]], [[2]]]}})"),
                    AxiomViolation);
}

TEST_CASE("schema errors carry a location")
{
    CHECK_THROWS_WITH_AS(ws_from(R"({"group_table": [[0]], "modules": {}})"), doctest::Contains("unknown key \"modules\""),
                         InputError);
    CHECK_THROWS_WITH_AS(ws_from(R"({"module": {"kind": "trivial"}})"), doctest::Contains("missing one of"), InputError);
    CHECK_THROWS_WITH_AS(ws_from(R"({"group_table": [[0]], "action": {}})"), doctest::Contains("exactly one"), InputError);
    CHECK_THROWS_WITH_AS(ws_from(R"({"group_table": [[0, -1]]})"), doctest::Contains("/group_table/0/1"), InputError);
    CHECK_THROWS_WITH_AS(ws_from(R"({"group_table": [[0]], "jobs": [{"job": "homology"}]})"),
                         doctest::Contains("/jobs/0/job"), InputError);
    CHECK_THROWS_WITH_AS(ws_from(R"({"group_table": [[0]], "jobs": [{"job": "les", "pair": "p"}]})"),
                         doctest::Contains("no pair named"), InputError);
    CHECK_THROWS_WITH_AS(ws_from(R"({"group_table": [[0]], "pairs": [{"name": "p", "kind": "whole"}, {"name": "p", "kind": "empty"}]})"),
                         doctest::Contains("duplicate"), InputError);
    CHECK_THROWS_WITH_AS(ws_from(R"({"group_table": [[0]], "pairs": [{"kind": "full", "objects": [4]}]})"),
                         doctest::Contains("/pairs/0"), InputError);
    CHECK_THROWS_AS(ws_from(R"({"group_table": [[0, 1], [1, 0]], "module": {"kind": "explicit",
        "fibers": [{"dim": 1, "norm": "linf"}], "action": [[["1/0"]], [[1]]]}})"),
                    InputError);
    CHECK_THROWS_AS(load_workspace("/nonexistent/workspace.json"), InputError);
}

TEST_CASE("cohomology job on Z/2 through degree 3")
{
    Workspace ws = ws_from(R"({"group_table": [[0, 1], [1, 0]]})");
    JobSpec job{"cohomology", 3, json::object()};
    ordered_json r = run_job(ws, job, {});
    CHECK(r["passed"].get<bool>());
    std::vector<std::size_t> dims;
    for (const auto& d : r["result"]["degrees"])
        dims.push_back(d["dim"].get<std::size_t>());
    CHECK(dims == std::vector<std::size_t>{1, 0, 0, 0});
    // the constant class has seminorm 1
    CHECK(r["result"]["degrees"][0]["classes"][0]["seminorm"]["value"] == "1/1");
}

TEST_CASE("relative job on the two-trivial-subgroups pair")
{
    Workspace ws = ws_from(kTwoTrivial);
    JobSpec job{"relative", 2, json::object()};
    ordered_json r = run_job(ws, job, {});
    CHECK(r["passed"].get<bool>());
    const auto& h1 = r["result"]["pairs"][0]["degrees"][1];
    REQUIRE(h1["dim"] == 1);
    Vector z = from_json(h1["classes"][0]["representative"]);
    Rational value = parse_rational(h1["classes"][0]["seminorm"]["value"].get<std::string>());
    Vector best = from_json(h1["classes"][0]["seminorm"]["minimizer"]);

    RelativeComplex rc = relative_complex(ws.pairs[0].pair, ws.module, 2);
    CHECK(rc.kernel.coboundary[1].apply(z) == Vector(rc.kernel.dims[2], Rational(0)));
    CHECK(value == oracle_seminorm(rc.kernel.coboundary[0], z));
    CHECK(value > 0);
    CHECK(rc.kernel.norms[1].eval(best) == value);
}

TEST_CASE("seminorm job with an explicit cocycle")
{
    Workspace ws = ws_from(kTwoTrivial);
    JobSpec probe{"relative", 1, json::object()};
    ordered_json rel = run_job(ws, probe, {});
    ordered_json rep = rel["result"]["pairs"][0]["degrees"][1]["classes"][0]["representative"];

    // three times the class
    json cocycle = json::array();
    for (const auto& x : rep)
        cocycle.push_back(to_string(Rational(3) * parse_rational(x.get<std::string>())));
    json params = {{"job", "seminorm"}, {"class_degree", 1}, {"pair", "t"}, {"cocycle", cocycle}};
    ordered_json r = run_job(ws, JobSpec{"seminorm", 1, params}, {});
    Rational one = parse_rational(rel["result"]["pairs"][0]["degrees"][1]["classes"][0]["seminorm"]["value"].get<std::string>());
    CHECK(parse_rational(r["result"]["classes"][0]["seminorm"]["value"].get<std::string>()) == 3 * one);

    params["cocycle"] = json::array({"1/1"});
    CHECK_THROWS_AS(run_job(ws, JobSpec{"seminorm", 1, params}, {}), InvalidArgument);
}

TEST_CASE("reports are deterministic and contain no floats")
{
    Workspace ws = ws_from(kTwoTrivial);
    JobOptions options;
    options.degree = 2;
    RunResult a = run_workspace(ws, std::string("verify-all"), options);
    RunResult b = run_workspace(ws_from(kTwoTrivial), std::string("verify-all"), options);
    CHECK(a.exit_code == kExitPass);
    CHECK(render_report(a.report) == render_report(b.report));
    CHECK_FALSE(has_float(a.report));
    CHECK(render_report(a.report).back() == '\n');
}

TEST_CASE("exit codes")
{
    Workspace ws = ws_from(R"({"group_table": {"cyclic": 3},
        "jobs": [{"job": "cohomology", "degree": 1}, {"job": "seminorm", "degree": 1, "cocycle": ["1/1"]}]})");
    RunResult input = run_workspace(ws, std::nullopt, {});
    CHECK(input.exit_code == kExitInput);
    CHECK(input.report["jobs"][0]["passed"].get<bool>());
    CHECK(input.report["jobs"][1]["error"]["kind"] == "input");

    JobOptions capped;
    capped.limits.path_cap = 10;
    RunResult cap = run_workspace(ws, std::string("cohomology"), capped);
    CHECK(cap.exit_code == kExitResourceCap);
    CHECK(cap.report["jobs"][0]["error"]["kind"] == "resource-cap");

    // the cap outranks the input error
    capped.limits.path_cap = 2;
    CHECK(run_workspace(ws, std::nullopt, capped).exit_code == kExitResourceCap);

    RunResult ok = run_workspace(ws, std::string("amenable-vanishing"), {});
    CHECK(ok.exit_code == kExitPass);
    CHECK(ok.report["passed"].get<bool>());
}

TEST_CASE("rationals serialize as p/q strings")
{
    CHECK(to_json(Rational(3)) == "3/1");
    CHECK(to_json(Rational(-2, 4)) == "-1/2");
    CHECK(to_json(Vector{Rational(0), Rational(1, 3)}) == ordered_json::array({"0/1", "1/3"}));
}
