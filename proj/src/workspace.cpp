#include "bcoh/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw InputError((where.empty() ? std::string("/") : where) + ": " + what);
}

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        fail(where, "expected an object");
    for (const auto& [key, value] : j.items())
    {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || key == a;
        if (!ok)
            fail(where, "unknown key \"" + key + "\"");
    }
}

const json& need(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        fail(where, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::size_t as_index(const json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        fail(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

const json& as_array(const json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected an array");
    return j;
}

std::vector<std::size_t> index_list(const json& j, const std::string& where)
{
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (const auto& x : as_array(j, where))
        out.push_back(as_index(x, where + "/" + std::to_string(k++)));
    return out;
}

Rational as_rational(const json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (!j.is_string())
        fail(where, "expected a rational as a \"p/q\" string");
    try
    {
        return parse_rational(j.get<std::string>());
    }
    catch (const InputError& e)
    {
        fail(where, e.what());
    }
}

Vector rational_list(const json& j, const std::string& where)
{
    Vector out;
    std::size_t k = 0;
    for (const auto& x : as_array(j, where))
        out.push_back(as_rational(x, where + "/" + std::to_string(k++)));
    return out;
}

Matrix rational_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where)
{
    if (as_array(j, where).size() != rows)
        fail(where, "expected " + std::to_string(rows) + " rows");
    std::vector<Vector> dense;
    for (std::size_t i = 0; i < rows; ++i)
    {
        dense.push_back(rational_list(j[i], where + "/" + std::to_string(i)));
        if (dense.back().size() != cols)
            fail(where + "/" + std::to_string(i), "expected " + std::to_string(cols) + " entries");
    }
    return Matrix::from_dense(dense, cols);
}

GroupTable parse_group(const json& j, const std::string& where)
{
    if (j.is_object())
    {
        only_keys(j, where, {"cyclic", "symmetric", "product"});
        if (j.size() != 1)
            fail(where, "a group shorthand has exactly one key");
        if (j.contains("cyclic"))
        {
            std::size_t n = as_index(j["cyclic"], where + "/cyclic");
            if (n == 0)
                fail(where + "/cyclic", "order must be positive");
            return cyclic_group(n);
        }
        if (j.contains("symmetric"))
        {
            if (as_index(j["symmetric"], where + "/symmetric") != 3)
                fail(where + "/symmetric", "only the symmetric group on 3 letters is built in");
            return symmetric_group_3();
        }
        const json& parts = as_array(j["product"], where + "/product");
        if (parts.size() != 2)
            fail(where + "/product", "expected two factors");
        return product_group(parse_group(parts[0], where + "/product/0"), parse_group(parts[1], where + "/product/1"));
    }
    GroupTable t;
    std::size_t k = 0;
    for (const auto& row : as_array(j, where))
    {
        t.push_back(index_list(row, where + "/" + std::to_string(k)));
        ++k;
    }
    return t;
}

FiniteGroupoid parse_groupoid(const json& j, const std::string& where);

FiniteGroupoid parse_explicit(const json& j, const std::string& where)
{
    if (j.contains("disjoint_union"))
    {
        only_keys(j, where, {"disjoint_union"});
        std::vector<FiniteGroupoid> parts;
        std::size_t k = 0;
        for (const auto& p : as_array(j["disjoint_union"], where + "/disjoint_union"))
        {
            parts.push_back(parse_groupoid(p, where + "/disjoint_union/" + std::to_string(k)));
            ++k;
        }
        return disjoint_union(parts);
    }
    only_keys(j, where, {"objects", "morphisms", "compose"});
    const std::size_t objects = as_index(need(j, "objects", where), where + "/objects");
    std::vector<ObjectId> source, target;
    std::vector<std::string> labels;
    const json& ms = as_array(need(j, "morphisms", where), where + "/morphisms");
    for (std::size_t g = 0; g < ms.size(); ++g)
    {
        const std::string at = where + "/morphisms/" + std::to_string(g);
        only_keys(ms[g], at, {"source", "target", "label"});
        source.push_back(as_index(need(ms[g], "source", at), at + "/source"));
        target.push_back(as_index(need(ms[g], "target", at), at + "/target"));
        if (ms[g].contains("label") && !ms[g]["label"].is_string())
            fail(at + "/label", "expected a string");
        labels.push_back(ms[g].contains("label") ? ms[g]["label"].get<std::string>() : std::to_string(g));
    }
    const json& table = as_array(need(j, "compose", where), where + "/compose");
    if (table.size() != ms.size())
        fail(where + "/compose", "expected one row per morphism");
    std::vector<MorphismId> compose;
    for (std::size_t g = 0; g < table.size(); ++g)
    {
        const std::string at = where + "/compose/" + std::to_string(g);
        if (as_array(table[g], at).size() != ms.size())
            fail(at, "expected one entry per morphism");
        for (std::size_t h = 0; h < ms.size(); ++h)
            compose.push_back(table[g][h].is_null() ? kUndefined : as_index(table[g][h], at + "/" + std::to_string(h)));
    }
    return FiniteGroupoid::create(objects, std::move(source), std::move(target), std::move(compose), std::move(labels));
}

/** A groupoid-valued object with exactly one of the constructor keys. */
FiniteGroupoid parse_groupoid(const json& j, const std::string& where)
{
    only_keys(j, where, {"groupoid", "group_table", "action", "blowup"});
    if (j.size() != 1)
        fail(where, "expected exactly one of \"groupoid\", \"group_table\", \"action\", \"blowup\"");
    if (j.contains("group_table"))
        return from_group_table(parse_group(j["group_table"], where + "/group_table"));
    if (j.contains("action"))
    {
        const std::string at = where + "/action";
        only_keys(j["action"], at, {"group", "act"});
        GroupTable t = parse_group(need(j["action"], "group", at), at + "/group");
        std::vector<std::vector<std::size_t>> act;
        const json& rows = as_array(need(j["action"], "act", at), at + "/act");
        for (std::size_t g = 0; g < rows.size(); ++g)
            act.push_back(index_list(rows[g], at + "/act/" + std::to_string(g)));
        return action_groupoid(t, act);
    }
    if (j.contains("blowup"))
    {
        const std::string at = where + "/blowup";
        only_keys(j["blowup"], at, {"group", "objects"});
        GroupTable t = parse_group(need(j["blowup"], "group", at), at + "/group");
        std::size_t k = as_index(need(j["blowup"], "objects", at), at + "/objects");
        if (k == 0)
            fail(at + "/objects", "a blow-up needs at least one object");
        return blow_up(t, k);
    }
    return parse_explicit(j["groupoid"], where + "/groupoid");
}

PolyhedralNorm parse_norm(const json& j, std::size_t dim, const std::string& where)
{
    if (j.is_string())
    {
        const std::string s = j.get<std::string>();
        if (s == "linf")
            return dim == 0 ? PolyhedralNorm::zero() : PolyhedralNorm::linf(dim);
        if (s == "l1")
            return dim == 0 ? PolyhedralNorm::zero() : PolyhedralNorm::l1(dim);
        fail(where, "unknown norm \"" + s + "\"");
    }
    only_keys(j, where, {"facets"});
    std::vector<Vector> facets;
    const json& fs = as_array(need(j, "facets", where), where + "/facets");
    for (std::size_t k = 0; k < fs.size(); ++k)
    {
        facets.push_back(rational_list(fs[k], where + "/facets/" + std::to_string(k)));
        if (facets.back().size() != dim)
            fail(where + "/facets/" + std::to_string(k), "facet length differs from the fiber dimension");
    }
    return PolyhedralNorm::from_facets(dim, facets);
}

NormedModule parse_module(const json& j, const GroupoidPtr& g, const std::string& where)
{
    const std::string kind = need(j, "kind", where).is_string() ? j["kind"].get<std::string>() : "";
    if (kind == "trivial" || kind == "sigma")
    {
        only_keys(j, where, {"kind"});
        return kind == "trivial" ? trivial_module(g) : sigma_module(g).module;
    }
    if (kind == "linf" || kind == "dual")
    {
        only_keys(j, where, {"kind", "of"});
        NormedModule base = j.contains("of") ? parse_module(j["of"], g, where + "/of") : trivial_module(g);
        return kind == "linf" ? linf_module(base).module : dual_module(base);
    }
    if (kind == "explicit")
    {
        only_keys(j, where, {"kind", "fibers", "action"});
        std::vector<PolyhedralNorm> fibers;
        const json& fs = as_array(need(j, "fibers", where), where + "/fibers");
        if (fs.size() != g->object_count())
            fail(where + "/fibers", "expected one fiber per object");
        for (std::size_t e = 0; e < fs.size(); ++e)
        {
            const std::string at = where + "/fibers/" + std::to_string(e);
            only_keys(fs[e], at, {"dim", "norm"});
            std::size_t d = as_index(need(fs[e], "dim", at), at + "/dim");
            fibers.push_back(parse_norm(need(fs[e], "norm", at), d, at + "/norm"));
        }
        const json& as = as_array(need(j, "action", where), where + "/action");
        if (as.size() != g->morphism_count())
            fail(where + "/action", "expected one matrix per morphism");
        std::vector<Matrix> action;
        for (MorphismId m = 0; m < as.size(); ++m)
            action.push_back(rational_matrix(as[m], fibers[g->target(m)].dim(), fibers[g->source(m)].dim(),
                                             where + "/action/" + std::to_string(m)));
        return NormedModule(g, std::move(fibers), std::move(action));
    }
    fail(where + "/kind", "expected one of trivial, linf, dual, sigma, explicit");
}

GroupoidPair parse_pair(const json& j, const GroupoidPtr& g, const std::string& where)
{
    const std::string kind = need(j, "kind", where).is_string() ? j["kind"].get<std::string>() : "";
    try
    {
        if (kind == "whole" || kind == "empty")
        {
            only_keys(j, where, {"name", "kind"});
            return GroupoidPair(kind == "whole" ? GroupoidMap::identity(g) : empty_subgroupoid(g));
        }
        if (kind == "trivial" || kind == "full")
        {
            only_keys(j, where, {"name", "kind", "objects"});
            auto objs = index_list(need(j, "objects", where), where + "/objects");
            return GroupoidPair(kind == "trivial" ? trivial_subgroupoid(g, objs) : full_subgroupoid(g, objs));
        }
        if (kind == "subgroupoid")
        {
            only_keys(j, where, {"name", "kind", "morphisms"});
            return GroupoidPair(subgroupoid(g, index_list(need(j, "morphisms", where), where + "/morphisms")));
        }
    }
    catch (const InvalidArgument& e)
    {
        fail(where, e.what());
    }
    fail(where + "/kind", "expected one of whole, empty, trivial, full, subgroupoid");
}

}   // namespace

const std::vector<std::string>& job_names()
{
    static const std::vector<std::string> names = {
        "cohomology",         "relative",        "les",           "seminorm",      "additivity", "equivalence",
        "amenable-vanishing", "mapping-theorem", "factorization", "verify-all",
    };
    return names;
}

Workspace parse_workspace(const json& doc)
{
    only_keys(doc, "", {"groupoid", "group_table", "action", "blowup", "module", "pairs", "jobs"});
    json groupoid_part = json::object();
    for (const char* key : {"groupoid", "group_table", "action", "blowup"})
        if (doc.contains(key))
            groupoid_part[key] = doc[key];
    if (groupoid_part.empty())
        fail("", "missing one of \"groupoid\", \"group_table\", \"action\", \"blowup\"");

    Workspace ws;
    ws.groupoid = share(parse_groupoid(groupoid_part, ""));
    ws.module = doc.contains("module") ? parse_module(doc["module"], ws.groupoid, "/module") : trivial_module(ws.groupoid);

    if (doc.contains("pairs"))
    {
        std::set<std::string> seen;
        const json& ps = as_array(doc["pairs"], "/pairs");
        for (std::size_t k = 0; k < ps.size(); ++k)
        {
            const std::string at = "/pairs/" + std::to_string(k);
            WorkspacePair p;
            p.name = ps[k].contains("name") && ps[k]["name"].is_string() ? ps[k]["name"].get<std::string>()
                                                                          : "pair " + std::to_string(k);
            if (!seen.insert(p.name).second)
                fail(at + "/name", "duplicate pair name \"" + p.name + "\"");
            p.pair = parse_pair(ps[k], ws.groupoid, at);
            ws.pairs.push_back(std::move(p));
        }
    }
    if (doc.contains("jobs"))
    {
        const json& js = as_array(doc["jobs"], "/jobs");
        for (std::size_t k = 0; k < js.size(); ++k)
        {
            const std::string at = "/jobs/" + std::to_string(k);
            only_keys(js[k], at, {"job", "degree", "class_degree", "cocycle", "pair"});
            JobSpec spec;
            const json& name = need(js[k], "job", at);
            spec.name = name.is_string() ? name.get<std::string>() : "";
            const auto& names = job_names();
            if (std::find(names.begin(), names.end(), spec.name) == names.end())
                fail(at + "/job", "unknown job \"" + spec.name + "\"");
            if (js[k].contains("degree"))
                spec.degree = static_cast<int>(as_index(js[k]["degree"], at + "/degree"));
            if (js[k].contains("class_degree"))
                as_index(js[k]["class_degree"], at + "/class_degree");
            if (js[k].contains("cocycle"))
                rational_list(js[k]["cocycle"], at + "/cocycle");
            if (js[k].contains("pair"))
            {
                const std::string pname = js[k]["pair"].is_string() ? js[k]["pair"].get<std::string>() : "";
                bool found = false;
                for (const auto& p : ws.pairs)
                    found = found || p.name == pname;
                if (!found)
                    fail(at + "/pair", "no pair named \"" + pname + "\"");
            }
            spec.params = js[k];
            ws.jobs.push_back(std::move(spec));
        }
    }
    return ws;
}

Workspace load_workspace(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open workspace file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try
    {
        doc = json::parse(buf.str());
    }
    catch (const json::parse_error& e)
    {
        throw InputError(path + ": JSON syntax error at byte " + std::to_string(e.byte));
    }
    return parse_workspace(doc);
}

nlohmann::ordered_json to_json(const Rational& x)
{
    return to_string(x);
}

nlohmann::ordered_json to_json(const Vector& v)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const Rational& x : v)
        out.push_back(to_string(x));
    return out;
}

}   // namespace bcoh
