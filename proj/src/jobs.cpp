#include "bcoh/jobs.hpp"

#include <algorithm>

#include "bcoh/amenability.hpp"
#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

using nlohmann::ordered_json;

/** Named pass/fail entries of one job. */
class Checks
{
  public:
    void add(const std::string& name, bool passed, const std::vector<std::string>& details = {})
    {
        ordered_json c;
        c["name"] = name;
        c["passed"] = passed;
        if (!details.empty())
            c["details"] = details;
        list_.push_back(std::move(c));
        passed_ = passed_ && passed;
    }
    void add_audit(const std::string& name, const std::vector<std::string>& failures) { add(name, failures.empty(), failures); }
    bool passed() const { return passed_; }
    const ordered_json& list() const { return list_; }

  private:
    ordered_json list_ = ordered_json::array();
    bool passed_ = true;
};

ordered_json finish(const std::string& job, const Checks& checks, ordered_json result)
{
    ordered_json out;
    out["job"] = job;
    out["passed"] = checks.passed();
    out["checks"] = checks.list();
    out["result"] = std::move(result);
    return out;
}

int degree_of(const JobSpec& job, const JobOptions& options)
{
    return job.degree.value_or(options.degree);
}

CohomologyOptions cohomology_options(int n, const JobOptions& options, bool seminorms)
{
    CohomologyOptions o;
    o.seminorms = seminorms;
    o.max_degree = static_cast<std::size_t>(n);
    o.limits = options.limits;
    return o;
}

ordered_json seminorm_json(const CochainComplex& c, std::size_t k, const Vector& cocycle, const Limits& limits)
{
    SeminormResult s = class_seminorm(c, k, cocycle, limits);
    ordered_json out;
    out["value"] = to_json(s.value);
    out["witness"] = to_json(s.witness);
    // z - d(witness) attains the value in the cochain norm
    Vector best = cocycle;
    if (k > 0)
    {
        Vector image = c.coboundary[k - 1].apply(s.witness);
        for (std::size_t i = 0; i < best.size(); ++i)
            best[i] -= image[i];
    }
    out["minimizer"] = to_json(best);
    return out;
}

/** Dimensions, representatives and seminorms with witnesses for degrees 0..n. */
ordered_json cohomology_json(const CochainComplex& c, const CohomologyResult& h, const Limits& limits)
{
    ordered_json degrees = ordered_json::array();
    for (std::size_t k = 0; k < h.degrees.size(); ++k)
    {
        ordered_json d;
        d["degree"] = k;
        d["cochain_dim"] = c.dims[k];
        d["dim"] = h.degrees[k].dim;
        ordered_json classes = ordered_json::array();
        for (const Vector& rep : h.degrees[k].representatives)
        {
            ordered_json cls;
            cls["representative"] = to_json(rep);
            cls["seminorm"] = seminorm_json(c, k, rep, limits);
            classes.push_back(std::move(cls));
        }
        d["classes"] = std::move(classes);
        degrees.push_back(std::move(d));
    }
    return degrees;
}

std::vector<const WorkspacePair*> selected_pairs(const Workspace& ws, const JobSpec& job)
{
    std::vector<const WorkspacePair*> out;
    const bool named = job.params.is_object() && job.params.contains("pair");
    for (const auto& p : ws.pairs)
        if (!named || job.params["pair"].get<std::string>() == p.name)
            out.push_back(&p);
    return out;
}

ordered_json job_cohomology(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    BarCochains c = cochain_complex(ws.module, n, options.limits);
    Checks checks;
    checks.add_audit("coboundaries square to zero", audit_cochain_complex(c.complex));
    CohomologyResult h = cohomology(c.complex, cohomology_options(n, options, false));
    ordered_json result;
    result["degrees"] = cohomology_json(c.complex, h, options.limits);
    return finish("cohomology", checks, std::move(result));
}

ordered_json job_relative(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    Checks checks;
    ordered_json pairs = ordered_json::array();
    for (const WorkspacePair* p : selected_pairs(ws, job))
    {
        RelativeComplex rc = relative_complex(p->pair, ws.module, n, options.limits);
        checks.add_audit(p->name + ": relative complex", audit_relative_complex(rc));
        CohomologyResult h = cohomology(rc.kernel, cohomology_options(n, options, false));
        ordered_json entry;
        entry["pair"] = p->name;
        entry["degrees"] = cohomology_json(rc.kernel, h, options.limits);
        pairs.push_back(std::move(entry));
    }
    ordered_json result;
    result["pairs"] = std::move(pairs);
    return finish("relative", checks, std::move(result));
}

ordered_json job_les(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    Checks checks;
    ordered_json pairs = ordered_json::array();
    for (const WorkspacePair* p : selected_pairs(ws, job))
    {
        CohomologyOptions opts = cohomology_options(n, options, true);
        LongExactSequence les = long_exact_sequence(p->pair, ws.module, n, opts);
        ordered_json slots = ordered_json::array();
        for (const ExactnessSlot& s : les.slots)
        {
            ordered_json j;
            j["slot"] = s.name;
            j["dim"] = s.dim;
            j["rank_in"] = s.rank_in;
            j["rank_out"] = s.rank_out;
            j["exact"] = s.exact();
            slots.push_back(std::move(j));
            checks.add(p->name + ": exact at " + s.name, s.exact());
        }
        ordered_json entry;
        entry["pair"] = p->name;
        entry["slots"] = std::move(slots);
        entry["connecting_ratio"] = les.connecting_ratio ? to_json(*les.connecting_ratio) : ordered_json(nullptr);
        pairs.push_back(std::move(entry));
    }
    ordered_json result;
    result["pairs"] = std::move(pairs);
    return finish("les", checks, std::move(result));
}

ordered_json job_seminorm(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    const bool has_pair = job.params.is_object() && job.params.contains("pair");
    const std::size_t k = job.params.is_object() && job.params.contains("class_degree")
                              ? job.params["class_degree"].get<std::size_t>()
                              : 1;
    if (k > static_cast<std::size_t>(n))
        throw InvalidArgument("seminorm job: class_degree exceeds the degree");
    CochainComplex complex;
    std::string over = "absolute";
    RelativeComplex rc;
    BarCochains bc;
    if (has_pair)
    {
        const WorkspacePair* p = selected_pairs(ws, job).front();
        rc = relative_complex(p->pair, ws.module, static_cast<int>(k), options.limits);
        complex = rc.kernel;
        over = p->name;
    }
    else
    {
        bc = cochain_complex(ws.module, static_cast<int>(k), options.limits);
        complex = bc.complex;
    }
    Checks checks;
    ordered_json values = ordered_json::array();
    if (job.params.is_object() && job.params.contains("cocycle"))
    {
        Vector z;
        for (const auto& x : job.params["cocycle"])
            z.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>()));
        if (z.size() != complex.dims[k])
            throw InvalidArgument("seminorm job: cocycle has length " + std::to_string(z.size()) + ", expected " +
                                  std::to_string(complex.dims[k]));
        ordered_json v;
        v["cocycle"] = to_json(z);
        v["seminorm"] = seminorm_json(complex, k, z, options.limits);
        values.push_back(std::move(v));
    }
    else
    {
        CohomologyResult h = cohomology(complex, cohomology_options(static_cast<int>(k), options, false));
        for (const Vector& rep : h.degrees[k].representatives)
        {
            ordered_json v;
            v["cocycle"] = to_json(rep);
            v["seminorm"] = seminorm_json(complex, k, rep, options.limits);
            values.push_back(std::move(v));
        }
    }
    ordered_json result;
    result["complex"] = over;
    result["class_degree"] = k;
    result["classes"] = std::move(values);
    return finish("seminorm", checks, std::move(result));
}

ordered_json job_additivity(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    AdditivityReport r = additivity_check(ws.module, n, cohomology_options(n, options, true));
    Checks checks;
    checks.add("dimensions and seminorms match the product over components", r.ok);
    ordered_json degrees = ordered_json::array();
    for (std::size_t k = 0; k < r.degrees.size(); ++k)
    {
        const AdditivityDegree& d = r.degrees[k];
        ordered_json j;
        j["degree"] = k;
        j["dim"] = d.dim;
        j["component_dims"] = d.component_dims;
        j["restriction_rank"] = d.restriction_rank;
        ordered_json s = ordered_json::array();
        for (const auto& [whole, best] : d.seminorms)
            s.push_back({to_json(whole), to_json(best)});
        j["seminorms"] = std::move(s);
        degrees.push_back(std::move(j));
    }
    ordered_json result;
    result["components"] = r.components;
    result["degrees"] = std::move(degrees);
    return finish("additivity", checks, std::move(result));
}

ordered_json job_equivalence(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    SkeletonRetraction s = skeleton_retraction(ws.groupoid);
    EquivalenceReport r = equivalence_invariance_check(witness_from_skeleton(s), ws.module, n,
                                                       cohomology_options(n, options, true));
    Checks checks;
    checks.add("skeleton inclusion is an isometric isomorphism on cohomology", r.ok);
    ordered_json degrees = ordered_json::array();
    for (std::size_t k = 0; k < r.degrees.size(); ++k)
    {
        const EquivalenceDegree& d = r.degrees[k];
        ordered_json j;
        j["degree"] = k;
        j["dim"] = d.dim_codomain;
        j["dim_skeleton"] = d.dim_domain;
        j["induced_rank"] = d.induced_rank;
        ordered_json sn = ordered_json::array();
        for (const auto& [a, b] : d.seminorms)
            sn.push_back({to_json(a), to_json(b)});
        j["seminorms"] = std::move(sn);
        degrees.push_back(std::move(j));
    }
    ordered_json result;
    result["skeleton_objects"] = s.inclusion.object_map();
    result["degrees"] = std::move(degrees);
    return finish("equivalence", checks, std::move(result));
}

ordered_json job_vanishing(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    VanishingReport r = amenable_vanishing_check(ws.module, n, options.limits);
    Checks checks;
    checks.add("positive-degree cohomology with dual coefficients vanishes", r.ok);
    Mean m = dual_coefficient_mean(uniform_mean(ws.groupoid), ws.module);
    checks.add_audit("uniform mean with dual coefficients", audit_mean(m));
    ordered_json result;
    result["dims"] = r.dims;
    return finish("amenable-vanishing", checks, std::move(result));
}

ordered_json job_mapping(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    Checks checks;
    ordered_json pairs = ordered_json::array();
    for (const WorkspacePair* p : selected_pairs(ws, job))
    {
        MappingReport r = algebraic_mapping_theorem_check(p->pair, ws.module, n, cohomology_options(n, options, true));
        ordered_json degrees = ordered_json::array();
        for (const MappingDegree& d : r.degrees)
        {
            ordered_json j;
            j["degree"] = d.degree;
            j["dim_relative"] = d.dim_relative;
            j["dim_absolute"] = d.dim_absolute;
            j["rank"] = d.rank;
            ordered_json sn = ordered_json::array();
            for (const auto& [a, b] : d.seminorms)
                sn.push_back({to_json(a), to_json(b)});
            j["seminorms"] = std::move(sn);
            j["asserted"] = d.asserted;
            j["isometric_isomorphism"] = d.holds;
            degrees.push_back(std::move(j));
            if (d.asserted)
                checks.add(p->name + ": isometric isomorphism in degree " + std::to_string(d.degree), d.holds);
        }
        ordered_json entry;
        entry["pair"] = p->name;
        entry["degrees"] = std::move(degrees);
        pairs.push_back(std::move(entry));
    }
    ordered_json result;
    result["pairs"] = std::move(pairs);
    return finish("mapping-theorem", checks, std::move(result));
}

ordered_json job_factorization(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = std::max(1, degree_of(job, options));
    Checks checks;
    ordered_json pairs = ordered_json::array();
    for (const WorkspacePair* p : selected_pairs(ws, job))
    {
        FactorizationReport r = factorization_check(p->pair, ws.module, n, options.limits);
        checks.add_audit(p->name + ": averaging operator", r.averaging_failures);
        checks.add(p->name + ": Alt A is a cochain map extending the identity", r.cochain_map && r.extends_identity);
        ordered_json degrees = ordered_json::array();
        for (const FactorizationDegree& d : r.degrees)
        {
            ordered_json j;
            j["degree"] = d.degree;
            j["restriction_vanishes"] = d.restriction_vanishes;
            j["norm"] = to_json(d.norm);
            j["equivariant"] = d.equivariant;
            degrees.push_back(std::move(j));
            checks.add(p->name + ": factors through the kernel in degree " + std::to_string(d.degree),
                       d.restriction_vanishes && d.norm <= 1 && d.equivariant);
        }
        ordered_json entry;
        entry["pair"] = p->name;
        entry["degrees"] = std::move(degrees);
        pairs.push_back(std::move(entry));
    }
    ordered_json result;
    result["pairs"] = std::move(pairs);
    return finish("factorization", checks, std::move(result));
}

/** Structural audits that are not tied to one theorem. */
ordered_json job_structure(const Workspace& ws, int n, const JobOptions& options)
{
    Checks checks;
    BarComplex inhom = bar_complex(ws.groupoid, n, options.limits);
    BarComplex hom = homogeneous_complex(ws.groupoid, n, options.limits);
    checks.add_audit("inhomogeneous bar complex", audit_bar_complex(inhom));
    checks.add_audit("homogeneous bar complex", audit_bar_complex(hom));
    BarIsomorphisms iso = hom_inhom_isos(inhom, hom);
    bool inverse = true;
    for (std::size_t k = 0; k < iso.to_homogeneous.size(); ++k)
    {
        FiberMap a = compose(iso.to_inhomogeneous[k], iso.to_homogeneous[k]);
        FiberMap b = compose(iso.to_homogeneous[k], iso.to_inhomogeneous[k]);
        for (std::size_t e = 0; e < a.size(); ++e)
            inverse = inverse && a[e] == Matrix::identity(a[e].rows()) && b[e] == Matrix::identity(b[e].rows());
    }
    checks.add("bar isomorphisms are mutually inverse", inverse);
    checks.add_audit("reduced cochains", audit_reduced_cochains(ws.module, std::min(n, 2), options.limits));

    AugmentedResolution std_res = standard_resolution(ws.module, n, options.limits);
    AugmentedResolution hom_res = homogeneous_resolution(ws.module, n, options.limits);
    checks.add_audit("standard resolution", audit_resolution(std_res));
    checks.add_audit("homogeneous resolution", audit_resolution(hom_res));
    auto alpha = comparison_map(hom_res, options.limits);
    checks.add_audit("comparison map", audit_comparison(hom_res, std_res, alpha));
    ordered_json comparison = ordered_json::array();
    if (n >= 1)
    {
        InvariantComplex ih = invariant_complex(hom_res);
        InvariantComplex is = invariant_complex(std_res);
        CohomologyResult hh = cohomology(ih.complex, cohomology_options(n - 1, options, false));
        CohomologyResult hs = cohomology(is.complex, cohomology_options(n - 1, options, false));
        auto a = restrict_to_invariants(alpha, ih, is);
        bool iso_ok = true;
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
        {
            Matrix m = induced_on_cohomology(a[k], hh, hs, k);
            std::size_t r = m.rows() == 0 || m.cols() == 0 ? 0 : rank(m);
            iso_ok = iso_ok && hh.degrees[k].dim == hs.degrees[k].dim && r == hs.degrees[k].dim;
            ordered_json j;
            j["degree"] = k;
            j["dim"] = hs.degrees[k].dim;
            j["rank"] = r;
            comparison.push_back(std::move(j));
        }
        checks.add("comparison map is an isomorphism on invariant cohomology", iso_ok);
    }
    checks.add_audit("uniform mean", audit_mean(uniform_mean(ws.groupoid)));
    checks.add_audit("uniform mean with dual coefficients",
                     audit_mean(dual_coefficient_mean(uniform_mean(ws.groupoid), ws.module)));
    ordered_json result;
    result["comparison"] = std::move(comparison);
    return finish("structure", checks, std::move(result));
}

ordered_json job_verify_all(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    const int n = degree_of(job, options);
    JobSpec sub;
    sub.degree = n;
    sub.params = nlohmann::json::object();
    ordered_json parts = ordered_json::array();
    Checks checks;
    auto record = [&](ordered_json r) {
        checks.add(r["job"].get<std::string>(), r["passed"].get<bool>());
        parts.push_back(std::move(r));
    };
    record(job_structure(ws, n, options));
    for (const char* name : {"cohomology", "additivity", "equivalence", "amenable-vanishing"})
    {
        sub.name = name;
        record(run_job(ws, sub, options));
    }
    if (!ws.pairs.empty())
        for (const char* name : {"relative", "les", "mapping-theorem", "factorization"})
        {
            sub.name = name;
            sub.degree = sub.name == "factorization" ? std::min(n, 2) : n;
            record(run_job(ws, sub, options));
        }
    ordered_json result;
    result["jobs"] = std::move(parts);
    return finish("verify-all", checks, std::move(result));
}

}   // namespace

ordered_json run_job(const Workspace& ws, const JobSpec& job, const JobOptions& options)
{
    if (degree_of(job, options) < 0)
        throw InvalidArgument("degree must be nonnegative");
    if (job.name == "cohomology")
        return job_cohomology(ws, job, options);
    if (job.name == "relative")
        return job_relative(ws, job, options);
    if (job.name == "les")
        return job_les(ws, job, options);
    if (job.name == "seminorm")
        return job_seminorm(ws, job, options);
    if (job.name == "additivity")
        return job_additivity(ws, job, options);
    if (job.name == "equivalence")
        return job_equivalence(ws, job, options);
    if (job.name == "amenable-vanishing")
        return job_vanishing(ws, job, options);
    if (job.name == "mapping-theorem")
        return job_mapping(ws, job, options);
    if (job.name == "factorization")
        return job_factorization(ws, job, options);
    if (job.name == "verify-all")
        return job_verify_all(ws, job, options);
    throw InvalidArgument("unknown job \"" + job.name + "\"");
}

RunResult run_workspace(const Workspace& ws, const std::optional<std::string>& only, const JobOptions& options)
{
    std::vector<JobSpec> jobs;
    if (only)
    {
        JobSpec j;
        j.name = *only;
        j.params = nlohmann::json::object();
        jobs.push_back(std::move(j));
    }
    else if (ws.jobs.empty())
    {
        JobSpec j;
        j.name = "verify-all";
        j.params = nlohmann::json::object();
        jobs.push_back(std::move(j));
    }
    else
        jobs = ws.jobs;

    RunResult out;
    ordered_json reports = ordered_json::array();
    bool passed = true;
    for (const JobSpec& job : jobs)
    {
        ordered_json r;
        int code = kExitPass;
        try
        {
            r = run_job(ws, job, options);
            if (!r["passed"].get<bool>())
                code = kExitAssertion;
        }
        catch (const ResourceCapExceeded& e)
        {
            code = kExitResourceCap;
            r["job"] = job.name;
            r["passed"] = false;
            r["error"] = {{"kind", "resource-cap"}, {"message", e.what()}};
        }
        catch (const Error& e)
        {
            code = kExitInput;
            r["job"] = job.name;
            r["passed"] = false;
            r["error"] = {{"kind", "input"}, {"message", e.what()}};
        }
        passed = passed && code == kExitPass;
        out.exit_code = std::max(out.exit_code, code);
        reports.push_back(std::move(r));
    }

    ordered_json ws_json;
    ws_json["objects"] = ws.groupoid->object_count();
    ws_json["morphisms"] = ws.groupoid->morphism_count();
    std::vector<std::size_t> dims;
    for (ObjectId e = 0; e < ws.groupoid->object_count(); ++e)
        dims.push_back(ws.module.fiber_dim(e));
    ws_json["fiber_dims"] = dims;
    std::vector<std::string> names;
    for (const auto& p : ws.pairs)
        names.push_back(p.name);
    ws_json["pairs"] = names;

    out.report["workspace"] = std::move(ws_json);
    out.report["limits"] = {{"degree", options.degree},
                            {"path_cap", options.limits.path_cap},
                            {"lp_var_cap", options.limits.lp_var_cap}};
    out.report["jobs"] = std::move(reports);
    out.report["passed"] = passed;
    out.report["exit_code"] = out.exit_code;
    return out;
}

std::string render_report(const ordered_json& report)
{
    return report.dump(2) + "\n";
}

}   // namespace bcoh
