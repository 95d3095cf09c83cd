#include <doctest.h>

#include "bcoh/checks.hpp"
#include "bcoh/errors.hpp"
#include "bcoh/lp.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace bcoh;

namespace {

struct NamedModule
{
    std::string name;
    NormedModule module;
};

std::vector<NamedModule> modules_over(const GroupoidPtr& g)
{
    auto r = trivial_module(g);
    auto l = linf_module(r).module;
    return {{"R", r}, {"linf", l}, {"dual linf", dual_module(l)}};
}

CohomologyOptions dims_only(std::size_t n)
{
    CohomologyOptions o;
    o.seminorms = false;
    o.max_degree = n;
    return o;
}

/** min over all u of the sup norm of c - D u, with every coordinate of u free. */
Rational oracle_seminorm(const Matrix& d, const Vector& c)
{
    const std::size_t m = d.cols();
    LPProblem lp;
    lp.variables = m + 1;
    lp.objective = Vector(m + 1, Rational(0));
    lp.objective[m] = 1;
    auto dense = d.to_dense();
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (int s : {1, -1})
        {
            LinearConstraint row{Vector(m + 1), Relation::LessEqual, Rational(s) * c[i]};
            for (std::size_t j = 0; j < m; ++j)
                row.coefficients[j] = Rational(s) * dense[i][j];
            row.coefficients[m] = -1;
            lp.constraints.push_back(row);
        }
    return solve_lp(lp).value;
}

}   // namespace

TEST_CASE("trivial group: one coordinate per degree, coboundaries alternate")
{
    auto c = cochain_complex(trivial_module(fixtures::trivial()), 4);
    for (std::size_t k = 0; k <= 5; ++k)
        CHECK(c.complex.dims[k] == 1);
    for (std::size_t k = 0; k <= 4; ++k)
        CHECK(c.complex.coboundary[k] == Matrix::identity(1) * Rational(k % 2));
    auto h = cohomology(c.complex);
    CHECK(h.degrees[0].dim == 1);
    CHECK(h.degrees[0].seminorms[0] == 1);
    for (std::size_t k = 1; k <= 4; ++k)
        CHECK(h.degrees[k].dim == 0);
}

TEST_CASE("Z/2 with trivial coefficients has 2^k reduced coordinates and no higher cohomology")
{
    auto c = cochain_complex(trivial_module(fixtures::group(cyclic_group(2))), 3);
    for (std::size_t k = 0; k <= 4; ++k)
        CHECK(c.complex.dims[k] == (std::size_t(1) << k));
    auto h = cohomology(c.complex);
    CHECK(h.degrees[0].dim == 1);
    for (std::size_t k = 1; k <= 3; ++k)
        CHECK(h.degrees[k].dim == 0);
}

TEST_CASE("empty groupoid gives the zero complex")
{
    auto empty = share(FiniteGroupoid::create(0, {}, {}, {}));
    auto c = cochain_complex(trivial_module(empty), 2);
    for (std::size_t d : c.complex.dims)
        CHECK(d == 0);
    auto h = cohomology(c.complex);
    for (const auto& d : h.degrees)
        CHECK(d.dim == 0);
}

TEST_CASE("coboundaries square to zero on every fixture and module through degree 3")
{
    for (const auto& f : fixtures::all())
        for (const auto& m : modules_over(f.groupoid))
        {
            INFO(f.name << " / " << m.name);
            auto c = cochain_complex(m.module, 3);
            auto fails = audit_cochain_complex(c.complex);
            CHECK(fails.empty());
        }
}

TEST_CASE("H^0 is the space of invariants")
{
    for (const auto& f : fixtures::all())
        for (const auto& m : modules_over(f.groupoid))
        {
            INFO(f.name << " / " << m.name);
            auto c = cochain_complex(m.module, 0);
            auto h = cohomology(c.complex, dims_only(0));
            CHECK(h.degrees[0].dim == invariants(m.module).basis.size());
        }
    auto three = cochain_complex(trivial_module(fixtures::three_components()), 0);
    auto h = cohomology(three.complex);
    CHECK(h.degrees[0].dim == 3);
    for (const auto& s : h.degrees[0].seminorms)
        CHECK(s == 1);
}

TEST_CASE("reduced cochains match the invariants of B(C_k, V)")
{
    for (const auto& f : fixtures::small())
        for (const auto& m : modules_over(f.groupoid))
        {
            if (m.name == "dual linf" && f.groupoid->morphism_count() > 4)
                continue;
            INFO(f.name << " / " << m.name);
            auto fails = audit_reduced_cochains(m.module, f.groupoid->morphism_count() > 4 ? 1 : 2);
            for (const auto& s : fails)
                INFO(s);
            CHECK(fails.empty());
        }
}

TEST_CASE("class seminorm on a hand-built complex")
{
    // C^0 = R -> C^1 = R^2 (sup norm) -> 0, d^0 = (1, 1): seminorm of (a, b) is |a - b| / 2
    CochainComplex c;
    c.dims = {1, 2, 0};
    c.coboundary = {Matrix::from_dense({{Rational(1)}, {Rational(1)}}, 1), Matrix(0, 2)};
    c.norms = {PolyhedralNorm::absolute_value(), PolyhedralNorm::linf(2), PolyhedralNorm::zero()};
    oracle::RationalGen gen(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        Vector x = gen.vec(2);
        auto s = class_seminorm(c, 1, x);
        CHECK(s.value == abs(x[0] - x[1]) / 2);
        Vector diff = x;
        for (std::size_t i = 0; i < 2; ++i)
            diff[i] -= c.coboundary[0].apply(s.witness)[i];
        CHECK(c.norms[1].eval(diff) == s.value);
    }
    auto h = cohomology(c);
    CHECK(h.degrees[1].dim == 1);
    CHECK(h.degrees[1].seminorms[0] == Rational(1, 2));
}

TEST_CASE("class seminorm vanishes exactly on coboundaries and matches the full-variable oracle")
{
    // Relative cochains of (Z/2 blown up twice, trivial vertex groups) carry nonzero classes.
    auto pair = fixtures::blow_up_trivial_pair();
    auto rc = relative_complex(pair, trivial_module(pair.ambient()), 2);
    const CochainComplex& k = rc.kernel;
    auto h = cohomology(k);
    REQUIRE(h.degrees[1].dim == 1);
    oracle::RationalGen gen(5);
    for (int trial = 0; trial < 8; ++trial)
    {
        Vector u = gen.vec(k.dims[0]);
        Vector exact = k.coboundary[0].apply(u);
        auto s = class_seminorm(k, 1, exact);
        CHECK(s.value == 0);
        Vector z = exact;
        const Vector& rep = h.degrees[1].representatives[0];
        Rational a = gen.next();
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] += a * rep[i];
        Rational value = class_seminorm(k, 1, z).value;
        CHECK((value == 0) == (a == 0));
        CHECK(value == oracle_seminorm(k.coboundary[0], z));
    }
    CHECK(class_seminorm(k, 1, Vector(k.dims[1], Rational(0))).value == 0);
}

TEST_CASE("seminorm errors")
{
    auto c = cochain_complex(trivial_module(fixtures::group(cyclic_group(3))), 2);
    Vector not_cocycle = unit_vector(c.complex.dims[1], 1);
    CHECK_THROWS_AS(class_seminorm(c.complex, 1, not_cocycle), InvalidArgument);
    Vector exact = c.complex.coboundary[1].apply(unit_vector(c.complex.dims[1], 1));
    CHECK_THROWS_AS(class_seminorm(c.complex, 2, exact, Limits{20000, 2}), ResourceCapExceeded);
    CHECK(class_seminorm(c.complex, 2, exact).value == 0);
}

TEST_CASE("additivity over connected components")
{
    for (const auto& g : {fixtures::z2_plus_z3(), fixtures::three_components(), fixtures::group(cyclic_group(3))})
    {
        auto report = additivity_check(trivial_module(g), 2);
        CHECK(report.ok);
        CHECK(report.degrees[0].dim == report.components.size());
        for (std::size_t k = 1; k <= 2; ++k)
            CHECK(report.degrees[k].dim == 0);
        for (const auto& [whole, best] : report.degrees[0].seminorms)
            CHECK(whole == best);
    }
    auto l = linf_module(trivial_module(fixtures::three_components())).module;
    CHECK(additivity_check(l, 1).ok);
}

TEST_CASE("equivalence invariance for skeleton retractions")
{
    for (const auto& g : {fixtures::blow_up_z2(), fixtures::swap(), fixtures::three_components()})
    {
        auto w = witness_from_skeleton(skeleton_retraction(g));
        for (const auto& m : modules_over(g))
        {
            INFO(m.name);
            auto report = equivalence_invariance_check(w, m.module, 2);
            CHECK(report.ok);
        }
    }
    auto g = fixtures::blow_up_z2();
    auto s = skeleton_retraction(g);
    EquivalenceWitness bad = witness_from_skeleton(s);
    std::swap(bad.f, bad.g);
    CHECK_THROWS_AS(equivalence_invariance_check(bad, trivial_module(g), 1), InvalidArgument);
}

TEST_CASE("homotopic maps agree on cohomology after the twist")
{
    for (const auto& g : {fixtures::blow_up_z2(), fixtures::swap()})
    {
        auto s = skeleton_retraction(g);
        for (const auto& m : modules_over(g))
        {
            INFO(m.name);
            CHECK(homotopy_twist_check(s.homotopy, m.module, 2));
            CHECK(homotopy_twist_check(s.homotopy.inverse(), m.module, 2));
        }
    }
}

TEST_CASE("relative twist for a homotopy of pairs")
{
    auto g = fixtures::blow_up_z2();
    // A: the morphisms (f, e, 1_G), a copy of the indiscrete groupoid on both objects
    std::vector<MorphismId> a;
    for (ObjectId f = 0; f < 2; ++f)
        for (ObjectId e = 0; e < 2; ++e)
            a.push_back(blow_up_morphism(2, 2, f, e, 0));
    std::sort(a.begin(), a.end());
    GroupoidPair pair(subgroupoid(g, a));
    auto s = skeleton_retraction(g);
    REQUIRE(check_relative_homotopy(s.homotopy, pair, pair));
    auto l = linf_module(trivial_module(g)).module;
    CHECK(relative_homotopy_twist_check(s.homotopy, pair, pair, trivial_module(g), 2));
    CHECK(relative_homotopy_twist_check(s.homotopy, pair, pair, l, 1));

    GroupoidPair trivial_pair = fixtures::blow_up_trivial_pair();
    CHECK_THROWS_AS(relative_homotopy_twist_check(s.homotopy, trivial_pair, trivial_pair, trivial_module(g), 1),
                    InvalidArgument);
}

TEST_CASE("identity maps induce identities on cohomology")
{
    auto g = fixtures::swap();
    auto l = linf_module(trivial_module(g)).module;
    auto c = cochain_complex(l, 2);
    auto h = cohomology(c.complex, dims_only(2));
    auto id = pullback_cochain_map(GroupoidMap::identity(g), c, c);
    for (std::size_t k = 0; k <= 2; ++k)
    {
        CHECK(id[k] == Matrix::identity(c.complex.dims[k]));
        CHECK(induced_on_cohomology(id[k], h, h, k) == Matrix::identity(h.degrees[k].dim));
    }
}
