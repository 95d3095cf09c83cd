#include <doctest.h>

#include "bcoh/errors.hpp"
#include "bcoh/linalg.hpp"
#include "bcoh/module.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace bcoh;

namespace {

NormedModule linf_r(const GroupoidPtr& g)
{
    return linf_module(trivial_module(g)).module;
}

/** Span equality via ranks. */
bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim)
{
    std::vector<Vector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto r = [&](const std::vector<Vector>& v) { return v.empty() ? 0 : rank(Matrix::from_dense(v, dim)); };
    return r(a) == r(b) && r(both) == r(a);
}

}   // namespace

TEST_CASE("trivial, l-infinity and dual modules pass the audit on every fixture")
{
    for (const auto& f : fixtures::all())
    {
        INFO(f.name);
        auto r = trivial_module(f.groupoid);
        auto l = linf_module(r);
        CHECK(l.constants.norm() == 1);
        auto d = dual_module(l.module);
        for (ObjectId e = 0; e < f.groupoid->object_count(); ++e)
        {
            CHECK(d.fiber_norm(e).combine() == (d.fiber_dim(e) > 1 ? Combine::Sum : Combine::Max));
            CHECK(dual_module(d).fiber_norm(e).eval(Vector(d.fiber_dim(e), Rational(1))) ==
                  l.module.fiber_norm(e).eval(Vector(d.fiber_dim(e), Rational(1))));
        }
    }
}

TEST_CASE("pullback of l-infinity(G, R) to a vertex group of blow_up(Z/2, {1,2})")
{
    auto g = fixtures::blow_up_z2();
    auto vertex = full_subgroupoid(g, {0});
    auto p = pullback(vertex, linf_r(g));
    CHECK(p.base()->object_count() == 1);
    CHECK(p.fiber_dim(0) == 4);
    CHECK(p.base()->morphism_count() == 2);
}

TEST_CASE("B(V, V) for V = l-infinity(Z/2, R)")
{
    auto z2 = fixtures::group(cyclic_group(2));
    auto v = linf_r(z2);
    auto b = hom_module(v, v);
    CHECK(b.fiber_dim(0) == 4);
    // Conjugation by the swap permutes the matrix entries.
    const Matrix& a = b.action(1);
    for (std::size_t i = 0; i < 4; ++i)
    {
        std::size_t nz = a.row(i).size();
        CHECK(nz == 1);
        CHECK(a.row(i)[0].second == 1);
    }
    Vector id{1, 0, 0, 1};
    CHECK(b.fiber_norm(0).eval(id) == 1);
    // Operator norm l-inf -> l-inf is the max absolute row sum.
    CHECK(b.fiber_norm(0).eval({1, -2, 3, 1}) == 4);   // M = [[1, 3], [-2, 1]]
}

TEST_CASE("invariants of B(V, W) are the equivariant maps")
{
    std::vector<std::pair<GroupoidPtr, int>> cases{{fixtures::group(cyclic_group(2)), 0},
                                                   {fixtures::group(cyclic_group(3)), 0},
                                                   {fixtures::swap(), 0},
                                                   {fixtures::blow_up_z2(), 0}};
    for (auto& [g, unused] : cases)
    {
        (void)unused;
        auto v = linf_r(g);
        auto w = trivial_module(g);
        for (const auto& [x, y] : std::vector<std::pair<NormedModule, NormedModule>>{{v, w}, {w, v}, {v, v}})
        {
            auto h = hom_module(x, y);
            auto inv = invariants(h);
            auto eq = equivariant_maps_basis(x, y);
            CHECK(inv.basis.size() == eq.size());
            CHECK(same_span(inv.basis, eq, h.total_dim()));
        }
    }
}

TEST_CASE("invariants of l-infinity(G, R) are the functions of the source, one per object")
{
    for (const auto& f : fixtures::all())
    {
        INFO(f.name);
        auto inv = invariants(linf_r(f.groupoid));
        CHECK(inv.basis.size() == f.groupoid->object_count());
    }
}

TEST_CASE("Sigma R for Z/2 is R with the sign action and half the absolute value")
{
    auto s = sigma_module(fixtures::group(cyclic_group(2)));
    CHECK(s.module.fiber_dim(0) == 1);
    CHECK(s.module.action(1) == Matrix::identity(1) * Rational(-1));
    CHECK(s.quotient.norm() == 1);
    // Class of (1, 0).
    Vector cls = s.quotient.component(0).apply({1, 0});
    CHECK(s.module.fiber_norm(0).eval(cls) == Rational(1, 2));
    // Trivial group: Sigma R is zero.
    CHECK(sigma_module(fixtures::trivial()).module.fiber_dim(0) == 0);
    // Z/3: dimension 2, quotient norm agrees with the LP distance.
    auto s3 = sigma_module(fixtures::group(cyclic_group(3)));
    CHECK(s3.module.fiber_dim(0) == 2);
    oracle::RationalGen gen(4);
    for (int i = 0; i < 10; ++i)
    {
        Vector x = gen.vec(3);
        CHECK(s3.module.fiber_norm(0).eval(s3.quotient.component(0).apply(x)) ==
              distance_to_subspace(PolyhedralNorm::linf(3), {{1, 1, 1}}, x));
    }
}

TEST_CASE("homotopy action is an isometric G-map")
{
    auto pair = fixtures::blow_up_trivial_pair();
    auto g = pair.ambient();
    auto sk = skeleton_retraction(g);
    auto m = homotopy_action(sk.homotopy, linf_r(g));
    CHECK(m.norm() == 1);
    auto back = homotopy_action(sk.homotopy.inverse(), linf_r(g));
    for (ObjectId e = 0; e < g->object_count(); ++e)
        CHECK(back.component(e) * m.component(e) == Matrix::identity(m.dom().fiber_dim(e)));
}

TEST_CASE("malformed modules are rejected with the violated law")
{
    auto z2 = fixtures::group(cyclic_group(2));
    std::vector<PolyhedralNorm> one{PolyhedralNorm::absolute_value()};
    CHECK_THROWS_WITH_AS(NormedModule(z2, one, {Matrix::identity(1), Matrix::identity(1) * Rational(2)}),
                         doctest::Contains("multiplicative"), AxiomViolation);
    // An involution that is not an l-infinity isometry.
    Matrix inv = Matrix::from_dense({{1, 1}, {0, -1}}, 2);
    CHECK(inv * inv == Matrix::identity(2));
    CHECK_THROWS_WITH_AS(NormedModule(z2, {PolyhedralNorm::linf(2)}, {Matrix::identity(2), inv}), doctest::Contains("isometr"),
                         AxiomViolation);
    CHECK_THROWS_AS(NormedModule(z2, one, {Matrix::identity(1)}), AxiomViolation);
}

TEST_CASE("equivariance failures are reported")
{
    auto z2 = fixtures::group(cyclic_group(2));
    auto v = linf_r(z2);
    auto r = trivial_module(z2);
    // Evaluation at the identity is not equivariant into the trivial module.
    CHECK_THROWS_AS(EquivariantMap(v, r, {Matrix::from_dense({{1, 0}}, 2)}), AxiomViolation);
    EquivariantMap avg(v, r, {Matrix::from_dense({{Rational(1, 2), Rational(1, 2)}}, 2)});
    CHECK(avg.norm() == 1);
}
