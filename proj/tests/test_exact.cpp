#include <doctest.h>

#include "bcoh/errors.hpp"
#include "bcoh/linalg.hpp"
#include "bcoh/lp.hpp"
#include "bcoh/norm.hpp"
#include "oracle.hpp"

using namespace bcoh;

namespace {

Matrix mat(const std::vector<Vector>& rows)
{
    return Matrix::from_dense(rows, rows.empty() ? 0 : rows[0].size());
}

Rational r(long p, long q = 1)
{
    return Rational(p, q);
}

}   // namespace

TEST_CASE("rational strings round trip")
{
    CHECK(to_string(r(-3, 6)) == "-1/2");
    CHECK(to_string(r(4)) == "4/1");
    CHECK(parse_rational("-1/2") == r(-1, 2));
    CHECK(parse_rational("7") == r(7));
    CHECK(parse_rational("+2/4") == r(1, 2));
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("/3"), InputError);
}

TEST_CASE("matrix arithmetic matches dense products")
{
    oracle::RationalGen gen(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto a = gen.matrix(4, 5);
        auto b = gen.matrix(5, 3);
        Matrix p = Matrix::from_dense(a, 5) * Matrix::from_dense(b, 3);
        CHECK(p == Matrix::from_dense(oracle::dense_mul(a, b), 3));
        CHECK(Matrix::from_dense(a, 5).transpose().transpose() == Matrix::from_dense(a, 5));
    }
    CHECK_THROWS_AS(Matrix(2, 3) * Matrix(2, 3), DimensionMismatch);
}

TEST_CASE("kron follows the column-stacking identity")
{
    oracle::RationalGen gen(5);
    Matrix a = Matrix::from_dense(gen.matrix(2, 2), 2);
    Matrix b = Matrix::from_dense(gen.matrix(3, 3), 3);
    Matrix x = Matrix::from_dense(gen.matrix(3, 2), 2);
    // vec(B X A^T) = (A (x) B) vec(X) with column-major vec.
    auto vec = [](const Matrix& m) {
        Vector v;
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t i = 0; i < m.rows(); ++i)
                v.push_back(m.at(i, j));
        return v;
    };
    CHECK(Matrix::kron(a, b).apply(vec(x)) == vec(b * x * a.transpose()));
}

TEST_CASE("rank of the 2x2 all-ones matrix is 1, kernel spanned by (1,-1)")
{
    Matrix m = mat({{1, 1}, {1, 1}});
    CHECK(rank(m) == 1);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vector{-1, 1});
    auto im = image_basis(m);
    REQUIRE(im.size() == 1);
    CHECK(im[0] == Vector{1, 1});
}

TEST_CASE("rank agrees with the dense elimination oracle; rank-nullity holds")
{
    oracle::RationalGen gen(2024);
    for (int trial = 0; trial < 60; ++trial)
    {
        std::size_t rows = 1 + trial % 6, cols = 1 + (trial * 7) % 5;
        auto d = gen.matrix(rows, cols);
        if (trial % 4 == 0 && rows > 1)
            d[rows - 1] = d[0];
        Matrix m = Matrix::from_dense(d, cols);
        std::size_t rk = rank(m);
        CHECK(rk == oracle::dense_rank(d));
        auto k = kernel_basis(m);
        CHECK(k.size() + rk == cols);
        for (const auto& v : k)
            CHECK(is_zero(m.apply(v)));
        CHECK(image_basis(m).size() == rk);
        CHECK(rank(m.transpose()) == rk);
    }
}

TEST_CASE("solve returns a solution exactly when one exists")
{
    Matrix m = mat({{1, 2}, {2, 4}});
    auto x = solve(m, {3, 6});
    REQUIRE(x);
    CHECK(m.apply(*x) == Vector{3, 6});
    CHECK_FALSE(solve(m, {1, 0}));
}

TEST_CASE("subspace coordinates")
{
    Subspace s(3, {{1, 1, 0}, {0, 1, 1}});
    Vector x{2, 5, 3};
    CHECK(s.contains(x));
    CHECK(s.coordinates(x) == Vector{2, 3});
    CHECK_FALSE(s.contains({1, 0, 0}));
    CHECK_THROWS_AS(Subspace(2, {{1, 1}, {2, 2}}), InvalidArgument);
}

TEST_CASE("LP: min x subject to x >= 1, x <= 3 is 1 at x = 1")
{
    LPProblem p{1, {1}, {{{1}, Relation::GreaterEqual, 1}, {{1}, Relation::LessEqual, 3}}};
    auto res = solve_lp(p);
    REQUIRE(res.status == LPStatus::Optimal);
    CHECK(res.value == 1);
    CHECK(res.witness == Vector{1});
}

TEST_CASE("LP: contradictory bounds give a checked Farkas certificate")
{
    LPProblem p{1, {1}, {{{1}, Relation::LessEqual, 0}, {{1}, Relation::GreaterEqual, 1}}};
    auto res = solve_lp(p);
    REQUIRE(res.status == LPStatus::Infeasible);
    CHECK(check_infeasibility_certificate(p, res.certificate));
}

TEST_CASE("LP: unbounded problems return a checked ray")
{
    LPProblem p{2, {1, -1}, {{{1, 1}, Relation::GreaterEqual, 0}}};
    auto res = solve_lp(p);
    REQUIRE(res.status == LPStatus::Unbounded);
    CHECK(is_feasible(p, res.witness));
    CHECK(check_unbounded_direction(p, res.certificate));
}

TEST_CASE("LP optimum agrees with brute-force vertex enumeration on random boxes")
{
    // Oracle: for 2 variables, optimum sits at an intersection of two constraint lines.
    oracle::RationalGen gen(77);
    for (int trial = 0; trial < 25; ++trial)
    {
        LPProblem p;
        p.variables = 2;
        p.objective = gen.vec(2);
        // Bounded box plus random cuts through a known feasible point (0,0).
        for (int s : {1, -1})
            for (std::size_t i = 0; i < 2; ++i)
            {
                Vector a(2, Rational(0));
                a[i] = s;
                p.constraints.push_back({a, Relation::LessEqual, 3});
            }
        for (int k = 0; k < 3; ++k)
        {
            Vector a = gen.vec(2);
            Rational b = gen.next();
            if (b < 0)
                b = -b;
            p.constraints.push_back({a, Relation::LessEqual, b});
        }
        auto res = solve_lp(p);
        REQUIRE(res.status == LPStatus::Optimal);
        CHECK(is_feasible(p, res.witness));
        bool have = false;
        Rational best;
        for (std::size_t i = 0; i < p.constraints.size(); ++i)
            for (std::size_t j = i + 1; j < p.constraints.size(); ++j)
            {
                const auto& a = p.constraints[i].coefficients;
                const auto& b = p.constraints[j].coefficients;
                Rational det = a[0] * b[1] - a[1] * b[0];
                if (det == 0)
                    continue;
                Vector x{(p.constraints[i].bound * b[1] - a[1] * p.constraints[j].bound) / det,
                         (a[0] * p.constraints[j].bound - p.constraints[i].bound * b[0]) / det};
                if (!is_feasible(p, x))
                    continue;
                Rational v = dot(p.objective, x);
                if (!have || v < best)
                {
                    best = v;
                    have = true;
                }
            }
        REQUIRE(have);
        CHECK(res.value == best);
    }
}

TEST_CASE("l-infinity on R^2 evaluates (1,-3) to 3 and its dual is l1")
{
    PolyhedralNorm n = PolyhedralNorm::linf(2);
    CHECK(n.eval({1, -3}) == 3);
    PolyhedralNorm d = dual_norm(n);
    CHECK(d.eval({1, -3}) == 4);
    CHECK(d.combine() == Combine::Sum);
}

TEST_CASE("dual norm satisfies |<y,x>| <= n(x) n*(y) and the double dual is the original")
{
    PolyhedralNorm hex = PolyhedralNorm::from_facets(2, {{1, 0}, {0, 1}, {1, 1}});
    PolyhedralNorm d = dual_norm(hex);
    CHECK(dual_norm(d) == hex);
    oracle::RationalGen gen(3);
    for (int i = 0; i < 40; ++i)
    {
        Vector x = gen.vec(2), y = gen.vec(2);
        Rational ip = dot(x, y);
        if (ip < 0)
            ip = -ip;
        CHECK(ip <= hex.eval(x) * d.eval(y));
        CHECK(d.eval(y) == hex.dual_eval(y));
    }
}

TEST_CASE("facet and vertex descriptions agree")
{
    PolyhedralNorm a = PolyhedralNorm::from_facets(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    PolyhedralNorm b = PolyhedralNorm::from_vertices(3, a.all_vertices());
    CHECK(a == b);
    oracle::RationalGen gen(8);
    for (int i = 0; i < 20; ++i)
    {
        Vector x = gen.vec(3);
        CHECK(a.eval(x) == b.eval(x));
    }
}

TEST_CASE("quotient of l-infinity by the constants")
{
    // Class of (1,0) in R^2/constants: min_c max(|1-c|, |c|) = 1/2.
    auto q2 = quotient_norm(PolyhedralNorm::linf(2), {{1, 1}});
    CHECK(q2.norm.dim() == 1);
    CHECK(q2.norm.eval(q2.projection.apply({1, 0})) == r(1, 2));
    CHECK(distance_to_subspace(PolyhedralNorm::linf(2), {{1, 1}}, {1, 0}) == r(1, 2));
    // R^3: min_c max(|1-c|, |c|, |c|) is also attained at c = 1/2.
    auto q3 = quotient_norm(PolyhedralNorm::linf(3), {{1, 1, 1}});
    CHECK(q3.norm.dim() == 2);
    CHECK(q3.norm.eval(q3.projection.apply({1, 0, 0})) == r(1, 2));
    CHECK(distance_to_subspace(PolyhedralNorm::linf(3), {{1, 1, 1}}, {1, 0, 0}) == r(1, 2));
    CHECK(q3.projection * q3.lift == Matrix::identity(2));
}

TEST_CASE("quotient norm equals the LP distance on random classes")
{
    oracle::RationalGen gen(91);
    PolyhedralNorm n = PolyhedralNorm::from_facets(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 2}});
    std::vector<Vector> w{{1, 2, 0}};
    auto q = quotient_norm(n, w);
    for (int i = 0; i < 15; ++i)
    {
        Vector v = gen.vec(3);
        CHECK(q.norm.eval(q.projection.apply(v)) == distance_to_subspace(n, w, v));
    }
    // Quotient by zero is the original norm.
    auto id = quotient_norm(n, {});
    for (int i = 0; i < 10; ++i)
    {
        Vector v = gen.vec(3);
        CHECK(id.norm.eval(v) == n.eval(v));
    }
}

TEST_CASE("degenerate and oversized norms are rejected")
{
    CHECK_THROWS_AS(PolyhedralNorm::from_facets(2, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(PolyhedralNorm::from_vertices(7, {}), ResourceCapExceeded);
    CHECK_THROWS_AS(quotient_norm(PolyhedralNorm::linf(2), {{1, 1, 1}}), DimensionMismatch);
}

TEST_CASE("operator norms")
{
    Matrix swap = mat({{0, 1}, {1, 0}});
    CHECK(operator_norm(swap, PolyhedralNorm::linf(2), PolyhedralNorm::linf(2)) == 1);
    CHECK(operator_norm(swap, PolyhedralNorm::l1(2), PolyhedralNorm::l1(2)) == 1);
    Matrix sum = mat({{1, 1}});
    CHECK(operator_norm(sum, PolyhedralNorm::linf(2), PolyhedralNorm::absolute_value()) == 2);
    CHECK(operator_norm(sum, PolyhedralNorm::l1(2), PolyhedralNorm::absolute_value()) == 1);
    // Oracle for a general single-block domain: max over all domain vertices.
    oracle::RationalGen gen(19);
    PolyhedralNorm hex = PolyhedralNorm::from_facets(2, {{1, 0}, {0, 1}, {1, 1}});
    for (int i = 0; i < 10; ++i)
    {
        Matrix t = Matrix::from_dense(gen.matrix(2, 2), 2);
        Rational best = 0;
        for (const auto& v : hex.all_vertices())
            best = std::max(best, PolyhedralNorm::linf(2).eval(t.apply(v)));
        CHECK(operator_norm(t, hex, PolyhedralNorm::linf(2)) == best);
        // Max-combined multi-block domain path agrees with the vertex path.
        Rational via_blocks = operator_norm(t, PolyhedralNorm::linf(2), PolyhedralNorm::linf(2));
        Rational via_vertices = 0;
        for (const auto& v : PolyhedralNorm::linf(2).all_vertices())
            via_vertices = std::max(via_vertices, PolyhedralNorm::linf(2).eval(t.apply(v)));
        CHECK(via_blocks == via_vertices);
    }
}
