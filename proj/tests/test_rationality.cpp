#include <doctest.h>

#include <random>
#include <set>

#include "hbl/cox.hpp"
#include "hbl/rationality.hpp"

using namespace hbl;

namespace
{

// Number of (mu entry, target monomial) pairs of the form u v with u from the a-entry
// spaces and v from the matching b-entry spaces. Each pure tensor maps to a single
// target basis vector, so this is the rank.
std::size_t reachable_targets(int e)
{
    Surface s(e);
    std::set<CoxMonomial> hit;
    for (DivisorClass du : {DivisorClass{1, e}, DivisorClass{0, 1}})
    {
        DivisorClass dv = DivisorClass{1, e + 1} - du;
        for (const auto& u : basis(s, du, 0).basis)
            for (const auto& v : basis(s, dv, 0).basis)
                hit.insert(u * v);
    }
    return 2 * static_cast<std::size_t>(e) * hit.size();
}

} // namespace

TEST_CASE("m_i closed forms")
{
    auto d1 = m_dims(1);
    CHECK(d1.m1 == 11);
    CHECK(d1.m2 == 25);
    CHECK(d1.m3 == 9);
    auto d2 = m_dims(2);
    CHECK(d2.m1 == 31);
    CHECK(d2.m2 == 39);
    CHECK(d2.m3 == 23);
    for (int e = 1; e <= 10; ++e)
    {
        auto d = m_dims(e);
        CHECK(d.direct1 == d.m1);
        CHECK(d.direct2 == d.m2);
        CHECK(d.direct3 == d.m3);
        CHECK(dim_parameter_space(e) == 4 * (e * e + 2 * e + 4));
    }
    CHECK_THROWS_AS(m_dims(0), Error);
}

TEST_CASE("bilinear map on the tensor product")
{
    for (int e = 1; e <= 3; ++e)
    {
        auto d = m_dims(e);
        const std::size_t target = static_cast<std::size_t>(d.m3 + 1);
        const std::size_t source = static_cast<std::size_t>((d.m1 + 1) * (d.m2 + 1));
        CHECK(reachable_targets(e) == target);
        for (std::uint32_t p : {kDefaultPrime, 32003u})
        {
            if (e == 3 && p != kDefaultPrime)
                continue;
            auto b = bilinear_kernel(e, FieldSpec::prime(p));
            CHECK(b.source_dim == source);
            CHECK(b.target_dim == target);
            CHECK(b.rank == target);
            CHECK(b.dim_k == source - target);
            CHECK(b.preimages_verified);
        }
    }
    CHECK(bilinear_kernel(1, FieldSpec::prime(kDefaultPrime)).dim_k == 302);
    CHECK(bilinear_kernel(1, FieldSpec::rational()).rank == 10);
    CHECK(bilinear_kernel(2, FieldSpec::prime(kDefaultPrime)).rank == 24);
    CHECK_THROWS_AS(bilinear_kernel(4, FieldSpec::prime(kDefaultPrime)), Error);
}

TEST_CASE("fibre solution dimensions")
{
    for (int e = 1; e <= 3; ++e)
    {
        auto field = FieldSpec::prime(kDefaultPrime);
        Surface s(e);
        auto sp = block_spaces(e);
        std::mt19937_64 rng(1000 + e);
        PrimeField f(field.p);
        int generic = 0;
        for (int trial = 0; trial < 50; ++trial)
        {
            auto m = MonadPoint::zero(e, field);
            for (PolyMatrix* blk : {&m.a1, &m.a2})
            {
                const auto& space = blk == &m.a1 ? sp.a1 : sp.a2;
                for (std::size_t r = 0; r < blk->rows(); ++r)
                    for (std::size_t c = 0; c < blk->cols(); ++c)
                        for (const auto& u : space.basis)
                            (*blk)(r, c).add_term(s, u, f.to_rational(f.random(rng)));
            }
            auto dim = fiber_solution_dim(m);
            CHECK(dim >= 16);
            CHECK(dim == b_solution_dim(m));
            generic += dim == 16;
        }
        CHECK(generic >= 45);

        auto zero = MonadPoint::zero(e, field);
        CHECK(fiber_solution_dim(zero) == sp.dim_m2);
        // rank-deficient a1 (one column) and a2 = 0
        auto deg = MonadPoint::zero(e, field);
        deg.a1(0, 0) = CoxPolynomial::monomial(s, sp.a1.basis[0]);
        CHECK(fiber_solution_dim(deg) > 16);
        CHECK(fiber_solution_dim(deg) == b_solution_dim(deg));
    }
    auto q = sample_monad(2, FieldSpec::rational(), 3);
    CHECK(fiber_solution_dim(q) == 16);
}

TEST_CASE("inequality audit")
{
    auto r1 = inequality_audit(1);
    CHECK(r1.pass());
    CHECK(r1.dim_k == 302);
    CHECK(r1.dim_k_from_rank);
    CHECK(r1.m2 - r1.m3 == 16);
    // m + m2 = 301 + 25 >= 275 + 11 + 25
    CHECK(r1.dim_k - 1 + r1.m2 == 326);
    CHECK(r1.m1 * r1.m2 + r1.m1 + r1.m2 == 311);
    for (int e = 2; e <= 5; ++e)
    {
        auto r = inequality_audit(e);
        CHECK(r.pass());
        CHECK(r.dim_k_from_rank == (e <= 3));
        CHECK(r.dim_z == 4 * (e * e + 2 * e + 4));
    }
}

TEST_CASE("group dimension audit")
{
    auto g1 = group_dim_audit(1);
    CHECK(g1.dim_end_a == 1);
    CHECK(g1.dim_end_c == 4);
    CHECK(g1.dim_end_b_full == 19);
    CHECK(g1.dim_g_full == 24);
    CHECK(g1.dim_g_implied == 18);
    CHECK(g1.dim_quotient_stated == 10);
    CHECK(g1.dim_z == 28);
    for (int e = 1; e <= 6; ++e)
    {
        auto g = group_dim_audit(e);
        CHECK(g.dim_end_a == e * e);
        CHECK(g.dim_end_c == 4);
        CHECK(g.dim_end_b_diag == 4 + (e + 2) * (e + 2));
        CHECK(g.dim_end_b_full == 4 + (e + 2) * (e + 2) + 2 * e * (e + 2));
        CHECK(g.dim_end_b_full >= g.dim_end_b_diag);
        CHECK(g.dim_g_full == 4 * e * e + 8 * e + 12);
        CHECK(g.dim_g_implied == 2 * e * e + 4 * e + 12);
        CHECK(g.dim_g_diag == g.dim_g_implied);
    }
}
