#include <doctest.h>

#include <random>

#include "hbl/monad.hpp"
#include "hbl/monad_io.hpp"
#include "oracles.hpp"

using namespace hbl;

namespace
{

CoxPolynomial mono(const Surface& s, CoxMonomial m, long c = 1) { return CoxPolynomial::monomial(s, m, c); }

constexpr CoxMonomial S0T0{1, 0, 1, 0};
constexpr CoxMonomial T0{0, 0, 1, 0};

// e = 1 by hand: b1 a1 = T0 * S0T0 in entry (0,0), b2 a2 = -S0T0 * T0, everything else 0.
MonadPoint hand_point()
{
    Surface s(1);
    auto m = MonadPoint::zero(1, FieldSpec::rational());
    m.a1(0, 0) = mono(s, S0T0);
    m.a2(0, 0) = mono(s, T0);
    m.b1(0, 0) = mono(s, T0);
    m.b1(1, 1) = mono(s, T0);
    m.b2(0, 0) = mono(s, S0T0, -1);
    return m;
}

} // namespace

TEST_CASE("monad shapes")
{
    auto s1 = shape(1);
    CHECK(s1.A.summands == std::vector<DivisorClass>{{-1, -2}});
    CHECK(s1.B.summands == std::vector<DivisorClass>{{0, -1}, {0, -1}, {-1, -1}, {-1, -1}, {-1, -1}});
    CHECK(s1.C.summands == std::vector<DivisorClass>{{0, 0}, {0, 0}});
    CHECK(shape(2).B.size() == 6);
    CHECK_THROWS_AS(shape(0), Error);
    for (int e = 1; e <= 6; ++e)
    {
        auto sp = block_spaces(e);
        CHECK(sp.a1.dim() == static_cast<std::size_t>(e + 2));
        CHECK(sp.a2.dim() == 2);
        CHECK(sp.b1.dim() == 2);
        CHECK(sp.b2.dim() == static_cast<std::size_t>(e + 2));
        CHECK(sp.dim_m1 == static_cast<std::size_t>(4 * e * e + 8 * e));
        CHECK(sp.dim_m2 == static_cast<std::size_t>(2 * e * e + 8 * e + 16));
        CHECK(sp.dim_m3 == static_cast<std::size_t>(2 * e * e + 8 * e));
    }
}

TEST_CASE("Chern data of the monad terms")
{
    for (int e = 1; e <= 6; ++e)
    {
        Surface s(e);
        auto sh = shape(e);
        auto c = chern_from_terms(sh);
        CHECK(c == ChernData{2, canonical_class(s), 4});
        oracle::Div c1{};
        std::vector<oracle::Div> plus, minus;
        for (auto d : sh.B.summands)
            plus.push_back({d.a, d.b});
        for (auto d : sh.A.summands)
            minus.push_back({d.a, d.b});
        for (auto d : sh.C.summands)
            minus.push_back({d.a, d.b});
        CHECK(oracle::c2_virtual(e, plus, minus, c1) == c.c2);
        CHECK(c1.a == c.c1.a);
        CHECK(c1.b == c.c1.b);
    }
    for (int e = 0; e <= 4; ++e)
    {
        Surface s(e);
        auto fx = euler_cotangent_fixture(s);
        CHECK(chern_from_terms(s, fx.at(-2), fx.at(-1), fx.at(0)) == ChernData{2, canonical_class(s), 4});
    }
}

TEST_CASE("mu on hand-built points")
{
    auto m = hand_point();
    CHECK(mu(m).is_zero());
    auto z = MonadPoint::zero(1, FieldSpec::prime(kDefaultPrime));
    CHECK(mu(z).is_zero());
    auto bad = hand_point();
    bad.b2(0, 0) = mono(Surface(1), S0T0, -2);
    auto prod = mu(bad);
    CHECK_FALSE(prod.is_zero());
    CHECK(prod(0, 0).terms().at(CoxMonomial{1, 0, 2, 0}) == -1);
    auto wrong = hand_point();
    wrong.a2(0, 0) = mono(Surface(1), S0T0);
    CHECK_THROWS_AS(mu(wrong), Error);
    auto shape_err = hand_point();
    shape_err.b1 = PolyMatrix(2, 3);
    CHECK_THROWS_AS(mu(shape_err), Error);
}

TEST_CASE("is_monad rejects degenerate points")
{
    auto z = MonadPoint::zero(1, FieldSpec::prime(kDefaultPrime));
    auto c = is_monad(z);
    CHECK(c.mu_zero);
    CHECK_FALSE(c.a_injective);
    CHECK_FALSE(c.b_surjective);
    CHECK_FALSE(c.ok());
    CHECK_FALSE(c.witness.empty());

    for (auto field : {FieldSpec::prime(kDefaultPrime), FieldSpec::rational()})
    {
        auto m = sample_monad(2, field, 3);
        auto no_a = m;
        for (std::size_t r = 0; r < no_a.a1.rows(); ++r)
            for (std::size_t col = 0; col < no_a.a1.cols(); ++col)
                no_a.a1(r, col) = CoxPolynomial(no_a.a1(r, col).degree());
        for (std::size_t r = 0; r < no_a.a2.rows(); ++r)
            for (std::size_t col = 0; col < no_a.a2.cols(); ++col)
                no_a.a2(r, col) = CoxPolynomial(DivisorClass{0, 1});
        auto ca = is_monad(no_a);
        CHECK(ca.mu_zero);
        CHECK_FALSE(ca.a_injective);
        CHECK(ca.b_surjective);

        auto no_b = m;
        no_b.b1 = MonadPoint::zero(2, field).b1;
        no_b.b2 = MonadPoint::zero(2, field).b2;
        auto cb = is_monad(no_b);
        CHECK(cb.mu_zero);
        CHECK(cb.a_injective);
        CHECK_FALSE(cb.b_surjective);
    }
    // the hand point has a2 of rank one, so a drops rank somewhere
    CHECK_FALSE(is_monad(hand_point()).ok());
}

TEST_CASE("b with a single nonzero 2x2 minor is never surjective")
{
    // With b1 = 0 and two nonzero columns in b2, the only minor is a binary quadratic
    // on each fibre, which has a root over the algebraic closure.
    Surface s(1);
    auto m = sample_monad(1, FieldSpec::prime(kDefaultPrime), 21);
    m.b1 = MonadPoint::zero(1, m.field).b1;
    m.b2 = MonadPoint::zero(1, m.field).b2;
    m.b2(0, 0) = mono(s, S0T0);
    m.b2(0, 1) = mono(s, {0, 1, 0, 0});
    m.b2(1, 0) = mono(s, {0, 1, 0, 0}, -1);
    m.b2(1, 1) = mono(s, {1, 0, 0, 1});
    auto c = is_monad(m);
    CHECK(c.a_injective);
    CHECK_FALSE(c.b_surjective);
    CHECK_FALSE(c.ok());
}

TEST_CASE("sampled monads")
{
    for (int e = 1; e <= 3; ++e)
        for (auto field : {FieldSpec::prime(kDefaultPrime), FieldSpec::rational()})
        {
            auto m = sample_monad(e, field, 42);
            CHECK(m.seed == 42);
            CHECK(mu(m).is_zero());
            CHECK(is_monad(m).ok());
            CHECK(jacobian_rank_mu(m) == static_cast<std::size_t>(2 * e * e + 8 * e));
            CHECK(b_solution_dim(m) == 16);
            CHECK(sample_monad(e, field, 42) == m);
            if (!field.is_prime())
                for (std::size_t r = 0; r < 2; ++r)
                    for (std::size_t k = 0; k < m.b2.cols(); ++k)
                        for (const auto& [mono_, c] : m.b2(r, k).terms())
                            CHECK(c.get_den() == 1);
        }
    CHECK_THROWS_AS(sample_monad(0, FieldSpec::prime(kDefaultPrime), 1), Error);
    CHECK(jacobian_rank_mu(MonadPoint::zero(2, FieldSpec::prime(kDefaultPrime))) == 0);
}

TEST_CASE("classification of sampled monads")
{
    for (int e = 1; e <= 3; ++e)
    {
        auto m = sample_monad(e, e == 3 ? FieldSpec::rational() : FieldSpec::prime(kDefaultPrime), 7);
        auto inv = classify(m);
        Surface s(e);
        CHECK(inv.chern == ChernData{2, canonical_class(s), 4});
        CHECK(inv.h_table.at({0, 0}) == LineCohomology{0, 2, 0});
        CHECK(inv.h_table.at({0, -1}) == LineCohomology{0, 2, 0});
        CHECK(inv.h_table.at({-1, 0}) == LineCohomology{0, e + 2, 0});
        CHECK(inv.h_table.at({-1, -1}) == LineCohomology{0, e, 0});
        CHECK(inv.vanishing);
        CHECK(inv.prioritary);
        CHECK(inv.prioritary_witness_h0 == 0);
        CHECK(2 * inv.d >= -2);
        CHECK(inv.r <= -2);
        CHECK(inv.ell_zeta >= 0);
        CHECK(inv.fibre_d.size() == 7);
        // r is maximal: h0(V(-dC0-rF)) != 0 and h0(V(-dC0-(r+1)F)) = 0
        auto c = m.complex();
        CHECK(bundle_cohomology(s, c, {-inv.d, -inv.r}, m.field).h0 != 0);
        CHECK(bundle_cohomology(s, c, {-inv.d, -inv.r - 1}, m.field).h0 == 0);
    }
}

TEST_CASE("prioritary criterion")
{
    Surface s1(1);
    ChernData v{2, canonical_class(s1), 4};
    CHECK(is_prioritary(s1, v, -1, 5).prioritary);
    auto np = is_prioritary(s1, v, 0, 0);
    CHECK_FALSE(np.prioritary);
    CHECK(np.witness_divisor == DivisorClass{0, 1});
    CHECK(np.witness_h0 == 2);
    auto yes = is_prioritary(s1, v, 0, -1);
    CHECK(yes.prioritary);
    CHECK(yes.witness_divisor == DivisorClass{0, -1});
    CHECK(yes.witness_h0 == 0);
    CHECK_THROWS_AS(is_prioritary(s1, v, -2, 0), Error);
    for (int e = 0; e <= 4; ++e)
    {
        Surface s(e);
        ChernData ve{2, canonical_class(s), 4};
        for (std::int64_t d = -1; d <= 5; ++d)
            for (std::int64_t r = -5; r <= 5; ++r)
            {
                auto res = is_prioritary(s, ve, d, r);
                CHECK(res.prioritary == (d == -1 || r <= -1));
                // witness 2d C0 + (2r+1) F for c1 = K
                CHECK(res.witness_divisor == DivisorClass{2 * d, 2 * r + 1});
                CHECK(res.prioritary == (oracle::count_sections(e, {2 * d, 2 * r + 1}) == 0));
            }
        // a general first Chern class
        ChernData w{2, {1, 3}, 2};
        for (std::int64_t d = 1; d <= 4; ++d)
            for (std::int64_t r = -4; r <= 6; ++r)
            {
                auto res = is_prioritary(s, w, d, r);
                CHECK(res.prioritary == (d == 1 || 2 * r < 3 + e + 1));
            }
    }
}

TEST_CASE("monad lemma conditions")
{
    for (int e = 1; e <= 4; ++e)
    {
        auto c = lemma_monads_conditions(shape(e));
        CHECK(c.all_zero());
        for (const auto& [name, v] : c.named())
            CHECK_MESSAGE(v == 0, name);
        Surface s(e);
        // negative controls
        auto sh = shape(e);
        LineBundleSum up{{{0, 1}, {0, 1}}};
        auto bad = lemma_monads_conditions(s, sh.A, sh.B, up);
        CHECK(bad.h1_cdual_b == 4);
        CHECK(bad.hom_c_b == 0);
        CHECK_FALSE(bad.all_zero());
        LineBundleSum down{{{0, -2}, {0, -2}}};
        auto bad2 = lemma_monads_conditions(s, sh.A, sh.B, down);
        CHECK(bad2.hom_c_b == 8);
        CHECK_FALSE(bad2.all_zero());
    }
}

TEST_CASE("monad JSON round trip")
{
    for (auto field : {FieldSpec::prime(kDefaultPrime), FieldSpec::rational()})
    {
        auto m = sample_monad(2, field, 99);
        auto text = monad_to_json(m);
        auto back = monad_from_json(text);
        CHECK(back == m);
        CHECK(monad_to_json(back) == text);
        auto list = monad_list_to_json({m, m});
        CHECK(monad_list_from_json(list) == std::vector<MonadPoint>{m, m});
    }
    auto hand = hand_point();
    hand.b1(0, 0) = mono(Surface(1), T0).scaled(Rational(-7, 3));
    CHECK(monad_from_json(monad_to_json(hand)) == hand);
    CHECK(monad_to_json(hand).find("\"-7/3\"") != std::string::npos);

    CHECK_THROWS_AS(monad_from_json("{"), Error);
    CHECK_THROWS_AS(monad_from_json(R"({"schema_version":2})"), Error);
    auto text = monad_to_json(hand);
    auto pos = text.find("\"e\":1");
    REQUIRE(pos != std::string::npos);
    auto bad_e = text;
    bad_e.replace(pos, 5, "\"e\":0");
    CHECK_THROWS_AS(monad_from_json(bad_e), Error);
}
