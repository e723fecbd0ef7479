// One PASS/FAIL line per acceptance criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "hbl/cech.hpp"
#include "hbl/cox.hpp"
#include "hbl/monad.hpp"
#include "hbl/rationality.hpp"
#include "oracles.hpp"
#include "pool.hpp"

using namespace hbl;

namespace
{

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass)
        {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string tag(int e) { return "e=" + std::to_string(e) + " "; }

std::string fmt(const LineCohomology& h)
{
    return "(" + std::to_string(h.h0) + "," + std::to_string(h.h1) + "," + std::to_string(h.h2) + ")";
}

constexpr int kSampleSeed = 1;
constexpr unsigned kSamplesPerE = 20;

struct Sampled
{
    int e = 1;
    MonadPoint m;
    MonadCheck check;
    BundleInvariants inv;
    BeilinsonPage page;
    std::size_t jac_rank = 0;
    double seconds = 0;
};

std::vector<Sampled> sample_all()
{
    return cli::parallel_map<Sampled>(3 * kSamplesPerE, cli::worker_count(), [](std::size_t k) {
        auto t0 = Clock::now();
        Sampled s;
        s.e = static_cast<int>(k / kSamplesPerE) + 1;
        s.m = sample_monad(s.e, FieldSpec::prime(kDefaultPrime), kSampleSeed + k % kSamplesPerE);
        s.check = is_monad(s.m);
        s.inv = classify(s.m);
        s.page = beilinson_page(Surface(s.e), s.m.complex(), s.m.field);
        s.jac_rank = jacobian_rank_mu(s.m);
        s.seconds = seconds_since(t0);
        return s;
    });
}

Outcome cohomology_oracle()
{
    Outcome o;
    auto t0 = Clock::now();
    for (int e = 0; e <= 4; ++e)
    {
        Surface s(e);
        auto k = canonical_class(s);
        for (std::int64_t a = -8; a <= 8; ++a)
            for (std::int64_t b = -8; b <= 8; ++b)
            {
                DivisorClass d{a, b};
                auto engine = cech_line_cohomology(s, d);
                LineCohomology closed{h0_dim(s, d), h1_dim(s, d), h2_dim(s, d)};
                auto label = tag(e) + d.str();
                o.require(engine == closed, label + " engine " + fmt(engine) + " closed " + fmt(closed));
                auto dual = cech_line_cohomology(s, k - d);
                o.require(engine.h0 == dual.h2 && engine.h1 == dual.h1 && engine.h2 == dual.h0,
                          label + " Serre duality");
                auto brute = oracle::line_cohomology(e, {a, b});
                o.require(engine.h0 == brute.h0 && engine.h1 == brute.h1 && engine.h2 == brute.h2,
                          label + " brute-force oracle");
            }
    }
    double t = seconds_since(t0);
    o.require(t < 120.0, "runtime " + std::to_string(t) + " s >= 120 s");
    if (o.pass)
        o.detail = "5 x 289 classes, " + std::to_string(t) + " s";
    return o;
}

Outcome dimension_values()
{
    Outcome o;
    for (int e = 1; e <= 6; ++e)
    {
        Surface s(e);
        o.require(cech_line_cohomology(s, {1, e}).h0 == e + 2, tag(e) + "h0(C0+eF)");
        o.require(cech_line_cohomology(s, {1, e + 1}).h0 == e + 4, tag(e) + "h0(C0+(e+1)F)");
        o.require(cech_line_cohomology(s, {1, e - 1}).h1 == 0, tag(e) + "h1(C0+(e-1)F)");
        o.require(oracle::count_sections(e, {1, e}) == e + 2, tag(e) + "h0(C0+eF) by count");
        o.require(oracle::count_sections(e, {1, e + 1}) == e + 4, tag(e) + "h0(C0+(e+1)F) by count");
    }
    if (o.pass)
        o.detail = "e = 1..6";
    return o;
}

Outcome monad_samples(const std::vector<Sampled>& all, double wall)
{
    Outcome o;
    for (const auto& s : all)
    {
        auto label = tag(s.e) + "seed " + std::to_string(s.m.seed) + " ";
        o.require(s.check.mu_zero, label + "mu != 0");
        o.require(s.check.a_injective, label + "a not injective: " + s.check.witness);
        o.require(s.check.b_surjective, label + "b not surjective: " + s.check.witness);
        const std::pair<DivisorClass, LineCohomology> expected[] = {
            {{0, 0}, {0, 2, 0}},
            {{0, -1}, {0, 2, 0}},
            {{-1, 0}, {0, s.e + 2, 0}},
            {{-1, -1}, {0, s.e, 0}},
        };
        for (const auto& [twist, h] : expected)
        {
            auto got = s.inv.h_table.at(twist);
            o.require(got == h, label + "h" + twist.str() + " = " + fmt(got) + " expected " + fmt(h));
        }
        o.require(s.inv.h_table.at({1, 1}).h0 == 0, label + "h0(V(C0+F)) != 0");
        o.require(s.inv.vanishing, label + "vanishing flag");
        o.require(s.page.rows_zero(0) && s.page.rows_zero(2), label + "Beilinson rows q = 0, 2");
    }
    o.require(all.size() == 3 * kSamplesPerE, "sample count");
    o.require(wall < 600.0, "runtime " + std::to_string(wall) + " s >= 600 s");
    if (o.pass)
        o.detail = std::to_string(all.size()) + " monads over F_10007, " + std::to_string(wall) + " s";
    return o;
}

Outcome prioritary(const std::vector<Sampled>& all)
{
    Outcome o;
    for (const auto& s : all)
    {
        auto label = tag(s.e) + "seed " + std::to_string(s.m.seed) + " ";
        const auto& v = s.inv;
        o.require(v.d == -1 || v.r <= -1, label + "d = " + std::to_string(v.d) + ", r = " + std::to_string(v.r));
        o.require(v.r <= -2, label + "r = " + std::to_string(v.r) + " > -2");
        o.require(v.prioritary, label + "not prioritary");
        o.require(v.prioritary_witness_h0 == 0, label + "witness h0 != 0");
        o.require(oracle::count_sections(s.e, {2 * v.d, 2 * v.r + 1}) == 0, label + "witness h0 by count");
        o.require(v.ell_zeta >= 0, label + "ell(zeta) < 0");
    }
    if (o.pass)
        o.detail = std::to_string(all.size()) + " monads";
    return o;
}

Outcome smoothness(const std::vector<Sampled>& all)
{
    Outcome o;
    for (const auto& s : all)
    {
        auto want = static_cast<std::size_t>(2 * s.e * s.e + 8 * s.e);
        o.require(s.jac_rank == want, tag(s.e) + "seed " + std::to_string(s.m.seed) + " rank " +
                                          std::to_string(s.jac_rank) + " expected " + std::to_string(want));
        auto sp = block_spaces(s.e);
        auto dim_z = static_cast<std::int64_t>(sp.dim_m1 + sp.dim_m2) - static_cast<std::int64_t>(s.jac_rank);
        o.require(dim_z == 4 * (s.e * s.e + 2 * s.e + 4), tag(s.e) + "dim Z");
    }
    for (int e = 1; e <= 8; ++e)
    {
        auto d = m_dims(e);
        o.require(d.m1 == 4 * e * e + 8 * e - 1 && d.m1 == d.direct1, tag(e) + "m1");
        o.require(d.m2 == 2 * e * e + 8 * e + 15 && d.m2 == d.direct2, tag(e) + "m2");
        o.require(d.m3 == 2 * e * e + 8 * e - 1 && d.m3 == d.direct3, tag(e) + "m3");
    }
    if (o.pass)
        o.detail = "jacobian ranks 2e^2+8e, m_i for e = 1..8";
    return o;
}

Outcome lemma_conditions()
{
    Outcome o;
    for (int e = 1; e <= 4; ++e)
        for (const auto& [name, v] : lemma_monads_conditions(shape(e)).named())
            o.require(v == 0, tag(e) + name + " = " + std::to_string(v));
    if (o.pass)
        o.detail = "24 zeros";
    return o;
}

Outcome rationality()
{
    Outcome o;
    auto t0 = Clock::now();
    double e2_seconds = 0;
    for (int e = 1; e <= 2; ++e)
    {
        auto d = m_dims(e);
        auto want_k = (d.m1 + 1) * (d.m2 + 1) - (d.m3 + 1);
        for (std::uint32_t p : {kDefaultPrime, 32003u})
        {
            auto te = Clock::now();
            auto b = bilinear_kernel(e, FieldSpec::prime(p));
            if (e == 2)
                e2_seconds += seconds_since(te);
            auto label = tag(e) + "p=" + std::to_string(p) + " ";
            o.require(b.rank == b.target_dim && b.preimages_verified, label + "not surjective");
            o.require(static_cast<std::int64_t>(b.dim_k) == want_k, label + "dim K = " + std::to_string(b.dim_k));
        }
        auto audit = inequality_audit(e);
        o.require(d.m2 - d.m3 == 16, tag(e) + "m2 - m3");
        o.require(audit.pass(), tag(e) + "inequality chain");
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
        {
            auto m = sample_monad(e, FieldSpec::prime(kDefaultPrime), seed);
            o.require(fiber_solution_dim(m) == 16, tag(e) + "fibre solution dim");
        }
    }
    o.require(e2_seconds < 600.0, "e = 2 runtime " + std::to_string(e2_seconds) + " s >= 600 s");
    if (o.pass)
        o.detail = "e = 1, 2 over p = 10007, 32003, " + std::to_string(seconds_since(t0)) + " s";
    return o;
}

Outcome euler_identities()
{
    Outcome o;
    for (int e = 0; e <= 6; ++e)
    {
        Surface s(e);
        ChernData v{2, canonical_class(s), 4};
        auto end = chern_endo(s, v);
        o.require(euler_char(s, end) == -4, tag(e) + "chi(V,V)");
        o.require(end.c2 == 8, tag(e) + "c2(V* x V)");
        o.require(4 * v.c2 - intersect(s, v.c1, v.c1) == 8, tag(e) + "4c2 - c1^2");
        auto fx = euler_cotangent_fixture(s);
        auto field = FieldSpec::prime(kDefaultPrime);
        o.require(bundle_cohomology(s, fx, {1, 1}, field).h0 == 0, tag(e) + "h0(Omega(C0+F))");
        auto h = bundle_cohomology(s, fx, {0, 0}, field);
        o.require(h == LineCohomology{0, 2, 0}, tag(e) + "h(Omega) = " + fmt(h));
        o.require(chern_from_terms(s, fx.at(-2), fx.at(-1), fx.at(0)) == v, tag(e) + "fixture Chern data");
        o.require(euler_fixture_surjective(s), tag(e) + "fixture not surjective");
    }
    if (o.pass)
        o.detail = "e = 0..6";
    return o;
}

Outcome determinism()
{
    Outcome o;
    cli::RunConfig cfg;
    cfg.e_lo = 1;
    cfg.e_hi = 3;
    cfg.samples = 3;
    cfg.seed = 11;
    auto a = cli::cmd_verify(cfg).to_json(false).dump();
    auto b = cli::cmd_verify(cfg).to_json(false).dump();
    o.require(a == b, "reports differ");
    if (o.pass)
        o.detail = std::to_string(a.size()) + " byte report reproduced";
    return o;
}

} // namespace

int main()
{
    std::vector<Sampled> samples;
    double sample_wall = 0;
    auto with_samples = [&]() -> const std::vector<Sampled>& {
        if (samples.empty())
        {
            auto t0 = Clock::now();
            samples = sample_all();
            sample_wall = seconds_since(t0);
        }
        return samples;
    };

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"cohomology oracle", cohomology_oracle},
        {"dimension values", dimension_values},
        {"monad sample suite",
         [&] {
             const auto& all = with_samples();
             return monad_samples(all, sample_wall);
         }},
        {"prioritary criterion", [&] { return prioritary(with_samples()); }},
        {"smoothness and dimension", [&] { return smoothness(with_samples()); }},
        {"monad lemma conditions", lemma_conditions},
        {"rationality arithmetic", rationality},
        {"Euler and chi identities", euler_identities},
        {"determinism", determinism},
    };

    int failed = 0;
    int index = 1;
    for (const auto& [name, fn] : criteria)
    {
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const std::exception& ex)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
        ++index;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
