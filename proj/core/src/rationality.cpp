#include "hbl/rationality.hpp"

#include <sstream>

#include "field_poly.hpp"
#include "hbl/linalg.hpp"

namespace hbl
{

namespace
{

// A coordinate of M1 or M2: block 0 is (a1 | b1), block 1 is (a2 | b2). For a-blocks
// (row, col) = (k, c); for b-blocks (row, col) = (r, k). mono indexes the entry basis.
struct Coord
{
    int block = 0;
    std::size_t row = 0, col = 0;
    std::size_t mono = 0;
};

struct Coordinates
{
    BlockSpaces sp;
    std::size_t e = 0;
    std::vector<Coord> a, b;

    const CohomologySpace& a_space(int block) const { return block == 0 ? sp.a1 : sp.a2; }
    const CohomologySpace& b_space(int block) const { return block == 0 ? sp.b1 : sp.b2; }
};

void push_block(std::vector<Coord>& out, int block, std::size_t rows, std::size_t cols, std::size_t dim)
{
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t u = 0; u < dim; ++u)
                out.push_back({block, r, c, u});
}

Coordinates coordinates(int e)
{
    Coordinates co;
    co.sp = block_spaces(e);
    co.e = static_cast<std::size_t>(e);
    push_block(co.a, 0, 2, co.e, co.sp.a1.dim());
    push_block(co.a, 1, co.e + 2, co.e, co.sp.a2.dim());
    push_block(co.b, 0, 2, 2, co.sp.b1.dim());
    push_block(co.b, 1, 2, co.e + 2, co.sp.b2.dim());
    return co;
}

// Row of M3 hit by the pure tensor a_i (x) b_j, or -1 when the product vanishes.
long product_row(const Coordinates& co, const Coord& a, const Coord& b)
{
    if (a.block != b.block || a.row != b.col)
        return -1;
    auto prod = co.a_space(a.block).basis[a.mono] * co.b_space(b.block).basis[b.mono];
    long idx = co.sp.target.index_of(prod);
    if (idx < 0)
        throw Error("internal: bilinear product outside H0(C0+(e+1)F)");
    return static_cast<long>((b.row * co.e + a.col) * co.sp.target.dim()) + idx;
}

template <class F>
std::size_t bilinear_rank(const F& f, const Coordinates& co)
{
    const std::size_t nb = co.b.size();
    Matrix<F> m(f, co.sp.dim_m3, co.a.size() * nb);
    for (std::size_t i = 0; i < co.a.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j)
        {
            long row = product_row(co, co.a[i], co.b[j]);
            if (row >= 0)
                m(static_cast<std::size_t>(row), i * nb + j) = f.add(m(static_cast<std::size_t>(row), i * nb + j), f.one());
        }
    return rank(f, std::move(m));
}

PolyMatrix& a_block(MonadPoint& m, int block) { return block == 0 ? m.a1 : m.a2; }
PolyMatrix& b_block(MonadPoint& m, int block) { return block == 0 ? m.b1 : m.b2; }

// Recomputes the image of a_i (x) b_j with the monad product and checks it is the unit
// vector at `row`.
bool verify_preimage(int e, const FieldSpec& field, const Coordinates& co, const Coord& a, const Coord& b,
                     std::size_t row)
{
    Surface s(e);
    auto m = MonadPoint::zero(e, field);
    a_block(m, a.block)(a.row, a.col) = CoxPolynomial::monomial(s, co.a_space(a.block).basis[a.mono]);
    b_block(m, b.block)(b.row, b.col) = CoxPolynomial::monomial(s, co.b_space(b.block).basis[b.mono]);
    auto prod = mu(m);
    const std::size_t t = co.sp.target.dim();
    const std::size_t entry = row / t, idx = row % t;
    const std::size_t r = entry / co.e, c = entry % co.e;
    for (std::size_t rr = 0; rr < prod.rows(); ++rr)
        for (std::size_t cc = 0; cc < prod.cols(); ++cc)
        {
            const auto& p = prod(rr, cc);
            if (rr == r && cc == c)
            {
                if (p.terms().size() != 1 || p.terms().begin()->first != co.sp.target.basis[idx] ||
                    p.terms().begin()->second != 1)
                    return false;
            }
            else if (!p.is_zero())
                return false;
        }
    return true;
}

template <class F>
std::size_t contracted_solution_dim(const F& f, const Coordinates& co, const MonadPoint& m)
{
    // a-coordinates of m
    std::vector<typename F::Elem> acoord(co.a.size(), f.zero());
    for (std::size_t i = 0; i < co.a.size(); ++i)
    {
        const auto& c = co.a[i];
        const auto& poly = (c.block == 0 ? m.a1 : m.a2)(c.row, c.col);
        auto it = poly.terms().find(co.a_space(c.block).basis[c.mono]);
        if (it != poly.terms().end())
            acoord[i] = f.from_rational(it->second);
    }
    Matrix<F> map(f, co.sp.dim_m3, co.b.size());
    for (std::size_t i = 0; i < co.a.size(); ++i)
    {
        if (f.is_zero(acoord[i]))
            continue;
        for (std::size_t j = 0; j < co.b.size(); ++j)
        {
            long row = product_row(co, co.a[i], co.b[j]);
            if (row >= 0)
                map(static_cast<std::size_t>(row), j) = f.add(map(static_cast<std::size_t>(row), j), acoord[i]);
        }
    }
    return co.b.size() - rank(f, std::move(map));
}

std::string str(std::int64_t v) { return std::to_string(v); }

} // namespace

MDims m_dims(int e)
{
    if (e < 1)
        throw Error("m_dims needs e >= 1");
    const std::int64_t le = e;
    MDims d;
    d.m1 = 4 * le * le + 8 * le - 1;
    d.m2 = 2 * le * le + 8 * le + 15;
    d.m3 = 2 * le * le + 8 * le - 1;
    auto sp = block_spaces(e);
    d.direct1 = static_cast<std::int64_t>(sp.dim_m1) - 1;
    d.direct2 = static_cast<std::int64_t>(sp.dim_m2) - 1;
    d.direct3 = static_cast<std::int64_t>(sp.dim_m3) - 1;
    if (d.m1 != d.direct1 || d.m2 != d.direct2 || d.m3 != d.direct3)
    {
        std::ostringstream os;
        os << "m_i closed forms (" << d.m1 << ", " << d.m2 << ", " << d.m3 << ") disagree with block sums ("
           << d.direct1 << ", " << d.direct2 << ", " << d.direct3 << ") at e = " << e;
        throw Error(os.str());
    }
    return d;
}

std::int64_t dim_parameter_space(int e)
{
    auto d = m_dims(e);
    return (d.m1 + 1) + (d.m2 + 1) - (d.m3 + 1);
}

BilinearResult bilinear_kernel(int e, const FieldSpec& field)
{
    if (e < 1)
        throw Error("bilinear_kernel needs e >= 1");
    if (e > kBilinearMaxE)
        throw Error("bilinear_kernel is limited to e <= " + std::to_string(kBilinearMaxE) +
                    " (the tensor matrix grows like e^4)");
    auto co = coordinates(e);
    BilinearResult out;
    out.source_dim = co.a.size() * co.b.size();
    out.target_dim = co.sp.dim_m3;
    out.rank = field.is_prime() ? bilinear_rank(PrimeField(field.p), co) : bilinear_rank(RationalField(), co);
    out.dim_k = out.source_dim - out.rank;

    std::vector<bool> hit(out.target_dim, false);
    out.preimages_verified = true;
    for (const auto& a : co.a)
        for (const auto& b : co.b)
        {
            long row = product_row(co, a, b);
            if (row < 0 || hit[static_cast<std::size_t>(row)])
                continue;
            hit[static_cast<std::size_t>(row)] = true;
            if (!verify_preimage(e, field, co, a, b, static_cast<std::size_t>(row)))
                out.preimages_verified = false;
        }
    for (bool h : hit)
        if (!h)
            out.preimages_verified = false;
    return out;
}

std::size_t fiber_solution_dim(const MonadPoint& m)
{
    auto co = coordinates(m.e);
    if (m.field.is_prime())
        return contracted_solution_dim(PrimeField(m.field.p), co, m);
    return contracted_solution_dim(RationalField(), co, m);
}

bool DimensionReport::pass() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

DimensionReport inequality_audit(int e, std::uint32_t p)
{
    auto d = m_dims(e);
    DimensionReport rep;
    rep.e = e;
    rep.m1 = d.m1;
    rep.m2 = d.m2;
    rep.m3 = d.m3;
    rep.dim_z = dim_parameter_space(e);
    const std::int64_t source = (d.m1 + 1) * (d.m2 + 1);
    if (e <= kBilinearMaxE)
    {
        rep.dim_k = static_cast<std::int64_t>(bilinear_kernel(e, FieldSpec::prime(p)).dim_k);
        rep.dim_k_from_rank = true;
    }
    else
        rep.dim_k = source - (d.m3 + 1);
    const std::int64_t m = rep.dim_k - 1;
    const std::int64_t le = e;

    auto add = [&](std::string name, std::string expected, std::string computed, bool pass) {
        rep.checks.push_back({std::move(name), std::move(expected), std::move(computed), pass});
    };
    add("m2 - m3", "16", str(d.m2 - d.m3), d.m2 - d.m3 == 16);
    add("dim Z", str(4 * (le * le + 2 * le + 4)), str(rep.dim_z), rep.dim_z == 4 * (le * le + 2 * le + 4));
    const std::int64_t lower = source - (d.m3 + 1);
    add("m + 1 >= (m1+1)(m2+1) - (m3+1)", ">= " + str(lower), str(m + 1), m + 1 >= lower);
    const std::int64_t rhs = d.m1 * d.m2 + d.m1 + d.m2;
    add("m + m2 >= m1 m2 + m1 + m2", ">= " + str(rhs), str(m + d.m2), m + d.m2 >= rhs);
    const std::int64_t fibre = m - d.m1 * d.m2 - d.m1;
    add("m - m1 m2 - m1 >= 15", ">= 15", str(fibre), fibre >= 15);
    return rep;
}

GroupDimAudit group_dim_audit(int e)
{
    auto sh = shape(e);
    Surface s(e);
    GroupDimAudit g;
    g.e = e;
    g.dim_end_a = hom_and_ext_dims(s, sh.A.summands, sh.A.summands).hom;
    g.dim_end_c = hom_and_ext_dims(s, sh.C.summands, sh.C.summands).hom;
    g.dim_end_b_full = hom_and_ext_dims(s, sh.B.summands, sh.B.summands).hom;
    // block-diagonal part: endomorphisms preserving each isotypic block
    std::vector<DivisorClass> fibre_part(sh.B.summands.begin(), sh.B.summands.begin() + 2);
    std::vector<DivisorClass> section_part(sh.B.summands.begin() + 2, sh.B.summands.end());
    g.dim_end_b_diag =
        hom_and_ext_dims(s, fibre_part, fibre_part).hom + hom_and_ext_dims(s, section_part, section_part).hom;
    g.dim_g_diag = g.dim_end_a + g.dim_end_b_diag + g.dim_end_c;
    g.dim_g_full = g.dim_end_a + g.dim_end_b_full + g.dim_end_c;
    const std::int64_t le = e;
    g.dim_quotient_stated = 2 * le * le + 4 * le + 4;
    g.dim_z = dim_parameter_space(e);
    g.dim_g_implied = g.dim_z - g.dim_quotient_stated;
    return g;
}

} // namespace hbl
