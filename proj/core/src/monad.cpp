#include "hbl/monad.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "field_poly.hpp"
#include "hbl/linalg.hpp"

namespace hbl
{

namespace
{

DivisorClass deg_a1(int e) { return {1, e}; }
DivisorClass deg_a2() { return {0, 1}; }
DivisorClass deg_b1() { return {0, 1}; }
DivisorClass deg_b2(int e) { return {1, e}; }

void require_block(const PolyMatrix& m, std::size_t rows, std::size_t cols, const DivisorClass& deg,
                   const char* name)
{
    if (m.rows() != rows || m.cols() != cols)
    {
        std::ostringstream os;
        os << "block " << name << " has shape " << m.rows() << "x" << m.cols() << ", expected " << rows << "x"
           << cols;
        throw Error(os.str());
    }
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (!m(r, c).is_zero() && m(r, c).degree() != deg)
                throw Error(std::string("block ") + name + " entry has degree " + m(r, c).degree().str() +
                            ", expected " + deg.str());
}

void require_blocks(const MonadPoint& m)
{
    if (m.e < 1)
        throw Error("monad points need e >= 1");
    const auto e = static_cast<std::size_t>(m.e);
    require_block(m.a1, 2, e, deg_a1(m.e), "a1");
    require_block(m.a2, e + 2, e, deg_a2(), "a2");
    require_block(m.b1, 2, 2, deg_b1(), "b1");
    require_block(m.b2, 2, e + 2, deg_b2(m.e), "b2");
}

PolyMatrix zero_block(std::size_t rows, std::size_t cols, const DivisorClass& deg)
{
    PolyMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out(r, c) = CoxPolynomial(deg);
    return out;
}

// ---------------------------------------------------------------------------
// Blocks over a concrete field and the exact fibre checks.

template <class F>
struct Blocks
{
    std::size_t e = 0;
    std::vector<detail::FieldPoly<F>> a1, a2, b1, b2; // row-major
};

template <class F>
std::vector<detail::FieldPoly<F>> convert(const F& f, const PolyMatrix& m)
{
    std::vector<detail::FieldPoly<F>> out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out.push_back(detail::to_field(f, m(r, c)));
    return out;
}

template <class F>
Blocks<F> field_blocks(const F& f, const MonadPoint& m)
{
    Blocks<F> b;
    b.e = static_cast<std::size_t>(m.e);
    b.a1 = convert(f, m.a1);
    b.a2 = convert(f, m.a2);
    b.b1 = convert(f, m.b1);
    b.b2 = convert(f, m.b2);
    return b;
}

template <class F>
using Form = std::vector<typename F::Elem>;

template <class F>
struct FibreBlocks
{
    std::vector<Form<F>> a1, a2, b1, b2;
};

template <class F>
FibreBlocks<F> restrict_blocks(const F& f, const Blocks<F>& bl, const typename F::Elem& t0,
                               const typename F::Elem& t1)
{
    auto p0 = detail::powers(f, t0, bl.e + 1);
    auto p1 = detail::powers(f, t1, bl.e + 1);
    auto conv = [&](const std::vector<detail::FieldPoly<F>>& src, int sdeg) {
        std::vector<Form<F>> out;
        out.reserve(src.size());
        for (const auto& p : src)
            out.push_back(detail::restrict_to_fibre(f, p, sdeg, p0, p1));
        return out;
    };
    return {conv(bl.a1, 1), conv(bl.a2, 0), conv(bl.b1, 0), conv(bl.b2, 1)};
}

template <class F>
bool a_injective_on_fibre(const F& f, std::size_t e, const FibreBlocks<F>& fb)
{
    Matrix<F> a2(f, e + 2, e);
    for (std::size_t r = 0; r < e + 2; ++r)
        for (std::size_t c = 0; c < e; ++c)
            a2(r, c) = fb.a2[r * e + c][0];
    auto ker = kernel(f, a2);
    if (ker.cols() == 0)
        return true;
    if (ker.cols() >= 2)
        return false;
    // a1 v is a pair of linear forms; they share a zero iff they are dependent.
    Matrix<F> forms(f, 2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < e; ++c)
            for (std::size_t i = 0; i < 2; ++i)
                forms(r, i) = f.add(forms(r, i), f.mul(fb.a1[r * e + c][i], ker(c, 0)));
    return !f.is_zero(determinant(f, forms));
}

template <class F>
typename F::Elem quadratic_resultant(const F& f, const Form<F>& p, const Form<F>& q)
{
    Matrix<F> syl(f, 4, 4);
    for (std::size_t shift = 0; shift < 2; ++shift)
        for (std::size_t i = 0; i < 3; ++i)
        {
            syl(shift, shift + i) = p[2 - i];
            syl(2 + shift, shift + i) = q[2 - i];
        }
    return determinant(f, syl);
}

template <class F>
bool b_surjective_on_fibre(const F& f, std::size_t e, const FibreBlocks<F>& fb)
{
    const std::size_t n2 = e + 2;
    Matrix<F> b1t(f, 2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            b1t(c, r) = fb.b1[r * 2 + c][0];
    auto left = kernel(f, b1t);
    if (left.cols() == 0)
        return true;
    if (left.cols() == 1)
    {
        Matrix<F> forms(f, n2, 2);
        for (std::size_t c = 0; c < n2; ++c)
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t i = 0; i < 2; ++i)
                    forms(c, i) = f.add(forms(c, i), f.mul(left(r, 0), fb.b2[r * n2 + c][i]));
        return rank(f, forms) == 2;
    }
    // b1 = 0: b2 must have full rank everywhere, i.e. its 2x2 minors have no common zero.
    std::vector<Form<F>> minors;
    for (std::size_t c = 0; c < n2; ++c)
        for (std::size_t d = c + 1; d < n2; ++d)
        {
            const auto& x0 = fb.b2[c];
            const auto& x1 = fb.b2[n2 + d];
            const auto& y0 = fb.b2[d];
            const auto& y1 = fb.b2[n2 + c];
            Form<F> q(3, f.zero());
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    q[i + j] = f.add(q[i + j], f.sub(f.mul(x0[i], x1[j]), f.mul(y0[i], y1[j])));
            minors.push_back(std::move(q));
        }
    Matrix<F> span(f, minors.size(), 3);
    for (std::size_t r = 0; r < minors.size(); ++r)
        for (std::size_t i = 0; i < 3; ++i)
            span(r, i) = minors[r][i];
    auto ech = rref(f, span);
    const std::size_t rk = ech.pivot_cols.size();
    if (rk == 3)
        return true;
    if (rk <= 1)
        return false;
    Form<F> q0(3), q1(3);
    for (std::size_t i = 0; i < 3; ++i)
    {
        q0[i] = ech.reduced(0, i);
        q1[i] = ech.reduced(1, i);
    }
    return !f.is_zero(quadratic_resultant(f, q0, q1));
}

struct FibreScan
{
    bool a_ok = true;
    bool b_ok = true;
    std::size_t checked = 0;
    std::string witness;

    bool done() const { return !a_ok && !b_ok; }
};

template <class F>
void scan_fibre(const F& f, const Blocks<F>& bl, const typename F::Elem& t0, const typename F::Elem& t1,
                const std::string& where, FibreScan& scan)
{
    auto fb = restrict_blocks(f, bl, t0, t1);
    ++scan.checked;
    if (scan.a_ok && !a_injective_on_fibre(f, bl.e, fb))
    {
        scan.a_ok = false;
        if (scan.witness.empty())
            scan.witness = "a drops rank on the fibre over " + where;
    }
    if (scan.b_ok && !b_surjective_on_fibre(f, bl.e, fb))
    {
        scan.b_ok = false;
        if (scan.witness.empty())
            scan.witness = "b drops rank on the fibre over " + where;
    }
}

template <class Ext>
std::string ext_point_name(const Ext& ext, const typename Ext::Elem& x)
{
    std::ostringstream os;
    os << "[(";
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (i)
            os << ",";
        os << rational_to_string(ext.base().to_rational(x[i]));
    }
    os << "):1] in " << ext.name();
    return os.str();
}

template <class Ext, class Rng>
void scan_extension(const Ext& ext, const MonadPoint& m, unsigned count, Rng& rng, FibreScan& scan)
{
    auto bl = field_blocks(ext, m);
    for (unsigned i = 0; i < count && !scan.done(); ++i)
    {
        auto x = ext.random(rng);
        scan_fibre(ext, bl, x, ext.one(), ext_point_name(ext, x), scan);
    }
}

FibreScan scan_prime(const MonadPoint& m, const FiberCheckOptions& opts)
{
    PrimeField f(m.field.p);
    FibreScan scan;
    auto bl = field_blocks(f, m);
    scan_fibre(f, bl, f.one(), f.zero(), "[1:0] in " + f.name(), scan);
    for (std::uint32_t x = 0; x < f.modulus() && !scan.done(); ++x)
        scan_fibre(f, bl, x, f.one(), "[" + std::to_string(x) + ":1] in " + f.name(), scan);
    std::mt19937_64 rng(opts.seed);
    for (unsigned deg : {2u, 3u})
        if (!scan.done())
            scan_extension(prime_extension(f, deg), m, opts.extension_fibres, rng, scan);
    return scan;
}

FibreScan scan_rational(const MonadPoint& m, const FiberCheckOptions& opts)
{
    RationalField f;
    FibreScan scan;
    auto bl = field_blocks(f, m);
    scan_fibre(f, bl, f.one(), f.zero(), "[1:0] in Q", scan);
    const auto g = static_cast<long>(opts.rational_grid);
    for (long x = -g; x <= g && !scan.done(); ++x)
        scan_fibre(f, bl, Rational(x), f.one(), "[" + std::to_string(x) + ":1] in Q", scan);
    std::mt19937_64 rng(opts.seed);
    if (!scan.done())
        scan_extension(rational_cubic_extension(), m, opts.extension_fibres, rng, scan);
    return scan;
}

// ---------------------------------------------------------------------------
// Linear maps into M3 = 2 x e matrices over H0(C0+(e+1)F).

struct Layout
{
    BlockSpaces sp;
    std::size_t e = 0;

    std::size_t t() const { return sp.target.dim(); }
    std::size_t row(std::size_t r, std::size_t c, long idx) const
    {
        return (r * e + c) * t() + static_cast<std::size_t>(idx);
    }
    std::size_t a1_col(std::size_t k, std::size_t c, std::size_t u) const { return (k * e + c) * sp.a1.dim() + u; }
    std::size_t a2_col(std::size_t k, std::size_t c, std::size_t u) const
    {
        return 2 * e * sp.a1.dim() + (k * e + c) * sp.a2.dim() + u;
    }
    std::size_t b1_col(std::size_t r, std::size_t k, std::size_t u) const { return (r * 2 + k) * sp.b1.dim() + u; }
    std::size_t b2_col(std::size_t r, std::size_t k, std::size_t u) const
    {
        return 4 * sp.b1.dim() + (r * (e + 2) + k) * sp.b2.dim() + u;
    }
};

Layout layout(int e) { return Layout{block_spaces(e), static_cast<std::size_t>(e)}; }

template <class F>
void add_product(const F& f, Matrix<F>& m, const Layout& lay, std::size_t r, std::size_t c, std::size_t col,
                 const detail::FieldPoly<F>& poly, const CoxMonomial& u)
{
    for (const auto& term : poly)
    {
        long idx = lay.sp.target.index_of(term.mono * u);
        if (idx < 0)
            throw Error("internal: product outside H0(C0+(e+1)F)");
        auto& slot = m(lay.row(r, c, idx), col);
        slot = f.add(slot, term.coeff);
    }
}

// Columns: b-coordinates; the map b -> b a for fixed a.
template <class F>
Matrix<F> b_to_mu(const F& f, const Layout& lay, const Blocks<F>& bl)
{
    const std::size_t e = lay.e;
    Matrix<F> m(f, lay.sp.dim_m3, lay.sp.dim_m2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < e; ++c)
        {
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t u = 0; u < lay.sp.b1.dim(); ++u)
                    add_product(f, m, lay, r, c, lay.b1_col(r, k, u), bl.a1[k * e + c], lay.sp.b1.basis[u]);
            for (std::size_t k = 0; k < e + 2; ++k)
                for (std::size_t u = 0; u < lay.sp.b2.dim(); ++u)
                    add_product(f, m, lay, r, c, lay.b2_col(r, k, u), bl.a2[k * e + c], lay.sp.b2.basis[u]);
        }
    return m;
}

// Columns: a-coordinates then b-coordinates; the differential of (a, b) -> b a.
template <class F>
Matrix<F> jacobian(const F& f, const Layout& lay, const Blocks<F>& bl)
{
    const std::size_t e = lay.e;
    const std::size_t m1 = lay.sp.dim_m1;
    Matrix<F> m(f, lay.sp.dim_m3, m1 + lay.sp.dim_m2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < e; ++c)
        {
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t u = 0; u < lay.sp.a1.dim(); ++u)
                    add_product(f, m, lay, r, c, lay.a1_col(k, c, u), bl.b1[r * 2 + k], lay.sp.a1.basis[u]);
            for (std::size_t k = 0; k < e + 2; ++k)
                for (std::size_t u = 0; u < lay.sp.a2.dim(); ++u)
                    add_product(f, m, lay, r, c, lay.a2_col(k, c, u), bl.b2[r * (e + 2) + k], lay.sp.a2.basis[u]);
        }
    auto bpart = b_to_mu(f, lay, bl);
    for (std::size_t i = 0; i < bpart.rows(); ++i)
        for (std::size_t j = 0; j < bpart.cols(); ++j)
            m(i, m1 + j) = bpart(i, j);
    return m;
}

template <class F>
CoxPolynomial poly_from_coords(const Surface& s, const F& f, const CohomologySpace& space,
                               const std::vector<typename F::Elem>& x, std::size_t offset)
{
    CoxPolynomial p(space.divisor);
    for (std::size_t u = 0; u < space.dim(); ++u)
        p.add_term(s, space.basis[u], f.to_rational(x[offset + u]));
    return p;
}

template <class F, class Rng>
PolyMatrix random_block(const Surface& s, const F& f, const CohomologySpace& space, std::size_t rows,
                        std::size_t cols, Rng& rng)
{
    PolyMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
        {
            CoxPolynomial p(space.divisor);
            for (const auto& mono : space.basis)
                p.add_term(s, mono, f.to_rational(f.random(rng)));
            out(r, c) = p;
        }
    return out;
}

// Scales b to coprime integer coefficients; b a = 0 is preserved.
void clear_denominators(MonadPoint& m)
{
    auto each = [&](auto&& fn) {
        for (PolyMatrix* blk : {&m.b1, &m.b2})
            for (std::size_t r = 0; r < blk->rows(); ++r)
                for (std::size_t c = 0; c < blk->cols(); ++c)
                    fn((*blk)(r, c));
    };
    mpz_class lcm = 1, gcd = 0;
    each([&](const CoxPolynomial& p) {
        for (const auto& [mono, coeff] : p.terms())
        {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coeff.get_den_mpz_t());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), coeff.get_num_mpz_t());
        }
    });
    if (gcd == 0)
        return;
    // numerators of coeff * lcm have gcd equal to gcd(numerators) once denominators are cleared
    mpz_class g = 0;
    each([&](const CoxPolynomial& p) {
        for (const auto& [mono, coeff] : p.terms())
        {
            Rational v = coeff * Rational(lcm);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        }
    });
    Rational scale = Rational(lcm) / Rational(g);
    each([&](CoxPolynomial& p) { p = p.scaled(scale); });
}

template <class F>
MonadPoint sample_impl(const F& f, int e, const FieldSpec& field, std::uint64_t seed, unsigned max_attempts)
{
    Surface s(e);
    auto lay = layout(e);
    const std::size_t ue = static_cast<std::size_t>(e);
    std::mt19937_64 rng(seed);
    std::string last;
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt)
    {
        MonadPoint m = MonadPoint::zero(e, field);
        m.seed = seed;
        m.a1 = random_block(s, f, lay.sp.a1, 2, ue, rng);
        m.a2 = random_block(s, f, lay.sp.a2, ue + 2, ue, rng);
        auto bl = field_blocks(f, m);
        auto ker = kernel(f, b_to_mu(f, lay, bl));
        std::vector<typename F::Elem> x(lay.sp.dim_m2, f.zero());
        for (std::size_t j = 0; j < ker.cols(); ++j)
        {
            auto lambda = f.random(rng);
            if (f.is_zero(lambda))
                continue;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!f.is_zero(ker(i, j)))
                    x[i] = f.add(x[i], f.mul(lambda, ker(i, j)));
        }
        for (std::size_t r = 0; r < 2; ++r)
        {
            for (std::size_t k = 0; k < 2; ++k)
                m.b1(r, k) = poly_from_coords(s, f, lay.sp.b1, x, lay.b1_col(r, k, 0));
            for (std::size_t k = 0; k < ue + 2; ++k)
                m.b2(r, k) = poly_from_coords(s, f, lay.sp.b2, x, lay.b2_col(r, k, 0));
        }
        if (!field.is_prime())
            clear_denominators(m);
        auto check = is_monad(m);
        if (check.ok())
            return m;
        std::ostringstream os;
        os << "attempt " << attempt << ": kernel dim " << ker.cols() << ", "
           << (check.witness.empty() ? std::string("b a != 0") : check.witness);
        last = os.str();
    }
    std::ostringstream os;
    os << "sample_monad: no valid monad after " << max_attempts << " attempts (e=" << e << ", field "
       << field.name() << ", seed " << seed << "); last " << last;
    throw Error(os.str());
}

// ---------------------------------------------------------------------------
// Restriction to fibres for the generic splitting type.

template <class F>
std::int64_t fibre_h0(const F& f, const FibreBlocks<F>& fb, std::size_t e, std::size_t m)
{
    // Restricted terms: B|_F(m) = O(m)^2 + O(m-1)^(e+2), C|_F(m) = O(m)^2, A|_F(m) = O(m-1)^e.
    const std::size_t n2 = e + 2;
    const std::size_t cols = 2 * (m + 1) + n2 * m;
    const std::size_t rows = 2 * (m + 1);
    Matrix<F> map(f, rows, cols);
    for (std::size_t r = 0; r < 2; ++r)
    {
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i <= m; ++i)
                map(r * (m + 1) + i, k * (m + 1) + i) = fb.b1[r * 2 + k][0];
        for (std::size_t k = 0; k < n2; ++k)
        {
            const auto& g = fb.b2[r * n2 + k];
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    map(r * (m + 1) + i + j, 2 * (m + 1) + k * m + i) = g[j];
        }
    }
    auto kernel_dim = static_cast<std::int64_t>(cols - rank(f, map));
    return kernel_dim - static_cast<std::int64_t>(e * m);
}

// h0(O(d) + O(-2-d)) at twists 0 and 1.
std::pair<std::int64_t, std::int64_t> split_h0(std::int64_t d)
{
    auto h = [](std::int64_t n) { return std::max<std::int64_t>(0, n + 1); };
    return {h(d) + h(-2 - d), h(d + 1) + h(-1 - d)};
}

template <class F, class Draw>
std::vector<std::int64_t> fibre_splittings(const F& f, const MonadPoint& m, unsigned fibres, Draw draw)
{
    auto bl = field_blocks(f, m);
    std::vector<std::int64_t> out;
    for (unsigned i = 0; i < fibres; ++i)
    {
        auto x = draw();
        auto fb = restrict_blocks(f, bl, x, f.one());
        auto h0 = fibre_h0(f, fb, bl.e, 0);
        auto h1 = fibre_h0(f, fb, bl.e, 1);
        std::int64_t d = -1;
        while (split_h0(d) != std::pair{h0, h1})
        {
            if (d > h0 + 1)
                throw Error("fibre restriction is not a rank-two bundle of degree -2");
            ++d;
        }
        out.push_back(d);
    }
    return out;
}

} // namespace

MonadShape shape(int e)
{
    if (e == 0)
        throw Error("monad shape needs e >= 1 (the e = 0 case, P1 x P1, has a different monad description)");
    if (e < 0)
        throw Error("Hirzebruch parameter must be non-negative");
    MonadShape sh;
    sh.e = e;
    const std::int64_t le = e;
    sh.A.summands.assign(static_cast<std::size_t>(e), DivisorClass{-1, -(le + 1)});
    sh.B.summands.assign(2, DivisorClass{0, -1});
    sh.B.summands.insert(sh.B.summands.end(), static_cast<std::size_t>(e + 2), DivisorClass{-1, -le});
    sh.C.summands.assign(2, DivisorClass{0, 0});
    return sh;
}

BlockSpaces block_spaces(int e)
{
    Surface s(e);
    BlockSpaces sp;
    sp.a1 = basis(s, deg_a1(e), 0);
    sp.a2 = basis(s, deg_a2(), 0);
    sp.b1 = basis(s, deg_b1(), 0);
    sp.b2 = basis(s, deg_b2(e), 0);
    sp.target = basis(s, DivisorClass{1, e + 1}, 0);
    const auto ue = static_cast<std::size_t>(e);
    sp.dim_m1 = 2 * ue * sp.a1.dim() + (ue + 2) * ue * sp.a2.dim();
    sp.dim_m2 = 4 * sp.b1.dim() + 2 * (ue + 2) * sp.b2.dim();
    sp.dim_m3 = 2 * ue * sp.target.dim();
    return sp;
}

MonadPoint MonadPoint::zero(int e, const FieldSpec& field)
{
    shape(e);
    const auto ue = static_cast<std::size_t>(e);
    MonadPoint m;
    m.e = e;
    m.field = field;
    m.a1 = zero_block(2, ue, deg_a1(e));
    m.a2 = zero_block(ue + 2, ue, deg_a2());
    m.b1 = zero_block(2, 2, deg_b1());
    m.b2 = zero_block(2, ue + 2, deg_b2(e));
    return m;
}

PolyMatrix MonadPoint::a() const
{
    PolyMatrix out(a1.rows() + a2.rows(), a1.cols());
    for (std::size_t c = 0; c < a1.cols(); ++c)
    {
        for (std::size_t r = 0; r < a1.rows(); ++r)
            out(r, c) = a1(r, c);
        for (std::size_t r = 0; r < a2.rows(); ++r)
            out(a1.rows() + r, c) = a2(r, c);
    }
    return out;
}

PolyMatrix MonadPoint::b() const
{
    PolyMatrix out(b1.rows(), b1.cols() + b2.cols());
    for (std::size_t r = 0; r < b1.rows(); ++r)
    {
        for (std::size_t c = 0; c < b1.cols(); ++c)
            out(r, c) = b1(r, c);
        for (std::size_t c = 0; c < b2.cols(); ++c)
            out(r, b1.cols() + c) = b2(r, c);
    }
    return out;
}

ComplexOfSums MonadPoint::complex() const
{
    auto sh = shape(e);
    ComplexOfSums c;
    c.terms = {sh.A, sh.B, sh.C};
    c.lower = a();
    c.upper = b();
    return c;
}

PolyMatrix mu(const MonadPoint& m)
{
    require_blocks(m);
    Surface s(m.e);
    auto p1 = m.b1.times(s, m.a1);
    auto p2 = m.b2.times(s, m.a2);
    PolyMatrix out(p1.rows(), p1.cols());
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
        {
            auto v = p1(r, c) + p2(r, c);
            out(r, c) = m.field.is_prime() ? v.reduced_mod(m.field.p) : v;
        }
    return out;
}

MonadCheck is_monad(const MonadPoint& m, const FiberCheckOptions& opts)
{
    MonadCheck out;
    out.mu_zero = mu(m).is_zero();
    auto scan = m.field.is_prime() ? scan_prime(m, opts) : scan_rational(m, opts);
    out.a_injective = scan.a_ok;
    out.b_surjective = scan.b_ok;
    out.fibres_checked = scan.checked;
    if (!out.mu_zero)
        out.witness = "b a is not zero";
    else
        out.witness = scan.witness;
    return out;
}

MonadPoint sample_monad(int e, const FieldSpec& field, std::uint64_t seed, unsigned max_attempts)
{
    shape(e);
    if (field.is_prime())
        return sample_impl(PrimeField(field.p), e, field, seed, max_attempts);
    return sample_impl(RationalField(), e, field, seed, max_attempts);
}

ChernData chern_from_terms(const Surface& s, const LineBundleSum& A, const LineBundleSum& B, const LineBundleSum& C)
{
    struct Total
    {
        DivisorClass c1{0, 0};
        std::int64_t c2 = 0;
    };
    auto total = [&](const LineBundleSum& sum) {
        Total t;
        for (std::size_t i = 0; i < sum.size(); ++i)
        {
            t.c2 += intersect(s, t.c1, sum.summands[i]);
            t.c1 = t.c1 + sum.summands[i];
        }
        return t;
    };
    auto product = [&](const Total& x, const Total& y) {
        return Total{x.c1 + y.c1, x.c2 + y.c2 + intersect(s, x.c1, y.c1)};
    };
    auto inverse = [&](const Total& x) { return Total{-x.c1, intersect(s, x.c1, x.c1) - x.c2}; };
    auto t = product(total(B), product(inverse(total(A)), inverse(total(C))));
    ChernData out;
    out.rank = static_cast<int>(B.size()) - static_cast<int>(A.size()) - static_cast<int>(C.size());
    out.c1 = t.c1;
    out.c2 = t.c2;
    return out;
}

ChernData chern_from_terms(const MonadShape& sh) { return chern_from_terms(Surface(sh.e), sh.A, sh.B, sh.C); }

std::size_t jacobian_rank_mu(const MonadPoint& m)
{
    require_blocks(m);
    auto lay = layout(m.e);
    if (m.field.is_prime())
    {
        PrimeField f(m.field.p);
        return rank(f, jacobian(f, lay, field_blocks(f, m)));
    }
    RationalField f;
    return rank(f, jacobian(f, lay, field_blocks(f, m)));
}

std::size_t b_solution_dim(const MonadPoint& m)
{
    require_blocks(m);
    auto lay = layout(m.e);
    if (m.field.is_prime())
    {
        PrimeField f(m.field.p);
        return lay.sp.dim_m2 - rank(f, b_to_mu(f, lay, field_blocks(f, m)));
    }
    RationalField f;
    return lay.sp.dim_m2 - rank(f, b_to_mu(f, lay, field_blocks(f, m)));
}

SplittingInvariants invariants_dr(const MonadPoint& m, unsigned fibres, std::int64_t l_max)
{
    require_blocks(m);
    if (fibres == 0)
        throw Error("invariants_dr needs at least one fibre");
    SplittingInvariants out;
    std::mt19937_64 rng(m.seed ^ 0x9e3779b97f4a7c15ULL);
    if (m.field.is_prime())
    {
        PrimeField f(m.field.p);
        out.fibre_d = fibre_splittings(f, m, fibres, [&] { return f.random(rng); });
    }
    else
    {
        RationalField f;
        out.fibre_d = fibre_splittings(f, m, fibres, [&] { return f.random(rng); });
    }
    out.d = *std::min_element(out.fibre_d.begin(), out.fibre_d.end());
    auto agree = std::count(out.fibre_d.begin(), out.fibre_d.end(), out.d);
    if (2 * static_cast<std::size_t>(agree) <= out.fibre_d.size())
    {
        std::ostringstream os;
        os << "fibre splitting degrees disagree beyond the jumping budget:";
        for (auto d : out.fibre_d)
            os << ' ' << d;
        throw Error(os.str());
    }

    Surface s(m.e);
    auto chern = chern_from_terms(shape(m.e));
    auto complex = m.complex();
    auto h0_at = [&](std::int64_t l) {
        return bundle_cohomology(s, complex, DivisorClass{-out.d, -l}, m.field).h0;
    };
    if (h0_at(l_max) != 0)
        throw Error("r scan: h0(V(-dC0-lF)) is already nonzero at the upper bound l = " + std::to_string(l_max));
    // ell(zeta) is affine in r with slope 2d - alpha; a positive slope bounds r from below.
    const std::int64_t slope = 2 * out.d - chern.c1.a;
    std::int64_t floor = l_max - 60;
    if (slope > 0)
    {
        std::int64_t at0 = ell_zeta(s, chern, out.d, 0);
        // smallest r with at0 + slope r >= 0
        std::int64_t q = -at0 / slope;
        if (-at0 > 0 && -at0 % slope != 0)
            ++q;
        floor = std::max(floor, q);
    }
    for (std::int64_t l = l_max - 1; l >= floor; --l)
        if (h0_at(l) != 0)
        {
            out.r = l;
            return out;
        }
    throw Error("r scan exhausted without a nonzero h0 down to l = " + std::to_string(floor));
}

PrioritaryResult is_prioritary(const Surface& s, const ChernData& c, std::int64_t d, std::int64_t r)
{
    if (c.rank != 2)
        throw Error("prioritary criterion needs a rank-two bundle");
    const std::int64_t alpha = c.c1.a, beta = c.c1.b;
    if (2 * d < alpha)
        throw Error("splitting invariant d must satisfy 2d >= alpha");
    auto floor_div2 = [](std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
    PrioritaryResult out;
    out.prioritary = d == floor_div2(alpha + 1) || 2 * r < beta + s.e + 1;
    out.witness_divisor = DivisorClass{2 * d - alpha - 2, 2 * r - beta - s.e - 1};
    out.witness_h0 = h0_dim(s, out.witness_divisor);
    if (out.prioritary != (out.witness_h0 == 0))
        throw Error("internal: prioritary criterion disagrees with its witness");
    return out;
}

std::vector<DivisorClass> standard_twists(int)
{
    return {DivisorClass{0, 0}, DivisorClass{0, -1}, DivisorClass{-1, 0}, DivisorClass{-1, -1},
            DivisorClass{1, 1}};
}

BundleInvariants classify(const MonadPoint& m, unsigned fibres)
{
    require_blocks(m);
    Surface s(m.e);
    BundleInvariants out;
    out.chern = chern_from_terms(shape(m.e));
    auto complex = m.complex();
    for (const auto& t : standard_twists(m.e))
        out.h_table[t] = bundle_cohomology(s, complex, t, m.field);
    auto dr = invariants_dr(m, fibres);
    out.d = dr.d;
    out.r = dr.r;
    out.fibre_d = dr.fibre_d;
    out.ell_zeta = ell_zeta(s, out.chern, out.d, out.r);
    auto pr = is_prioritary(s, out.chern, out.d, out.r);
    out.prioritary = pr.prioritary;
    out.prioritary_witness_h0 = pr.witness_h0;
    out.vanishing = out.h_table.at(DivisorClass{1, 1}).h0 == 0;
    return out;
}

MonadLemmaConditions lemma_monads_conditions(const Surface& s, const LineBundleSum& A, const LineBundleSum& B,
                                             const LineBundleSum& C)
{
    MonadLemmaConditions out;
    auto ba = hom_and_ext_dims(s, B.summands, A.summands);
    auto cb = hom_and_ext_dims(s, C.summands, B.summands);
    auto ca = hom_and_ext_dims(s, C.summands, A.summands);
    out.hom_b_a = ba.hom;
    out.hom_c_b = cb.hom;
    out.h1_bdual_a = ba.ext1;
    out.h1_cdual_b = cb.ext1;
    out.h1_cdual_a = ca.ext1;
    out.h2_cdual_a = ca.ext2;
    return out;
}

MonadLemmaConditions lemma_monads_conditions(const MonadShape& sh)
{
    return lemma_monads_conditions(Surface(sh.e), sh.A, sh.B, sh.C);
}

ComplexOfSums euler_cotangent_fixture(const Surface& s)
{
    const std::int64_t e = s.e;
    ComplexOfSums c;
    c.at(-1).summands = {DivisorClass{0, -1}, DivisorClass{0, -1}, DivisorClass{-1, 0}, DivisorClass{-1, -e}};
    c.at(0).summands = {DivisorClass{0, 0}, DivisorClass{0, 0}};
    c.lower = PolyMatrix(4, 0);
    c.upper = PolyMatrix(2, 4);
    const std::array<DivisorClass, 4> degs{DivisorClass{0, 1}, DivisorClass{0, 1}, DivisorClass{1, 0},
                                           DivisorClass{1, e}};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t col = 0; col < 4; ++col)
            c.upper(r, col) = CoxPolynomial(degs[col]);
    const CoxMonomial t0{0, 0, 1, 0}, t1{0, 0, 0, 1}, s0{1, 0, 0, 0}, s1{0, 1, 0, 0};
    c.upper(1, 0) = CoxPolynomial::monomial(s, t0);
    c.upper(1, 1) = CoxPolynomial::monomial(s, t1);
    c.upper(0, 2) = CoxPolynomial::monomial(s, s0);
    c.upper(0, 3) = CoxPolynomial::monomial(s, s1);
    if (e != 0)
        c.upper(1, 3) = CoxPolynomial::monomial(s, s1, Rational(static_cast<long>(e)));
    return c;
}

bool euler_fixture_surjective(const Surface& s, std::uint32_t p)
{
    PrimeField f(p);
    auto fixture = euler_cotangent_fixture(s);
    std::vector<detail::FieldPoly<PrimeField>> entries;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            entries.push_back(detail::to_field(f, fixture.upper(r, c)));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> line{{1, 0}};
    for (std::uint32_t x = 0; x < p; ++x)
        line.emplace_back(x, 1);
    for (const auto& [t0, t1] : line)
        for (const auto& [s0, s1] : line)
        {
            Matrix<PrimeField> m(f, 2, 4);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    m(r, c) = detail::evaluate(f, entries[r * 4 + c], s0, s1, t0, t1);
            if (rank(f, m) != 2)
                return false;
        }
    return true;
}

} // namespace hbl
