#include "hbl/cox.hpp"

#include <algorithm>
#include <sstream>

namespace hbl
{

std::string CoxMonomial::str() const
{
    std::ostringstream os;
    os << "S0^" << i << "*S1^" << j << "*T0^" << k << "*T1^" << l;
    return os.str();
}

Region region_of(const CoxMonomial& m)
{
    switch (m.negative_mask())
    {
    case 0:
        return Region::H0;
    case kMaskS0 | kMaskS1:
        return Region::H1A;
    case kMaskT0 | kMaskT1:
        return Region::H1B;
    case 15:
        return Region::H2;
    default:
        return Region::None;
    }
}

int cohomological_degree(Region r)
{
    switch (r)
    {
    case Region::H0:
        return 0;
    case Region::H1A:
    case Region::H1B:
        return 1;
    case Region::H2:
        return 2;
    default:
        return -1;
    }
}

CoxPolynomial CoxPolynomial::constant(const Rational& c)
{
    CoxPolynomial p(DivisorClass{0, 0});
    if (sgn(c) != 0)
        p.terms_.emplace(CoxMonomial{}, c);
    return p;
}

CoxPolynomial CoxPolynomial::monomial(const Surface& s, const CoxMonomial& m, const Rational& c)
{
    CoxPolynomial p(m.degree(s));
    p.add_term(s, m, c);
    return p;
}

void CoxPolynomial::add_term(const Surface& s, const CoxMonomial& m, const Rational& c)
{
    if (m.negative_mask() != 0)
        throw Error("polynomial terms must have non-negative exponents: " + m.str());
    if (m.degree(s) != degree_)
        throw Error("term " + m.str() + " has degree " + m.degree(s).str() + ", expected " +
                    degree_.str());
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted)
    {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

CoxPolynomial CoxPolynomial::operator+(const CoxPolynomial& o) const
{
    if (!o.is_zero() && !is_zero() && o.degree_ != degree_)
        throw Error("adding polynomials of different degrees");
    CoxPolynomial out = is_zero() ? o : *this;
    if (is_zero())
        return out;
    for (const auto& [m, c] : o.terms_)
    {
        auto [it, inserted] = out.terms_.emplace(m, c);
        if (!inserted)
        {
            it->second += c;
            if (sgn(it->second) == 0)
                out.terms_.erase(it);
        }
    }
    return out;
}

CoxPolynomial CoxPolynomial::operator-(const CoxPolynomial& o) const { return *this + o.scaled(-1); }

CoxPolynomial CoxPolynomial::scaled(const Rational& c) const
{
    CoxPolynomial out(degree_);
    if (sgn(c) == 0)
        return out;
    for (const auto& [m, v] : terms_)
        out.terms_.emplace(m, v * c);
    return out;
}

CoxPolynomial CoxPolynomial::times(const Surface& s, const CoxPolynomial& o) const
{
    CoxPolynomial out(degree_ + o.degree_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_)
            out.add_term(s, m1 * m2, c1 * c2);
    return out;
}

CoxPolynomial CoxPolynomial::reduced_mod(std::uint32_t p) const
{
    PrimeField f(p);
    CoxPolynomial out(degree_);
    for (const auto& [m, c] : terms_)
    {
        auto r = f.from_rational(c);
        if (r != 0)
            out.terms_.emplace(m, f.to_rational(r));
    }
    return out;
}

std::string CoxPolynomial::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_)
    {
        if (!first)
            os << " + ";
        first = false;
        os << rational_to_string(c) << '*' << m.str();
    }
    return os.str();
}

long CohomologySpace::index_of(const CoxMonomial& m) const
{
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m)
        return -1;
    return static_cast<long>(it - basis.begin());
}

std::size_t LinearMap::rank() const { return hbl::rank(RationalField(), matrix); }

LinearMap LinearMap::compose_after(const LinearMap& first) const
{
    if (first.tgt_dim != src_dim)
        throw Error("composition dimension mismatch");
    LinearMap out(first.src_dim, tgt_dim);
    out.matrix = multiply(RationalField(), matrix, first.matrix);
    return out;
}

std::int64_t h0_dim(const Surface& s, const DivisorClass& d)
{
    if (d.a < 0)
        return 0;
    std::int64_t total = 0;
    for (std::int64_t k = 0; k <= d.a; ++k)
        total += std::max<std::int64_t>(0, d.b - k * s.e + 1);
    return total;
}

std::int64_t h1_dim(const Surface& s, const DivisorClass& d)
{
    std::int64_t total = 0;
    if (d.a <= -2)
    {
        for (std::int64_t k = 1; k <= -d.a - 1; ++k)
            total += std::max<std::int64_t>(0, k * s.e + d.b + 1);
    }
    else if (d.a >= 0)
    {
        for (std::int64_t k = 0; k <= d.a; ++k)
            total += std::max<std::int64_t>(0, k * s.e - d.b - 1);
    }
    return total;
}

std::int64_t h2_dim(const Surface& s, const DivisorClass& d) { return h0_dim(s, canonical_class(s) - d); }

std::int64_t hq_dim(const Surface& s, const DivisorClass& d, int q)
{
    switch (q)
    {
    case 0:
        return h0_dim(s, d);
    case 1:
        return h1_dim(s, d);
    case 2:
        return h2_dim(s, d);
    default:
        throw Error("cohomological degree must be 0, 1 or 2");
    }
}

namespace
{

// Appends monomials with i + j = a, k + l = b - e j, where the S-pair and the
// T-pair each satisfy the given sign (true = non-negative, false = <= -1).
void enumerate_region(const Surface& s, const DivisorClass& d, bool s_nonneg, bool t_nonneg,
                      std::vector<CoxMonomial>& out)
{
    std::int64_t i_lo, i_hi;
    if (s_nonneg)
    {
        if (d.a < 0)
            return;
        i_lo = 0;
        i_hi = d.a;
    }
    else
    {
        if (d.a > -2)
            return;
        i_lo = d.a + 1;
        i_hi = -1;
    }
    for (std::int64_t i = i_lo; i <= i_hi; ++i)
    {
        std::int64_t j = d.a - i;
        std::int64_t n = d.b - s.e * j;
        std::int64_t k_lo, k_hi;
        if (t_nonneg)
        {
            if (n < 0)
                continue;
            k_lo = 0;
            k_hi = n;
        }
        else
        {
            if (n > -2)
                continue;
            k_lo = n + 1;
            k_hi = -1;
        }
        for (std::int64_t k = k_lo; k <= k_hi; ++k)
            out.push_back({i, j, k, n - k});
    }
}

} // namespace

CohomologySpace basis(const Surface& s, const DivisorClass& d, int q)
{
    CohomologySpace space;
    space.q = q;
    space.divisor = d;
    switch (q)
    {
    case 0:
        enumerate_region(s, d, true, true, space.basis);
        break;
    case 1:
        enumerate_region(s, d, false, true, space.basis);
        enumerate_region(s, d, true, false, space.basis);
        break;
    case 2:
        enumerate_region(s, d, false, false, space.basis);
        break;
    default:
        throw Error("cohomological degree must be 0, 1 or 2");
    }
    std::sort(space.basis.begin(), space.basis.end());
    return space;
}

LinearMap induced_map(const Surface& s, int q, const DivisorClass& src, const DivisorClass& tgt,
                      const CoxPolynomial& mult)
{
    if (!mult.is_zero() && mult.degree() != tgt - src)
        throw Error("multiplier degree " + mult.degree().str() + " does not match " +
                    (tgt - src).str());
    auto from = basis(s, src, q);
    auto to = basis(s, tgt, q);
    LinearMap map(from.dim(), to.dim());
    for (std::size_t col = 0; col < from.dim(); ++col)
    {
        const auto& m = from.basis[col];
        for (const auto& [u, c] : mult.terms())
        {
            CoxMonomial prod = m * u;
            if (cohomological_degree(region_of(prod)) != q)
                continue;
            long row = to.index_of(prod);
            if (row < 0)
                throw Error("internal: product monomial missing from target basis");
            map.matrix(static_cast<std::size_t>(row), col) += c;
        }
    }
    return map;
}

HomExtDims hom_and_ext_dims(const Surface& s, const std::vector<DivisorClass>& src,
                            const std::vector<DivisorClass>& tgt)
{
    HomExtDims out;
    for (const auto& a : src)
        for (const auto& b : tgt)
        {
            out.hom += h0_dim(s, b - a);
            out.ext1 += h1_dim(s, b - a);
            out.ext2 += h2_dim(s, b - a);
        }
    return out;
}

} // namespace hbl
