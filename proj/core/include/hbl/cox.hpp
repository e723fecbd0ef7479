#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hbl/field.hpp"
#include "hbl/linalg.hpp"
#include "hbl/pic_lattice.hpp"

namespace hbl
{

/// Laurent monomial S0^i S1^j T0^k T1^l in the Cox ring.
/// deg S0 = C0, deg S1 = C0 + eF, deg T0 = deg T1 = F.
struct CoxMonomial
{
    std::int64_t i = 0, j = 0, k = 0, l = 0;

    DivisorClass degree(const Surface& s) const { return {i + j, k + l + s.e * j}; }
    CoxMonomial operator*(const CoxMonomial& o) const { return {i + o.i, j + o.j, k + o.k, l + o.l}; }

    /// Bit set of variables with negative exponent: 1 = S0, 2 = S1, 4 = T0, 8 = T1.
    unsigned negative_mask() const
    {
        return (i < 0 ? 1u : 0u) | (j < 0 ? 2u : 0u) | (k < 0 ? 4u : 0u) | (l < 0 ? 8u : 0u);
    }

    std::array<std::int64_t, 4> exps() const { return {i, j, k, l}; }

    friend auto operator<=>(const CoxMonomial&, const CoxMonomial&) = default;

    std::string str() const;
};

inline constexpr unsigned kMaskS0 = 1, kMaskS1 = 2, kMaskT0 = 4, kMaskT1 = 8;

/// Sign regions carrying cohomology.
enum class Region
{
    H0,  ///< all exponents >= 0
    H1A, ///< i, j <= -1 and k, l >= 0
    H1B, ///< i, j >= 0 and k, l <= -1
    H2,  ///< all exponents <= -1
    None
};

Region region_of(const CoxMonomial& m);
int cohomological_degree(Region r);

/// Homogeneous polynomial of fixed Pic-degree with exact rational coefficients
/// and non-negative exponents. Zero coefficients are never stored.
class CoxPolynomial
{
public:
    CoxPolynomial() = default;
    explicit CoxPolynomial(DivisorClass degree) : degree_(degree) {}

    static CoxPolynomial constant(const Rational& c);
    static CoxPolynomial monomial(const Surface& s, const CoxMonomial& m, const Rational& c = 1);

    const DivisorClass& degree() const { return degree_; }
    const std::map<CoxMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * m; throws on degree mismatch or negative exponents.
    void add_term(const Surface& s, const CoxMonomial& m, const Rational& c);

    CoxPolynomial operator+(const CoxPolynomial& o) const;
    CoxPolynomial operator-(const CoxPolynomial& o) const;
    CoxPolynomial scaled(const Rational& c) const;
    CoxPolynomial times(const Surface& s, const CoxPolynomial& o) const;

    /// Coefficients reduced into [0, p).
    CoxPolynomial reduced_mod(std::uint32_t p) const;

    friend bool operator==(const CoxPolynomial&, const CoxPolynomial&) = default;

    std::string str() const;

private:
    DivisorClass degree_;
    std::map<CoxMonomial, Rational> terms_;
};

/// Monomial basis of H^q(O(D)).
struct CohomologySpace
{
    int q = 0;
    DivisorClass divisor;
    std::vector<CoxMonomial> basis;

    std::size_t dim() const { return basis.size(); }
    /// Index of m in basis, or -1.
    long index_of(const CoxMonomial& m) const;
};

/// Matrix of a linear map in chosen bases; rows index the target.
struct LinearMap
{
    std::size_t src_dim = 0;
    std::size_t tgt_dim = 0;
    Matrix<RationalField> matrix;

    LinearMap() = default;
    LinearMap(std::size_t src, std::size_t tgt)
        : src_dim(src), tgt_dim(tgt), matrix(RationalField(), tgt, src)
    {
    }

    std::size_t rank() const;
    LinearMap compose_after(const LinearMap& first) const; // this * first
};

std::int64_t h0_dim(const Surface& s, const DivisorClass& d);
std::int64_t h1_dim(const Surface& s, const DivisorClass& d);
std::int64_t h2_dim(const Surface& s, const DivisorClass& d);
std::int64_t hq_dim(const Surface& s, const DivisorClass& d, int q);

/// Laurent monomials of the q-region of degree D, lexicographic in (i, j, k, l).
CohomologySpace basis(const Surface& s, const DivisorClass& d, int q);

/// Matrix of multiplication by mult from H^q(O(src)) to H^q(O(tgt)). Products that
/// leave the q-region of the target are sent to zero.
LinearMap induced_map(const Surface& s, int q, const DivisorClass& src, const DivisorClass& tgt,
                      const CoxPolynomial& mult);

struct HomExtDims
{
    std::int64_t hom = 0;
    std::int64_t ext1 = 0;
    std::int64_t ext2 = 0;

    friend bool operator==(const HomExtDims&, const HomExtDims&) = default;
};

/// Hom and Ext dimensions between direct sums of line bundles.
HomExtDims hom_and_ext_dims(const Surface& s, const std::vector<DivisorClass>& src,
                            const std::vector<DivisorClass>& tgt);

} // namespace hbl
