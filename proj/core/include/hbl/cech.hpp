#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hbl/cox.hpp"
#include "hbl/field.hpp"
#include "hbl/pic_lattice.hpp"

namespace hbl
{

/// Direct sum of line bundles, summands in order with repetition.
struct LineBundleSum
{
    std::vector<DivisorClass> summands;

    std::size_t size() const { return summands.size(); }
    LineBundleSum twisted(const DivisorClass& t) const;
};

/// Matrix of Cox polynomials; entry (r, c) maps source summand c to target summand r.
class PolyMatrix
{
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    CoxPolynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const CoxPolynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    /// this * rhs with entries multiplied as polynomials.
    PolyMatrix times(const Surface& s, const PolyMatrix& rhs) const;
    bool is_zero() const;

    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<CoxPolynomial> entries_;
};

/// A complex of sums of line bundles in positions -2, -1, 0. Empty positions are allowed.
/// The cohomology sheaf of a monad sits at position -1.
struct ComplexOfSums
{
    std::array<LineBundleSum, 3> terms; // positions -2, -1, 0
    PolyMatrix lower;                   // position -2 -> -1
    PolyMatrix upper;                   // position -1 -> 0

    const LineBundleSum& at(int position) const { return terms.at(static_cast<std::size_t>(position + 2)); }
    LineBundleSum& at(int position) { return terms.at(static_cast<std::size_t>(position + 2)); }

    /// Throws Error when shapes, entry degrees or the composite are wrong.
    void validate(const Surface& s, const FieldSpec& field) const;
};

struct LineCohomology
{
    std::int64_t h0 = 0, h1 = 0, h2 = 0;

    std::int64_t operator[](int q) const { return q == 0 ? h0 : q == 1 ? h1 : h2; }
    friend bool operator==(const LineCohomology&, const LineCohomology&) = default;
};

/// Line bundle cohomology from the Cech complex of the four toric charts, computed
/// monomial by monomial. Independent of the closed forms in cox.hpp.
LineCohomology cech_line_cohomology(const Surface& s, const DivisorClass& d);

/// Cohomology dimensions of the per-monomial Cech complex for a negative-exponent
/// pattern (bit mask as in CoxMonomial::negative_mask), Cech degrees 0..3.
std::array<std::int64_t, 4> pattern_cohomology(unsigned negative_mask);

/// Monomials carrying H^q(O(D)) according to the Cech engine, lexicographic.
std::vector<CoxMonomial> cech_basis(const Surface& s, const DivisorClass& d, int q);

/// Multiplication map on H^q computed by pushing generator cocycles through the
/// Cech complex and reading off classes. Used to validate induced_map.
LinearMap cech_induced_map(const Surface& s, int q, const DivisorClass& src, const DivisorClass& tgt,
                           const CoxPolynomial& mult);

enum class LiftOrder
{
    Forward,
    Reverse
};

struct Hypercohomology
{
    /// dims[n + 2] = dim H^n of the twisted complex, n in -2..2.
    std::array<std::int64_t, 5> dims{};
    /// e1[p + 2][k] = dim H^k(term_p), e2 and e_inf likewise.
    std::array<std::array<std::int64_t, 3>, 3> e1{};
    std::array<std::array<std::int64_t, 3>, 3> e2{};
    std::array<std::array<std::int64_t, 3>, 3> e_inf{};
    /// d2_rank[k] = rank of d2 : E2^{-2,k} -> E2^{0,k-1}.
    std::array<std::int64_t, 3> d2_rank{};

    std::int64_t at(int n) const { return dims.at(static_cast<std::size_t>(n + 2)); }
    std::int64_t euler_characteristic() const;
};

/// Hypercohomology of the complex twisted by t over the given field, from the
/// spectral sequence of the Cech double complex: E1 from monomial cohomology with
/// induced maps, d2 from zig-zag lifts solved monomial by monomial.
Hypercohomology hypercohomology(const Surface& s, const ComplexOfSums& c, const DivisorClass& twist,
                                const FieldSpec& field, LiftOrder order = LiftOrder::Forward);

/// h^q of the cohomology sheaf at position -1 (twisted), for a monad.
LineCohomology bundle_cohomology(const Surface& s, const ComplexOfSums& monad, const DivisorClass& twist,
                                 const FieldSpec& field);

/// Alternating sum over positions of the term-wise Euler characteristics.
std::int64_t terms_euler_characteristic(const Surface& s, const ComplexOfSums& c, const DivisorClass& twist);

/// E1 page of the Beilinson-type spectral sequence for the cohomology bundle of a monad.
struct BeilinsonPage
{
    /// rank[p + 2][q]: number of line bundle summands of E1^{p,q}.
    std::array<std::array<std::int64_t, 3>, 3> rank{};
    /// For p = -1: multiplicities of O(-F) and O(-C0-eF) in the defining sequence.
    std::array<std::int64_t, 3> minus_one_fibre{};
    std::array<std::int64_t, 3> minus_one_section{};
    /// Ext^1(O(-C0-eF), O(-F)) = 0, so the p = -1 sequences split.
    bool minus_one_split = false;
    /// Line bundles: E1^{0,q} ~ O, E1^{-2,q} ~ O(-C0-(e+1)F).
    DivisorClass twist_p0{0, 0};
    DivisorClass twist_pm2{0, 0};

    bool rows_zero(int q) const;
};

BeilinsonPage beilinson_page(const Surface& s, const ComplexOfSums& monad, const FieldSpec& field);

struct ConsistencyReport
{
    std::int64_t chi_hyper = 0;  ///< sum (-1)^n dim H^n
    std::int64_t chi_terms = 0;  ///< sum (-1)^p chi(term_p (x) twist)
    std::int64_t chi_bundle = 0; ///< chi of the position -1 sheaf, i.e. -chi_hyper
    bool outer_vanish = true;    ///< H^-2 = H^2 = 0 (checked for monads only)
    bool bookkeeping = true;     ///< E_inf terms add up and d2 ranks are in range
    bool ok = false;
};

ConsistencyReport verify_connecting_consistency(const Surface& s, const ComplexOfSums& c,
                                                const DivisorClass& twist, const FieldSpec& field,
                                                bool is_monad = false);

} // namespace hbl
