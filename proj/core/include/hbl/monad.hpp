#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hbl/cech.hpp"
#include "hbl/cox.hpp"
#include "hbl/field.hpp"
#include "hbl/pic_lattice.hpp"

namespace hbl
{

/// Terms of the monad A -> B -> C whose cohomology has c1 = K and c2 = 4:
/// A = O(-C0-(e+1)F)^e, B = O(-F)^2 + O(-C0-eF)^(e+2), C = O^2.
struct MonadShape
{
    int e = 1;
    LineBundleSum A, B, C;
};

/// Throws for e = 0: the monad description is only available for e >= 1.
MonadShape shape(int e);

/// Bases of the section spaces the monad blocks live in.
struct BlockSpaces
{
    CohomologySpace a1, a2, b1, b2; // H0(C0+eF), H0(F), H0(F), H0(C0+eF)
    CohomologySpace target;         // H0(C0+(e+1)F)
    std::size_t dim_m1 = 0, dim_m2 = 0, dim_m3 = 0;
};

BlockSpaces block_spaces(int e);

/// A point of the monad parameter space: a = (a1; a2), b = (b1 b2).
struct MonadPoint
{
    int e = 1;
    FieldSpec field;
    std::uint64_t seed = 0;
    PolyMatrix a1; // 2 x e over H0(C0+eF)
    PolyMatrix a2; // (e+2) x e over H0(F)
    PolyMatrix b1; // 2 x 2 over H0(F)
    PolyMatrix b2; // 2 x (e+2) over H0(C0+eF)

    /// Zero blocks of the right shapes and degrees.
    static MonadPoint zero(int e, const FieldSpec& field);

    PolyMatrix a() const;
    PolyMatrix b() const;
    ComplexOfSums complex() const;

    friend bool operator==(const MonadPoint&, const MonadPoint&) = default;
};

/// b1 a1 + b2 a2, coefficients reduced in the point's field.
PolyMatrix mu(const MonadPoint& m);

struct FiberCheckOptions
{
    /// Random fibres over the quadratic and cubic extensions (per degree).
    unsigned extension_fibres = 24;
    /// For rational points: base fibres t = [x:1], |x| <= grid, plus t = [1:0].
    unsigned rational_grid = 12;
    std::uint64_t seed = 0x5eed;
};

struct MonadCheck
{
    bool mu_zero = false;
    bool a_injective = false;
    bool b_surjective = false;
    std::size_t fibres_checked = 0;
    std::string witness; ///< first failure, empty when ok

    bool ok() const { return mu_zero && a_injective && b_surjective; }
};

/// Exact b a = 0, and fibrewise rank of a and b checked over the algebraic closure
/// along every F_p-rational fibre (plus random fibres over F_{p^2}, F_{p^3}); for
/// rational points over a grid of rational fibres and random fibres over Q(cbrt 2).
MonadCheck is_monad(const MonadPoint& m, const FiberCheckOptions& opts = {});

/// Random point of the parameter space: random a, b a random element of the kernel of
/// b -> b a, retried until is_monad passes.
MonadPoint sample_monad(int e, const FieldSpec& field, std::uint64_t seed, unsigned max_attempts = 16);

/// Chern data of the cohomology of a monad with the given terms.
ChernData chern_from_terms(const Surface& s, const LineBundleSum& A, const LineBundleSum& B, const LineBundleSum& C);
ChernData chern_from_terms(const MonadShape& sh);

/// Rank of the differential (da, db) -> b da + db a from M1 + M2 to M3.
std::size_t jacobian_rank_mu(const MonadPoint& m);

/// Dimension of {b : b a = 0} for the a-blocks of m (b-blocks ignored).
std::size_t b_solution_dim(const MonadPoint& m);

struct SplittingInvariants
{
    std::int64_t d = 0;
    std::int64_t r = 0;
    std::vector<std::int64_t> fibre_d; ///< splitting degree on each sampled fibre
};

/// d from the restriction of the monad to sampled fibres (minimum over fibres, majority
/// required to agree); r = max{l : h0(V(-d C0 - l F)) != 0} by descending scan.
SplittingInvariants invariants_dr(const MonadPoint& m, unsigned fibres = 7, std::int64_t l_max = 10);

struct PrioritaryResult
{
    bool prioritary = false;
    DivisorClass witness_divisor;
    std::int64_t witness_h0 = 0; ///< h0 of witness_divisor, zero iff prioritary
};

/// Rank-two V with c1 = alpha C0 + beta F and invariants (d, r) is prioritary iff
/// d = floor((alpha+1)/2) or 2r < beta + e + 1.
PrioritaryResult is_prioritary(const Surface& s, const ChernData& c, std::int64_t d, std::int64_t r);

struct BundleInvariants
{
    ChernData chern;
    /// Twists 0, -F, -C0, -C0-F, C0+F keyed by their string form.
    std::map<DivisorClass, LineCohomology> h_table;
    std::int64_t d = 0;
    std::int64_t r = 0;
    std::int64_t ell_zeta = 0;
    bool prioritary = false;
    std::int64_t prioritary_witness_h0 = 0;
    bool vanishing = false; ///< h0(V(C0+F)) = 0
    std::vector<std::int64_t> fibre_d;
};

std::vector<DivisorClass> standard_twists(int e);

BundleInvariants classify(const MonadPoint& m, unsigned fibres = 7);

/// The six Hom/Ext groups whose vanishing makes monad morphisms biject with bundle morphisms.
struct MonadLemmaConditions
{
    std::int64_t hom_b_a = 0;
    std::int64_t hom_c_b = 0;
    std::int64_t h1_bdual_a = 0;
    std::int64_t h1_cdual_b = 0;
    std::int64_t h1_cdual_a = 0;
    std::int64_t h2_cdual_a = 0;

    bool all_zero() const
    {
        return hom_b_a == 0 && hom_c_b == 0 && h1_bdual_a == 0 && h1_cdual_b == 0 && h1_cdual_a == 0 && h2_cdual_a == 0;
    }
    std::array<std::pair<const char*, std::int64_t>, 6> named() const
    {
        return {{{"Hom(B,A)", hom_b_a},
                 {"Hom(C,B)", hom_c_b},
                 {"H1(B*xA)", h1_bdual_a},
                 {"H1(C*xB)", h1_cdual_b},
                 {"H1(C*xA)", h1_cdual_a},
                 {"H2(C*xA)", h2_cdual_a}}};
    }
};

MonadLemmaConditions lemma_monads_conditions(const Surface& s, const LineBundleSum& A, const LineBundleSum& B,
                                             const LineBundleSum& C);
MonadLemmaConditions lemma_monads_conditions(const MonadShape& sh);

/// 0 -> Omega^1 -> O(-F)^2 + O(-C0) + O(-C0-eF) -> O^2 -> 0 with the toric Euler map,
/// placed at positions -1 and 0.
ComplexOfSums euler_cotangent_fixture(const Surface& s);

/// Checks fibrewise surjectivity of the fixture at every point of the surface over F_p.
bool euler_fixture_surjective(const Surface& s, std::uint32_t p = 31);

} // namespace hbl
