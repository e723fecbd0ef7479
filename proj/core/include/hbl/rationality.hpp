#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbl/field.hpp"
#include "hbl/monad.hpp"

namespace hbl
{

/// m_i = dim M_i - 1 for the three matrix spaces of the parameter space.
struct MDims
{
    std::int64_t m1 = 0, m2 = 0, m3 = 0;             // closed forms
    std::int64_t direct1 = 0, direct2 = 0, direct3 = 0; // block sizes times section dimensions, minus one
};

/// Throws Error if the closed forms and the block sums disagree.
MDims m_dims(int e);

/// dim M1 + dim M2 - dim M3 = 4(e^2 + 2e + 4).
std::int64_t dim_parameter_space(int e);

struct BilinearResult
{
    std::size_t source_dim = 0; ///< (m1+1)(m2+1)
    std::size_t target_dim = 0; ///< m3+1
    std::size_t rank = 0;
    std::size_t dim_k = 0;
    /// Every basis vector of M3 was hit by a pure tensor whose image was recomputed
    /// by multiplying the corresponding monad blocks.
    bool preimages_verified = false;
};

inline constexpr int kBilinearMaxE = 3;

/// The bilinear map M1 x M2 -> M3, (a, b) -> b1 a1 + b2 a2, as a linear map on the
/// tensor product. Throws Error for e > 3 (size guard) and e < 1.
BilinearResult bilinear_kernel(int e, const FieldSpec& field);

/// dim {b in M2 : b1 a1 + b2 a2 = 0} for the a-blocks of m, by contracting the bilinear
/// map with a (independent of the monad module's linear system).
std::size_t fiber_solution_dim(const MonadPoint& m);

struct DimensionCheck
{
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct DimensionReport
{
    int e = 1;
    std::int64_t m1 = 0, m2 = 0, m3 = 0;
    std::int64_t dim_z = 0;
    std::int64_t dim_k = 0;
    bool dim_k_from_rank = false; ///< false when the closed form was used (e > 3)
    std::vector<DimensionCheck> checks;

    bool pass() const;
};

/// The dimension inequalities behind the rationality argument, with m = dim K - 1.
DimensionReport inequality_audit(int e, std::uint32_t p = kDefaultPrime);

struct GroupDimAudit
{
    int e = 1;
    std::int64_t dim_end_a = 0;
    std::int64_t dim_end_b_diag = 0;
    std::int64_t dim_end_b_full = 0;
    std::int64_t dim_end_c = 0;
    std::int64_t dim_g_diag = 0;          ///< Aut(A) x block-diagonal Aut(B) x Aut(C)
    std::int64_t dim_g_full = 0;          ///< Aut(A) x Aut(B) x Aut(C)
    std::int64_t dim_g_implied = 0; ///< dim Z - (2e^2 + 4e + 4)
    std::int64_t dim_quotient_stated = 0;  ///< 2e^2 + 4e + 4
    std::int64_t dim_z = 0;
};

GroupDimAudit group_dim_audit(int e);

} // namespace hbl
