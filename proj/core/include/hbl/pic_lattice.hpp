#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "hbl/field.hpp"

namespace hbl
{

/// The Hirzebruch surface of parameter e, the projectivized O + O(-e) over the line.
struct Surface
{
    int e = 0;

    explicit Surface(int e_) : e(e_)
    {
        if (e_ < 0)
            throw Error("Hirzebruch parameter must be non-negative");
    }
};

/// The class a*C0 + b*F in Pic, where C0 is the negative section and F a fibre.
struct DivisorClass
{
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr DivisorClass() = default;
    constexpr DivisorClass(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}

    static constexpr DivisorClass C0() { return {1, 0}; }
    static constexpr DivisorClass F() { return {0, 1}; }

    constexpr DivisorClass operator+(const DivisorClass& o) const { return {a + o.a, b + o.b}; }
    constexpr DivisorClass operator-(const DivisorClass& o) const { return {a - o.a, b - o.b}; }
    constexpr DivisorClass operator-() const { return {-a, -b}; }
    constexpr DivisorClass operator*(std::int64_t k) const { return {k * a, k * b}; }
    friend constexpr DivisorClass operator*(std::int64_t k, const DivisorClass& d) { return d * k; }

    friend constexpr auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const DivisorClass& d);

/// Rank and Chern classes of a vector bundle.
struct ChernData
{
    int rank = 1;
    DivisorClass c1;
    std::int64_t c2 = 0;

    friend bool operator==(const ChernData&, const ChernData&) = default;
};

std::int64_t intersect(const Surface& s, const DivisorClass& d1, const DivisorClass& d2);
DivisorClass canonical_class(const Surface& s);

/// Toric criterion: a > 0 and b > e a.
bool is_ample(const Surface& s, const DivisorClass& h);

/// Riemann-Roch with chi(O_X) = 1. Throws if c1.(c1 - K) is odd.
std::int64_t euler_char(const Surface& s, const ChernData& c);

ChernData chern_twist(const Surface& s, const ChernData& c, const DivisorClass& d);

/// Chern data of V* (x) V for a rank-two V.
ChernData chern_endo(const Surface& s, const ChernData& c);

/// Length of the zero-dimensional scheme in the canonical extension of a rank-two
/// bundle with splitting invariants (d, r). Both the closed form and c2 - L1.L2 are
/// evaluated and required to agree.
std::int64_t ell_zeta(const Surface& s, const ChernData& c, std::int64_t d, std::int64_t r);

/// Independent route: c2 - L1.L2 with L1 = dC0 + rF and L2 = c1 - L1.
std::int64_t ell_zeta_via_sub_line_bundle(const Surface& s, const ChernData& c, std::int64_t d,
                                          std::int64_t r);

/// 2 (mu_H(O(-C0-F)) - mu_H(V)) for c1(V) = K, which equals e (H.F) >= 0.
std::int64_t slope_destabilization_gap(const Surface& s, const DivisorClass& h);

} // namespace hbl
