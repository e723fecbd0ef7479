#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hbl
{

using Rational = mpq_class;

/// Raised for malformed input and violated preconditions across the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

/// Prime field F_p with elements stored as canonical residues in [0, p).
class PrimeField
{
public:
    using Elem = std::uint32_t;

    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const
    {
        return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Elem inv(Elem a) const;

    Elem from_int(std::int64_t v) const;
    /// Throws when the denominator vanishes mod p.
    Elem from_rational(const Rational& q) const;
    Rational to_rational(Elem a) const { return Rational(static_cast<unsigned long>(a)); }

    template <class Rng>
    Elem random(Rng& rng) const
    {
        return static_cast<Elem>(rng() % p_);
    }

    std::string name() const { return "F_" + std::to_string(p_); }

private:
    std::uint32_t p_;
};

/// The field of rationals backed by GMP.
class RationalField
{
public:
    using Elem = Rational;

    /// height bounds the numerators produced by random().
    explicit RationalField(long height = 100) : height_(height) {}

    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const;

    Elem from_int(std::int64_t v) const { return Rational(static_cast<long>(v)); }
    Elem from_rational(const Rational& q) const { return q; }
    Rational to_rational(const Elem& a) const { return a; }

    long height() const { return height_; }

    template <class Rng>
    Elem random(Rng& rng) const
    {
        auto span = static_cast<std::uint64_t>(2 * height_ + 1);
        return Rational(static_cast<long>(rng() % span) - height_);
    }

    std::string name() const { return "Q"; }

private:
    long height_;
};

/// Simple algebraic extension Base[x]/(f) for a monic irreducible f of degree k.
/// Elements are coefficient vectors of length k (lowest degree first).
template <class Base>
class ExtensionField
{
public:
    using BaseElem = typename Base::Elem;
    using Elem = std::vector<BaseElem>;

    /// modulus holds f = x^k + c_{k-1} x^{k-1} + ... + c_0 as {c_0, ..., c_{k-1}}.
    ExtensionField(Base base, std::vector<BaseElem> modulus)
        : base_(std::move(base)), modulus_(std::move(modulus))
    {
        if (modulus_.empty())
            throw Error("extension degree must be positive");
    }

    const Base& base() const { return base_; }
    std::size_t degree() const { return modulus_.size(); }

    Elem zero() const { return Elem(degree(), base_.zero()); }
    Elem one() const
    {
        Elem r = zero();
        r[0] = base_.one();
        return r;
    }
    Elem embed(const BaseElem& a) const
    {
        Elem r = zero();
        r[0] = a;
        return r;
    }
    bool is_zero(const Elem& a) const
    {
        for (const auto& c : a)
            if (!base_.is_zero(c))
                return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const
    {
        for (std::size_t i = 0; i < degree(); ++i)
            if (!base_.eq(a[i], b[i]))
                return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const
    {
        Elem r(degree());
        for (std::size_t i = 0; i < degree(); ++i)
            r[i] = base_.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const
    {
        Elem r(degree());
        for (std::size_t i = 0; i < degree(); ++i)
            r[i] = base_.sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const
    {
        Elem r(degree());
        for (std::size_t i = 0; i < degree(); ++i)
            r[i] = base_.neg(a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const
    {
        const std::size_t k = degree();
        std::vector<BaseElem> prod(2 * k - 1, base_.zero());
        for (std::size_t i = 0; i < k; ++i)
        {
            if (base_.is_zero(a[i]))
                continue;
            for (std::size_t j = 0; j < k; ++j)
                prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
        }
        // x^k = -(c_0 + ... + c_{k-1} x^{k-1})
        for (std::size_t d = prod.size(); d-- > k;)
        {
            if (base_.is_zero(prod[d]))
                continue;
            BaseElem top = prod[d];
            for (std::size_t i = 0; i < k; ++i)
                prod[d - k + i] = base_.sub(prod[d - k + i], base_.mul(top, modulus_[i]));
        }
        prod.resize(k);
        return prod;
    }
    Elem inv(const Elem& a) const;

    Elem from_int(std::int64_t v) const { return embed(base_.from_int(v)); }
    Elem from_rational(const Rational& q) const { return embed(base_.from_rational(q)); }

    template <class Rng>
    Elem random(Rng& rng) const
    {
        Elem r(degree());
        for (auto& c : r)
            c = base_.random(rng);
        return r;
    }

    std::string name() const { return base_.name() + "^" + std::to_string(degree()); }

private:
    Base base_;
    std::vector<BaseElem> modulus_;
};

/// Which exact field a monad or computation lives over.
struct FieldSpec
{
    enum class Kind
    {
        Prime,
        Rational
    };

    Kind kind = Kind::Prime;
    std::uint32_t p = 10007;

    static FieldSpec prime(std::uint32_t p);
    static FieldSpec rational() { return FieldSpec{Kind::Rational, 0}; }

    bool is_prime() const { return kind == Kind::Prime; }
    std::string name() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline constexpr std::uint32_t kDefaultPrime = 10007;

/// Irreducible monic polynomial of degree 2 or 3 over F_p, found by root search.
std::vector<PrimeField::Elem> irreducible_modulus(const PrimeField& f, unsigned degree);

/// F_{p^k} for k in {2, 3}.
ExtensionField<PrimeField> prime_extension(const PrimeField& f, unsigned degree);

/// Q(cbrt 2), the cubic extension model used for rational fiber checks.
ExtensionField<RationalField> rational_cubic_extension();

/// Canonical string form of a rational: "n" or "n/d".
std::string rational_to_string(const Rational& q);
/// Parses "n" or "n/d"; throws Error on malformed text or zero denominator.
Rational rational_from_string(const std::string& s);

template <class Base>
typename ExtensionField<Base>::Elem ExtensionField<Base>::inv(const Elem& a) const
{
    if (is_zero(a))
        throw Error("inverse of zero in " + name());
    // Solve a * x = 1: column j of the system is a * x^j.
    const std::size_t k = degree();
    std::vector<std::vector<BaseElem>> m(k, std::vector<BaseElem>(k + 1, base_.zero()));
    Elem basis = one();
    for (std::size_t j = 0; j < k; ++j)
    {
        Elem col = mul(a, basis);
        for (std::size_t i = 0; i < k; ++i)
            m[i][j] = col[i];
        Elem x = zero();
        if (k > 1)
        {
            x[1] = base_.one();
            basis = mul(basis, x);
        }
    }
    m[0][k] = base_.one();
    for (std::size_t c = 0; c < k; ++c)
    {
        std::size_t piv = c;
        while (piv < k && base_.is_zero(m[piv][c]))
            ++piv;
        if (piv == k)
            throw Error("extension modulus is not irreducible");
        std::swap(m[piv], m[c]);
        BaseElem s = base_.inv(m[c][c]);
        for (auto& v : m[c])
            v = base_.mul(v, s);
        for (std::size_t r = 0; r < k; ++r)
        {
            if (r == c || base_.is_zero(m[r][c]))
                continue;
            BaseElem f = m[r][c];
            for (std::size_t j = c; j <= k; ++j)
                m[r][j] = base_.sub(m[r][j], base_.mul(f, m[c][j]));
        }
    }
    Elem r(k);
    for (std::size_t i = 0; i < k; ++i)
        r[i] = m[i][k];
    return r;
}

} // namespace hbl
