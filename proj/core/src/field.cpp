#include "hbl/field.hpp"

#include <sstream>

namespace hbl
{

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (p <= 2 || !is_prime(p))
        throw Error("field characteristic must be an odd prime, got " + std::to_string(p));
    if (p >= (1u << 31))
        throw Error("prime too large for 32-bit residues");
}

PrimeField::Elem PrimeField::inv(Elem a) const
{
    if (a == 0)
        throw Error("inverse of zero in " + name());
    // a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e)
    {
        if (e & 1)
            result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Elem>(result);
}

PrimeField::Elem PrimeField::from_int(std::int64_t v) const
{
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0)
        r += p_;
    return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::from_rational(const Rational& q) const
{
    mpz_class num = q.get_num() % p_;
    mpz_class den = q.get_den() % p_;
    if (num < 0)
        num += p_;
    if (den == 0)
        throw Error("denominator of " + rational_to_string(q) + " vanishes in " + name());
    Elem n = static_cast<Elem>(num.get_ui());
    Elem d = static_cast<Elem>(den.get_ui());
    return mul(n, inv(d));
}

RationalField::Elem RationalField::inv(const Elem& a) const
{
    if (sgn(a) == 0)
        throw Error("inverse of zero in Q");
    return 1 / a;
}

FieldSpec FieldSpec::prime(std::uint32_t p)
{
    if (p <= 2 || !hbl::is_prime(p))
        throw Error("field characteristic must be an odd prime, got " + std::to_string(p));
    return FieldSpec{Kind::Prime, p};
}

std::string FieldSpec::name() const
{
    return is_prime() ? "F_" + std::to_string(p) : std::string("Q");
}

std::vector<PrimeField::Elem> irreducible_modulus(const PrimeField& f, unsigned degree)
{
    if (degree != 2 && degree != 3)
        throw Error("only quadratic and cubic extensions are supported");
    // A monic polynomial of degree <= 3 is irreducible iff it has no root.
    const std::uint32_t p = f.modulus();
    for (std::uint32_t c0 = 1; c0 < p; ++c0)
    {
        for (std::uint32_t c1 = 0; c1 < p; ++c1)
        {
            std::vector<PrimeField::Elem> coeffs(degree, 0);
            coeffs[0] = c0;
            if (degree == 3)
                coeffs[1] = c1;
            bool has_root = false;
            for (std::uint32_t x = 0; x < p && !has_root; ++x)
            {
                PrimeField::Elem v = 1;
                for (unsigned d = 0; d < degree; ++d)
                    v = f.mul(v, x);
                PrimeField::Elem xp = 1;
                for (unsigned d = 0; d < degree; ++d)
                {
                    v = f.add(v, f.mul(coeffs[d], xp));
                    xp = f.mul(xp, x);
                }
                has_root = v == 0;
            }
            if (!has_root)
                return coeffs;
            if (degree == 2)
                break;
        }
    }
    throw Error("no irreducible polynomial found");
}

ExtensionField<PrimeField> prime_extension(const PrimeField& f, unsigned degree)
{
    return ExtensionField<PrimeField>(f, irreducible_modulus(f, degree));
}

ExtensionField<RationalField> rational_cubic_extension()
{
    // x^3 - 2
    return ExtensionField<RationalField>(RationalField(), {Rational(-2), Rational(0), Rational(0)});
}

std::string rational_to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_string(const std::string& s)
{
    auto valid_int = [](const std::string& t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error("malformed rational '" + s + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0)
        throw Error("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

} // namespace hbl
