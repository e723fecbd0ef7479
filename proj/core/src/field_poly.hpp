#pragma once

// Internal helpers: Cox polynomials with coefficients mapped into a concrete field.

#include <vector>

#include "hbl/cox.hpp"
#include "hbl/linalg.hpp"

namespace hbl::detail
{

template <class F>
struct FieldTerm
{
    CoxMonomial mono;
    typename F::Elem coeff;
};

template <class F>
using FieldPoly = std::vector<FieldTerm<F>>;

template <class F>
FieldPoly<F> to_field(const F& f, const CoxPolynomial& p)
{
    FieldPoly<F> out;
    for (const auto& [m, c] : p.terms())
    {
        auto v = f.from_rational(c);
        if (!f.is_zero(v))
            out.push_back({m, v});
    }
    return out;
}

/// Restriction to the fibre over [t0 : t1]: a binary form in (S0, S1) of degree
/// `s_degree`, coefficient index = exponent of S0.
template <class F>
std::vector<typename F::Elem> restrict_to_fibre(const F& f, const FieldPoly<F>& p, int s_degree,
                                                const std::vector<typename F::Elem>& t0_pow,
                                                const std::vector<typename F::Elem>& t1_pow)
{
    std::vector<typename F::Elem> out(static_cast<std::size_t>(s_degree + 1), f.zero());
    for (const auto& term : p)
    {
        auto v = f.mul(term.coeff, f.mul(t0_pow[static_cast<std::size_t>(term.mono.k)],
                                         t1_pow[static_cast<std::size_t>(term.mono.l)]));
        out[static_cast<std::size_t>(term.mono.i)] = f.add(out[static_cast<std::size_t>(term.mono.i)], v);
    }
    return out;
}

template <class F>
std::vector<typename F::Elem> powers(const F& f, const typename F::Elem& x, std::size_t n)
{
    std::vector<typename F::Elem> out(n + 1, f.one());
    for (std::size_t i = 1; i <= n; ++i)
        out[i] = f.mul(out[i - 1], x);
    return out;
}

/// Value of a Cox polynomial at a point given by Cox coordinates.
template <class F>
typename F::Elem evaluate(const F& f, const FieldPoly<F>& p, const typename F::Elem& s0, const typename F::Elem& s1,
                          const typename F::Elem& t0, const typename F::Elem& t1)
{
    auto pw = [&](const typename F::Elem& x, std::int64_t n) {
        auto r = f.one();
        for (std::int64_t i = 0; i < n; ++i)
            r = f.mul(r, x);
        return r;
    };
    auto acc = f.zero();
    for (const auto& term : p)
    {
        auto v = f.mul(term.coeff, f.mul(f.mul(pw(s0, term.mono.i), pw(s1, term.mono.j)),
                                         f.mul(pw(t0, term.mono.k), pw(t1, term.mono.l))));
        acc = f.add(acc, v);
    }
    return acc;
}

} // namespace hbl::detail
