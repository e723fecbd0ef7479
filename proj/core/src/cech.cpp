#include "hbl/cech.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <utility>

#include "hbl/linalg.hpp"

namespace hbl
{

LineBundleSum LineBundleSum::twisted(const DivisorClass& t) const
{
    LineBundleSum out;
    out.summands.reserve(summands.size());
    for (const auto& d : summands)
        out.summands.push_back(d + t);
    return out;
}

PolyMatrix PolyMatrix::times(const Surface& s, const PolyMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw Error("polynomial matrix product dimension mismatch");
    PolyMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rhs.cols_; ++j)
        {
            CoxPolynomial acc;
            bool have = false;
            for (std::size_t k = 0; k < cols_; ++k)
            {
                const auto& x = (*this)(i, k);
                const auto& y = rhs(k, j);
                if (x.is_zero() || y.is_zero())
                    continue;
                auto prod = x.times(s, y);
                acc = have ? acc + prod : prod;
                have = true;
            }
            out(i, j) = acc;
        }
    return out;
}

bool PolyMatrix::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const CoxPolynomial& p) { return p.is_zero(); });
}

namespace
{

void validate_map(const Surface& s, const PolyMatrix& m, const LineBundleSum& src, const LineBundleSum& tgt,
                  const char* which)
{
    if (m.rows() != tgt.size() || m.cols() != src.size())
        throw Error(std::string("complex map ") + which + " has shape " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " + std::to_string(tgt.size()) + "x" +
                    std::to_string(src.size()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
        {
            const auto& p = m(r, c);
            if (p.is_zero())
                continue;
            DivisorClass want = tgt.summands[r] - src.summands[c];
            if (p.degree() != want)
                throw Error(std::string("entry (") + std::to_string(r) + "," + std::to_string(c) + ") of " + which +
                            " has degree " + p.degree().str() + ", expected " + want.str());
        }
    (void)s;
}

} // namespace

void ComplexOfSums::validate(const Surface& s, const FieldSpec& field) const
{
    validate_map(s, lower, at(-2), at(-1), "lower");
    validate_map(s, upper, at(-1), at(0), "upper");
    if (lower.cols() == 0 || upper.rows() == 0)
        return;
    PolyMatrix comp = upper.times(s, lower);
    for (std::size_t r = 0; r < comp.rows(); ++r)
        for (std::size_t c = 0; c < comp.cols(); ++c)
        {
            CoxPolynomial v = field.is_prime() ? comp(r, c).reduced_mod(field.p) : comp(r, c);
            if (!v.is_zero())
                throw Error("malformed complex: composite entry (" + std::to_string(r) + "," + std::to_string(c) +
                            ") is " + v.str());
        }
}

namespace
{

// Maximal cones {T_a, S_b}; on a chart the variables outside the cone are inverted.
constexpr std::array<unsigned, 4> kChartVars = {kMaskT0 | kMaskS0, kMaskT0 | kMaskS1, kMaskT1 | kMaskS0,
                                                kMaskT1 | kMaskS1};

struct SubsetTable
{
    std::array<std::vector<unsigned>, 4> by_degree; // chart subsets with k + 1 elements
    std::array<std::array<int, 16>, 4> index{};
};

const SubsetTable& subsets()
{
    static const SubsetTable table = [] {
        SubsetTable t;
        for (auto& row : t.index)
            row.fill(-1);
        for (unsigned m = 1; m < 16; ++m)
        {
            int k = std::popcount(m) - 1;
            t.index[k][m] = static_cast<int>(t.by_degree[k].size());
            t.by_degree[k].push_back(m);
        }
        return t;
    }();
    return table;
}

unsigned cone_of(unsigned chart_subset)
{
    unsigned v = 15;
    for (unsigned c = 0; c < 4; ++c)
        if (chart_subset & (1u << c))
            v &= kChartVars[c];
    return v;
}

// A Laurent monomial is a section over the intersection of the charts in the subset
// iff its negative variables avoid the common cone.
bool regular_on(unsigned chart_subset, unsigned negative_mask) { return (cone_of(chart_subset) & negative_mask) == 0; }

template <class F>
struct PatternComplex
{
    std::array<std::vector<unsigned>, 4> good;  // chart subsets per Cech degree
    std::array<Matrix<F>, 3> delta;              // delta[k] : C^k -> C^{k+1}
    std::array<std::int64_t, 4> h{};
    std::array<Matrix<F>, 4> class_basis;        // [boundary basis | generators]
    std::array<std::size_t, 4> boundary_rank{};
};

template <class F>
class CechCalculus
{
public:
    using Elem = typename F::Elem;

    explicit CechCalculus(const F& f) : f_(f)
    {
        for (unsigned n = 0; n < 16; ++n)
            patterns_[n] = build(n);
    }

    const F& field() const { return f_; }
    const PatternComplex<F>& pattern(unsigned mask) const { return patterns_[mask]; }

    static std::size_t full_size(int k) { return subsets().by_degree[k].size(); }

    std::vector<Elem> generator(unsigned mask, int k, std::size_t idx) const
    {
        const auto& pc = patterns_[mask];
        std::vector<Elem> full(full_size(k), f_.zero());
        std::size_t col = pc.boundary_rank[k] + idx;
        for (std::size_t r = 0; r < pc.good[k].size(); ++r)
            full[subsets().index[k][pc.good[k][r]]] = pc.class_basis[k](r, col);
        return full;
    }

    std::vector<Elem> restrict_good(unsigned mask, int k, const std::vector<Elem>& full) const
    {
        const auto& pc = patterns_[mask];
        const auto& all = subsets().by_degree[k];
        std::vector<Elem> out;
        out.reserve(pc.good[k].size());
        for (std::size_t i = 0; i < all.size(); ++i)
        {
            if (regular_on(all[i], mask))
                out.push_back(full[i]);
            else if (!f_.is_zero(full[i]))
                throw Error("internal: Cech cochain is not regular on its chart intersection");
        }
        return out;
    }

    std::vector<Elem> expand_good(unsigned mask, int k, const std::vector<Elem>& good) const
    {
        const auto& pc = patterns_[mask];
        std::vector<Elem> full(full_size(k), f_.zero());
        for (std::size_t r = 0; r < pc.good[k].size(); ++r)
            full[subsets().index[k][pc.good[k][r]]] = good[r];
        return full;
    }

    /// Coordinates of the class of a cocycle in the chosen generators of H^k.
    std::vector<Elem> class_of(unsigned mask, int k, const std::vector<Elem>& full) const
    {
        const auto& pc = patterns_[mask];
        if (pc.h[k] == 0)
            return {};
        auto z = restrict_good(mask, k, full);
        if (k < 3)
        {
            const auto& d = pc.delta[k];
            for (std::size_t r = 0; r < d.rows(); ++r)
            {
                Elem acc = f_.zero();
                for (std::size_t c = 0; c < d.cols(); ++c)
                    if (!f_.is_zero(d(r, c)))
                        acc = f_.add(acc, f_.mul(d(r, c), z[c]));
                if (!f_.is_zero(acc))
                    throw Error("internal: class requested for a non-cocycle");
            }
        }
        auto x = solve(f_, pc.class_basis[k], z);
        if (!x)
            throw Error("internal: cocycle outside the span of boundaries and generators");
        return std::vector<Elem>(x->begin() + static_cast<long>(pc.boundary_rank[k]), x->end());
    }

    /// y with delta y = z, z a coboundary in Cech degree k >= 1.
    std::vector<Elem> lift(unsigned mask, int k, const std::vector<Elem>& full, LiftOrder order) const
    {
        const auto& pc = patterns_[mask];
        auto z = restrict_good(mask, k, full);
        if (pc.good[k - 1].empty())
        {
            for (const auto& v : z)
                if (!f_.is_zero(v))
                    throw Error("internal: zig-zag lift does not exist");
            return std::vector<Elem>(full_size(k - 1), f_.zero());
        }
        auto y = solve(f_, pc.delta[k - 1], z, order == LiftOrder::Reverse);
        if (!y)
            throw Error("internal: zig-zag lift does not exist (cochain is not a coboundary)");
        return expand_good(mask, k - 1, *y);
    }

private:
    PatternComplex<F> build(unsigned mask) const
    {
        PatternComplex<F> pc;
        const auto& table = subsets();
        for (int k = 0; k < 4; ++k)
            for (unsigned sub : table.by_degree[k])
                if (regular_on(sub, mask))
                    pc.good[k].push_back(sub);
        for (int k = 0; k < 3; ++k)
        {
            Matrix<F> d(f_, pc.good[k + 1].size(), pc.good[k].size());
            for (std::size_t r = 0; r < pc.good[k + 1].size(); ++r)
            {
                unsigned big = pc.good[k + 1][r];
                int t = 0;
                for (unsigned c = 0; c < 4; ++c)
                {
                    if (!(big & (1u << c)))
                        continue;
                    unsigned face = big & ~(1u << c);
                    auto it = std::find(pc.good[k].begin(), pc.good[k].end(), face);
                    if (it != pc.good[k].end())
                    {
                        auto col = static_cast<std::size_t>(it - pc.good[k].begin());
                        d(r, col) = (t % 2 == 0) ? f_.one() : f_.neg(f_.one());
                    }
                    ++t;
                }
            }
            pc.delta[k] = std::move(d);
        }
        for (int k = 0; k < 4; ++k)
        {
            const std::size_t n = pc.good[k].size();
            Matrix<F> cycles = k < 3 ? kernel(f_, pc.delta[k]) : identity(f_, n);
            Matrix<F> bounds = k > 0 ? pc.delta[k - 1] : Matrix<F>(f_, n, 0);
            Matrix<F> both = hconcat(f_, bounds, cycles);
            auto ech = rref(f_, both);
            std::vector<std::size_t> keep_b, keep_z;
            for (auto c : ech.pivot_cols)
                (c < bounds.cols() ? keep_b : keep_z).push_back(c);
            Matrix<F> basis(f_, n, keep_b.size() + keep_z.size());
            std::size_t col = 0;
            for (auto c : keep_b)
            {
                for (std::size_t r = 0; r < n; ++r)
                    basis(r, col) = both(r, c);
                ++col;
            }
            for (auto c : keep_z)
            {
                for (std::size_t r = 0; r < n; ++r)
                    basis(r, col) = both(r, c);
                ++col;
            }
            pc.boundary_rank[k] = keep_b.size();
            pc.h[k] = static_cast<std::int64_t>(keep_z.size());
            pc.class_basis[k] = std::move(basis);
        }
        return pc;
    }

    F f_;
    std::array<PatternComplex<F>, 16> patterns_;
};

const CechCalculus<RationalField>& rational_calculus()
{
    static const CechCalculus<RationalField> calc{RationalField()};
    return calc;
}

// Pairs (x, y) with x + y = n, each non-negative (neg = false) or <= -1 (neg = true).
// Returns nullopt when the set is infinite.
std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> sign_pairs(std::int64_t n, bool neg_x, bool neg_y)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    if (neg_x != neg_y)
        return std::nullopt;
    if (!neg_x)
    {
        for (std::int64_t x = 0; x <= n; ++x)
            out.emplace_back(x, n - x);
    }
    else
    {
        for (std::int64_t x = n + 1; x <= -1; ++x)
            out.emplace_back(x, n - x);
    }
    return out;
}

// Monomials of degree d with exactly the given negative pattern; nullopt if infinite.
std::optional<std::vector<CoxMonomial>> monomials_with_pattern(const Surface& s, const DivisorClass& d, unsigned mask)
{
    auto ij = sign_pairs(d.a, mask & kMaskS0, mask & kMaskS1);
    if (!ij)
        return std::nullopt;
    std::vector<CoxMonomial> out;
    for (auto [i, j] : *ij)
    {
        auto kl = sign_pairs(d.b - s.e * j, mask & kMaskT0, mask & kMaskT1);
        if (!kl)
            return std::nullopt;
        for (auto [k, l] : *kl)
            out.push_back({i, j, k, l});
    }
    return out;
}

// Basis blocks of H^k of a sum of line bundles, in cox-basis order.
struct SumBasis
{
    std::vector<std::vector<CoxMonomial>> per_summand;
    std::vector<std::size_t> offset;
    std::size_t dim = 0;

    long index_of(std::size_t summand, const CoxMonomial& m) const
    {
        const auto& v = per_summand[summand];
        auto it = std::lower_bound(v.begin(), v.end(), m);
        if (it == v.end() || *it != m)
            return -1;
        return static_cast<long>(offset[summand] + static_cast<std::size_t>(it - v.begin()));
    }
    std::pair<std::size_t, CoxMonomial> at(std::size_t idx) const
    {
        std::size_t s = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), idx) - offset.begin()) - 1;
        while (per_summand[s].empty() || idx - offset[s] >= per_summand[s].size())
            ++s;
        return {s, per_summand[s][idx - offset[s]]};
    }
};

SumBasis sum_basis(const Surface& s, const LineBundleSum& sum, int k)
{
    SumBasis b;
    for (const auto& d : sum.summands)
    {
        b.offset.push_back(b.dim);
        b.per_summand.push_back(basis(s, d, k).basis);
        b.dim += b.per_summand.back().size();
    }
    return b;
}

template <class F>
Matrix<F> block_induced_map(const F& f, const Surface& s, int k, const LineBundleSum& src, const LineBundleSum& tgt,
                            const SumBasis& src_b, const SumBasis& tgt_b, const PolyMatrix& m)
{
    Matrix<F> out(f, tgt_b.dim, src_b.dim);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
        {
            const auto& p = m(r, c);
            if (p.is_zero() || src_b.per_summand[c].empty() || tgt_b.per_summand[r].empty())
                continue;
            LinearMap lm = induced_map(s, k, src.summands[c], tgt.summands[r], p);
            for (std::size_t i = 0; i < lm.tgt_dim; ++i)
                for (std::size_t j = 0; j < lm.src_dim; ++j)
                    if (sgn(lm.matrix(i, j)) != 0)
                        out(tgt_b.offset[r] + i, src_b.offset[c] + j) = f.from_rational(lm.matrix(i, j));
        }
    return out;
}

using CochainKey = std::pair<std::size_t, CoxMonomial>;

template <class F>
using Cochain = std::map<CochainKey, std::vector<typename F::Elem>>;

template <class F>
void accumulate(const F& f, Cochain<F>& into, const CochainKey& key, const typename F::Elem& scale,
                const std::vector<typename F::Elem>& v)
{
    auto it = into.find(key);
    if (it == into.end())
        it = into.emplace(key, std::vector<typename F::Elem>(v.size(), f.zero())).first;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!f.is_zero(v[i]))
            it->second[i] = f.add(it->second[i], f.mul(scale, v[i]));
}

// Applies a polynomial matrix to a Cech cochain of a sum of line bundles.
template <class F>
Cochain<F> apply_map(const F& f, const PolyMatrix& m, const Cochain<F>& in)
{
    Cochain<F> out;
    for (const auto& [key, v] : in)
    {
        const auto& [col, mono] = key;
        for (std::size_t r = 0; r < m.rows(); ++r)
        {
            const auto& p = m(r, col);
            for (const auto& [u, c] : p.terms())
                accumulate(f, out, {r, mono * u}, f.from_rational(c), v);
        }
    }
    return out;
}

template <class F>
bool all_zero(const F& f, const std::vector<typename F::Elem>& v)
{
    return std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); });
}

template <class F>
Hypercohomology hypercohomology_impl(const F& f, const Surface& s, const ComplexOfSums& cx, const DivisorClass& twist,
                                     LiftOrder order)
{
    CechCalculus<F> cal(f);
    std::array<LineBundleSum, 3> terms;
    for (int p = 0; p < 3; ++p)
        terms[p] = cx.terms[p].twisted(twist);

    std::array<std::array<SumBasis, 3>, 3> e1; // [p + 2][k]
    for (int p = 0; p < 3; ++p)
        for (int k = 0; k < 3; ++k)
            e1[p][k] = sum_basis(s, terms[p], k);

    std::array<Matrix<F>, 3> d_lower, d_upper; // per Cech degree k
    std::array<std::size_t, 3> rank_lower{}, rank_upper{};
    for (int k = 0; k < 3; ++k)
    {
        d_lower[k] = block_induced_map(f, s, k, terms[0], terms[1], e1[0][k], e1[1][k], cx.lower);
        d_upper[k] = block_induced_map(f, s, k, terms[1], terms[2], e1[1][k], e1[2][k], cx.upper);
        rank_lower[k] = rank(f, d_lower[k]);
        rank_upper[k] = rank(f, d_upper[k]);
    }

    Hypercohomology out;
    for (int k = 0; k < 3; ++k)
    {
        for (int p = 0; p < 3; ++p)
            out.e1[p][k] = static_cast<std::int64_t>(e1[p][k].dim);
        out.e2[0][k] = out.e1[0][k] - static_cast<std::int64_t>(rank_lower[k]);
        out.e2[1][k] = out.e1[1][k] - static_cast<std::int64_t>(rank_upper[k]) - static_cast<std::int64_t>(rank_lower[k]);
        out.e2[2][k] = out.e1[2][k] - static_cast<std::int64_t>(rank_upper[k]);
    }

    // d2 : E2^{-2,k} -> E2^{0,k-1}
    for (int k = 1; k < 3; ++k)
    {
        if (out.e2[0][k] == 0 || out.e2[2][k - 1] == 0)
            continue;
        Matrix<F> ker = kernel(f, d_lower[k]);
        const auto& tgt_b = e1[2][k - 1];
        Matrix<F> images(f, tgt_b.dim, ker.cols());
        for (std::size_t col = 0; col < ker.cols(); ++col)
        {
            Cochain<F> c;
            for (std::size_t idx = 0; idx < ker.rows(); ++idx)
            {
                if (f.is_zero(ker(idx, col)))
                    continue;
                auto [summand, mono] = e1[0][k].at(idx);
                unsigned mask = mono.negative_mask();
                if (cal.pattern(mask).h[k] != 1)
                    throw Error("internal: monomial basis does not match Cech generators");
                accumulate(f, c, {summand, mono}, ker(idx, col), cal.generator(mask, k, 0));
            }
            Cochain<F> z = apply_map(f, cx.lower, c);
            Cochain<F> y;
            for (const auto& [key, v] : z)
            {
                if (all_zero(f, v))
                    continue;
                y.emplace(key, cal.lift(key.second.negative_mask(), k, v, order));
            }
            Cochain<F> w = apply_map(f, cx.upper, y);
            for (const auto& [key, v] : w)
            {
                if (all_zero(f, v))
                    continue;
                auto coords = cal.class_of(key.second.negative_mask(), k - 1, v);
                if (coords.empty() || f.is_zero(coords[0]))
                    continue;
                long row = tgt_b.index_of(key.first, key.second);
                if (row < 0)
                    throw Error("internal: class lands outside the target cohomology basis");
                images(static_cast<std::size_t>(row), col) = f.add(images(static_cast<std::size_t>(row), col), coords[0]);
            }
        }
        std::size_t with = rank(f, hconcat(f, d_upper[k - 1], images));
        out.d2_rank[k] = static_cast<std::int64_t>(with - rank_upper[k - 1]);
    }

    for (int k = 0; k < 3; ++k)
    {
        out.e_inf[0][k] = out.e2[0][k] - out.d2_rank[k];
        out.e_inf[1][k] = out.e2[1][k];
        out.e_inf[2][k] = out.e2[2][k] - (k + 1 < 3 ? out.d2_rank[k + 1] : 0);
    }
    for (int p = 0; p < 3; ++p)
        for (int k = 0; k < 3; ++k)
        {
            int n = (p - 2) + k;
            if (n < -2 || n > 2)
            {
                if (out.e_inf[p][k] != 0)
                    throw Error("internal: hypercohomology outside degrees -2..2");
                continue;
            }
            out.dims[static_cast<std::size_t>(n + 2)] += out.e_inf[p][k];
        }
    return out;
}

} // namespace

std::array<std::int64_t, 4> pattern_cohomology(unsigned negative_mask)
{
    if (negative_mask > 15)
        throw Error("negative mask out of range");
    return rational_calculus().pattern(negative_mask).h;
}

LineCohomology cech_line_cohomology(const Surface& s, const DivisorClass& d)
{
    std::array<std::int64_t, 4> total{};
    for (unsigned mask = 0; mask < 16; ++mask)
    {
        auto h = pattern_cohomology(mask);
        if (h[0] == 0 && h[1] == 0 && h[2] == 0 && h[3] == 0)
            continue;
        auto monos = monomials_with_pattern(s, d, mask);
        if (!monos)
            throw Error("internal: infinitely many monomials carry cohomology for pattern " + std::to_string(mask));
        for (int q = 0; q < 4; ++q)
            total[q] += h[q] * static_cast<std::int64_t>(monos->size());
    }
    if (total[3] != 0)
        throw Error("internal: nonzero Cech H^3 on a surface");
    return {total[0], total[1], total[2]};
}

std::vector<CoxMonomial> cech_basis(const Surface& s, const DivisorClass& d, int q)
{
    if (q < 0 || q > 2)
        throw Error("cohomological degree must be 0, 1 or 2");
    std::vector<CoxMonomial> out;
    for (unsigned mask = 0; mask < 16; ++mask)
    {
        auto h = pattern_cohomology(mask);
        if (h[q] == 0)
            continue;
        if (h[q] != 1)
            throw Error("internal: per-monomial cohomology of dimension > 1");
        auto monos = monomials_with_pattern(s, d, mask);
        if (!monos)
            throw Error("internal: infinitely many monomials carry cohomology");
        out.insert(out.end(), monos->begin(), monos->end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

LinearMap cech_induced_map(const Surface& s, int q, const DivisorClass& src, const DivisorClass& tgt,
                           const CoxPolynomial& mult)
{
    if (!mult.is_zero() && mult.degree() != tgt - src)
        throw Error("multiplier degree does not match target minus source");
    const auto& cal = rational_calculus();
    const RationalField& f = cal.field();
    auto from = cech_basis(s, src, q);
    auto to = cech_basis(s, tgt, q);
    LinearMap map(from.size(), to.size());
    for (std::size_t col = 0; col < from.size(); ++col)
    {
        const auto& m = from[col];
        auto gen = cal.generator(m.negative_mask(), q, 0);
        for (const auto& [u, c] : mult.terms())
        {
            CoxMonomial prod = m * u;
            unsigned mask = prod.negative_mask();
            // The product cochain is the same vector, now read in the pattern of prod.
            auto coords = cal.class_of(mask, q, gen);
            if (coords.empty() || f.is_zero(coords[0]))
                continue;
            auto it = std::lower_bound(to.begin(), to.end(), prod);
            if (it == to.end() || *it != prod)
                throw Error("internal: class of product missing from target basis");
            map.matrix(static_cast<std::size_t>(it - to.begin()), col) += c * coords[0];
        }
    }
    return map;
}

std::int64_t Hypercohomology::euler_characteristic() const
{
    std::int64_t chi = 0;
    for (int n = -2; n <= 2; ++n)
        chi += ((n % 2 == 0) ? 1 : -1) * at(n);
    return chi;
}

Hypercohomology hypercohomology(const Surface& s, const ComplexOfSums& c, const DivisorClass& twist,
                                const FieldSpec& field, LiftOrder order)
{
    c.validate(s, field);
    if (field.is_prime())
        return hypercohomology_impl(PrimeField(field.p), s, c, twist, order);
    return hypercohomology_impl(RationalField(), s, c, twist, order);
}

LineCohomology bundle_cohomology(const Surface& s, const ComplexOfSums& monad, const DivisorClass& twist,
                                 const FieldSpec& field)
{
    auto h = hypercohomology(s, monad, twist, field);
    if (h.at(-2) != 0 || h.at(2) != 0)
        throw Error("complex is not a monad: hypercohomology outside the bundle range at twist " + twist.str());
    return {h.at(-1), h.at(0), h.at(1)};
}

std::int64_t terms_euler_characteristic(const Surface& s, const ComplexOfSums& c, const DivisorClass& twist)
{
    std::int64_t chi = 0;
    for (int p = -2; p <= 0; ++p)
    {
        std::int64_t sign = (p % 2 == 0) ? 1 : -1;
        for (const auto& d : c.at(p).summands)
            chi += sign * euler_char(s, ChernData{1, d + twist, 0});
    }
    return chi;
}

bool BeilinsonPage::rows_zero(int q) const
{
    return rank[0][q] == 0 && rank[1][q] == 0 && rank[2][q] == 0;
}

BeilinsonPage beilinson_page(const Surface& s, const ComplexOfSums& monad, const FieldSpec& field)
{
    BeilinsonPage page;
    const DivisorClass F = DivisorClass::F(), C0 = DivisorClass::C0();
    auto h_v = bundle_cohomology(s, monad, {0, 0}, field);
    auto h_m2 = bundle_cohomology(s, monad, -(C0 + F), field);
    auto h_f = bundle_cohomology(s, monad, -F, field);
    auto h_c0 = bundle_cohomology(s, monad, -C0, field);
    page.twist_p0 = {0, 0};
    page.twist_pm2 = {-1, -(s.e + 1)};
    // Ext^1(O(-C0-eF), O(-F)) = H^1(O(C0 + (e-1)F))
    page.minus_one_split = h1_dim(s, {1, s.e - 1}) == 0;
    for (int q = 0; q < 3; ++q)
    {
        page.rank[2][q] = h_v[q];
        page.rank[0][q] = h_m2[q];
        page.minus_one_fibre[q] = h_f[q];
        page.minus_one_section[q] = h_c0[q];
        page.rank[1][q] = h_f[q] + h_c0[q];
    }
    return page;
}

ConsistencyReport verify_connecting_consistency(const Surface& s, const ComplexOfSums& c, const DivisorClass& twist,
                                                const FieldSpec& field, bool is_monad)
{
    ConsistencyReport rep;
    auto h = hypercohomology(s, c, twist, field);
    rep.chi_hyper = h.euler_characteristic();
    rep.chi_terms = terms_euler_characteristic(s, c, twist);
    rep.chi_bundle = -rep.chi_hyper;
    for (int k = 1; k < 3; ++k)
        if (h.d2_rank[k] < 0 || h.d2_rank[k] > std::min(h.e2[0][k], h.e2[2][k - 1]))
            rep.bookkeeping = false;
    std::int64_t inf_total = 0, dim_total = 0;
    for (const auto& row : h.e_inf)
        for (auto v : row)
        {
            if (v < 0)
                rep.bookkeeping = false;
            inf_total += v;
        }
    for (auto v : h.dims)
        dim_total += v;
    if (inf_total != dim_total)
        rep.bookkeeping = false;
    if (is_monad)
        rep.outer_vanish = h.at(-2) == 0 && h.at(2) == 0;
    rep.ok = rep.chi_hyper == rep.chi_terms && rep.bookkeeping && rep.outer_vanish;
    return rep;
}

} // namespace hbl
