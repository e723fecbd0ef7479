#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "hbl/field.hpp"

namespace hbl
{

/// Dense row-major matrix over a field F.
template <class F>
class Matrix
{
public:
    using Elem = typename F::Elem;

    Matrix() = default;
    Matrix(const F& field, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, field.zero())
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Elem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

template <class F>
struct Echelon
{
    Matrix<F> reduced;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form. With reverse_columns the pivot search runs from the
/// last column to the first, which changes the particular solutions chosen by solve().
template <class F>
Echelon<F> rref(const F& f, Matrix<F> m, bool reverse_columns = false)
{
    Echelon<F> out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t step = 0; step < cols && r < rows; ++step)
    {
        std::size_t c = reverse_columns ? cols - 1 - step : step;
        std::size_t piv = r;
        while (piv < rows && f.is_zero(m(piv, c)))
            ++piv;
        if (piv == rows)
            continue;
        m.swap_rows(piv, r);
        auto s = f.inv(m(r, c));
        for (std::size_t j = 0; j < cols; ++j)
            if (!f.is_zero(m(r, j)))
                m(r, j) = f.mul(m(r, j), s);
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (i == r || f.is_zero(m(i, c)))
                continue;
            auto factor = m(i, c);
            for (std::size_t j = 0; j < cols; ++j)
                if (!f.is_zero(m(r, j)))
                    m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

/// Rank by forward elimination only.
template <class F>
std::size_t rank(const F& f, Matrix<F> m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t piv = r;
        while (piv < rows && f.is_zero(m(piv, c)))
            ++piv;
        if (piv == rows)
            continue;
        m.swap_rows(piv, r);
        auto s = f.inv(m(r, c));
        for (std::size_t i = r + 1; i < rows; ++i)
        {
            if (f.is_zero(m(i, c)))
                continue;
            auto factor = f.mul(m(i, c), s);
            for (std::size_t j = c; j < cols; ++j)
                if (!f.is_zero(m(r, j)))
                    m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        ++r;
    }
    return r;
}

/// Columns of the result span the right kernel of m.
template <class F>
Matrix<F> kernel(const F& f, const Matrix<F>& m)
{
    auto e = rref(f, m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivot_cols)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    Matrix<F> k(f, cols, free_cols.size());
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx)
    {
        std::size_t fc = free_cols[idx];
        k(fc, idx) = f.one();
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            k(e.pivot_cols[r], idx) = f.neg(e.reduced(r, fc));
    }
    return k;
}

/// Particular solution of m x = rhs with free variables set to zero, if one exists.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& f, const Matrix<F>& m,
                                                   const std::vector<typename F::Elem>& rhs,
                                                   bool reverse_columns = false)
{
    Matrix<F> aug(f, m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    // Reverse pivoting must never pick the augmented column first.
    Echelon<F> e;
    if (reverse_columns)
    {
        Matrix<F> perm(f, m.rows(), m.cols() + 1);
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            for (std::size_t j = 0; j < m.cols(); ++j)
                perm(i, j + 1) = m(i, j);
            perm(i, 0) = rhs[i];
        }
        e = rref(f, std::move(perm), true);
        for (auto& c : e.pivot_cols)
            c = c == 0 ? m.cols() : c - 1;
        // Undo the permutation on the reduced matrix.
        Matrix<F> back(f, m.rows(), m.cols() + 1);
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            for (std::size_t j = 0; j < m.cols(); ++j)
                back(i, j) = e.reduced(i, j + 1);
            back(i, m.cols()) = e.reduced(i, 0);
        }
        e.reduced = std::move(back);
    }
    else
    {
        e = rref(f, std::move(aug));
    }
    std::vector<typename F::Elem> x(m.cols(), f.zero());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
    {
        std::size_t c = e.pivot_cols[r];
        if (c == m.cols())
            return std::nullopt;
        x[c] = e.reduced(r, m.cols());
    }
    return x;
}

template <class F>
typename F::Elem determinant(const F& f, Matrix<F> m)
{
    if (m.rows() != m.cols())
        throw Error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    auto det = f.one();
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t piv = c;
        while (piv < n && f.is_zero(m(piv, c)))
            ++piv;
        if (piv == n)
            return f.zero();
        if (piv != c)
        {
            m.swap_rows(piv, c);
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        auto s = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i)
        {
            if (f.is_zero(m(i, c)))
                continue;
            auto factor = f.mul(m(i, c), s);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        }
    }
    return det;
}

template <class F>
Matrix<F> multiply(const F& f, const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.cols() != b.rows())
        throw Error("matrix product dimension mismatch");
    Matrix<F> out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            if (f.is_zero(a(i, k)))
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
        }
    return out;
}

/// Columns of a and b side by side.
template <class F>
Matrix<F> hconcat(const F& f, const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.rows() != b.rows())
        throw Error("hconcat row mismatch");
    Matrix<F> out(f, a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

template <class F>
Matrix<F> transpose(const F& f, const Matrix<F>& a)
{
    Matrix<F> out(f, a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

template <class F>
Matrix<F> identity(const F& f, std::size_t n)
{
    Matrix<F> out(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        out(i, i) = f.one();
    return out;
}

} // namespace hbl
