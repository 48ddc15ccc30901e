#pragma once

// Exact Gaussian elimination over a field scalar (Rational or Cyclotomic).

#include "orbicalc/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace orbicalc {

template <class S>
inline S field_inverse(const S& x) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (x.is_zero()) throw std::domain_error("division by zero");
        return Rational(1) / x;
    } else {
        return x.inverse();
    }
}

template <class S>
struct Echelon {
    Mat<S> r;
    std::vector<int> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form.
template <class S>
Echelon<S> rref(Mat<S> m) {
    const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = -1;
        for (int i = row; i < rows; ++i)
            if (!m(i, col).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != row) m.row(p).swap(m.row(row));
        S inv = field_inverse(m(row, col));
        for (int j = col; j < cols; ++j)
            if (!m(row, j).is_zero()) m(row, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            S f = m(i, col);
            for (int j = col; j < cols; ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <class S>
int rank(const Mat<S>& m) {
    return static_cast<int>(rref<S>(m).pivots.size());
}

// Columns form a basis of {x : m x = 0}.
template <class S>
Mat<S> kernel(const Mat<S>& m) {
    auto e = rref<S>(m);
    const int cols = static_cast<int>(m.cols());
    std::vector<char> is_pivot(cols, 0);
    for (int p : e.pivots) is_pivot[p] = 1;
    std::vector<int> free_cols;
    for (int j = 0; j < cols; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat<S> k = Mat<S>::Constant(cols, static_cast<int>(free_cols.size()), S(0));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        k(free_cols[f], f) = S(1);
        for (size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.r(r, free_cols[f]);
    }
    return k;
}

// Some x with a x = b, or nullopt.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> aug(a.rows(), a.cols() + b.cols());
    aug << a, b;
    auto e = rref<S>(aug);
    const int n = static_cast<int>(a.cols());
    Mat<S> x = Mat<S>::Constant(n, b.cols(), S(0));
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= n) return std::nullopt;
        for (int j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.r(r, n + j);
    }
    return x;
}

template <class S>
Mat<S> inverse(const Mat<S>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
    auto x = solve<S>(a, Mat<S>::Identity(a.rows(), a.rows()));
    if (!x || rank<S>(a) != a.rows()) throw std::domain_error("inverse: singular matrix");
    return *x;
}

// p with p * a = identity, for a of full column rank.
template <class S>
Mat<S> left_inverse(const Mat<S>& a) {
    auto e = rref<S>(Mat<S>(a.transpose()));
    if (static_cast<long>(e.pivots.size()) != a.cols())
        throw std::domain_error("left_inverse: matrix lacks full column rank");
    Mat<S> sub(a.cols(), a.cols());
    for (int i = 0; i < a.cols(); ++i) sub.row(i) = a.row(e.pivots[i]);
    Mat<S> inv = inverse<S>(sub);
    Mat<S> p = Mat<S>::Constant(a.cols(), a.rows(), S(0));
    for (int i = 0; i < a.cols(); ++i) p.col(e.pivots[i]) = inv.col(i);
    return p;
}

// Plain product that skips zero entries; exact scalars make Eigen's blocked kernels no faster.
template <class S>
Mat<S> mul(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul: dimension mismatch");
    Mat<S> c = Mat<S>::Constant(a.rows(), b.cols(), S(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class S>
bool is_zero_matrix(const Mat<S>& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) return false;
    return true;
}

}  // namespace orbicalc
