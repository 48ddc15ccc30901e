#include "orbicalc/lattice.hpp"

#include "orbicalc/linalg.hpp"

#include <algorithm>

namespace orbicalc {

namespace {

void row_swap(IntMat& a, int i, int j) {
    if (i != j) a.row(i).swap(a.row(j));
}
void col_swap(IntMat& a, int i, int j) {
    if (i != j) a.col(i).swap(a.col(j));
}
// row_i -= q * row_j
void row_axpy(IntMat& a, int i, int j, const Integer& q) {
    for (int c = 0; c < a.cols(); ++c)
        if (a(j, c) != 0) a(i, c) -= q * a(j, c);
}
void col_axpy(IntMat& a, int i, int j, const Integer& q) {
    for (int r = 0; r < a.rows(); ++r)
        if (a(r, j) != 0) a(r, i) -= q * a(r, j);
}

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
    std::vector<Integer> out;
    for (int i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
}

int SmithForm::rank() const {
    int r = 0;
    for (const auto& x : diagonal())
        if (x != 0) ++r;
    return r;
}

SmithForm smith_normal_form(const IntMat& m) {
    const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    IntMat a = m;
    IntMat u = IntMat::Identity(rows, rows);
    IntMat v = IntMat::Identity(cols, cols);
    for (int t = 0; t < std::min(rows, cols); ++t) {
        // pivot: smallest nonzero magnitude in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj)))) pi = i, pj = j;
        if (pi < 0) break;
        row_swap(a, t, pi), row_swap(u, t, pi);
        col_swap(a, t, pj), col_swap(v, t, pj);
        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Integer q = a(i, t) / a(t, t);
                row_axpy(a, i, t, q), row_axpy(u, i, t, q);
                if (a(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Integer q = a(t, j) / a(t, t);
                col_axpy(a, j, t, q), col_axpy(v, j, t, q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                int bi = t, bj = t;
                for (int i = t + 1; i < rows; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) bi = i, bj = t;
                for (int j = t + 1; j < cols; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) bi = t, bj = j;
                row_swap(a, t, bi), row_swap(u, t, bi);
                col_swap(a, t, bj), col_swap(v, t, bj);
                continue;
            }
            // divisibility of the trailing block
            int bad = -1;
            for (int i = t + 1; i < rows && bad < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) { bad = i; break; }
            if (bad < 0) break;
            row_axpy(a, t, bad, Integer(-1)), row_axpy(u, t, bad, Integer(-1));
        }
        if (a(t, t) < 0) {
            a.row(t) = -a.row(t);
            u.row(t) = -u.row(t);
        }
    }
    return {a, u, v};
}

bool is_localized(const Rational& x, const Integer& n) {
    if (mpz_cmp_ui(mpq_denref(x.backend().data()), 1) == 0) return true;
    Integer d = denominator_of(x);
    return d == 1 || prime_support_divides(d, n);
}

LocalizedScalar::LocalizedScalar(const Rational& value, const Integer& n) : value_(value), n_(n) {
    if (!is_localized(value, n))
        throw std::domain_error("LocalizedScalar: denominator " + to_string(denominator_of(value)) +
                                " not supported on " + to_string(n));
}

void LatticeMap::validate() const {
    for (int i = 0; i < matrix.rows(); ++i)
        for (int j = 0; j < matrix.cols(); ++j)
            if (!is_localized(matrix(i, j), n))
                throw VerificationError("LatticeMap entry " + to_string(matrix(i, j)) + " outside Z[1/" +
                                        to_string(n) + "]");
}

Integer common_denominator(const RatMat& m) {
    Integer c = 1;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c = lcm(c, denominator_of(m(i, j)));
    return c;
}

bool is_iso_over_localization(const IntMat& m, const Integer& n) {
    if (m.rows() != m.cols()) return false;
    if (m.rows() == 0) return true;
    for (const auto& d : smith_normal_form(m).diagonal())
        if (d == 0 || !prime_support_divides(d, n)) return false;
    return true;
}

bool is_iso_over_localization(const LatticeMap& m, const Integer& n) {
    Integer c = common_denominator(m.matrix);
    if (c != 1 && !prime_support_divides(c, n)) return false;
    RatMat scaled = m.matrix * Rational(c);
    return is_iso_over_localization(to_integer(scaled), n);
}

IntMat column_hermite_form(const IntMat& basis) {
    // Row-style Hermite form of the transpose, via extended gcd row operations.
    IntMat a = basis.transpose();
    const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        for (int i = r + 1; i < rows; ++i) {
            if (a(i, c) == 0) continue;
            if (a(r, c) == 0) {
                row_swap(a, r, i);
                continue;
            }
            // [x y; -b/g a/g] on rows (r, i)
            Integer x, y, g;
            {
                Integer a0 = a(r, c), b0 = a(i, c);
                Integer s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = a0, r1 = b0;
                while (r1 != 0) {
                    Integer q = r0 / r1;
                    Integer tmp = r0 - q * r1; r0 = r1; r1 = tmp;
                    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
                    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
                }
                g = r0, x = s0, y = t0;
            }
            Integer ar = a(r, c) / g, ai = a(i, c) / g;
            for (int k = 0; k < cols; ++k) {
                Integer pr = a(r, k), qi = a(i, k);
                a(r, k) = x * pr + y * qi;
                a(i, k) = ar * qi - ai * pr;
            }
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) a.row(r) = -a.row(r);
        for (int i = 0; i < r; ++i) {
            Integer q = a(i, c) / a(r, c);
            if (a(i, c) - q * a(r, c) < 0) q -= 1;
            if (q != 0) row_axpy(a, i, r, q);
        }
        ++r;
    }
    return IntMat(a.topRows(r).transpose());
}

IntMat saturated_kernel(const IntMat& m) {
    SmithForm s = smith_normal_form(m);
    const int rk = s.rank();
    const int cols = static_cast<int>(m.cols());
    IntMat k = s.v.rightCols(cols - rk);
    return column_hermite_form(k);
}

IntMat invariant_sublattice(const std::vector<IntMat>& action) {
    if (action.empty()) throw std::invalid_argument("invariant_sublattice: empty action gives no dimension");
    const int n = static_cast<int>(action.front().rows());
    IntMat stacked(0, n);
    for (const auto& a : action) {
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("invariant_sublattice: matrices of mismatched size");
        IntMat block = a - IntMat::Identity(n, n);
        IntMat grown(stacked.rows() + n, n);
        grown << stacked, block;
        stacked = std::move(grown);
    }
    return saturated_kernel(stacked);
}

bool is_saturated(const IntMat& basis) {
    if (basis.cols() == 0) return true;
    SmithForm s = smith_normal_form(basis);
    for (const auto& d : s.diagonal())
        if (d != 1) return false;
    return true;
}

IntVec lattice_coordinates(const IntMat& basis, const IntVec& v) {
    auto x = solve<Rational>(to_rational(basis), to_rational(IntMat(v)));
    if (!x) throw VerificationError("lattice_coordinates: vector outside the span");
    IntMat xi = to_integer(*x);
    return xi.col(0);
}

}  // namespace orbicalc
