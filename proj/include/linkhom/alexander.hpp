#pragma once

// Fox calculus on Wirtinger presentations.  The relator
// x_i x_{j1} x_i^{-1} x_{j2}^{-1} contributes the row
//   (1 - u_{t'}) in column i, u_t in column j1, -1 in column j2
// (entries summed when indices coincide).  The Alexander polynomial follows
// the classical convention: for knots it is det of the based matrix; for
// d >= 2 components it is det(row i0, column j0 deleted) / (u_c - 1), where
// c is the component of the deleted generator.  Both are reported up to the
// canonical unit normalization from laurent.hpp.

#include <string>
#include <vector>

#include "linkhom/laurent.hpp"
#include "linkhom/link.hpp"

namespace linkhom {

struct AlexanderMatrix {
    int n = 0;    // N x N, one row per relator (zero rows pad free factors)
    int dim = 0;  // number of variables
    std::vector<LaurentPoly> entries;  // row-major
    std::vector<int> t;                // generator -> component

    LaurentPoly& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
    const LaurentPoly& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * n + j];
    }
};

struct BasedMatrix {
    int n = 0;  // (N-1) x (N-1)
    int dim = 0;
    std::vector<LaurentPoly> entries;
    int deleted_row = 0;  // 0-based indices of the removed row/column
    int deleted_col = 0;

    LaurentPoly& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
    const LaurentPoly& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * n + j];
    }
};

inline AlexanderMatrix fox_matrix(const WirtingerPresentation& pres) {
    AlexanderMatrix m;
    m.n = pres.N;
    m.dim = pres.d;
    m.t = pres.t;
    m.entries.assign(static_cast<std::size_t>(pres.N) * pres.N,
                     LaurentPoly::zero(pres.d));
    for (std::size_t r = 0; r < pres.relators.size(); ++r) {
        const auto& rel = pres.relators[r];
        const int row = static_cast<int>(r);
        const LaurentPoly ut = LaurentPoly::variable(pres.d, rel.t);
        const LaurentPoly utp = LaurentPoly::variable(pres.d, rel.tp);
        const LaurentPoly one = LaurentPoly::constant(pres.d, 1);
        m.at(row, rel.i - 1) += one - utp;
        m.at(row, rel.j1 - 1) += ut;
        m.at(row, rel.j2 - 1) -= one;
    }
    return m;
}

inline BasedMatrix based_matrix(const AlexanderMatrix& m, int i0 = 0, int j0 = 0) {
    if (i0 < 0 || i0 >= m.n || j0 < 0 || j0 >= m.n)
        throw DimensionMismatch("based_matrix: deletion index out of range");
    BasedMatrix b;
    b.n = m.n - 1;
    b.dim = m.dim;
    b.deleted_row = i0;
    b.deleted_col = j0;
    b.entries.reserve(static_cast<std::size_t>(b.n) * b.n);
    for (int i = 0; i < m.n; ++i) {
        if (i == i0) continue;
        for (int j = 0; j < m.n; ++j) {
            if (j == j0) continue;
            b.entries.push_back(m.at(i, j));
        }
    }
    return b;
}

namespace detail {

inline LaurentPoly det_cofactor(const std::vector<LaurentPoly>& a, int n, int dim) {
    if (n == 0) return LaurentPoly::constant(dim, 1);
    if (n == 1) return a[0];
    LaurentPoly sum = LaurentPoly::zero(dim);
    for (int j = 0; j < n; ++j) {
        if (a[j].is_zero()) continue;
        std::vector<LaurentPoly> minor;
        minor.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
        for (int i = 1; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (k != j) minor.push_back(a[static_cast<std::size_t>(i) * n + k]);
        LaurentPoly term = a[j] * det_cofactor(minor, n - 1, dim);
        if (j % 2)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

// Fraction-free (Bareiss) elimination; every division is exact in the
// polynomial ring.  Pivots chosen by least term count to limit growth.
inline LaurentPoly det_bareiss(std::vector<LaurentPoly> a, int n, int dim) {
    LaurentPoly prev = LaurentPoly::constant(dim, 1);
    int sign = 1;
    auto at = [&](int i, int j) -> LaurentPoly& {
        return a[static_cast<std::size_t>(i) * n + j];
    };
    for (int k = 0; k < n - 1; ++k) {
        int pi = -1, pj = -1;
        std::size_t best = 0;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                if (at(i, j).is_zero()) continue;
                std::size_t tc = at(i, j).term_count();
                if (pi < 0 || tc < best) {
                    pi = i;
                    pj = j;
                    best = tc;
                }
            }
        if (pi < 0) return LaurentPoly::zero(dim);
        if (pi != k) {
            for (int j = 0; j < n; ++j) std::swap(at(pi, j), at(k, j));
            sign = -sign;
        }
        if (pj != k) {
            for (int i = 0; i < n; ++i) std::swap(at(i, pj), at(i, k));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j))
                               .exact_div(prev);
        prev = at(k, k);
    }
    LaurentPoly result = at(n - 1, n - 1);
    return sign > 0 ? result : -result;
}

}  // namespace detail

inline LaurentPoly poly_det(const std::vector<LaurentPoly>& entries, int n, int dim) {
    if (n <= 4) return detail::det_cofactor(entries, n, dim);
    return detail::det_bareiss(entries, n, dim);
}

inline LaurentPoly det(const BasedMatrix& b) {
    return poly_det(b.entries, b.n, b.dim);
}

struct AlexanderResult {
    LaurentPoly delta;  // canonical form
    LaurentPoly det_r;  // raw based-matrix determinant (row/col 0 deleted)
};

inline AlexanderResult alexander_polynomial_full(const WirtingerPresentation& pres) {
    const AlexanderMatrix m = fox_matrix(pres);
    AlexanderResult out;
    if (pres.N == 1) {
        out.det_r = LaurentPoly::constant(pres.d, 1);
        out.delta = out.det_r;
        return out;
    }
    out.det_r = det(based_matrix(m, 0, 0));
    if (pres.d == 1) {
        out.delta = out.det_r.normalize();
        return out;
    }
    // links: divide out u_c - 1 for the deleted generator's component;
    // if a column choice resists, try the others before giving up.
    const LaurentPoly one = LaurentPoly::constant(pres.d, 1);
    for (int j0 = 0; j0 < pres.N; ++j0) {
        LaurentPoly D = j0 == 0 ? out.det_r : det(based_matrix(m, 0, j0));
        if (D.is_zero()) {
            out.delta = LaurentPoly::zero(pres.d);
            return out;
        }
        const LaurentPoly uc1 =
            LaurentPoly::variable(pres.d, pres.t[j0]) - one;
        try {
            out.delta = D.exact_div(uc1).normalize();
            return out;
        } catch (const ExactDivisionError&) {
            continue;
        }
    }
    throw ExactDivisionError(
        "convention error: no column choice makes det divisible by u_c - 1");
}

inline LaurentPoly alexander_polynomial(const WirtingerPresentation& pres) {
    return alexander_polynomial_full(pres).delta;
}

// i-th Alexander polynomial of a knot: gcd of the (N-i)x(N-i) minors of the
// based matrix, canonical; 1 once i exceeds the matrix size.
inline LaurentPoly higher_alexander_univariate(const WirtingerPresentation& pres,
                                               int i) {
    if (pres.d != 1)
        throw DimensionMismatch("higher Alexander polynomials: knots only");
    if (i < 1) throw Error("polynomial index must be >= 1");
    const int n = pres.N - 1;       // based matrix size
    const int k = pres.N - i;       // minor size
    if (k <= 0) return LaurentPoly::constant(1, 1);
    if (k > n) return LaurentPoly::constant(1, 1);
    const BasedMatrix b = based_matrix(fox_matrix(pres), 0, 0);

    std::vector<int> rows(k), cols(k);
    LaurentPoly g = LaurentPoly::zero(1);
    const LaurentPoly unit = LaurentPoly::constant(1, 1);

    std::function<bool(int, int, std::vector<int>&)> next_comb =
        [&](int n_total, int kk, std::vector<int>& idx) {
            int p = kk - 1;
            while (p >= 0 && idx[p] == n_total - kk + p) --p;
            if (p < 0) return false;
            ++idx[p];
            for (int q = p + 1; q < kk; ++q) idx[q] = idx[q - 1] + 1;
            return true;
        };
    for (int q = 0; q < k; ++q) rows[q] = q;
    do {
        for (int q = 0; q < k; ++q) cols[q] = q;
        do {
            std::vector<LaurentPoly> sub;
            sub.reserve(static_cast<std::size_t>(k) * k);
            for (int r : rows)
                for (int c : cols) sub.push_back(b.at(r, c));
            LaurentPoly m = poly_det(sub, k, 1);
            if (!m.is_zero()) g = uni_gcd(g, m);
            if (g == unit) return unit;
        } while (next_comb(n, k, cols));
    } while (next_comb(n, k, rows));
    return g.normalize();
}

}  // namespace linkhom
