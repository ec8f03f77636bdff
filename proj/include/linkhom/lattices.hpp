#pragma once

// Exact integer matrix algorithms (Smith normal form, kernel, solve) and
// finite-index sublattices of Z^d with their quotient groups.
//
// SNF pivoting: least nonzero absolute value, ties broken by least fill
// ((nnz(row)-1)*(nnz(col)-1)); the pivot is forced to divide the whole
// remaining submatrix before the algorithm advances, so the divisibility
// chain holds by construction and the transforms stay valid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linkhom/laurent.hpp"  // BigInt, errors

namespace linkhom {

struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    BigInt& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const BigInt& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }

    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    IntMatrix mul(const IntMatrix& o) const {
        if (cols != o.rows) throw DimensionMismatch("matrix product shape");
        IntMatrix r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const BigInt& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols; ++j) {
                    if (o.at(k, j) == 0) continue;
                    r.at(i, j) += v * o.at(k, j);
                }
            }
        return r;
    }

    IntMatrix transpose() const {
        IntMatrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const BigInt& x) { return x == 0; });
    }
};

struct SNFResult {
    std::vector<BigInt> factors;  // nonzero diagonal, divisibility chain
    int rank = 0;
    std::optional<IntMatrix> U;  // U * A * V == diag(factors) when requested
    std::optional<IntMatrix> V;

    std::vector<BigInt> torsion() const {
        std::vector<BigInt> t;
        for (const auto& f : factors)
            if (f > 1) t.push_back(f);
        return t;
    }
};

namespace detail {

// rounded integer quotient: q minimizing |a - q*b|
inline BigInt round_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    BigInt r = a - q * b;
    BigInt half = b < 0 ? -b : b;
    if (2 * (r < 0 ? -r : r) > half) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

}  // namespace detail

inline SNFResult snf(IntMatrix A, bool want_transforms = false) {
    const int R = A.rows, C = A.cols;
    SNFResult out;
    IntMatrix U, V;
    if (want_transforms) {
        U = IntMatrix::identity(R);
        V = IntMatrix::identity(C);
    }
    std::vector<int> rnnz(R, 0), cnnz(C, 0);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j)
            if (A.at(i, j) != 0) {
                ++rnnz[i];
                ++cnnz[j];
            }

    auto set_entry = [&](int i, int j, BigInt v) {
        BigInt& cell = A.at(i, j);
        if (cell != 0 && v == 0) {
            --rnnz[i];
            --cnnz[j];
        } else if (cell == 0 && v != 0) {
            ++rnnz[i];
            ++cnnz[j];
        }
        cell = std::move(v);
    };
    auto add_row = [&](int dst, int src, const BigInt& mult) {  // row dst += mult*src
        for (int j = 0; j < C; ++j) {
            if (A.at(src, j) == 0) continue;
            set_entry(dst, j, A.at(dst, j) + mult * A.at(src, j));
        }
        if (want_transforms)
            for (int j = 0; j < R; ++j) U.at(dst, j) += mult * U.at(src, j);
    };
    auto add_col = [&](int dst, int src, const BigInt& mult) {
        for (int i = 0; i < R; ++i) {
            if (A.at(i, src) == 0) continue;
            set_entry(i, dst, A.at(i, dst) + mult * A.at(i, src));
        }
        if (want_transforms)
            for (int i = 0; i < C; ++i) V.at(i, dst) += mult * V.at(i, src);
    };
    auto swap_rows = [&](int i1, int i2) {
        if (i1 == i2) return;
        for (int j = 0; j < C; ++j) std::swap(A.at(i1, j), A.at(i2, j));
        std::swap(rnnz[i1], rnnz[i2]);
        if (want_transforms)
            for (int j = 0; j < R; ++j) std::swap(U.at(i1, j), U.at(i2, j));
    };
    auto swap_cols = [&](int j1, int j2) {
        if (j1 == j2) return;
        for (int i = 0; i < R; ++i) std::swap(A.at(i, j1), A.at(i, j2));
        std::swap(cnnz[j1], cnnz[j2]);
        if (want_transforms)
            for (int i = 0; i < C; ++i) std::swap(V.at(i, j1), V.at(i, j2));
    };
    auto negate_row = [&](int i) {
        for (int j = 0; j < C; ++j) A.at(i, j) = -A.at(i, j);
        if (want_transforms)
            for (int j = 0; j < R; ++j) U.at(i, j) = -U.at(i, j);
    };

    int t = 0;
    const int tmax = std::min(R, C);
    while (t < tmax) {
        // pivot search over the trailing submatrix
        int pi = -1, pj = -1;
        BigInt pabs;
        long long pfill = 0;
        for (int i = t; i < R; ++i) {
            if (rnnz[i] == 0) continue;
            for (int j = t; j < C; ++j) {
                const BigInt& v = A.at(i, j);
                if (v == 0) continue;
                BigInt va = v < 0 ? BigInt(-v) : v;
                long long fill =
                    static_cast<long long>(rnnz[i] - 1) * (cnnz[j] - 1);
                if (pi < 0 || va < pabs || (va == pabs && fill < pfill)) {
                    pi = i;
                    pj = j;
                    pabs = va;
                    pfill = fill;
                }
            }
        }
        if (pi < 0) break;  // submatrix is zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            // clear the pivot column
            bool residue = false;
            for (int i = t + 1; i < R; ++i) {
                if (A.at(i, t) == 0) continue;
                BigInt q = detail::round_div(A.at(i, t), A.at(t, t));
                if (q != 0) add_row(i, t, -q);
                if (A.at(i, t) != 0) residue = true;
            }
            if (residue) {
                // a smaller remainder exists below; promote it
                int bi = t;
                for (int i = t + 1; i < R; ++i)
                    if (A.at(i, t) != 0 &&
                        abs(A.at(i, t)) < abs(A.at(bi, t)))
                        bi = i;
                swap_rows(t, bi);
                continue;
            }
            // clear the pivot row
            for (int j = t + 1; j < C; ++j) {
                if (A.at(t, j) == 0) continue;
                BigInt q = detail::round_div(A.at(t, j), A.at(t, t));
                if (q != 0) add_col(j, t, -q);
                if (A.at(t, j) != 0) residue = true;
            }
            if (residue) {
                int bj = t;
                for (int j = t + 1; j < C; ++j)
                    if (A.at(t, j) != 0 &&
                        abs(A.at(t, j)) < abs(A.at(t, bj)))
                        bj = j;
                swap_cols(t, bj);
                continue;
            }
            // pivot must divide every remaining entry
            const BigInt& p = A.at(t, t);
            int bad = -1;
            for (int i = t + 1; i < R && bad < 0; ++i) {
                if (rnnz[i] == 0) continue;
                for (int j = t + 1; j < C; ++j)
                    if (A.at(i, j) % p != 0) {
                        bad = i;
                        break;
                    }
            }
            if (bad < 0) break;
            add_row(t, bad, 1);
        }
        if (A.at(t, t) < 0) negate_row(t);
        ++t;
    }
    for (int i = 0; i < t; ++i) out.factors.push_back(A.at(i, i));
    out.rank = t;
    if (want_transforms) {
        out.U = std::move(U);
        out.V = std::move(V);
    }
    return out;
}

// Columns form a Z-basis of {x : A x = 0}; saturated by construction
// (columns of a unimodular transform).
inline IntMatrix int_kernel(const IntMatrix& A) {
    SNFResult s = snf(A, true);
    const int C = A.cols;
    IntMatrix K(C, C - s.rank);
    for (int j = s.rank; j < C; ++j)
        for (int i = 0; i < C; ++i) K.at(i, j - s.rank) = s.V->at(i, j);
    return K;
}

// Solve K * X = B exactly over Z; throws when no integer solution exists.
inline IntMatrix solve_exact(const IntMatrix& K, const IntMatrix& B) {
    if (K.rows != B.rows) throw DimensionMismatch("solve shape mismatch");
    SNFResult s = snf(K, true);
    IntMatrix UB = s.U->mul(B);
    IntMatrix Y(K.cols, B.cols);
    for (int i = 0; i < s.rank; ++i) {
        const BigInt& d = s.factors[i];
        for (int j = 0; j < B.cols; ++j) {
            if (UB.at(i, j) % d != 0)
                throw Error("integer solve: divisibility failure");
            Y.at(i, j) = UB.at(i, j) / d;
        }
    }
    for (int i = s.rank; i < K.rows; ++i)
        for (int j = 0; j < B.cols; ++j)
            if (UB.at(i, j) != 0)
                throw Error("integer solve: inconsistent system");
    return s.V->mul(Y);
}

// ---- lattices and quotient groups ----

struct Lattice {
    int dim = 0;
    IntMatrix basis;  // columns generate the sublattice
    std::string spec; // echo of how it was constructed, for reports

    BigInt det() const {
        if (basis.rows != dim || basis.cols != dim)
            throw DimensionMismatch("lattice basis must be d x d");
        // fraction-free elimination on a copy
        IntMatrix M = basis;
        BigInt prev = 1;
        int sign = 1;
        for (int k = 0; k < dim; ++k) {
            int p = -1;
            for (int i = k; i < dim; ++i)
                if (M.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            if (p != k) {
                for (int j = 0; j < dim; ++j) std::swap(M.at(p, j), M.at(k, j));
                sign = -sign;
            }
            for (int i = k + 1; i < dim; ++i)
                for (int j = k + 1; j < dim; ++j)
                    M.at(i, j) = (M.at(i, j) * M.at(k, k) -
                                  M.at(i, k) * M.at(k, j)) /
                                 prev;
            prev = M.at(k, k);
        }
        return sign > 0 ? M.at(dim - 1, dim - 1) : -M.at(dim - 1, dim - 1);
    }

    long long index() const {
        BigInt d = det();
        if (d == 0) throw ValidationError("lattice basis is singular");
        if (d < 0) d = -d;
        if (d > std::numeric_limits<long long>::max())
            throw Error("lattice index too large to enumerate");
        return static_cast<long long>(d);
    }
};

inline Lattice make_lattice(int dim, IntMatrix basis, std::string spec = "") {
    Lattice l{dim, std::move(basis), std::move(spec)};
    l.index();  // validates nonsingularity
    return l;
}

inline Lattice diag_lattice(int dim, const std::vector<long long>& entries) {
    IntMatrix b(dim, dim);
    for (int i = 0; i < dim; ++i) b.at(i, i) = entries.at(i);
    std::ostringstream spec;
    spec << (dim == 1 ? "cyclic:" : "diag:");
    for (int i = 0; i < dim; ++i) spec << (i ? "," : "") << entries[i];
    return make_lattice(dim, std::move(b), spec.str());
}

// Z^d / Lambda with element arithmetic in Smith coordinates.  Elements are
// enumerated in mixed-radix lexicographic order of those coordinates (first
// coordinate most significant); bases built on top of this group depend on
// that order staying fixed.
class QuotientGroup {
public:
    using Element = std::vector<long long>;

    explicit QuotientGroup(const Lattice& lam) : dim_(lam.dim) {
        SNFResult s = snf(lam.basis, true);
        if (s.rank != dim_) throw ValidationError("lattice basis is singular");
        moduli_.resize(dim_);
        order_ = 1;
        for (int i = 0; i < dim_; ++i) {
            if (s.factors[i] > std::numeric_limits<long long>::max())
                throw Error("quotient too large to enumerate");
            moduli_[i] = static_cast<long long>(s.factors[i]);
            order_ *= moduli_[i];
        }
        gen_images_.resize(dim_);
        for (int k = 0; k < dim_; ++k) {
            Element g(dim_);
            for (int i = 0; i < dim_; ++i) {
                BigInt v = s.U->at(i, k) % moduli_[i];
                if (v < 0) v += moduli_[i];
                g[i] = static_cast<long long>(v);
            }
            gen_images_[k] = std::move(g);
        }
    }

    int dim() const { return dim_; }
    long long order() const { return order_; }
    const std::vector<long long>& moduli() const { return moduli_; }

    std::vector<BigInt> invariant_factors() const {
        std::vector<BigInt> f;
        for (long long m : moduli_)
            if (m > 1) f.emplace_back(m);
        return f;
    }

    // image of standard basis vector e_k (0-based k)
    const Element& generator_image(int k) const { return gen_images_.at(k); }

    Element zero() const { return Element(dim_, 0); }

    Element add(const Element& x, const Element& y) const {
        Element r(dim_);
        for (int i = 0; i < dim_; ++i) r[i] = (x[i] + y[i]) % moduli_[i];
        return r;
    }

    Element neg(const Element& x) const {
        Element r(dim_);
        for (int i = 0; i < dim_; ++i) r[i] = (moduli_[i] - x[i]) % moduli_[i];
        return r;
    }

    long long element_order(const Element& x) const {
        long long n = 1;
        for (int i = 0; i < dim_; ++i) {
            long long d = moduli_[i] / std::gcd(moduli_[i], x[i]);
            n = std::lcm(n, d);
        }
        return n;
    }

    long long index_of(const Element& x) const {
        long long idx = 0;
        for (int i = 0; i < dim_; ++i) idx = idx * moduli_[i] + x[i];
        return idx;
    }

    Element element_at(long long idx) const {
        Element x(dim_);
        for (int i = dim_ - 1; i >= 0; --i) {
            x[i] = idx % moduli_[i];
            idx /= moduli_[i];
        }
        return x;
    }

private:
    int dim_;
    long long order_;
    std::vector<long long> moduli_;
    std::vector<Element> gen_images_;
};

inline QuotientGroup quotient_group(const Lattice& lam) {
    return QuotientGroup(lam);
}

// ---- shortest vector (desk scale, d <= 4) ----

namespace detail {

inline BigInt norm2_col(const IntMatrix& B, int j) {
    BigInt s = 0;
    for (int i = 0; i < B.rows; ++i) s += B.at(i, j) * B.at(i, j);
    return s;
}

}  // namespace detail

// Exact minimum squared norm over nonzero lattice vectors: pairwise
// size-reduction sweeps, then exhaustive enumeration in a box bounded via
// the inverse basis rows.
inline BigInt shortest_vector_norm2(const Lattice& lam) {
    const int d = lam.dim;
    if (d > 4) throw Error("shortest_vector supports d <= 4");
    IntMatrix B = lam.basis;

    // pairwise Lagrange-style reduction sweeps
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 1000) {
        changed = false;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                BigInt dot = 0;
                for (int k = 0; k < d; ++k) dot += B.at(k, i) * B.at(k, j);
                BigInt nj = detail::norm2_col(B, j);
                BigInt q = detail::round_div(dot, nj);
                if (q != 0) {
                    for (int k = 0; k < d; ++k)
                        B.at(k, i) -= q * B.at(k, j);
                    changed = true;
                }
            }
    }

    BigInt best = detail::norm2_col(B, 0);
    for (int j = 1; j < d; ++j) best = std::min(best, detail::norm2_col(B, j));
    if (d == 1) return best;

    // bound |k_i| <= sqrt(best) * ||row_i(B^{-1})||; use adjugate / det
    BigInt det = lam.det();
    // adjugate via cofactors (d <= 4)
    auto minor_det = [&](int row, int col) {
        std::vector<int> rs, cs;
        for (int i = 0; i < d; ++i)
            if (i != row) rs.push_back(i);
        for (int j = 0; j < d; ++j)
            if (j != col) cs.push_back(j);
        int n = d - 1;
        if (n == 0) return BigInt(1);
        if (n == 1) return BigInt(B.at(rs[0], cs[0]));
        if (n == 2)
            return BigInt(B.at(rs[0], cs[0]) * B.at(rs[1], cs[1]) -
                          B.at(rs[0], cs[1]) * B.at(rs[1], cs[0]));
        BigInt s = 0;
        for (int j = 0; j < 3; ++j) {
            BigInt m = B.at(rs[1], cs[(j + 1) % 3]) * B.at(rs[2], cs[(j + 2) % 3]) -
                       B.at(rs[1], cs[(j + 2) % 3]) * B.at(rs[2], cs[(j + 1) % 3]);
            s += B.at(rs[0], cs[j]) * m;
        }
        return s;
    };
    // recompute det of the reduced basis (reduction is unimodular, same |det|)
    {
        Lattice red{d, B, ""};
        det = red.det();
    }
    const double bestd = std::sqrt(static_cast<double>(best));
    std::vector<long long> bound(d);
    for (int i = 0; i < d; ++i) {
        double row_norm = 0;  // row i of B^{-1} = column i of adj(B)^T / det
        for (int j = 0; j < d; ++j) {
            double x = static_cast<double>(minor_det(j, i)) /
                       static_cast<double>(det);
            if ((i + j) % 2) x = -x;
            row_norm += x * x;
        }
        bound[i] = static_cast<long long>(std::floor(bestd * std::sqrt(row_norm))) + 1;
    }

    std::vector<long long> k(d, 0);
    std::vector<BigInt> v(d);
    // odometer over the box, skipping zero
    std::vector<long long> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = -bound[i];
    for (;;) {
        bool all_zero = std::all_of(cur.begin(), cur.end(),
                                    [](long long x) { return x == 0; });
        if (!all_zero) {
            BigInt n2 = 0;
            for (int i = 0; i < d; ++i) {
                BigInt s = 0;
                for (int j = 0; j < d; ++j) s += BigInt(cur[j]) * B.at(i, j);
                n2 += s * s;
            }
            if (n2 < best) best = n2;
        }
        int pos = d - 1;
        while (pos >= 0 && cur[pos] == bound[pos]) {
            cur[pos] = -bound[pos];
            --pos;
        }
        if (pos < 0) break;
        ++cur[pos];
    }
    return best;
}

inline double shortest_vector(const Lattice& lam) {
    return std::sqrt(static_cast<double>(shortest_vector_norm2(lam)));
}

// ---- lattice spec parsing: "diag:3,2" | "cyclic:7" | "cols:2,1;-1,2" ----
inline Lattice parse_lattice(const std::string& spec, int expect_dim = 0) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("lattice spec needs 'kind:...' form: " + spec);
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : s) {
            if (ch == sep) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
        return parts;
    };
    auto to_ll = [](const std::string& s) {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw ParseError("bad integer in lattice spec");
        return v;
    };
    Lattice l;
    if (kind == "cyclic") {
        long long r = to_ll(rest);
        if (r < 1) throw ParseError("cyclic index must be >= 1");
        l = diag_lattice(1, {r});
    } else if (kind == "diag") {
        std::vector<long long> es;
        for (const auto& p : split(rest, ',')) es.push_back(to_ll(p));
        l = diag_lattice(static_cast<int>(es.size()), es);
    } else if (kind == "cols") {
        auto colstrs = split(rest, ';');
        const int d = static_cast<int>(colstrs.size());
        IntMatrix b(d, d);
        for (int j = 0; j < d; ++j) {
            auto entries = split(colstrs[j], ',');
            if (static_cast<int>(entries.size()) != d)
                throw ParseError("cols lattice: need d entries per column");
            for (int i = 0; i < d; ++i) b.at(i, j) = to_ll(entries[i]);
        }
        l = make_lattice(d, std::move(b), spec);
    } else {
        throw ParseError("unknown lattice kind: " + kind);
    }
    if (l.spec.empty()) l.spec = spec;
    if (expect_dim && l.dim != expect_dim)
        throw DimensionMismatch("lattice dimension != link component count");
    return l;
}

}  // namespace linkhom
