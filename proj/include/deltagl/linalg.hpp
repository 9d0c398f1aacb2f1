#pragma once

// Matrix arithmetic over truncated Witt scalars: exact products and inverses
// (Gaussian elimination with unit pivots), division-free characteristic
// polynomials (Berkowitz), discriminants via resultants, principal matrix
// roots of 1-units, and Hensel eigendecomposition of regular matrices.

#include <functional>
#include <vector>

#include "core.hpp"

namespace deltagl {

class Mat {
public:
    const Context* ctx = nullptr;
    int n = 0;
    std::vector<Scalar> e; // row-major

    Mat() = default;
    Mat(const Context& cx, int n_) : ctx(&cx), n(n_), e((size_t)n_ * n_, Scalar::zero(cx)) {}

    static Mat identity(const Context& cx, int n) {
        Mat m(cx, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(cx);
        return m;
    }

    Scalar& at(int i, int j) { return e[(size_t)i * n + j]; }
    const Scalar& at(int i, int j) const { return e[(size_t)i * n + j]; }

    int prec() const {
        int k = ctx->Nmax;
        for (const auto& s : e) k = std::min(k, s.prec);
        return k;
    }

    Mat reduced(int k) const {
        Mat r = *this;
        for (auto& s : r.e) s = s.reduced(std::min(k, s.prec));
        return r;
    }

    Mat lifted(int k) const {
        Mat r = *this;
        for (auto& s : r.e) s = s.lifted(k);
        return r;
    }
};

inline void check_dim(const Mat& a, const Mat& b) {
    if (a.ctx != b.ctx) fail("ContextMismatch", "matrices from different contexts");
    if (a.n != b.n) fail("DimensionMismatch", "matrix dimensions differ");
}

inline Mat operator+(const Mat& a, const Mat& b) {
    check_dim(a, b);
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline Mat operator-(const Mat& a, const Mat& b) {
    check_dim(a, b);
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

inline Mat operator-(const Mat& a) {
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = -a.e[i];
    return r;
}

inline Mat operator*(const Mat& a, const Mat& b) {
    check_dim(a, b);
    Mat r(*a.ctx, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            Scalar s = a.at(i, 0) * b.at(0, j);
            for (int k = 1; k < a.n; ++k) s = s + a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

inline Mat operator*(const Scalar& s, const Mat& a) {
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = s * a.e[i];
    return r;
}

inline Mat transpose(const Mat& a) {
    Mat r(*a.ctx, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.at(i, j) = a.at(j, i);
    return r;
}

inline Mat entrywise_p_power(const Mat& a) {
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = pow(a.e[i], (u64)a.ctx->p);
    return r;
}

inline Mat entrywise_frobenius(const Mat& a, long rr) {
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = frobenius(a.e[i], rr);
    return r;
}

inline Mat entrywise_delta(const Mat& a) {
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = delta(a.e[i]);
    return r;
}

inline Mat divide_by_p_exact(const Mat& a, int k) {
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = divide_by_p_exact(a.e[i], k);
    return r;
}

inline Mat mul_by_p(const Mat& a, int k) {
    Mat r(*a.ctx, a.n);
    for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = mul_by_p(a.e[i], k);
    return r;
}

// min valuation over entries (capped at the matrix precision)
inline int valuation(const Mat& a) {
    int v = a.prec();
    for (const auto& s : a.e) v = std::min(v, valuation(s));
    return v;
}

inline bool is_zero(const Mat& a) { return valuation(a) >= a.prec(); }

inline bool eq_at(const Mat& a, const Mat& b, int k) {
    Mat d = a - b;
    return valuation(d) >= std::min(k, d.prec());
}

inline bool operator==(const Mat& a, const Mat& b) { return is_zero(a - b); }

inline Scalar trace(const Mat& a) {
    Scalar s = a.at(0, 0);
    for (int i = 1; i < a.n; ++i) s = s + a.at(i, i);
    return s;
}

// Exact inverse by Gauss-Jordan elimination; pivots must be units (the base
// ring is local, so an invertible matrix always has one per column).
inline Mat inverse(const Mat& a) {
    const int n = a.n;
    const int k = a.prec();
    Mat work = a.reduced(k);
    Mat inv_m = Mat::identity(*a.ctx, n).reduced(k);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (valuation(work.at(row, col).reduced(1)) == 0) { piv = row; break; }
        if (piv < 0) fail("NotInvertible", "no unit pivot: matrix is not invertible");
        for (int j = 0; j < n; ++j) {
            std::swap(work.at(col, j), work.at(piv, j));
            std::swap(inv_m.at(col, j), inv_m.at(piv, j));
        }
        Scalar pi = inv(work.at(col, col));
        for (int j = 0; j < n; ++j) {
            work.at(col, j) = pi * work.at(col, j);
            inv_m.at(col, j) = pi * inv_m.at(col, j);
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            Scalar factor = work.at(row, col);
            if (is_zero(factor)) continue;
            for (int j = 0; j < n; ++j) {
                work.at(row, j) = work.at(row, j) - factor * work.at(col, j);
                inv_m.at(row, j) = inv_m.at(row, j) - factor * inv_m.at(col, j);
            }
        }
    }
    return inv_m;
}

// ---------------------------------------------------------------------------
// Division-free characteristic polynomial (Berkowitz).  Works generically over
// any commutative ring element type with +, -, *.

template <class T>
std::vector<T> berkowitz_charpoly(const std::vector<T>& a, int n, const T& zero, const T& one) {
    // returns d_0..d_n with det(s*I - A) = sum_k d_k s^{n-k}, d_0 = 1
    auto at = [&](int i, int j) -> const T& { return a[(size_t)i * n + j]; };
    std::vector<T> c = {one};
    for (int r = 1; r <= n; ++r) {
        // first column of the Toeplitz factor:
        // (1, -a_rr, -(R S), -(R A S), ..., -(R A^{r-2} S))
        std::vector<T> q(r + 1, zero);
        q[0] = one;
        q[1] = zero - at(r - 1, r - 1);
        if (r >= 2) {
            std::vector<T> w(r - 1, zero); // w = A_{r-1}^i S, starts with S
            for (int i = 0; i < r - 1; ++i) w[i] = at(i, r - 1);
            for (int i = 2; i <= r; ++i) {
                T dot = zero;
                for (int j = 0; j < r - 1; ++j) dot = dot + at(r - 1, j) * w[j];
                q[i] = zero - dot;
                if (i < r) {
                    std::vector<T> w2(r - 1, zero);
                    for (int x = 0; x < r - 1; ++x) {
                        T s = zero;
                        for (int y = 0; y < r - 1; ++y) s = s + at(x, y) * w[y];
                        w2[x] = s;
                    }
                    w = std::move(w2);
                }
            }
        }
        std::vector<T> c2(r + 1, zero);
        for (int i = 0; i <= r; ++i) {
            T s = zero;
            for (int j = 0; j <= std::min<int>(i, (int)c.size() - 1); ++j)
                if (i - j <= r) s = s + q[i - j] * c[j];
            c2[i] = s;
        }
        c = std::move(c2);
    }
    return c;
}

// Dense polynomials over Scalar, for determinants of matrices with polynomial
// entries (used by characteristic-polynomial machinery downstream).
struct PolyS {
    const Context* ctx = nullptr;
    std::vector<Scalar> c; // low-to-high; may carry trailing zeros

    PolyS() = default;
    explicit PolyS(const Scalar& s) : ctx(s.ctx), c{s} {}
    PolyS(const Context& cx, std::vector<Scalar> cs) : ctx(&cx), c(std::move(cs)) {}

    Scalar coeff(size_t i) const { return i < c.size() ? c[i] : Scalar::zero(*ctx); }
};

inline PolyS operator+(const PolyS& a, const PolyS& b) {
    const Context& cx = *a.ctx;
    std::vector<Scalar> r(std::max(a.c.size(), b.c.size()), Scalar::zero(cx));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return PolyS(cx, std::move(r));
}

inline PolyS operator-(const PolyS& a, const PolyS& b) {
    const Context& cx = *a.ctx;
    std::vector<Scalar> r(std::max(a.c.size(), b.c.size()), Scalar::zero(cx));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return PolyS(cx, std::move(r));
}

inline PolyS operator*(const PolyS& a, const PolyS& b) {
    const Context& cx = *a.ctx;
    if (a.c.empty() || b.c.empty()) return PolyS(cx, {});
    std::vector<Scalar> r(a.c.size() + b.c.size() - 1, Scalar::zero(cx));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return PolyS(cx, std::move(r));
}

// determinant of a matrix of polynomials (division-free, via Berkowitz)
inline PolyS poly_det(const Context& cx, const std::vector<PolyS>& entries, int n) {
    if (n == 0) return PolyS(Scalar::one(cx));
    PolyS zero(cx, {});
    PolyS one(Scalar::one(cx));
    std::vector<PolyS> cp = berkowitz_charpoly<PolyS>(entries, n, zero, one);
    // det(M) = (-1)^n * d_n  since det(s*I - M) at s = 0 is (-1)^n det(M)
    PolyS dn = cp[n];
    if (n % 2) dn = zero - dn;
    return dn;
}

inline Scalar det(const Mat& a) {
    if (a.n == 0) return Scalar::one(*a.ctx);
    std::vector<Scalar> cp =
        berkowitz_charpoly<Scalar>(a.e, a.n, Scalar::zero(*a.ctx), Scalar::one(*a.ctx));
    Scalar d = cp[a.n];
    if (a.n % 2) d = -d;
    return d;
}

struct CharPolyData {
    std::vector<Scalar> P; // P_0 = 1, ..., P_n with det(s*I - a) = sum (-1)^i P_i s^{n-i}
    Scalar discriminant;   // prod_{i<j} (t_i - t_j)^2 on diagonals
};

inline CharPolyData char_poly(const Mat& a) {
    const Context& cx = *a.ctx;
    const int n = a.n;
    std::vector<Scalar> d = berkowitz_charpoly<Scalar>(a.e, n, Scalar::zero(cx), Scalar::one(cx));
    CharPolyData out;
    out.P.resize(n + 1, Scalar::zero(cx));
    for (int i = 0; i <= n; ++i) out.P[i] = (i % 2) ? -d[i] : d[i];

    if (n == 1) {
        out.discriminant = Scalar::one(cx);
        return out;
    }
    // discriminant = (-1)^{n(n-1)/2} Res(chi, chi'), chi monic
    // Sylvester matrix of chi (degree n) and chi' (degree n-1): size 2n-1
    const int sz = 2 * n - 1;
    Mat syl(cx, sz);
    // chi coefficients high-to-low: d[0]..d[n]
    for (int r = 0; r < n - 1; ++r)
        for (int i = 0; i <= n; ++i) syl.at(r, r + i) = d[i];
    // chi' coefficients: (n-i)*d[i] for i = 0..n-1
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i)
            syl.at(n - 1 + r, r + i) = Scalar::from_int(cx, n - i).reduced(cx.Nmax) * d[i];
    Scalar res = det(syl);
    int s = (n * (n - 1) / 2) % 2;
    out.discriminant = s ? -res : res;
    return out;
}

inline Scalar eval_charpoly(const CharPolyData& cp, const Scalar& s) {
    // det(s*I - a) = sum (-1)^i P_i s^{n-i}
    const Context& cx = *s.ctx;
    int n = (int)cp.P.size() - 1;
    Scalar acc = Scalar::zero(cx).reduced(s.prec);
    for (int i = 0; i <= n; ++i) {
        Scalar term = cp.P[i] * pow(s, (u64)(n - i));
        acc = (i % 2) ? acc - term : acc + term;
    }
    return acc;
}

inline Scalar eval_charpoly_deriv(const CharPolyData& cp, const Scalar& s) {
    const Context& cx = *s.ctx;
    int n = (int)cp.P.size() - 1;
    Scalar acc = Scalar::zero(cx).reduced(s.prec);
    for (int i = 0; i < n; ++i) {
        Scalar term =
            Scalar::from_int(cx, n - i).reduced(s.prec) * cp.P[i] * pow(s, (u64)(n - i - 1));
        acc = (i % 2) ? acc - term : acc + term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Principal nu-th root of a matrix 1-unit (binomial series; unique root
// congruent to the identity, commutes with its argument).

inline Mat principal_root_matrix(const Mat& u, i64 nu) {
    const Context& cx = *u.ctx;
    if (nu == 0) fail("BadArgument", "0th root");
    i64 anu = nu < 0 ? -nu : nu;
    if (anu % cx.p == 0) fail("NuDivisibleByP", "root order divisible by p");
    Mat base = nu < 0 ? inverse(u) : u;
    Mat one = Mat::identity(cx, u.n);
    if (valuation(base - one) < 1) fail("NotOneUnitMatrix", "principal root needs U = 1 mod p");

    const int target = base.prec();
    const int work = std::min(cx.Nmax, target + (cx.Nmax - cx.N));
    Mat W = (base - one).lifted(work);
    Scalar invnu = inv(Scalar::from_int(cx, anu).reduced(work));

    Mat S = one.reduced(work);
    Mat T = one.reduced(work);
    for (i64 m = 1;; ++m) {
        T = T * W;
        Scalar factor = invnu - Scalar::from_int(cx, m - 1).reduced(T.prec());
        T = factor * T;
        i64 mm = m;
        int v = 0;
        while (mm % cx.p == 0) {
            mm /= cx.p;
            ++v;
        }
        if (v) T = divide_by_p_exact(T, v);
        T = inv(Scalar::from_int(cx, mm).reduced(T.prec())) * T;
        if (is_zero(T)) break;
        S = S + T;
        if (valuation(T) >= target && m > 2 * (i64)target) break;
    }
    return S.reduced(std::min(S.prec(), target));
}

// Independent construction (Newton from the identity; all iterates are
// polynomials in U so the commutative Hensel argument applies).
inline Mat hensel_root_matrix(const Mat& u, i64 nu) {
    const Context& cx = *u.ctx;
    if (nu == 0) fail("BadArgument", "0th root");
    i64 anu = nu < 0 ? -nu : nu;
    if (anu % cx.p == 0) fail("NuDivisibleByP", "root order divisible by p");
    Mat base = nu < 0 ? inverse(u) : u;
    Mat one = Mat::identity(cx, u.n);
    if (valuation(base - one) < 1) fail("NotOneUnitMatrix", "principal root needs U = 1 mod p");
    int k = base.prec();
    Mat x = one.reduced(k);
    Scalar nus = Scalar::from_int(cx, anu).reduced(k);
    auto powm = [&](const Mat& m, i64 e) {
        Mat acc = Mat::identity(cx, m.n).reduced(k);
        Mat b = m;
        while (e) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    };
    for (int it = 0; it < 2 * k + 4; ++it) {
        Mat fx = powm(x, anu) - base;
        if (is_zero(fx)) break;
        x = x - fx * inverse(nus * powm(x, anu - 1));
    }
    return x;
}

// ---------------------------------------------------------------------------
// Hensel eigendecomposition of a regular matrix whose characteristic
// polynomial splits over the residue field: m = x^{-1} t x with t diagonal,
// diagonal entries distinct mod p, sorted by residue coefficient sequence.

struct EigenData {
    Mat t; // diagonal
    Mat x;
};

inline EigenData hensel_eigen(const Mat& m) {
    const Context& cx = *m.ctx;
    const int n = m.n;
    CharPolyData cp = char_poly(m);
    if (n > 1 && valuation(cp.discriminant.reduced(1)) > 0)
        fail("NotRegular", "characteristic polynomial has repeated roots mod p");

    // residue roots by enumeration of F_{p^f}
    std::vector<std::vector<u64>> roots;
    for (const auto& r : all_residues(cx)) {
        Scalar s(cx, 1, r);
        if (is_zero(eval_charpoly(cp, s))) roots.push_back(r);
    }
    if ((int)roots.size() != n)
        fail("CharPolyDoesNotSplit",
             "characteristic polynomial does not split over F_{p^f}; consider a larger f");
    std::sort(roots.begin(), roots.end());

    const int k = m.prec();
    Mat t(cx, n);
    std::vector<Scalar> lams;
    for (int i = 0; i < n; ++i) {
        Scalar lam = Scalar(cx, 1, roots[i]).lifted(k);
        for (int it = 0; it < 2 * k + 4; ++it) {
            Scalar fv = eval_charpoly(cp, lam);
            if (is_zero(fv)) break;
            lam = lam - fv * inv(eval_charpoly_deriv(cp, lam));
        }
        t.at(i, i) = lam;
        lams.push_back(lam);
    }

    // eigenvectors: exact kernel of (m - lam*I); one free column, set to 1
    Mat y(cx, n);
    for (int i = 0; i < n; ++i) {
        Mat a = m.reduced(k);
        for (int d = 0; d < n; ++d) a.at(d, d) = a.at(d, d) - lams[i];
        // row echelon with unit pivots
        std::vector<int> pivot_row_of_col(n, -1);
        int free_col = -1;
        int next_row = 0;
        std::vector<int> rowperm(n);
        for (int r = 0; r < n; ++r) rowperm[r] = r;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int row = next_row; row < n; ++row)
                if (valuation(a.at(row, col).reduced(1)) == 0) { piv = row; break; }
            if (piv < 0) {
                if (free_col >= 0) fail("NotRegular", "eigenspace dimension exceeds 1");
                free_col = col;
                continue;
            }
            if (piv != next_row)
                for (int j = 0; j < n; ++j) std::swap(a.at(next_row, j), a.at(piv, j));
            Scalar pi = inv(a.at(next_row, col));
            for (int j = 0; j < n; ++j) a.at(next_row, j) = pi * a.at(next_row, j);
            for (int row = 0; row < n; ++row) {
                if (row == next_row) continue;
                Scalar factor = a.at(row, col);
                if (is_zero(factor)) continue;
                for (int j = 0; j < n; ++j)
                    a.at(row, j) = a.at(row, j) - factor * a.at(next_row, j);
            }
            pivot_row_of_col[col] = next_row;
            ++next_row;
        }
        if (free_col < 0) fail("NotRegular", "no kernel vector found for eigenvalue");
        // back-substitute: v[free_col] = 1, v[col] = -a(pivot_row, free_col)
        for (int col = 0; col < n; ++col) {
            if (col == free_col) {
                y.at(col, i) = Scalar::one(cx).reduced(k);
            } else {
                y.at(col, i) = -a.at(pivot_row_of_col[col], free_col);
            }
        }
    }
    EigenData out;
    out.t = t;
    out.x = inverse(y);
    return out;
}

} // namespace deltagl
