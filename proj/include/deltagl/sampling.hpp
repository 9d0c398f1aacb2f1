#pragma once

// Deterministic random samplers: entries uniform over base-p digit vectors,
// resampled until the required unit / regularity / membership conditions
// hold.  Every sampler consumes a caller-supplied Rng so that reports are
// reproducible from a single 64-bit seed.

#include "jet.hpp"
#include "lifts.hpp"

namespace deltagl {

inline Scalar random_scalar(const Context& cx, Rng& rng, int k) {
    std::vector<u64> c(cx.f);
    for (int i = 0; i < cx.f; ++i) c[i] = rng.below(cx.pk(k));
    return Scalar(cx, k, c);
}

inline Scalar random_unit_scalar(const Context& cx, Rng& rng, int k) {
    for (;;) {
        Scalar s = random_scalar(cx, rng, k);
        if (valuation(s.reduced(1)) == 0) return s;
    }
}

inline Mat random_matrix(const Context& cx, int n, Rng& rng, int k) {
    Mat m(cx, n);
    for (auto& s : m.e) s = random_scalar(cx, rng, k);
    return m;
}

inline Mat random_invertible_matrix(const Context& cx, int n, Rng& rng, int k) {
    for (;;) {
        Mat m = random_matrix(cx, n, rng, k);
        if (valuation(det(m).reduced(1)) == 0) return m;
    }
}

// regular: unit char-poly discriminant AND the char poly splits over the
// residue field (so the eigenvalue-wise lift is defined)
inline Mat random_regular_matrix(const Context& cx, int n, Rng& rng, int k) {
    for (;;) {
        Mat m = random_invertible_matrix(cx, n, rng, k);
        CharPolyData cp = char_poly(m);
        if (n > 1 && valuation(cp.discriminant.reduced(1)) > 0) continue;
        int nroots = 0;
        for (const auto& r : all_residues(cx))
            if (is_zero(eval_charpoly(cp, Scalar(cx, 1, r)))) ++nroots;
        if (nroots == n) return m;
    }
}

inline Mat random_gram(const Context& cx, int n, Rng& rng, int k, int sign) {
    for (;;) {
        Mat m = random_matrix(cx, n, rng, k);
        if (sign > 0) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) m.at(j, i) = m.at(i, j);
        } else {
            for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::zero(cx).reduced(k);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) m.at(j, i) = -m.at(i, j);
        }
        if (valuation(det(m).reduced(1)) == 0) return m;
    }
}

inline Mat random_one_unit_matrix(const Context& cx, int n, Rng& rng, int k) {
    Mat m = random_matrix(cx, n, rng, k);
    return (Mat::identity(cx, n) + Scalar::from_int(cx, cx.p) * m).reduced(k);
}

inline Mat random_permutation_matrix(const Context& cx, int n, Rng& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[(int)rng.below((u64)i + 1)]);
    Mat m(cx, n);
    for (int i = 0; i < n; ++i) m.at(perm[i], i) = Scalar::one(cx);
    return m;
}

// monomial matrix: permutation times diagonal units
inline Mat random_monomial_matrix(const Context& cx, int n, Rng& rng, int k) {
    Mat perm = random_permutation_matrix(cx, n, rng).reduced(k);
    Mat d(cx, n);
    for (int i = 0; i < n; ++i) d.at(i, i) = random_unit_scalar(cx, rng, k);
    return perm * d;
}

// torus element of SO(q) for a split Gram matrix q = (1 ⊕) [[0,I],[±I,0]]:
// diag((±1,) d_1..d_r, d_1^{-1}..d_r^{-1})
inline Mat random_so_torus_element(const SubgroupSpec& S, Rng& rng, int k) {
    const Context& cx = *S.q.ctx;
    const int n = S.n;
    const int off = (S.sign > 0) ? n % 2 : 0;
    const int r = (n - off) / 2;
    Mat m(cx, n);
    if (off) m.at(0, 0) = (rng.below(2) ? -Scalar::one(cx) : Scalar::one(cx)).reduced(k);
    for (int i = 0; i < r; ++i) {
        Scalar d = random_unit_scalar(cx, rng, k);
        m.at(off + i, off + i) = d;
        m.at(off + r + i, off + r + i) = inv(d);
    }
    return m;
}

// 1-unit of SO(q): the tau-fixed Cartan part of a random 1-unit
inline Mat random_so_one_unit(const SubgroupSpec& S, Rng& rng, int k) {
    const Context& cx = *S.q.ctx;
    Mat a = random_matrix(cx, S.n, rng, k);
    CartanParts parts = cartan_decompose(S, DeltaLie(a, 1));
    return one_plus_pr(parts.plus);
}

inline Mat random_so_element(const SubgroupSpec& S, Rng& rng, int k) {
    return random_so_torus_element(S, rng, k) * random_so_one_unit(S, rng, k);
}

// random order-1 element of the delta-Lie algebra of SO(q), split q
inline DeltaLie random_so_alpha(const SubgroupSpec& S, Rng& rng, int k) {
    const Context& cx = *S.q.ctx;
    Mat a = random_matrix(cx, S.n, rng, k);
    return cartan_decompose(S, DeltaLie(a, 1)).plus;
}

// random order-1 element of the delta-Lie algebra of SL_n: pick all entries
// freely except the last diagonal one, then solve det(1 + p*alpha) = 1 for it
// (linear with unit cofactor coefficient).
inline DeltaLie random_sl_alpha(const Context& cx, int n, Rng& rng, int k) {
    for (;;) {
        Mat a = random_matrix(cx, n, rng, k);
        a.at(n - 1, n - 1) = Scalar::zero(cx).reduced(k);
        Mat g0 = Mat::identity(cx, n) + Scalar::from_int(cx, cx.p) * a;
        Scalar d0 = det(g0);
        // cofactor of (n-1, n-1): derivative of det in that entry
        Scalar cof;
        if (n == 1) {
            cof = Scalar::one(cx).reduced(k);
        } else {
            Mat minor(cx, n - 1);
            for (int i = 0; i < n - 1; ++i)
                for (int j = 0; j < n - 1; ++j) minor.at(i, j) = g0.at(i, j);
            cof = det(minor);
        }
        if (valuation(cof.reduced(1)) != 0) continue; // resample (cofactor must be a unit)
        // det(g0 + p*t*E_{nn}) = d0 + p*t*cof = 1
        Scalar t = divide_by_p_exact(Scalar::one(cx).reduced(d0.prec) - d0, 1) * inv(cof);
        a.at(n - 1, n - 1) = t;
        return DeltaLie(a.reduced(t.prec), 1);
    }
}

// point of the fixed locus SO(q) ∩ (entrywise p-power)^{-1}(SO(q)) for split
// q in size 2: triangular determinant-1 matrices (antisymmetric case) or
// torus elements (both cases).
inline Mat random_fixed_locus_point(const SubgroupSpec& S, Rng& rng, int k) {
    const Context& cx = *S.q.ctx;
    if (S.sign < 0 && S.n == 2) {
        switch (rng.below(3)) {
        case 0: {
            Mat m = Mat::identity(cx, 2).reduced(k);
            m.at(0, 1) = random_scalar(cx, rng, k);
            return m;
        }
        case 1: {
            Mat m = Mat::identity(cx, 2).reduced(k);
            m.at(1, 0) = random_scalar(cx, rng, k);
            return m;
        }
        default: {
            Mat m(cx, 2);
            Scalar d = random_unit_scalar(cx, rng, k);
            Scalar b = random_scalar(cx, rng, k);
            m.at(0, 0) = d;
            m.at(0, 1) = b;
            m.at(1, 1) = inv(d);
            return m; // upper triangular with det 1
        }
        }
    }
    return random_so_torus_element(S, rng, k);
}

} // namespace deltagl
