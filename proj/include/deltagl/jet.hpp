#pragma once

// First-jet calculus on GL_n points: the group law of J^1(GL_n), the ghost
// map, delta-Lie algebra group laws of every order, delta-brackets, the
// exponentials ex^r, membership tests for the classical subgroups, and the
// arithmetic Cartan decomposition for split forms.

#include "linalg.hpp"

namespace deltagl {

// -- J^1(GL_n) ---------------------------------------------------------------

struct JetPoint {
    Mat a0; // invertible
    Mat a1;
};

// group law:
// (a0,a1)(b0,b1) = (a0 b0, a0^(p) b1 + a1 b0^(p) + p a1 b1
//                          + p^{-1}(a0^(p) b0^(p) - (a0 b0)^(p)))
inline JetPoint jet_mul(const JetPoint& A, const JetPoint& B) {
    const Mat& a0 = A.a0;
    const Mat& a1 = A.a1;
    const Mat& b0 = B.a0;
    const Mat& b1 = B.a1;
    check_dim(a0, b0);
    Mat a0p = entrywise_p_power(a0);
    Mat b0p = entrywise_p_power(b0);
    Mat prod = a0 * b0;
    Mat carry = divide_by_p_exact(a0p * b0p - entrywise_p_power(prod), 1);
    const Context& cx = *a0.ctx;
    Scalar ps = Scalar::from_int(cx, cx.p);
    JetPoint r;
    r.a0 = prod;
    r.a1 = a0p * b1 + a1 * b0p + ps * (a1 * b1) + carry;
    return r;
}

inline JetPoint jet_identity(const Context& cx, int n) {
    return JetPoint{Mat::identity(cx, n), Mat(cx, n)};
}

// inverse for the law above:
// iota(a0,a1) = (a0^{-1}, -(a0^(p) + p a1)^{-1} (a1 (a0^{-1})^(p)
//                         + p^{-1}(a0^(p) (a0^{-1})^(p) - 1)))
inline JetPoint jet_inv(const JetPoint& A) {
    const Context& cx = *A.a0.ctx;
    Mat a0i = inverse(A.a0);
    Mat a0p = entrywise_p_power(A.a0);
    Mat a0ip = entrywise_p_power(a0i);
    Mat one = Mat::identity(cx, A.a0.n);
    Scalar ps = Scalar::from_int(cx, cx.p);
    Mat carry = divide_by_p_exact(a0p * a0ip - one, 1);
    JetPoint r;
    r.a0 = a0i;
    r.a1 = -(inverse(a0p + ps * A.a1) * (A.a1 * a0ip + carry));
    return r;
}

// ghost coordinates w(a0, a1) = (a0, a0^(p) + p a1); injective monoid map.
inline std::pair<Mat, Mat> ghost(const JetPoint& A) {
    const Context& cx = *A.a0.ctx;
    Scalar ps = Scalar::from_int(cx, cx.p);
    return {A.a0, entrywise_p_power(A.a0) + ps * A.a1};
}

// nabla^1(a) = (a, delta a), the canonical multiplicative section.
inline JetPoint nabla1(const Mat& a) { return JetPoint{a, entrywise_delta(a)}; }

// -- delta-Lie algebra elements ----------------------------------------------

struct DeltaLie {
    Mat m;
    int r = 1; // order

    DeltaLie() = default;
    DeltaLie(Mat mm, int rr) : m(std::move(mm)), r(rr) {
        if (r < 1) fail("BadArgument", "delta-Lie order must be >= 1");
    }
};

inline void check_order(const DeltaLie& a, const DeltaLie& b) {
    if (a.r != b.r) fail("OrderMismatch", "delta-Lie elements of different orders");
}

// a +_{delta,r} b = a + b + p^r a b
inline DeltaLie plus_delta(const DeltaLie& a, const DeltaLie& b) {
    check_order(a, b);
    const Context& cx = *a.m.ctx;
    Scalar pr = Scalar::from_int(cx, 1);
    for (int i = 0; i < a.r; ++i) pr = pr * Scalar::from_int(cx, cx.p);
    return DeltaLie(a.m + b.m + pr * (a.m * b.m), a.r);
}

// the +_{delta,r}-inverse: -a (1 + p^r a)^{-1}
inline DeltaLie minus_delta(const DeltaLie& a) {
    const Context& cx = *a.m.ctx;
    Scalar pr = Scalar::from_int(cx, 1);
    for (int i = 0; i < a.r; ++i) pr = pr * Scalar::from_int(cx, cx.p);
    Mat one = Mat::identity(cx, a.m.n);
    return DeltaLie(-(a.m * inverse(one + pr * a.m)), a.r);
}

// group element attached to an order-r element: 1 + p^r a  (no Frobenius twist)
inline Mat one_plus_pr(const DeltaLie& a) {
    const Context& cx = *a.m.ctx;
    Scalar pr = Scalar::from_int(cx, 1);
    for (int i = 0; i < a.r; ++i) pr = pr * Scalar::from_int(cx, cx.p);
    return Mat::identity(cx, a.m.n) + pr * a.m;
}

// adjoint action a *_delta b = phi(a) b phi(a)^{-1}  (order-1 b)
inline DeltaLie star_delta(const Mat& a, const DeltaLie& b) {
    Mat fa = entrywise_frobenius(a, 1);
    return DeltaLie(fa * b.m * inverse(fa), b.r);
}

// delta-bracket L^r x L^s -> L^{r+s}:
// [alpha,beta] = p^{-(r+s)} ( X Y X^{-1} Y^{-1} - 1 ),
//   X = 1 + p^r phi^s(alpha), Y = 1 + p^s phi^r(beta)
inline DeltaLie bracket_delta(const DeltaLie& alpha, const DeltaLie& beta) {
    const Context& cx = *alpha.m.ctx;
    const int r = alpha.r, s = beta.r;
    if (alpha.m.prec() < r + s + 1 || beta.m.prec() < r + s + 1)
        fail("InsufficientPrecision", "bracket needs r+s digits of headroom");
    Mat one = Mat::identity(cx, alpha.m.n);
    Scalar pr = Scalar::from_int(cx, 1), ps = Scalar::from_int(cx, 1);
    for (int i = 0; i < r; ++i) pr = pr * Scalar::from_int(cx, cx.p);
    for (int i = 0; i < s; ++i) ps = ps * Scalar::from_int(cx, cx.p);
    Mat X = one + pr * entrywise_frobenius(alpha.m, s);
    Mat Y = one + ps * entrywise_frobenius(beta.m, r);
    Mat comm = X * Y * inverse(X) * inverse(Y) - one;
    return DeltaLie(divide_by_p_exact(comm, r + s), r + s);
}

// ex^r(alpha) = 1 + p^r phi^{-r}(alpha)
inline Mat ex_r(const DeltaLie& a) {
    const Context& cx = *a.m.ctx;
    Scalar pr = Scalar::from_int(cx, 1);
    for (int i = 0; i < a.r; ++i) pr = pr * Scalar::from_int(cx, cx.p);
    return Mat::identity(cx, a.m.n) + pr * entrywise_frobenius(a.m, -(long)a.r);
}

// -- classical subgroups -------------------------------------------------------

struct SubgroupSpec {
    enum Kind { FullGL, SpecialLinear, Orthogonal, Torus, Normalizer } kind = FullGL;
    int n = 0;
    Mat q;         // Orthogonal only
    int sign = +1; // +1: q^t = q, -1: q^t = -q
    bool split = false;

    static SubgroupSpec full(const Context& cx, int n) {
        SubgroupSpec s;
        s.kind = FullGL;
        s.n = n;
        (void)cx;
        return s;
    }
    static SubgroupSpec special_linear(int n) {
        SubgroupSpec s;
        s.kind = SpecialLinear;
        s.n = n;
        return s;
    }
    static SubgroupSpec orthogonal(const Mat& q, int sign, bool split) {
        SubgroupSpec s;
        s.kind = Orthogonal;
        s.n = q.n;
        s.q = q;
        s.sign = sign;
        s.split = split;
        Mat qt = transpose(q);
        Mat cmp = sign > 0 ? qt - q : qt + q;
        if (!is_zero(cmp)) fail("SymmetryMismatch", "q does not have the declared symmetry");
        return s;
    }
    static SubgroupSpec torus(int n) {
        SubgroupSpec s;
        s.kind = Torus;
        s.n = n;
        return s;
    }
    static SubgroupSpec normalizer(int n) {
        SubgroupSpec s;
        s.kind = Normalizer;
        s.n = n;
        return s;
    }
};

// split Gram matrices: symmetric even [[0,I],[I,0]]; antisymmetric
// [[0,I],[-I,0]]; symmetric odd 1 ⊕ [[0,I],[I,0]].
inline Mat split_gram(const Context& cx, int n, int sign) {
    Mat q(cx, n);
    if (sign < 0) {
        if (n % 2) fail("NotSplit", "antisymmetric split form needs even n");
        int r = n / 2;
        for (int i = 0; i < r; ++i) {
            q.at(i, r + i) = Scalar::one(cx);
            q.at(r + i, i) = -Scalar::one(cx);
        }
        return q;
    }
    int off = n % 2;
    if (off) q.at(0, 0) = Scalar::one(cx);
    int r = (n - off) / 2;
    for (int i = 0; i < r; ++i) {
        q.at(off + i, off + r + i) = Scalar::one(cx);
        q.at(off + r + i, off + i) = Scalar::one(cx);
    }
    return q;
}

// Membership of an order-1 element in the delta-Lie algebra of S, checked as
// an exact congruence at precision min(prec, N-1).
inline bool delta_lie_membership(const SubgroupSpec& S, const DeltaLie& a) {
    if (a.r != 1) fail("OrderMismatch", "membership is defined for order-1 elements");
    const Context& cx = *a.m.ctx;
    const int k = std::min(a.m.prec(), cx.N - 1);
    switch (S.kind) {
    case SubgroupSpec::FullGL:
        return true;
    case SubgroupSpec::SpecialLinear: {
        // p^{-1}(det(1 + p a) - 1) = 0
        Mat g = one_plus_pr(a);
        Scalar d = divide_by_p_exact(det(g) - Scalar::one(cx), 1);
        return valuation(d) >= std::min(k, d.prec);
    }
    case SubgroupSpec::Orthogonal: {
        // a^t phi(q) + phi(q) a + p a^t phi(q) a = 0
        Mat fq = entrywise_frobenius(S.q, 1);
        Scalar ps = Scalar::from_int(cx, cx.p);
        Mat at = transpose(a.m);
        Mat lhs = at * fq + fq * a.m + ps * (at * fq * a.m);
        return valuation(lhs) >= std::min(k, lhs.prec());
    }
    case SubgroupSpec::Torus:
    case SubgroupSpec::Normalizer: {
        // 1 + p a monomial and congruent to 1 forces a diagonal
        for (int i = 0; i < a.m.n; ++i)
            for (int j = 0; j < a.m.n; ++j) {
                if (i == j) continue;
                const Scalar& s = a.m.at(i, j);
                if (valuation(s) < std::min(k, s.prec)) return false;
            }
        return true;
    }
    }
    return false;
}

// -- arithmetic Cartan decomposition ------------------------------------------
// For split q: a = a_plus +_delta a_minus with a_plus in L_delta(SO(q)) and
// a_minus anti-fixed under the involution b -> -_delta(phi(q)^{-1} b^t phi(q)).

struct CartanParts {
    DeltaLie plus;
    DeltaLie minus;
};

inline DeltaLie cartan_involution(const Mat& q, const DeltaLie& b) {
    Mat fq = entrywise_frobenius(q, 1);
    return minus_delta(DeltaLie(inverse(fq) * transpose(b.m) * fq, b.r));
}

inline CartanParts cartan_decompose(const SubgroupSpec& S, const DeltaLie& a) {
    if (S.kind != SubgroupSpec::Orthogonal || !S.split)
        fail("NotSplit", "Cartan decomposition requires a split orthogonal form");
    if (a.r != 1) fail("OrderMismatch", "Cartan decomposition is defined for order-1 elements");
    const Context& cx = *a.m.ctx;
    Mat fq = entrywise_frobenius(S.q, 1);
    Mat A = one_plus_pr(a);
    Mat V2 = inverse(fq) * transpose(A) * fq * A; // A^{-tau} A
    Mat V = principal_root_matrix(V2, 2);
    Mat U = A * inverse(V);
    Mat one = Mat::identity(cx, a.m.n);
    CartanParts out;
    out.plus = DeltaLie(divide_by_p_exact(U - one, 1), 1);
    out.minus = DeltaLie(divide_by_p_exact(V - one, 1), 1);
    return out;
}

} // namespace deltagl
