#pragma once

// Distinguished lifts of Frobenius on GL_n: the standard entrywise lift, the
// Chern lift attached to an (anti)symmetric Gram matrix, the special-linear
// lift, the hermitian restriction, constant twists, and the two inner lifts
// as descriptor variants.  Also: Christoffel symbols, the arithmetic
// logarithmic derivative, cocycle defects, and pointwise verification helpers.

#include <memory>

#include "inner.hpp"
#include "jet.hpp"

namespace deltagl {

struct FrobeniusLift {
    enum Kind {
        Standard,      // x -> x^(p)
        Chern,         // x -> x^(p) Lambda(x), q^t = ±q
        SpecialLinear, // x -> lambda(x) x^(p), requires p not dividing n
        Hermitian,     // Chern at the identity form, restricted to the
                       // centralizer of q0 = [[0,1],[-1,0]] (block form)
        Twist,         // x -> (1 + p alpha) base(x)
        InnerTwist,    // x -> (1 + p alpha) base(x) (1 + p alpha)^{-1}
        Conjugation,   // regular locus, eigenvalue-wise lift
        CharPoly       // diagonal deformation preserving char-poly coefficients
    };

    Kind kind = Standard;
    int n = 0;
    Mat q;         // Chern
    int sign = +1; // Chern: +1 symmetric, -1 antisymmetric
    int herm_r = 0;
    Mat alpha; // Twist / InnerTwist
    std::shared_ptr<FrobeniusLift> base;
    bool corrupt_lambda = false; // negative-control hook: perturbs Lambda(0,0)

    static FrobeniusLift standard(int n) {
        FrobeniusLift L;
        L.kind = Standard;
        L.n = n;
        return L;
    }
    static FrobeniusLift chern(const Mat& q, int sign) {
        FrobeniusLift L;
        L.kind = Chern;
        L.n = q.n;
        L.q = q;
        L.sign = sign;
        Mat qt = transpose(q);
        Mat cmp = sign > 0 ? qt - q : qt + q;
        if (!is_zero(cmp)) fail("SymmetryMismatch", "q does not have the declared symmetry");
        return L;
    }
    static FrobeniusLift special_linear(const Context& cx, int n) {
        FrobeniusLift L;
        L.kind = SpecialLinear;
        L.n = n;
        if (n % cx.p == 0) fail("PDividesN", "special-linear lift needs p not dividing n");
        return L;
    }
    static FrobeniusLift hermitian(int r) {
        FrobeniusLift L;
        L.kind = Hermitian;
        L.n = 2 * r;
        L.herm_r = r;
        return L;
    }
    static FrobeniusLift twist(const Mat& alpha, FrobeniusLift base_) {
        FrobeniusLift L;
        L.kind = Twist;
        L.n = alpha.n;
        L.alpha = alpha;
        L.base = std::make_shared<FrobeniusLift>(std::move(base_));
        return L;
    }
    static FrobeniusLift inner_twist(const Mat& alpha, FrobeniusLift base_) {
        FrobeniusLift L;
        L.kind = InnerTwist;
        L.n = alpha.n;
        L.alpha = alpha;
        L.base = std::make_shared<FrobeniusLift>(std::move(base_));
        return L;
    }
    static FrobeniusLift conjugation(int n) {
        FrobeniusLift L;
        L.kind = Conjugation;
        L.n = n;
        return L;
    }
    static FrobeniusLift charpoly_lift(int n) {
        FrobeniusLift L;
        L.kind = CharPoly;
        L.n = n;
        return L;
    }
};

// -- hermitian block embedding ---------------------------------------------------

struct HermitianPoint {
    Mat a;
    Mat b; // z = [[a, b], [-b, a]]
};

inline Mat hermitian_embed(const HermitianPoint& h) {
    const Context& cx = *h.a.ctx;
    check_dim(h.a, h.b);
    int r = h.a.n;
    Mat z(cx, 2 * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            z.at(i, j) = h.a.at(i, j);
            z.at(i, r + j) = h.b.at(i, j);
            z.at(r + i, j) = -h.b.at(i, j);
            z.at(r + i, r + j) = h.a.at(i, j);
        }
    return z;
}

inline HermitianPoint hermitian_project(const Mat& z) {
    const Context& cx = *z.ctx;
    if (z.n % 2) fail("DimensionMismatch", "hermitian points live in even size");
    int r = z.n / 2;
    HermitianPoint h{Mat(cx, r), Mat(cx, r)};
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            h.a.at(i, j) = z.at(i, j);
            h.b.at(i, j) = z.at(i, r + j);
        }
    Mat back = hermitian_embed(h);
    if (!is_zero(back - z.reduced(back.prec())))
        fail("NotInCentralizer", "matrix does not commute with the reference symplectic form");
    return h;
}

// z^c = a + i b with i the Teichmueller square root of -1.
inline Mat c_map(const HermitianPoint& h) {
    const Context& cx = *h.a.ctx;
    Scalar i = sqrt_minus_one(cx);
    return h.a + i * h.b;
}

// -- evaluation -----------------------------------------------------------------

inline Mat chern_lambda(const Mat& q, const Mat& x, bool use_hensel) {
    Mat xp = entrywise_p_power(x);
    Mat fq = entrywise_frobenius(q, 1);
    Mat A = transpose(xp) * fq * xp;
    Mat B = entrywise_p_power(transpose(x) * q * x);
    Mat U = inverse(A) * B;
    return use_hensel ? hensel_root_matrix(U, 2) : principal_root_matrix(U, 2);
}

inline Mat evaluate(const FrobeniusLift& L, const Mat& a) {
    const Context& cx = *a.ctx;
    if (a.n != L.n) fail("DimensionMismatch", "point size does not match the lift");
    switch (L.kind) {
    case FrobeniusLift::Standard:
        return entrywise_p_power(a);
    case FrobeniusLift::Chern: {
        if (a.prec() < 3) fail("InsufficientPrecision", "lift evaluation needs precision >= 3");
        Mat lam = chern_lambda(L.q, a, false);
        if (L.corrupt_lambda) {
            Scalar p2 = mul_by_p(Scalar::one(cx), 2).reduced(lam.prec());
            lam.at(0, 0) = lam.at(0, 0) + p2;
        }
        Mat r = entrywise_p_power(a) * lam;
        return r.reduced(std::min(r.prec(), a.prec() - 1));
    }
    case FrobeniusLift::SpecialLinear: {
        if (a.prec() < 3) fail("InsufficientPrecision", "lift evaluation needs precision >= 3");
        Mat ap = entrywise_p_power(a);
        Scalar ratio = det(ap) * inv(pow(det(a), (u64)cx.p));
        Scalar lambda = principal_root_scalar(ratio, -(i64)L.n);
        Mat r = lambda * ap;
        return r.reduced(std::min(r.prec(), a.prec() - 1));
    }
    case FrobeniusLift::Hermitian: {
        HermitianPoint h = hermitian_project(a); // validates the centralizer condition
        (void)h;
        FrobeniusLift inner = FrobeniusLift::chern(Mat::identity(cx, L.n), +1);
        Mat r = evaluate(inner, a);
        (void)hermitian_project(r); // horizontality: the image stays in the centralizer
        return r;
    }
    case FrobeniusLift::Twist: {
        Mat eps = Mat::identity(cx, L.n) + Scalar::from_int(cx, cx.p) * L.alpha;
        return eps * evaluate(*L.base, a);
    }
    case FrobeniusLift::InnerTwist: {
        Mat eps = Mat::identity(cx, L.n) + Scalar::from_int(cx, cx.p) * L.alpha;
        Mat core = evaluate(*L.base, a);
        return (eps * core * inverse(eps.reduced(core.prec()))).reduced(core.prec());
    }
    case FrobeniusLift::Conjugation:
        return conjugation_lift_eval(a);
    case FrobeniusLift::CharPoly:
        return charpoly_lift_eval(a);
    }
    fail("BadArgument", "unknown lift kind");
}

// Christoffel symbol: Phi(a) = a^(p) + p * Delta(a).
inline Mat christoffel(const FrobeniusLift& L, const Mat& a) {
    return divide_by_p_exact(evaluate(L, a) - entrywise_p_power(a), 1);
}

// Value of the Chern lift at the identity, via the direct binomial series
// (1 + p (q^(p))^{-1} delta q)^{-1/2}; agrees with evaluate(chern(q), 1).
inline Mat legendre_matrix(const Mat& q, int sign) {
    const Context& cx = *q.ctx;
    (void)FrobeniusLift::chern(q, sign); // validate symmetry
    Mat M = inverse(entrywise_p_power(q)) * entrywise_delta(q);
    Mat u = Mat::identity(cx, q.n) + Scalar::from_int(cx, cx.p) * M;
    Mat r = principal_root_matrix(u, -2);
    return r.reduced(std::min(r.prec(), q.prec() - 1));
}

// Arithmetic logarithmic derivative: l-delta(a) = p^{-1}(phi(a) Phi(a)^{-1} - 1).
inline DeltaLie log_derivative(const FrobeniusLift& L, const Mat& a) {
    const Context& cx = *a.ctx;
    Mat phi_a = entrywise_frobenius(a, 1);
    Mat Phi_a = evaluate(L, a);
    Mat one = Mat::identity(cx, a.n);
    return DeltaLie(divide_by_p_exact(phi_a * inverse(Phi_a) - one, 1), 1);
}

// Equivalent closed form (delta a - Delta(a)) (a^(p) + p Delta(a))^{-1}; kept
// as an independent evaluation path for cross-checks.
inline DeltaLie log_derivative_alt(const FrobeniusLift& L, const Mat& a) {
    const Context& cx = *a.ctx;
    Mat D = christoffel(L, a);
    Mat ap = entrywise_p_power(a);
    Mat num = entrywise_delta(a) - D;
    Mat den = ap.reduced(D.prec()) + Scalar::from_int(cx, cx.p) * D;
    return DeltaLie(num * inverse(den), 1);
}

// Cocycle defect {a,b} = p^{-1}(Phi(a) Phi(b) Phi(ab)^{-1} - 1).
inline DeltaLie cocycle_defect(const FrobeniusLift& L, const Mat& a, const Mat& b) {
    const Context& cx = *a.ctx;
    Mat one = Mat::identity(cx, a.n);
    Mat v = evaluate(L, a) * evaluate(L, b) * inverse(evaluate(L, a * b)) - one;
    return DeltaLie(divide_by_p_exact(v, 1), 1);
}

// -- pointwise verification helpers ----------------------------------------------
// Each returns the valuation shortfall against an exact congruence at
// precision min(N-1, available): 0 means the identity holds on the nose.

inline int shortfall_at(const Mat& diff, int target) {
    int t = std::min(target, diff.prec());
    int v = valuation(diff);
    return v >= t ? 0 : t - v;
}

inline int shortfall_at(const Scalar& diff, int target) {
    int t = std::min(target, diff.prec);
    int v = valuation(diff);
    return v >= t ? 0 : t - v;
}

// H-horizontality: Phi(a)^t phi(q) Phi(a) = (a^t q a)^(p)
inline int h_horizontal_shortfall(const FrobeniusLift& L, const Mat& q, const Mat& a) {
    Mat P = evaluate(L, a);
    Mat fq = entrywise_frobenius(q, 1);
    Mat diff = transpose(P) * fq * P - entrywise_p_power(transpose(a) * q * a);
    return shortfall_at(diff, a.ctx->N - 1);
}

// B-symmetry: (a^(p))^t phi(q) Phi(a) = Phi(a)^t phi(q) a^(p)
inline int b_symmetric_shortfall(const FrobeniusLift& L, const Mat& q, const Mat& a) {
    Mat P = evaluate(L, a);
    Mat fq = entrywise_frobenius(q, 1);
    Mat ap = entrywise_p_power(a);
    Mat diff = transpose(ap) * fq * P - transpose(P) * fq * ap;
    return shortfall_at(diff, a.ctx->N - 1);
}

// delta of a value transported along the flow: zero iff phi(h) = h^p.
inline int prime_integral_shortfall(const Scalar& h, int target) {
    Scalar diff = frobenius(h, 1) - pow(h, (u64)h.ctx->p);
    return shortfall_at(diff, target);
}

inline int prime_integral_shortfall(const Mat& h, int target) {
    int worst = 0;
    for (const auto& s : h.e) worst = std::max(worst, prime_integral_shortfall(s, target));
    return worst;
}

enum class PrimeIntegralKind { Hq, Det, CharPolyCoeffs };

// Checks that H(u) is a fixed value of the flow through u: phi(H(u)) = H(u)^p.
inline bool verify_prime_integral(const FrobeniusLift& L, PrimeIntegralKind kind, const Mat& q,
                                  const Mat& u) {
    const Context& cx = *u.ctx;
    if (u.prec() < 2) fail("DomainError", "prime-integral audit needs precision >= 2");
    const int target = std::min(u.prec(), cx.N - 2);
    switch (kind) {
    case PrimeIntegralKind::Hq: {
        if (q.n != u.n) fail("DomainError", "H_q audit needs a Gram matrix of matching size");
        return prime_integral_shortfall(transpose(u) * q * u, target) == 0;
    }
    case PrimeIntegralKind::Det:
        return prime_integral_shortfall(det(u), target) == 0;
    case PrimeIntegralKind::CharPolyCoeffs: {
        CharPolyData cp = char_poly(u);
        for (int i = 1; i <= u.n; ++i)
            if (prime_integral_shortfall(cp.P[(size_t)i], target) != 0) return false;
        return true;
    }
    }
    (void)L;
    return false;
}

} // namespace deltagl
