#pragma once

// Inner lifts of Frobenius: the conjugation-horizontal lift on the regular
// locus, the characteristic-polynomial-horizontal lift built by successive
// approximation of a diagonal correction factor, isospectral twists, and the
// finite obstruction witness for the inner-involution case.

#include "linalg.hpp"

namespace deltagl {

// -- conjugation-horizontal lift ----------------------------------------------
// For regular m = x^{-1} t x (t diagonal, distinct eigenvalues mod p):
//   Phi*(m) = m^(p) B^{-1} A = (x^(p))^{-1} t^(p) x^(p),
//   A = (x^(p))^{-1} t^(p) x^(p),  B = m^(p).
// Independent of the eigendecomposition choice at the reported precision.
inline Mat conjugation_lift_eval(const Mat& m) {
    if (m.prec() < 3) fail("InsufficientPrecision", "lift evaluation needs precision >= 3");
    EigenData ed = hensel_eigen(m);
    Mat xp = entrywise_p_power(ed.x);
    Mat r = inverse(xp) * entrywise_p_power(ed.t) * xp;
    return r.reduced(std::min(r.prec(), m.prec() - 1));
}

// Same value computed from an explicitly supplied decomposition m = x^{-1}tx
// (used to test well-definedness under permutation of the eigenbasis).
inline Mat conjugation_lift_eval_with(const Mat& t, const Mat& x, const Mat& m) {
    Mat xp = entrywise_p_power(x);
    Mat r = inverse(xp) * entrywise_p_power(t) * xp;
    return r.reduced(std::min(r.prec(), m.prec() - 1));
}

// -- characteristic-polynomial-horizontal lift ---------------------------------

// Coefficient matrix D** = det(P_{ij}(a)): column j holds the coefficients of
// det(s*E_j - a) where E_j is the identity with the (j,j) entry zeroed (a
// degree n-1 polynomial in s, so n coefficients per column).
inline Scalar d_star_star(const Mat& a) {
    const Context& cx = *a.ctx;
    const int n = a.n;
    Mat coeffs(cx, n);
    for (int j = 0; j < n; ++j) {
        std::vector<PolyS> entries;
        entries.reserve((size_t)n * n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                if (r == c && r != j)
                    entries.push_back(PolyS(cx, {-a.at(r, c), Scalar::one(cx).reduced(a.prec())}));
                else
                    entries.push_back(PolyS(cx, {-a.at(r, c)}));
            }
        PolyS dj = poly_det(cx, entries, n);
        for (int k = 0; k < n; ++k) coeffs.at(k, j) = dj.coeff((size_t)k);
    }
    return det(coeffs);
}

// Phi**(a) = a^(p) * Lambda, Lambda diagonal = 1 mod p, constructed so that
// det(s*1 - Phi**(a)) has coefficients P_i(a)^p up to target_prec digits.
// Stage nu removes the p^{nu+1} defect by solving an n x n residue system
// whose matrix is constant across stages (the Jacobian of the coefficient map
// in the diagonal directions, reduced mod p).
inline Mat charpoly_lift_eval(const Mat& a, int target_prec) {
    const Context& cx = *a.ctx;
    const int n = a.n;
    if (target_prec > cx.N - 1) fail("InsufficientPrecision", "target precision exceeds N-1");
    if (target_prec < 1 || a.prec() < target_prec + 1)
        fail("InsufficientPrecision", "input has too few digits for the requested target");
    if (valuation(d_star_star(a).reduced(1)) > 0)
        fail("DStarStarNotUnit", "coefficient matrix D** is not a unit at this point");

    const int w = a.prec();
    Mat ap = entrywise_p_power(a);
    CharPolyData cp = char_poly(a);
    // target coefficients: [s^k] det(s*1 - Phi**) = (-1)^{n-k} P_{n-k}(a)^p
    std::vector<Scalar> target(n, Scalar::zero(cx));
    for (int k = 0; k < n; ++k) {
        Scalar t = pow(cp.P[(size_t)(n - k)], (u64)cx.p);
        target[(size_t)k] = ((n - k) % 2) ? -t : t;
    }

    // residue Jacobian: column j = coefficients of det(s*1 - ap with column j
    // replaced by -ap_{.j}), computed once mod p
    Mat jac(cx, n);
    {
        Mat apr = ap.reduced(1);
        for (int j = 0; j < n; ++j) {
            std::vector<PolyS> entries;
            entries.reserve((size_t)n * n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    if (r == c && c != j)
                        entries.push_back(
                            PolyS(cx, {-apr.at(r, c), Scalar::one(cx).reduced(1)}));
                    else
                        entries.push_back(PolyS(cx, {-apr.at(r, c)}));
                }
            PolyS gj = poly_det(cx, entries, n);
            for (int k = 0; k < n; ++k) jac.at(k, j) = gj.coeff((size_t)k);
        }
    }
    Mat jac_inv = inverse(jac); // unit because D** is

    std::vector<Scalar> lam(n, Scalar::one(cx).reduced(w));
    for (int nu = 0; nu + 2 <= target_prec; ++nu) {
        // E(s) = det(s*1 - ap*Lambda); defect coefficients against the target
        std::vector<PolyS> entries;
        entries.reserve((size_t)n * n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                Scalar v = ap.at(r, c) * lam[(size_t)c];
                if (r == c)
                    entries.push_back(PolyS(cx, {-v, Scalar::one(cx).reduced(w)}));
                else
                    entries.push_back(PolyS(cx, {-v}));
            }
        PolyS E = poly_det(cx, entries, n);
        Mat U(cx, n); // column 0 carries the defect vector
        for (int k = 0; k < n; ++k) {
            Scalar d = E.coeff((size_t)k) - target[(size_t)k];
            U.at(k, 0) = divide_by_p_exact(d, nu + 1);
        }
        Mat z = jac_inv * U.reduced(1);
        for (int j = 0; j < n; ++j) {
            Scalar corr = mul_by_p(Scalar(cx, 1, z.at(j, 0).c).lifted(w), nu + 1);
            lam[(size_t)j] = lam[(size_t)j] - corr.reduced(w);
        }
    }

    Mat result = ap;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) result.at(r, c) = result.at(r, c) * lam[(size_t)c];
    return result.reduced(target_prec);
}

inline Mat charpoly_lift_eval(const Mat& a) {
    return charpoly_lift_eval(a, std::min(a.prec() - 1, a.ctx->N - 1));
}

// diagonal correction factor alone (diagonal, = 1 mod p)
inline Mat charpoly_lift_lambda(const Mat& a, int target_prec) {
    Mat phi = charpoly_lift_eval(a, target_prec);
    Mat lam = inverse(entrywise_p_power(a).reduced(target_prec)) * phi;
    return lam;
}

// epsilon * Phi**(a) * epsilon^{-1} with epsilon = 1 + p*alphaval; still
// preserves every characteristic-polynomial coefficient.
inline Mat isospectral_twist_eval(const Mat& a, const Mat& alphaval, int target_prec) {
    const Context& cx = *a.ctx;
    Mat eps = Mat::identity(cx, a.n) + Scalar::from_int(cx, cx.p) * alphaval;
    Mat core = charpoly_lift_eval(a, target_prec);
    return (eps.reduced(target_prec) * core * inverse(eps.reduced(target_prec)))
        .reduced(target_prec);
}

// -- obstruction witness --------------------------------------------------------
// Valuation of (ad+bc)^{2p} - 2^{2p}(abcd)^p - (ad-bc)^{2p} at a point with
// ad - bc a unit.  A finite valuation certifies the identity fails.

struct WitnessReport {
    bool finite = false;
    int valuation = 0; // = precision bound when not finite
};

inline WitnessReport inner_obstruction_witness(const Context& cx, const Scalar& a,
                                               const Scalar& b, const Scalar& c,
                                               const Scalar& d) {
    Scalar adbc = a * d - b * c;
    if (valuation(adbc.reduced(1)) > 0) fail("NotInvertible", "ad - bc must be a unit");
    const u64 p = (u64)cx.p;
    Scalar lhs = pow(a * d + b * c, 2 * p);
    Scalar mid = pow(Scalar::from_int(cx, 2), 2 * p) * pow(a * b * c * d, p);
    Scalar rhs = pow(adbc, 2 * p);
    Scalar defect = lhs - mid - rhs;
    WitnessReport rep;
    rep.valuation = valuation(defect);
    rep.finite = rep.valuation < defect.prec;
    if (!rep.finite) rep.valuation = defect.prec;
    return rep;
}

inline WitnessReport inner_obstruction_witness(const Context& cx, i64 a, i64 b, i64 c, i64 d) {
    int k = cx.N;
    return inner_obstruction_witness(cx, Scalar::from_int(cx, a).reduced(k),
                                     Scalar::from_int(cx, b).reduced(k),
                                     Scalar::from_int(cx, c).reduced(k),
                                     Scalar::from_int(cx, d).reduced(k));
}

} // namespace deltagl
