#pragma once

// Digit-by-digit solver for the twisted Frobenius equation
//   phi(u) = eps * Phi(u),   eps = 1 + p*alpha,
// equivalently l-delta(u) = alpha and delta(u) = Delta^alpha(u): the mod-p
// equation is vacuous, so every invertible residue seed lifts, one base-p
// digit per step via the inverse residue Frobenius.  Plus seed enumeration on
// tiny instances and prime-integral audits on solutions.

#include <string>
#include <vector>

#include "lifts.hpp"

namespace deltagl {

struct DeltaLinearProblem {
    FrobeniusLift lift; // base lift; the alpha-twist is applied by the solver
    Mat alpha;          // order-1 element
};

inline Mat lift_residue_matrix(const Mat& m, int k) {
    const Context& cx = *m.ctx;
    Mat r(cx, m.n);
    for (size_t i = 0; i < m.e.size(); ++i) r.e[i] = Scalar(cx, 1, m.e[i].c).lifted(k);
    return r;
}

inline Mat solve(const DeltaLinearProblem& prob, const Mat& seed) {
    const Context& cx = *prob.alpha.ctx;
    const int n = prob.alpha.n;
    if (seed.n != n) fail("DimensionMismatch", "seed size does not match the problem");
    if (valuation(det(seed.reduced(1))) > 0)
        fail("SeedNotInvertible", "residue seed must be invertible");

    const int W = cx.N;
    Mat eps = Mat::identity(cx, n) + Scalar::from_int(cx, cx.p) * prob.alpha;
    Mat u = lift_residue_matrix(seed, W);

    for (int k = 1; k <= cx.N - 3; ++k) {
        Mat c = eps * evaluate(prob.lift, u) - entrywise_frobenius(u, 1);
        if (valuation(c) < k)
            fail("LiftDefect", "digit " + std::to_string(k) + " of the recursion is obstructed");
        Mat cbar = divide_by_p_exact(c, k).reduced(1);
        // residue equation phi(h) = cbar; invert the residue Frobenius
        Mat h = entrywise_frobenius(cbar, (long)cx.f - 1);
        u = u + mul_by_p(lift_residue_matrix(h, W), k).reduced(W);
    }

    Mat c = eps * evaluate(prob.lift, u) - entrywise_frobenius(u, 1);
    if (valuation(c) < std::min(cx.N - 2, c.prec()))
        fail("LiftDefect", "substitution check failed at the target precision");
    return u.reduced(cx.N - 2);
}

// All invertible residue matrices (tiny instances only); the mod-p equation
// is vacuous, so these are exactly the seeds that lift.
inline std::vector<Mat> enumerate_residue_seeds(const DeltaLinearProblem& prob) {
    const Context& cx = *prob.alpha.ctx;
    const int n = prob.alpha.n;
    if (n > 2 || cx.p > 5 || cx.f > 1)
        fail("TooLarge", "seed enumeration is limited to n <= 2, p <= 5, f = 1");
    const u64 p = (u64)cx.p;
    u64 total = 1;
    for (int i = 0; i < n * n; ++i) total *= p;
    std::vector<Mat> out;
    for (u64 v = 0; v < total; ++v) {
        Mat m(cx, n);
        u64 t = v;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = Scalar(cx, 1, {t % p});
                t /= p;
            }
        if (valuation(det(m)) == 0) out.push_back(m.reduced(1));
    }
    return out;
}

// -- audits ------------------------------------------------------------------

struct AuditEntry {
    std::string name;
    int shortfall = 0;
    bool pass = false;
};

// Checks that each requested invariant value H(u) satisfies phi(H(u)) = H(u)^p
// (so that delta of the value vanishes) at precision N-2.
inline std::vector<AuditEntry> audit_prime_integrals(const Mat& u, const DeltaLinearProblem& prob,
                                                     const std::vector<PrimeIntegralKind>& kinds,
                                                     const Mat* q = nullptr) {
    const Context& cx = *u.ctx;
    const int target = std::min(u.prec(), cx.N - 2);
    std::vector<AuditEntry> out;
    for (PrimeIntegralKind kind : kinds) {
        AuditEntry e;
        switch (kind) {
        case PrimeIntegralKind::Hq: {
            if (!q) fail("DomainError", "H_q audit needs a Gram matrix");
            e.name = "Hq";
            e.shortfall = prime_integral_shortfall(transpose(u) * (*q) * u, target);
            break;
        }
        case PrimeIntegralKind::Det:
            e.name = "det";
            e.shortfall = prime_integral_shortfall(det(u), target);
            break;
        case PrimeIntegralKind::CharPolyCoeffs: {
            e.name = "charpoly";
            CharPolyData cp = char_poly(u);
            for (int i = 1; i <= u.n; ++i)
                e.shortfall =
                    std::max(e.shortfall, prime_integral_shortfall(cp.P[(size_t)i], target));
            break;
        }
        }
        e.pass = e.shortfall == 0;
        out.push_back(e);
    }
    (void)prob;
    return out;
}

// Max shortfall over the three equivalent formulations of the flow equation:
// l-delta(u) = alpha, delta(u) = Delta^alpha(u), phi(u) = eps Phi(u).
inline int equation_forms_shortfall(const DeltaLinearProblem& prob, const Mat& u) {
    const Context& cx = *u.ctx;
    Mat eps = Mat::identity(cx, u.n) + Scalar::from_int(cx, cx.p) * prob.alpha;
    int worst = 0;

    // direct form
    Mat c3 = entrywise_frobenius(u, 1) - eps * evaluate(prob.lift, u);
    worst = std::max(worst, shortfall_at(c3, cx.N - 2));

    // logarithmic-derivative form
    DeltaLie ld = log_derivative(prob.lift, u);
    worst = std::max(worst, shortfall_at(ld.m - prob.alpha.reduced(ld.m.prec()), cx.N - 2));

    // Christoffel form: delta(u) = Delta^alpha(u)
    FrobeniusLift twisted = FrobeniusLift::twist(prob.alpha, prob.lift);
    Mat c2 = entrywise_delta(u) - christoffel(twisted, u);
    worst = std::max(worst, shortfall_at(c2, cx.N - 2));

    return worst;
}

} // namespace deltagl
