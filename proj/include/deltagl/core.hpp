#pragma once

// Truncated arithmetic in W(F_{p^f})/p^N: unramified ring of Witt vectors over
// the field with p^f elements, cut off at N base-p digits.  Every value tracks
// its own absolute precision ("zealous" model); the Frobenius automorphism phi
// is exact by construction.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace deltagl {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Small F_p[X] helpers (only used when building a context).
namespace fppoly {

using Poly = std::vector<u64>; // coefficients low-to-high, reduced mod p

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (u128)a[i] * b[j] % p) % p;
    // m is monic of degree deg(m)
    const size_t dm = m.size() - 1;
    for (size_t i = r.size(); i-- > dm;) {
        u64 t = r[i];
        if (t == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < dm; ++j)
            r[i - dm + j] = (r[i - dm + j] + p - (u128)t * m[j] % p) % p;
    }
    r.resize(dm);
    trim(r);
    return r;
}

// X^(p^e) mod (m, p)
inline Poly xq_pow(u64 p, int e, const Poly& m) {
    Poly x = {0, 1};
    Poly r = x;
    for (int i = 0; i < e; ++i) {
        // r <- r^p by square-and-multiply
        Poly acc = {1};
        Poly base = r;
        u64 k = p;
        while (k) {
            if (k & 1) acc = mulmod(acc, base, m, p);
            base = mulmod(base, base, m, p);
            k >>= 1;
        }
        r = acc;
    }
    return r;
}

inline Poly sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline u64 inv_mod_p(u64 a, u64 p) {
    // Fermat
    u64 r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = (u128)r * b % p;
        b = (u128)b * b % p;
        e >>= 1;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        u64 lead_inv = inv_mod_p(b.back(), p);
        while (a.size() >= b.size()) {
            u64 t = (u128)a.back() * lead_inv % p;
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + p - (u128)t * b[j] % p) % p;
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// extended gcd: returns g and sets s with s*a ≡ g mod m  (all over F_p)
inline void ext_inverse(const Poly& a, const Poly& m, u64 p, Poly& inv_out) {
    // classic iterative extended Euclid on (m, a)
    Poly r0 = m, r1 = a, s0 = {}, s1 = {1};
    trim(r1);
    while (!r1.empty()) {
        // q, rem of r0 / r1
        Poly q;
        Poly rem = r0;
        u64 lead_inv = inv_mod_p(r1.back(), p);
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            u64 t = (u128)rem.back() * lead_inv % p;
            size_t shift = rem.size() - r1.size();
            q[shift] = t;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[shift + j] = (rem[shift + j] + p - (u128)t * r1[j] % p) % p;
            trim(rem);
        }
        // s2 = s0 - q*s1  (no modulus reduction needed beyond size bound)
        Poly qs;
        if (!q.empty() && !s1.empty()) {
            qs.assign(q.size() + s1.size() - 1, 0);
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j)
                    qs[i + j] = (qs[i + j] + (u128)q[i] * s1[j] % p) % p;
        }
        Poly s2 = sub(s0, qs, p);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd (expected a nonzero constant), s0*a ≡ r0 mod m
    if (r0.size() != 1) fail("NotAUnit", "element has no inverse in the residue field");
    u64 ginv = inv_mod_p(r0[0], p);
    for (auto& v : s0) v = (u128)v * ginv % p;
    trim(s0);
    inv_out = s0;
}

inline bool irreducible(const Poly& m, u64 p) {
    const int f = (int)m.size() - 1;
    if (f < 1) return false;
    Poly x = {0, 1};
    Poly t = xq_pow(p, f, m);
    if (!sub(t, x, p).empty()) return false;
    for (int l = 2; l <= f; ++l) {
        if (f % l) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { prime = false; break; }
        if (!prime) continue;
        Poly s = sub(xq_pow(p, f / l, m), x, p);
        if (gcd(s, m, p).size() != 1) return false;
    }
    return true;
}

} // namespace fppoly

// ---------------------------------------------------------------------------

class Context {
public:
    i64 p = 0;
    int f = 1;
    int N = 2;    // user-facing working precision
    int Nmax = 2; // internal precision (headroom for binomial series)
    std::vector<u64> ppow;              // p^0 .. p^Nmax
    std::vector<u64> modulus;           // c_0..c_{f-1} of the monic modulus, mod p^Nmax (empty if f==1)
    std::vector<std::vector<u64>> frob_gen; // phi^r(generator) for r = 0..f-1

    Context(i64 p_, int f_, int N_, std::vector<i64> user_modulus = {}) {
        p = p_;
        f = f_;
        N = N_;
        if (p < 3 || !is_prime(p)) fail("BadContext", "p must be an odd prime");
        if (f < 1) fail("BadContext", "residue degree must be >= 1");
        if (N < 2) fail("BadContext", "working precision must be >= 2");

        // headroom so principal-root series lose nothing user-visible
        int mseries = 2 * N + 2;
        int h = 0;
        for (i64 q = p; q <= mseries; q *= p) h += mseries / (int)q;
        Nmax = N + h;

        ppow.assign(Nmax + 1, 1);
        for (int i = 1; i <= Nmax; ++i) {
            if (ppow[i - 1] > (u64(1) << 62) / (u64)p)
                fail("PrecisionOverflow", "p^N exceeds the 64-bit working range");
            ppow[i] = ppow[i - 1] * (u64)p;
        }

        if (f > 1) {
            build_modulus(user_modulus);
            build_frobenius();
        }
    }

    u64 pk(int k) const { return ppow[k]; }

    // -- raw element helpers (length-f coefficient vectors mod p^k) ---------

    std::vector<u64> raw_zero() const { return std::vector<u64>(f, 0); }

    std::vector<u64> raw_add(const std::vector<u64>& a, const std::vector<u64>& b, int k) const {
        std::vector<u64> r(f);
        for (int i = 0; i < f; ++i) r[i] = (a[i] + b[i]) % pk(k);
        return r;
    }

    std::vector<u64> raw_sub(const std::vector<u64>& a, const std::vector<u64>& b, int k) const {
        std::vector<u64> r(f);
        for (int i = 0; i < f; ++i) r[i] = (a[i] + pk(k) - b[i] % pk(k)) % pk(k);
        return r;
    }

    std::vector<u64> raw_mul(const std::vector<u64>& a, const std::vector<u64>& b, int k) const {
        const u64 m = pk(k);
        if (f == 1) return {(u64)((u128)(a[0] % m) * (b[0] % m) % m)};
        std::vector<u64> t(2 * f - 1, 0);
        for (int i = 0; i < f; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < f; ++j)
                t[i + j] = (t[i + j] + (u64)((u128)(a[i] % m) * (b[j] % m) % m)) % m;
        }
        // reduce by the monic modulus: X^f = -(c_0 + ... + c_{f-1} X^{f-1})
        for (int i = 2 * f - 2; i >= f; --i) {
            u64 c = t[i];
            if (c == 0) continue;
            t[i] = 0;
            for (int j = 0; j < f; ++j) {
                u64 sub = (u64)((u128)c * (modulus[j] % m) % m);
                t[i - f + j] = (t[i - f + j] + m - sub) % m;
            }
        }
        t.resize(f);
        return t;
    }

    std::vector<u64> raw_reduce(const std::vector<u64>& a, int k) const {
        std::vector<u64> r(f);
        for (int i = 0; i < f; ++i) r[i] = a[i] % pk(k);
        return r;
    }

    std::vector<u64> raw_pow(std::vector<u64> base, u64 e, int k) const {
        std::vector<u64> acc = raw_zero();
        acc[0] = 1 % pk(k);
        base = raw_reduce(base, k);
        while (e) {
            if (e & 1) acc = raw_mul(acc, base, k);
            base = raw_mul(base, base, k);
            e >>= 1;
        }
        return acc;
    }

    std::vector<u64> raw_inv(const std::vector<u64>& a, int k) const {
        // residue inverse, then Newton z <- z(2 - az) doubling the precision
        std::vector<u64> abar = raw_reduce(a, 1);
        bool zero = true;
        for (auto v : abar)
            if (v) { zero = false; break; }
        if (zero) fail("NotAUnit", "inverse of a non-unit");
        std::vector<u64> z(f, 0);
        if (f == 1) {
            z[0] = fppoly::inv_mod_p(abar[0], (u64)p);
        } else {
            fppoly::Poly ap(abar.begin(), abar.end());
            fppoly::trim(ap);
            fppoly::Poly mm(modulus.begin(), modulus.end());
            for (auto& v : mm) v %= (u64)p;
            mm.push_back(1);
            fppoly::Poly iz;
            fppoly::ext_inverse(ap, mm, (u64)p, iz);
            for (size_t i = 0; i < iz.size(); ++i) z[i] = iz[i];
        }
        int cur = 1;
        while (cur < k) {
            cur = std::min(2 * cur, k);
            std::vector<u64> az = raw_mul(raw_reduce(a, cur), z, cur);
            std::vector<u64> two = raw_zero();
            two[0] = 2 % pk(cur);
            z = raw_mul(z, raw_sub(two, az, cur), cur);
        }
        return z;
    }

    // phi^r of a raw element (r taken mod f), at precision k
    std::vector<u64> raw_frob(const std::vector<u64>& a, long r, int k) const {
        if (f == 1) return raw_reduce(a, k);
        long rr = ((r % f) + f) % f;
        if (rr == 0) return raw_reduce(a, k);
        const std::vector<u64>& y = frob_gen[rr];
        // Horner evaluation of the coefficient polynomial at y
        std::vector<u64> res = raw_zero();
        for (int i = f - 1; i >= 0; --i) {
            res = raw_mul(res, y, k);
            res[0] = (res[0] + a[i]) % pk(k);
        }
        return res;
    }

    static bool is_prime(i64 n) {
        if (n < 2) return false;
        for (i64 d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    void build_modulus(const std::vector<i64>& user_modulus) {
        if (!user_modulus.empty()) {
            if ((int)user_modulus.size() != f + 1 || user_modulus.back() != 1)
                fail("BadContext", "modulus must be monic of degree f (f+1 coefficients, low to high)");
            modulus.resize(f);
            for (int i = 0; i < f; ++i) {
                i64 v = user_modulus[i] % (i64)pk(Nmax);
                if (v < 0) v += (i64)pk(Nmax);
                modulus[i] = (u64)v;
            }
            fppoly::Poly mm(modulus.begin(), modulus.end());
            for (auto& v : mm) v %= (u64)p;
            mm.push_back(1);
            if (!fppoly::irreducible(mm, (u64)p))
                fail("BadContext", "modulus is reducible mod p");
            return;
        }
        // deterministic search: first monic polynomial (coefficients read as
        // base-p digits of an increasing counter) that is irreducible mod p
        for (u64 v = 0;; ++v) {
            fppoly::Poly mm(f + 1, 0);
            u64 t = v;
            for (int i = 0; i < f; ++i) {
                mm[i] = t % (u64)p;
                t /= (u64)p;
            }
            if (t) fail("BadContext", "no irreducible modulus found"); // unreachable
            mm[f] = 1;
            if (fppoly::irreducible(mm, (u64)p)) {
                modulus.assign(mm.begin(), mm.end() - 1);
                return;
            }
        }
    }

    void build_frobenius() {
        // generator g = X; find the root y of the modulus with y ≡ g^p mod p
        // (Newton iteration; the modulus is separable mod p so the derivative
        // is a unit), then phi^r(g) by repeated application.
        std::vector<u64> g = raw_zero();
        if (f >= 2) g[1] = 1;
        std::vector<u64> y = raw_pow(g, (u64)p, Nmax);
        auto eval_m = [&](const std::vector<u64>& t) {
            // m(t) = t^f + sum c_i t^i
            std::vector<u64> r = raw_pow(t, (u64)f, Nmax);
            std::vector<u64> tp = raw_zero();
            tp[0] = 1;
            for (int i = 0; i < f; ++i) {
                std::vector<u64> ci = raw_zero();
                ci[0] = modulus[i];
                r = raw_add(r, raw_mul(ci, tp, Nmax), Nmax);
                tp = raw_mul(tp, t, Nmax);
            }
            return r;
        };
        auto eval_dm = [&](const std::vector<u64>& t) {
            // m'(t) = f t^{f-1} + sum_{i>=1} i c_i t^{i-1}
            std::vector<u64> r = raw_pow(t, (u64)(f - 1), Nmax);
            std::vector<u64> fc = raw_zero();
            fc[0] = (u64)f % pk(Nmax);
            r = raw_mul(fc, r, Nmax);
            std::vector<u64> tp = raw_zero();
            tp[0] = 1;
            for (int i = 1; i < f; ++i) {
                std::vector<u64> ci = raw_zero();
                ci[0] = (u64)((u128)modulus[i] * (u64)i % pk(Nmax));
                r = raw_add(r, raw_mul(ci, tp, Nmax), Nmax);
                tp = raw_mul(tp, t, Nmax);
            }
            return r;
        };
        for (int it = 0; it < 2 * Nmax + 4; ++it) {
            std::vector<u64> mv = eval_m(y);
            bool done = true;
            for (auto v : mv)
                if (v) { done = false; break; }
            if (done) break;
            std::vector<u64> corr = raw_mul(mv, raw_inv(eval_dm(y), Nmax), Nmax);
            y = raw_sub(y, corr, Nmax);
        }
        frob_gen.assign(f, raw_zero());
        frob_gen[0] = g;
        frob_gen[1] = y;
        for (int r = 2; r < f; ++r) {
            // phi(frob_gen[r-1]) via Horner at y
            const std::vector<u64>& a = frob_gen[r - 1];
            std::vector<u64> res = raw_zero();
            for (int i = f - 1; i >= 0; --i) {
                res = raw_mul(res, y, Nmax);
                res[0] = (res[0] + a[i]) % pk(Nmax);
            }
            frob_gen[r] = res;
        }
    }
};

// ---------------------------------------------------------------------------

class Scalar {
public:
    const Context* ctx = nullptr;
    int prec = 0;          // absolute precision: value known mod p^prec
    std::vector<u64> c;    // canonical coefficients in [0, p^prec)

    Scalar() = default;
    Scalar(const Context& cx, int k, std::vector<u64> coeffs)
        : ctx(&cx), prec(k), c(cx.raw_reduce(coeffs, k)) {}

    static Scalar from_int(const Context& cx, i64 v) {
        std::vector<u64> r = cx.raw_zero();
        i64 m = (i64)cx.pk(cx.Nmax);
        i64 t = v % m;
        if (t < 0) t += m;
        r[0] = (u64)t;
        return Scalar(cx, cx.Nmax, r);
    }

    static Scalar zero(const Context& cx) { return from_int(cx, 0); }
    static Scalar one(const Context& cx) { return from_int(cx, 1); }

    bool same_ctx(const Scalar& o) const { return ctx == o.ctx; }

    Scalar reduced(int k) const {
        if (k > prec) fail("InsufficientPrecision", "cannot refine precision by reduction");
        return Scalar(*ctx, k, c);
    }

    // Reinterpret the canonical representative at a higher precision.  This is
    // an arbitrary lift: only valid when the surrounding computation provably
    // does not depend on the choice (principal roots, digit lifting).
    Scalar lifted(int k) const {
        if (k < prec) return reduced(k);
        return Scalar(*ctx, k, c);
    }
};

inline void check_ctx(const Scalar& a, const Scalar& b) {
    if (a.ctx != b.ctx) fail("ContextMismatch", "operands from different contexts");
}

inline Scalar operator+(const Scalar& a, const Scalar& b) {
    check_ctx(a, b);
    int k = std::min(a.prec, b.prec);
    return Scalar(*a.ctx, k, a.ctx->raw_add(a.ctx->raw_reduce(a.c, k), a.ctx->raw_reduce(b.c, k), k));
}

inline Scalar operator-(const Scalar& a, const Scalar& b) {
    check_ctx(a, b);
    int k = std::min(a.prec, b.prec);
    return Scalar(*a.ctx, k, a.ctx->raw_sub(a.ctx->raw_reduce(a.c, k), a.ctx->raw_reduce(b.c, k), k));
}

inline Scalar operator-(const Scalar& a) {
    return Scalar(*a.ctx, a.prec, a.ctx->raw_sub(a.ctx->raw_zero(), a.c, a.prec));
}

inline Scalar operator*(const Scalar& a, const Scalar& b) {
    check_ctx(a, b);
    int k = std::min(a.prec, b.prec);
    return Scalar(*a.ctx, k, a.ctx->raw_mul(a.ctx->raw_reduce(a.c, k), a.ctx->raw_reduce(b.c, k), k));
}

inline int valuation(const Scalar& a) {
    int v = a.prec;
    for (int i = 0; i < a.ctx->f; ++i) {
        if (a.c[i] == 0) continue;
        int vi = 0;
        u64 t = a.c[i];
        while (t % (u64)a.ctx->p == 0) {
            t /= (u64)a.ctx->p;
            ++vi;
        }
        v = std::min(v, vi);
    }
    return v;
}

inline bool is_zero(const Scalar& a) { return valuation(a) >= a.prec; }

inline bool eq_at(const Scalar& a, const Scalar& b, int k) {
    Scalar d = a - b;
    return valuation(d) >= std::min(k, d.prec);
}

inline bool operator==(const Scalar& a, const Scalar& b) {
    Scalar d = a - b;
    return is_zero(d);
}

inline Scalar inv(const Scalar& a) {
    if (valuation(a.reduced(1)) >= 1) fail("NotAUnit", "inverse of a non-unit scalar");
    return Scalar(*a.ctx, a.prec, a.ctx->raw_inv(a.c, a.prec));
}

inline Scalar pow(const Scalar& a, u64 e) {
    return Scalar(*a.ctx, a.prec, a.ctx->raw_pow(a.c, e, a.prec));
}

inline Scalar pow_i(const Scalar& a, i64 e) {
    if (e < 0) return pow(inv(a), (u64)(-e));
    return pow(a, (u64)e);
}

inline Scalar frobenius(const Scalar& a, long r) {
    return Scalar(*a.ctx, a.prec, a.ctx->raw_frob(a.c, r, a.prec));
}

inline Scalar divide_by_p_exact(const Scalar& a, int k) {
    if (k == 0) return a;
    if (k < 0) fail("BadArgument", "negative power of p");
    if (a.prec < k + 1) fail("InsufficientPrecision", "dividing by p^k needs k+1 known digits");
    if (valuation(a) < k) fail("NotDivisible", "value is not divisible by p^k");
    std::vector<u64> r(a.ctx->f);
    for (int i = 0; i < a.ctx->f; ++i) r[i] = a.c[i] / a.ctx->pk(k);
    return Scalar(*a.ctx, a.prec - k, r);
}

inline Scalar mul_by_p(const Scalar& a, int k) {
    // exact multiplication by p^k; gains k digits of absolute precision
    int np = std::min(a.prec + k, a.ctx->Nmax);
    std::vector<u64> r(a.ctx->f);
    for (int i = 0; i < a.ctx->f; ++i)
        r[i] = (u64)((u128)a.c[i] * a.ctx->pk(k) % a.ctx->pk(np));
    return Scalar(*a.ctx, np, r);
}

// delta x = (phi(x) - x^p)/p; consumes one digit.
inline Scalar delta(const Scalar& a) {
    if (a.prec < 2) fail("InsufficientPrecision", "delta needs precision >= 2");
    return divide_by_p_exact(frobenius(a, 1) - pow(a, (u64)a.ctx->p), 1);
}

// Teichmueller lift: the unique root of unity (or zero) with the given residue.
inline Scalar teichmuller(const Context& cx, const std::vector<u64>& residue) {
    Scalar x(cx, cx.Nmax, residue);
    for (int it = 0; it < cx.Nmax + 2; ++it) {
        Scalar xn = x;
        for (int i = 0; i < cx.f; ++i) xn = pow(xn, (u64)cx.p);
        if (xn == x) break;
        x = xn;
    }
    return x;
}

inline Scalar teichmuller(const Scalar& a) {
    return teichmuller(*a.ctx, a.ctx->raw_reduce(a.c, 1));
}

// Enumerate all residues of F_{p^f} (coefficient vectors), in counter order.
inline std::vector<std::vector<u64>> all_residues(const Context& cx, u64 cap = (1ULL << 20)) {
    u64 q = 1;
    for (int i = 0; i < cx.f; ++i) {
        q *= (u64)cx.p;
        if (q > cap) fail("TooLarge", "residue field too large to enumerate");
    }
    std::vector<std::vector<u64>> out;
    out.reserve(q);
    for (u64 v = 0; v < q; ++v) {
        std::vector<u64> r(cx.f);
        u64 t = v;
        for (int i = 0; i < cx.f; ++i) {
            r[i] = t % (u64)cx.p;
            t /= (u64)cx.p;
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline Scalar sqrt_minus_one(const Context& cx) {
    for (const auto& r : all_residues(cx)) {
        Scalar t(cx, 1, r);
        if (is_zero(t * t + Scalar::one(cx).reduced(1)))
            return teichmuller(cx, r);
    }
    fail("NoSqrtMinusOne", "the residue field has no square root of -1 (need p = 1 mod 4 or even f)");
}

// ---------------------------------------------------------------------------
// Principal nu-th root of a 1-unit: the unique root congruent to 1 mod p.
// Primary construction: binomial series sum_m C(1/nu, m) (u-1)^m, evaluated
// with internal headroom so the user-visible precision is preserved.

inline Scalar principal_root_scalar(const Scalar& u, i64 nu) {
    const Context& cx = *u.ctx;
    if (nu == 0) fail("BadArgument", "0th root");
    i64 anu = nu < 0 ? -nu : nu;
    if (anu % cx.p == 0) fail("NuDivisibleByP", "root order divisible by p");
    Scalar base = nu < 0 ? inv(u) : u;
    if (valuation(base - Scalar::one(cx)) < 1) fail("NotOneUnit", "principal root needs u = 1 mod p");

    const int target = base.prec;
    const int work = std::min(cx.Nmax, target + (cx.Nmax - cx.N));
    Scalar W = (base - Scalar::one(cx)).lifted(work); // arbitrary lift; result below is lift-independent
    Scalar invnu = inv(Scalar::from_int(cx, anu).reduced(work));

    Scalar S = Scalar::one(cx).reduced(work);
    Scalar T = Scalar::one(cx).reduced(work);
    for (i64 m = 1;; ++m) {
        // T *= W * (1/nu - (m-1)) / m
        T = T * W * (invnu - Scalar::from_int(cx, m - 1).reduced(T.prec));
        i64 mm = m;
        int v = 0;
        while (mm % cx.p == 0) {
            mm /= cx.p;
            ++v;
        }
        if (v) T = divide_by_p_exact(T, v);
        T = T * inv(Scalar::from_int(cx, mm).reduced(T.prec));
        if (is_zero(T)) break;
        S = S + T;
        if (valuation(T) >= target && (i64)m > 2 * (i64)target) break;
    }
    return S.reduced(std::min(S.prec, target));
}

// Independent construction: Newton iteration on X^nu - u from X = 1.
inline Scalar hensel_root_scalar(const Scalar& u, i64 nu) {
    const Context& cx = *u.ctx;
    if (nu == 0) fail("BadArgument", "0th root");
    i64 anu = nu < 0 ? -nu : nu;
    if (anu % cx.p == 0) fail("NuDivisibleByP", "root order divisible by p");
    Scalar base = nu < 0 ? inv(u) : u;
    if (valuation(base - Scalar::one(cx)) < 1) fail("NotOneUnit", "principal root needs u = 1 mod p");
    Scalar x = Scalar::one(cx).reduced(base.prec);
    Scalar nus = Scalar::from_int(cx, anu).reduced(base.prec);
    for (int it = 0; it < 2 * base.prec + 4; ++it) {
        Scalar fx = pow(x, (u64)anu) - base;
        if (is_zero(fx)) break;
        x = x - fx * inv(nus * pow(x, (u64)(anu - 1)));
    }
    return x;
}

// canonical digit string (base 10) of the representative in [0, p^prec)
inline std::string coeff_string(u64 v) { return std::to_string(v); }

} // namespace deltagl
