#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deltagl/lifts.hpp"
#include "deltagl/rng.hpp"
#include "deltagl/sampling.hpp"

using namespace deltagl;

namespace {

std::string kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

} // namespace

TEST_CASE("standard lift is the entrywise p-th power") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(31, 0, 0);
    Mat a = random_invertible_matrix(cx, 2, rng, 10);
    Mat e = evaluate(FrobeniusLift::standard(2), a);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(is_zero(e.at(i, j) - pow(a.at(i, j), 5).reduced(e.prec())));
    // its log-derivative is delta(a) * (a^(p))^{-1}
    DeltaLie ld = log_derivative(FrobeniusLift::standard(2), a);
    Mat expect = entrywise_delta(a) * inverse(entrywise_p_power(a).reduced(9));
    CHECK(is_zero(ld.m - expect.reduced(ld.m.prec())));
}

TEST_CASE("chern lift: horizontality and symmetry at a fixed sample") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(31, 1, 0);
    for (int sign : {+1, -1}) {
        Mat q = random_gram(cx, 2, rng, 10, sign);
        FrobeniusLift L = FrobeniusLift::chern(q, sign);
        Mat a = random_invertible_matrix(cx, 2, rng, 10);
        CHECK(h_horizontal_shortfall(L, q, a) == 0);
        CHECK(b_symmetric_shortfall(L, q, a) == 0);
        // explicit identity: Phi(a)^t phi(q) Phi(a) = (a^t q a)^(p)
        Mat e = evaluate(L, a);
        Mat lhs = transpose(e) * entrywise_frobenius(q, 1).reduced(e.prec()) * e;
        Mat rhs = entrywise_p_power(transpose(a) * q * a);
        CHECK(is_zero((lhs - rhs.reduced(lhs.prec())).reduced(9)));
        // reduces to the p-power map mod p
        CHECK(is_zero((e - entrywise_p_power(a).reduced(e.prec())).reduced(1)));
    }
    Mat notsym(cx, 2);
    notsym.at(0, 0) = Scalar::one(cx).reduced(10);
    notsym.at(0, 1) = Scalar::one(cx).reduced(10);
    notsym.at(1, 1) = Scalar::one(cx).reduced(10);
    CHECK(kind_of([&] { FrobeniusLift::chern(notsym, +1); }) == "SymmetryMismatch");
}

TEST_CASE("corrupted correction factor breaks horizontality") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(31, 2, 0);
    Mat q = random_gram(cx, 2, rng, 10, +1);
    FrobeniusLift L = FrobeniusLift::chern(q, +1);
    L.corrupt_lambda = true;
    Mat a = random_invertible_matrix(cx, 2, rng, 10);
    CHECK(h_horizontal_shortfall(L, q, a) > 0);
}

TEST_CASE("special-linear lift scales determinants to prime integrals") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(31, 3, 0);
    FrobeniusLift L = FrobeniusLift::special_linear(cx, 2);
    Mat a = random_invertible_matrix(cx, 2, rng, 10);
    Mat e = evaluate(L, a);
    // det(Phi(a)) = det(a)^p
    CHECK(is_zero((det(e) - pow(det(a), 5).reduced(e.prec())).reduced(9)));
    // p | n is rejected
    Context cx3(3, 1, 10);
    CHECK(kind_of([&] { FrobeniusLift::special_linear(cx3, 3); }) == "PDividesN");
}

TEST_CASE("legendre matrix closed values") {
    Context cx(5, 1, 10);
    // q = 2: the 1x1 legendre value is -4 = -2^((p-1)/2), since 2 is not a
    // square mod 5
    Mat q(cx, 1);
    q.at(0, 0) = Scalar::from_int(cx, 2).reduced(10);
    Scalar v = legendre_matrix(q, +1).at(0, 0);
    CHECK(is_zero((v - Scalar::from_int(cx, -4).reduced(v.prec)).reduced(9)));
    // q = 1 gives 1
    Mat q1(cx, 1);
    q1.at(0, 0) = Scalar::one(cx).reduced(10);
    Scalar v1 = legendre_matrix(q1, +1).at(0, 0);
    CHECK(is_zero((v1 - Scalar::one(cx).reduced(v1.prec)).reduced(9)));
    // legendre matrix is the chern lift at the identity
    Context cx2(7, 1, 10);
    Rng rng = derive_rng(31, 4, 0);
    Mat qq = random_gram(cx2, 2, rng, 10, +1);
    Mat lm = legendre_matrix(qq, +1);
    Mat ev = evaluate(FrobeniusLift::chern(qq, +1), Mat::identity(cx2, 2).reduced(10));
    CHECK(is_zero((lm - ev.reduced(lm.prec())).reduced(9)));
}

TEST_CASE("hermitian points embed, project, and multiply through the c-map") {
    Context cx(5, 1, 10); // p = 1 mod 4, so sqrt(-1) exists
    Rng rng = derive_rng(31, 5, 0);
    HermitianPoint h{random_matrix(cx, 1, rng, 10), random_matrix(cx, 1, rng, 10)};
    Mat z = hermitian_embed(h);
    HermitianPoint back = hermitian_project(z);
    CHECK(is_zero(back.a - h.a));
    CHECK(is_zero(back.b - h.b));
    // a matrix outside the centralizer is rejected
    Mat bad(cx, 2);
    bad.at(0, 0) = Scalar::one(cx).reduced(10);
    bad.at(0, 1) = Scalar::from_int(cx, 2).reduced(10);
    bad.at(1, 0) = Scalar::from_int(cx, 3).reduced(10);
    bad.at(1, 1) = Scalar::from_int(cx, 4).reduced(10);
    CHECK(kind_of([&] { hermitian_project(bad); }) == "NotInCentralizer");
    // the hermitian lift preserves the centralizer
    if (valuation(det(z).reduced(1)) == 0) {
        Mat img = evaluate(FrobeniusLift::hermitian(1), z);
        HermitianPoint hi = hermitian_project(img); // does not throw
        // c-map: z -> a + i b is multiplicative
        HermitianPoint h2{random_matrix(cx, 1, rng, 10), random_matrix(cx, 1, rng, 10)};
        HermitianPoint prod = hermitian_project(z * hermitian_embed(h2));
        CHECK(is_zero(c_map(prod) - c_map(h) * c_map(h2)));
        (void)hi;
    }
}

TEST_CASE("twisted lifts multiply the base by the twist unit") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(31, 6, 0);
    Mat alpha = random_matrix(cx, 2, rng, 10);
    FrobeniusLift L = FrobeniusLift::twist(alpha, FrobeniusLift::standard(2));
    Mat a = random_invertible_matrix(cx, 2, rng, 10);
    Mat e = evaluate(L, a);
    Mat eps = Mat::identity(cx, 2).reduced(10) + mul_by_p(alpha, 1).reduced(10);
    CHECK(is_zero(e - (eps * entrywise_p_power(a)).reduced(e.prec())));
    // inner twist conjugates instead
    FrobeniusLift Li = FrobeniusLift::inner_twist(alpha, FrobeniusLift::standard(2));
    Mat ei = evaluate(Li, a);
    CHECK(is_zero(ei - (eps * entrywise_p_power(a) * inverse(eps)).reduced(ei.prec())));
}

TEST_CASE("log-derivative, christoffel, and the twisted equation shapes") {
    Context cx(7, 1, 10);
    Rng rng = derive_rng(31, 7, 0);
    Mat q = random_gram(cx, 2, rng, 10, +1);
    FrobeniusLift L = FrobeniusLift::chern(q, +1);
    Mat a = random_invertible_matrix(cx, 2, rng, 10);
    // ldelta(a) = p^{-1}(phi(a) Phi(a)^{-1} - 1) as a delta-Lie element
    DeltaLie ld = log_derivative(L, a);
    Mat lhs = entrywise_frobenius(a, 1).reduced(ld.m.prec() + 1) *
              inverse(evaluate(L, a)).lifted(ld.m.prec() + 1);
    Mat back = Mat::identity(cx, 2).reduced(ld.m.prec() + 1) + mul_by_p(ld.m, 1).lifted(ld.m.prec() + 1);
    CHECK(is_zero((lhs - back).reduced(ld.m.prec())));
    // christoffel and log-derivative recombine into delta:
    // delta(a) = ldelta(a) * Phi(a) + christoffel(a)
    Mat chr = christoffel(L, a);
    Mat da = entrywise_delta(a);
    Mat rec = ld.m * evaluate(L, a).reduced(ld.m.prec()) + chr.reduced(ld.m.prec());
    CHECK(is_zero((da.reduced(rec.prec()) - rec).reduced(8)));
}

TEST_CASE("prime integral shortfall detects non-integrals") {
    Context cx(5, 1, 10);
    Scalar t = teichmuller(Scalar::from_int(cx, 3).reduced(10));
    CHECK(prime_integral_shortfall(t, 8) == 0);
    Scalar nt = Scalar::from_int(cx, 7).reduced(10);
    CHECK(prime_integral_shortfall(nt, 8) > 0);
}
