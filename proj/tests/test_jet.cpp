#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deltagl/jet.hpp"
#include "deltagl/rng.hpp"

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

Mat random_mat(const Context& cx, int n, Rng& rng, int prec) {
    Mat m(cx, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = Scalar::from_int(cx, (i64)rng.below(1000000)).reduced(prec);
    return m;
}

Mat random_invertible(const Context& cx, int n, Rng& rng, int prec) {
    for (;;) {
        Mat m = random_mat(cx, n, rng, prec);
        if (valuation(det(m).reduced(1)) == 0) return m;
    }
}

} // namespace

TEST_CASE("jet multiplication agrees with the ghost coordinates") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(21, 0, 0);
    const int n = 2, N = 10;
    for (int i = 0; i < 20; ++i) {
        JetPoint A{random_invertible(cx, n, rng, N), random_mat(cx, n, rng, N)};
        JetPoint B{random_invertible(cx, n, rng, N), random_mat(cx, n, rng, N)};
        auto [w0, w1] = ghost(jet_mul(A, B));
        auto [a0, a1] = ghost(A);
        auto [b0, b1] = ghost(B);
        CHECK(is_zero((w0 - a0 * b0).reduced(N - 1)));
        CHECK(is_zero((w1 - a1 * b1).reduced(N - 1)));
    }
}

TEST_CASE("jet inverse and identity") {
    Context cx(7, 2, 8);
    Rng rng = derive_rng(21, 1, 0);
    const int n = 2, N = 8;
    JetPoint A{random_invertible(cx, n, rng, N), random_mat(cx, n, rng, N)};
    JetPoint P = jet_mul(A, jet_inv(A));
    CHECK(is_zero((P.a0 - Mat::identity(cx, n)).reduced(N - 2)));
    CHECK(is_zero(P.a1.reduced(N - 2)));
}

TEST_CASE("canonical section is multiplicative with ghost (a, frobenius(a))") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(21, 2, 0);
    Mat a = random_invertible(cx, 2, rng, 10), b = random_invertible(cx, 2, rng, 10);
    JetPoint L = nabla1(a * b), R = jet_mul(nabla1(a), nabla1(b));
    CHECK(is_zero((L.a0 - R.a0).reduced(9)));
    CHECK(is_zero((L.a1 - R.a1).reduced(9)));
    CHECK(is_zero(nabla1(a).a1 - entrywise_delta(a)));
    auto [g0, g1] = ghost(nabla1(a));
    CHECK(is_zero(g0 - a));
    CHECK(is_zero(g1 - entrywise_frobenius(a, 1)));
}

TEST_CASE("delta-lie group law at fixed order") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(22, 0, 0);
    DeltaLie a(random_mat(cx, 2, rng, 10), 1), b(random_mat(cx, 2, rng, 10), 1);
    // a +_delta b lifts a + b mod p
    CHECK(is_zero((plus_delta(a, b).m - a.m - b.m).reduced(1)));
    CHECK(is_zero(plus_delta(a, minus_delta(a)).m));
    // one_plus_pr embeds into the group: (1 + p a)(1 + p b) = 1 + p(a +_delta b)
    Mat lhs = one_plus_pr(a) * one_plus_pr(b);
    Mat rhs = one_plus_pr(plus_delta(a, b));
    CHECK(is_zero(lhs - rhs));
    CHECK(kind_of([&] { DeltaLie bad(a.m, 0); }) == "BadArgument");
    DeltaLie c(random_mat(cx, 2, rng, 10), 2);
    CHECK(kind_of([&] { plus_delta(a, c); }) == "OrderMismatch");
}

TEST_CASE("bracket guards and order accounting") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(22, 1, 0);
    DeltaLie a(random_mat(cx, 2, rng, 10), 2), b(random_mat(cx, 2, rng, 10), 2);
    CHECK(bracket_delta(a, b).r == 4);
    Context lo(5, 1, 4);
    DeltaLie la(random_mat(lo, 2, rng, 4), 2), lb(random_mat(lo, 2, rng, 4), 2);
    CHECK(kind_of([&] { bracket_delta(la, lb); }) == "InsufficientPrecision");
}

TEST_CASE("exponential intertwines the bracket with the commutator") {
    Context cx(7, 1, 10);
    Rng rng = derive_rng(22, 2, 0);
    for (int i = 0; i < 10; ++i) {
        DeltaLie a(random_mat(cx, 2, rng, 10), 1), b(random_mat(cx, 2, rng, 10), 2);
        Mat lhs = ex_r(bracket_delta(a, b));
        Mat X = ex_r(a), Y = ex_r(b);
        Mat rhs = X * Y * inverse(X) * inverse(Y);
        CHECK(is_zero((lhs - rhs).reduced(10 - 3)));
    }
}

TEST_CASE("split gram matrices") {
    Context cx(5, 1, 10);
    Mat q2 = split_gram(cx, 2, +1);
    CHECK(is_zero(q2 - transpose(q2)));
    CHECK(valuation(det(q2).reduced(1)) == 0);
    Mat q3 = split_gram(cx, 3, +1);
    CHECK(is_zero(q3 - transpose(q3)));
    Mat a2 = split_gram(cx, 2, -1);
    CHECK(is_zero(a2 + transpose(a2)));
    CHECK(kind_of([&] { split_gram(cx, 3, -1); }) == "NotSplit");
    // split forms have Frobenius-fixed entries
    CHECK(is_zero(entrywise_frobenius(q3, 1) - q3));
}

TEST_CASE("delta-lie membership for subgroups") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(23, 0, 0);
    Mat q = split_gram(cx, 2, +1).reduced(10);
    SubgroupSpec so = SubgroupSpec::orthogonal(q, +1, true);

    // the zero direction is always tangent
    CHECK(delta_lie_membership(so, DeltaLie(Mat(cx, 2).reduced(10), 1)));
    // a generic direction is not
    Mat g = random_mat(cx, 2, rng, 10);
    bool generic_in = delta_lie_membership(so, DeltaLie(g, 1));
    CHECK(!generic_in);
    // symmetry validation on the Gram matrix
    Mat notsym(cx, 2);
    notsym.at(0, 1) = Scalar::one(cx).reduced(10);
    notsym.at(1, 1) = Scalar::one(cx).reduced(10);
    notsym.at(0, 0) = Scalar::one(cx).reduced(10);
    CHECK(kind_of([&] { SubgroupSpec::orthogonal(notsym, +1, false); }) == "SymmetryMismatch");

    // special linear: traceless-to-first-order directions pass
    SubgroupSpec sl = SubgroupSpec::special_linear(2);
    Mat tless(cx, 2);
    tless.at(0, 1) = Scalar::from_int(cx, 3).reduced(10);
    CHECK(delta_lie_membership(sl, DeltaLie(tless, 1)));
    CHECK(!delta_lie_membership(sl, DeltaLie(Mat::identity(cx, 2).reduced(10), 1)));
}

TEST_CASE("cartan decomposition round-trips and is idempotent") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(23, 1, 0);
    Mat q = split_gram(cx, 2, +1).reduced(10);
    SubgroupSpec so = SubgroupSpec::orthogonal(q, +1, true);
    for (int i = 0; i < 10; ++i) {
        DeltaLie a(random_mat(cx, 2, rng, 10), 1);
        CartanParts parts = cartan_decompose(so, a);
        CHECK(delta_lie_membership(so, parts.plus));
        Mat rec = plus_delta(parts.plus, parts.minus).m;
        CHECK(is_zero((rec - a.m).reduced(9)));
    }
    // non-split data is rejected
    SubgroupSpec nonsplit = SubgroupSpec::orthogonal(q, +1, false);
    DeltaLie a(random_mat(cx, 2, rng, 10), 1);
    CHECK(kind_of([&] { cartan_decompose(nonsplit, a); }) == "NotSplit");
}
