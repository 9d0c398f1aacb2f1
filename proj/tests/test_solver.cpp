#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deltagl/rng.hpp"
#include "deltagl/sampling.hpp"
#include "deltagl/solver.hpp"

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

TEST_CASE("untwisted standard equation: solutions have teichmuller entries") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(51, 0, 0);
    DeltaLinearProblem prob{FrobeniusLift::standard(2), Mat(cx, 2).reduced(10)};
    Mat seed = random_invertible_matrix(cx, 2, rng, 1);
    Mat u = solve(prob, seed);
    // phi(u) = u^(p) entrywise means every entry is a prime integral
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Scalar e = u.at(i, j);
            CHECK(is_zero(frobenius(e, 1).reduced(e.prec - 1) - pow(e, 5).reduced(e.prec - 1)));
            if (valuation(e.reduced(1)) == 0)
                CHECK(is_zero(e - teichmuller(e)));
        }
    // the solution lifts its seed
    CHECK(is_zero((u - lift_residue_matrix(seed, 1).lifted(u.prec())).reduced(1)));
}

TEST_CASE("twisted standard equation: all three equation forms hold") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(51, 1, 0);
    for (int k = 0; k < 5; ++k) {
        Mat alpha = random_matrix(cx, 2, rng, 10);
        DeltaLinearProblem prob{FrobeniusLift::standard(2), alpha};
        Mat seed = random_invertible_matrix(cx, 2, rng, 1);
        Mat u = solve(prob, seed);
        CHECK(equation_forms_shortfall(prob, u) == 0);
        // explicit check of the multiplicative form phi(u) = (1 + p alpha) Phi(u)
        Mat eps = Mat::identity(cx, 2).reduced(10) + mul_by_p(alpha, 1).reduced(10);
        Mat lhs = entrywise_frobenius(u, 1);
        Mat rhs = eps.reduced(u.prec()) * evaluate(prob.lift, u.lifted(u.prec() + 1));
        CHECK(is_zero((lhs - rhs.reduced(lhs.prec())).reduced(u.prec())));
    }
}

TEST_CASE("special-linear and chern twists audit their prime integrals") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(51, 2, 0);

    DeltaLie sl_alpha = random_sl_alpha(cx, 2, rng, 10);
    DeltaLinearProblem sl_prob{FrobeniusLift::special_linear(cx, 2), sl_alpha.m};
    Mat u1 = solve(sl_prob, random_invertible_matrix(cx, 2, rng, 1));
    CHECK(equation_forms_shortfall(sl_prob, u1) == 0);
    for (const AuditEntry& e :
         audit_prime_integrals(u1, sl_prob, {PrimeIntegralKind::Det}, nullptr))
        CHECK(e.shortfall == 0);

    Mat q = split_gram(cx, 2, +1).reduced(10);
    SubgroupSpec S = SubgroupSpec::orthogonal(q, +1, true);
    DeltaLie so_alpha = random_so_alpha(S, rng, 10);
    DeltaLinearProblem ch_prob{FrobeniusLift::chern(q, +1), so_alpha.m};
    Mat u2 = solve(ch_prob, random_invertible_matrix(cx, 2, rng, 1));
    CHECK(equation_forms_shortfall(ch_prob, u2) == 0);
    for (const AuditEntry& e :
         audit_prime_integrals(u2, ch_prob, {PrimeIntegralKind::Hq}, &q))
        CHECK(e.shortfall == 0);
}

TEST_CASE("solver guards") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(51, 3, 0);
    DeltaLinearProblem prob{FrobeniusLift::standard(2), random_matrix(cx, 2, rng, 10)};
    Mat sing(cx, 2);
    sing.at(0, 0) = Scalar::one(cx).reduced(1); // rank 1 residue seed
    sing.at(0, 1) = Scalar::one(cx).reduced(1);
    CHECK(kind_of([&] { solve(prob, sing.reduced(1)); }) == "SeedNotInvertible");
}

TEST_CASE("solver is deterministic") {
    Context cx(7, 2, 10);
    Rng rng = derive_rng(51, 4, 0);
    Mat alpha = random_matrix(cx, 2, rng, 10);
    Mat seed = random_invertible_matrix(cx, 2, rng, 1);
    DeltaLinearProblem prob{FrobeniusLift::standard(2), alpha};
    Mat u1 = solve(prob, seed), u2 = solve(prob, seed);
    CHECK(u1.prec() == u2.prec());
    CHECK(is_zero(u1 - u2));
}

TEST_CASE("every invertible residue seed lifts (tiny enumeration)") {
    Context cx(3, 1, 8);
    Rng rng = derive_rng(51, 5, 0);
    DeltaLinearProblem prob{FrobeniusLift::standard(1), random_matrix(cx, 1, rng, 8)};
    std::vector<Mat> seeds = enumerate_residue_seeds(prob);
    CHECK(seeds.size() == 2); // units of F_3
    for (const Mat& s : seeds) {
        Mat u = solve(prob, s);
        CHECK(equation_forms_shortfall(prob, u) == 0);
        CHECK(is_zero((u - lift_residue_matrix(s, 1).lifted(u.prec())).reduced(1)));
    }
    // enumeration is refused when the residue space is too large
    Context big(7, 1, 8);
    DeltaLinearProblem bigprob{FrobeniusLift::standard(3), Mat(big, 3).reduced(8)};
    CHECK(kind_of([&] { enumerate_residue_seeds(bigprob); }) == "TooLarge");
}

TEST_CASE("isospectral inner twist solves on the structural-unit locus") {
    Context cx(5, 1, 10);
    Rng rng = derive_rng(51, 6, 0);
    Mat al = random_matrix(cx, 2, rng, 10);
    FrobeniusLift L = FrobeniusLift::inner_twist(al, FrobeniusLift::charpoly_lift(2));
    DeltaLinearProblem prob{L, Mat(cx, 2).reduced(10)};
    bool solved = false;
    for (int tries = 0; tries < 60 && !solved; ++tries) {
        Mat seed = random_invertible_matrix(cx, 2, rng, 1);
        if (valuation(d_star_star(lift_residue_matrix(seed, 1)).reduced(1)) != 0) continue;
        try {
            Mat u = solve(prob, seed);
            CHECK(equation_forms_shortfall(prob, u) == 0);
            for (const AuditEntry& e : audit_prime_integrals(
                     u, prob, {PrimeIntegralKind::CharPolyCoeffs}, nullptr))
                CHECK(e.shortfall == 0);
            solved = true;
        } catch (const Error&) {
            continue;
        }
    }
    CHECK(solved);
}
