#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "loewner/certify.hpp"
#include "loewner/instances.hpp"

using namespace loewner;

namespace {

MultistartOptions quick() {
    MultistartOptions o;
    o.restarts = 16;
    return o;
}

} // namespace

TEST(CertifyOrder, EqualOperators) {
    Rng rng(1);
    for (const auto& f : {ScalarFunction::power(2), ScalarFunction::exp(), ScalarFunction::neglog()}) {
        const Interval iv = sample_interval(f.domain());
        auto a = random_hermitian(3, iv.lo, iv.hi, rng);
        auto c = certify_order(a, a, f);
        double g = *c.constant("gamma");
        EXPECT_GE(g, -1e-12);
        EXPECT_NEAR(c.slack, g, 1e-10 * (1 + calc(f, a).frobenius_norm()));
        EXPECT_TRUE(c.pass);
    }
}

TEST(CertifyOrder, HandExample) {
    auto c = certify_order(HermitianMatrix::diagonal({0, 1}), HermitianMatrix::diagonal({1, 2}),
                           ScalarFunction::power(2));
    EXPECT_NEAR(*c.constant("gamma"), 4.0, 1e-6);
    EXPECT_NEAR(c.slack, 1.0, 1e-6);
    EXPECT_TRUE(c.pass);
    EXPECT_EQ(c.statement, "gamma-order");
    ASSERT_TRUE(c.solver.has_value());
    EXPECT_EQ(c.solver->seed, 42u);
    EXPECT_EQ(c.solver->restarts, 64);
    EXPECT_EQ(c.inputs.function, "power:2;dom=[0,inf)");
    EXPECT_EQ(c.inputs.matrices.size(), 2u);
}

TEST(CertifyOrder, AffineIsTight) {
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
        auto a = random_hermitian(3, -2, 2, rng), b = random_hermitian(3, -2, 2, rng);
        auto c = certify_order(a, b, ScalarFunction::affine(1, 0), quick());
        EXPECT_NEAR(*c.constant("gamma"), lambda_max(b - a), 1e-9);
        EXPECT_NEAR(c.slack, 0.0, 1e-9);
        EXPECT_TRUE(c.pass);
    }
}

TEST(CertifyOrder, SlackShiftsWithConstant) {
    Rng rng(3);
    auto f = ScalarFunction::power(3);
    for (int i = 0; i < 10; ++i) {
        auto a = random_hermitian(3, 0.2, 2, rng), b = random_hermitian(3, 0.2, 2, rng);
        auto cert = certify_order(a, b, f, quick());
        double g = *cert.constant("gamma");
        auto fa = calc(f, a), fb = calc(f, b);
        for (double shift : {-1.0, 0.25, 3.0}) {
            double s = lambda_min(fa.shifted(g + shift) - fb);
            EXPECT_NEAR(s - cert.slack, shift, 1e-12 * (1 + fa.frobenius_norm()));
        }
    }
}

TEST(CertifyOrder, PassMatchesSlackAgainstTolerance) {
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        auto a = random_hermitian(2, 0.5, 2, rng), b = random_hermitian(2, 0.5, 2, rng);
        auto c = certify_order(a, b, ScalarFunction::power(2), quick());
        EXPECT_EQ(c.pass, c.slack >= -c.tol);
        EXPECT_NEAR(c.tol, c.base_tol * (1 + calc(ScalarFunction::power(2), a).frobenius_norm()), 1e-20);
    }
}

// ---------------------------------------------------------------------------

TEST(CertifyJensen, DeltaHandExample) {
    auto a = HermitianMatrix::diagonal({0, 1});
    auto c = certify_jensen(JensenKind::delta_forward, MapFamily::identity(2), {a}, {a}, ScalarFunction::power(2));
    EXPECT_NEAR(*c.constant("delta"), 0.5, 1e-6);
    EXPECT_NEAR(c.slack, 0.5, 1e-6);
    EXPECT_TRUE(c.pass);
    EXPECT_EQ(c.statement, "delta-forward");
}

TEST(CertifyJensen, EtaWithIdentityMap) {
    Rng rng(5);
    auto a = random_hermitian(3, 0.5, 2, rng);
    auto c = certify_jensen(JensenKind::eta_choi, MapFamily::identity(3), {a}, {}, ScalarFunction::power(3), quick());
    double eta = *c.constant("eta");
    EXPECT_GE(eta, -1e-10);
    EXPECT_NEAR(c.slack, eta, 1e-9);
    EXPECT_TRUE(c.pass);
}

TEST(CertifyJensen, ReverseAtEqualOperators) {
    Rng rng(6);
    auto a = random_hermitian(3, -1, 1, rng);
    auto th = certify_jensen(JensenKind::theta_reverse, MapFamily::identity(3), {a}, {a}, ScalarFunction::exp(), quick());
    EXPECT_TRUE(th.pass);
    EXPECT_GE(th.slack, -th.tol);
    auto vt = certify_jensen(JensenKind::vartheta_reverse, MapFamily::identity(3), {a}, {}, ScalarFunction::exp(), quick());
    EXPECT_TRUE(vt.pass);
}

TEST(CertifyJensen, RandomFamiliesPass) {
    Rng rng(7);
    auto fns = standard_functions();
    const JensenKind kinds[] = {JensenKind::delta_forward, JensenKind::eta_choi, JensenKind::theta_reverse,
                                JensenKind::vartheta_reverse};
    for (int i = 0; i < 24; ++i) {
        const auto& f = fns[static_cast<std::size_t>(i) % fns.size()];
        const Interval iv = sample_interval(f.domain());
        Index count = 1 + i % 3, n = 2, k = 2;
        auto fam = random_family(count, n, k, rng);
        auto as = random_operands(static_cast<std::size_t>(count), n, iv, rng);
        auto bs = random_operands(static_cast<std::size_t>(count), n, iv, rng);
        auto c = certify_jensen(kinds[i % 4], fam, as, bs, f, quick());
        EXPECT_TRUE(c.pass) << f.spec() << " " << c.statement << " slack=" << c.slack;
    }
}

// ---------------------------------------------------------------------------

TEST(Sandwich, HandExample) {
    auto a = HermitianMatrix::diagonal({0, 1});
    ComplexVector x(2);
    x << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    auto p = verify_sandwich_pointwise(MapFamily::identity(2), {a}, {a}, ScalarFunction::power(2), x, 1e-8);
    EXPECT_NEAR(p.lower, -0.5, 1e-10);
    EXPECT_NEAR(p.middle, 0.0, 1e-10);
    EXPECT_NEAR(p.upper, 0.5, 1e-10);
    EXPECT_TRUE(p.ok);
}

TEST(Sandwich, AffineCollapses) {
    Rng rng(8);
    auto fam = random_unital_family(2, 3, 2, rng);
    auto as = random_operands(2, 3, Interval::closed(-2, 2), rng);
    auto bs = random_operands(2, 3, Interval::closed(-2, 2), rng);
    for (int i = 0; i < 10; ++i) {
        auto p = verify_sandwich_pointwise(fam, as, bs, ScalarFunction::affine(1, 0), random_unit_vector(2, rng), 1e-10);
        EXPECT_NEAR(p.lower, p.middle, 1e-12);
        EXPECT_NEAR(p.middle, p.upper, 1e-12);
        EXPECT_TRUE(p.ok);
    }
}

TEST(Sandwich, ScalarCaseIsGradientInequality) {
    ComplexVector one = ComplexVector::Ones(1);
    auto f = ScalarFunction::exp();
    for (auto [a, b] : {std::pair{0.3, -1.2}, {2.0, 1.0}, {-0.5, -0.5}}) {
        auto p = verify_sandwich_pointwise(MapFamily::identity(1), {HermitianMatrix::diagonal({a})},
                                           {HermitianMatrix::diagonal({b})}, f, one, 0.0);
        EXPECT_NEAR(p.lower, f.deriv(b) * (a - b), 1e-14);
        EXPECT_NEAR(p.middle, f(a) - f(b), 1e-14);
        EXPECT_NEAR(p.upper, f.deriv(a) * (a - b), 1e-14);
        EXPECT_EQ(p.ok, check_gradient_inequality(f, b, a, 0.0) && check_gradient_inequality(f, a, b, 0.0));
    }
}

TEST(Sandwich, Errors) {
    auto a = HermitianMatrix::diagonal({0, 1});
    auto f = ScalarFunction::power(2);
    ComplexVector x(2);
    x << 1, 1;
    EXPECT_THROW(verify_sandwich_pointwise(MapFamily::identity(2), {a}, {a}, f, x, 1e-8), NotUnitVector);
    EXPECT_THROW(verify_sandwich_pointwise(MapFamily::identity(2), {a}, {a}, f, ComplexVector::Ones(3), 1e-8),
                 DimensionMismatch);
    ComplexMatrix u = ComplexMatrix::Identity(2, 2);
    MapFamily twice({PositiveLinearMap::conjugation(u), PositiveLinearMap::conjugation(u)});
    EXPECT_THROW(SandwichOperators(twice, {a, a}, {a, a}, f), NotUnitalFamily);
}

// ---------------------------------------------------------------------------

TEST(Classical, FurutaWitness) {
    auto b = HermitianMatrix::from_rows({{1, 1}, {1, 1}});
    auto a = HermitianMatrix::from_rows({{2, 1}, {1, 1}});
    ClassicalParams prm;
    prm.p = 3;
    auto c = verify_classical(ClassicalStatement::furuta, a, b, prm);
    const double m = (3 - std::sqrt(5.0)) / 2, big_m = (3 + std::sqrt(5.0)) / 2;
    EXPECT_NEAR(*c.constant("m"), m, 1e-12);
    EXPECT_NEAR(*c.constant("M"), big_m, 1e-12);
    EXPECT_NEAR(*c.constant("K"), kantorovich(m, big_m, 3), 1e-9);
    EXPECT_TRUE(c.pass);
    EXPECT_GE(c.slack, 0.0);
}

TEST(Classical, LownerHeinz) {
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        auto pr = random_dominated_pair(1 + i % 4, 0.1, 3.0, rng);
        ClassicalParams prm;
        prm.p = 0.5;
        // Statement orientation: A <= B, so the smaller operator goes first.
        auto c = verify_classical(ClassicalStatement::lowner_heinz, pr.b, pr.a, prm);
        EXPECT_TRUE(c.pass) << c.slack;
    }
}

TEST(Classical, AlphaBetaIncreasingExample) {
    Rng rng(10);
    ClassicalParams prm;
    prm.f = ScalarFunction::power(2);
    prm.alpha = 1;
    prm.m = 1;
    prm.big_m = 3;
    for (int i = 0; i < 20; ++i) {
        auto pr = random_dominated_pair(2, 1, 3, rng);
        auto c = verify_classical(ClassicalStatement::alpha_beta_increasing, pr.a, pr.b, prm);
        EXPECT_NEAR(*c.constant("beta"), 1.0, 1e-12);
        EXPECT_TRUE(c.pass);
    }
}

TEST(Classical, AlphaBetaDecreasing) {
    Rng rng(11);
    ClassicalParams prm;
    prm.f = ScalarFunction::power(-1);
    prm.alpha = 0.7;
    for (int i = 0; i < 20; ++i) {
        auto pr = random_dominated_pair(3, 0.5, 2, rng);
        auto c = verify_classical(ClassicalStatement::alpha_beta_decreasing, pr.a, pr.b, prm);
        EXPECT_TRUE(c.pass);
    }
}

TEST(Classical, HypothesisErrors) {
    auto b = HermitianMatrix::from_rows({{1, 1}, {1, 1}});
    auto a = HermitianMatrix::from_rows({{2, 1}, {1, 1}});
    ClassicalParams prm;
    prm.p = 3;
    EXPECT_THROW(verify_classical(ClassicalStatement::furuta, b, a, prm), HypothesisViolated);
    prm.p = 0.5;
    EXPECT_THROW(verify_classical(ClassicalStatement::furuta, a, b, prm), HypothesisViolated);
    prm.p = 1.5;
    EXPECT_THROW(verify_classical(ClassicalStatement::lowner_heinz, b, a, prm), HypothesisViolated);
    prm.p = 0.5;
    EXPECT_THROW(verify_classical(ClassicalStatement::lowner_heinz, a, b, prm), HypothesisViolated);
    auto neg = HermitianMatrix::diagonal({-1, 1});
    EXPECT_THROW(verify_classical(ClassicalStatement::lowner_heinz, neg, HermitianMatrix::diagonal({1, 2}), prm),
                 HypothesisViolated);

    ClassicalParams ab;
    EXPECT_THROW(verify_classical(ClassicalStatement::alpha_beta_increasing, a, b, ab), HypothesisViolated);
    ab.f = ScalarFunction::neglog();
    EXPECT_THROW(verify_classical(ClassicalStatement::alpha_beta_increasing, a.shifted(1), b.shifted(1), ab),
                 HypothesisViolated);
    ab.f = ScalarFunction::power(2);
    ab.m = 2;
    ab.big_m = 3;
    EXPECT_THROW(verify_classical(ClassicalStatement::alpha_beta_increasing, a.shifted(1), b.shifted(1), ab),
                 HypothesisViolated);

    auto s = HermitianMatrix::diagonal({2});
    EXPECT_THROW(verify_classical(ClassicalStatement::furuta, s, s, ClassicalParams{}), HypothesisViolated);
    EXPECT_THROW(verify_classical(ClassicalStatement::furuta, a, HermitianMatrix::identity(3), ClassicalParams{}),
                 DimensionMismatch);
}

// ---------------------------------------------------------------------------

TEST(OrderViolation, CubeIsNotOperatorMonotone) {
    auto v = find_order_violation(ScalarFunction::power(3), 2, 10000, 1);
    ASSERT_TRUE(v.has_value());
    EXPECT_LT(v->witness, kViolationThreshold);
    EXPECT_TRUE(loewner_leq(v->a, v->b, 1e-12).holds);
    auto f = ScalarFunction::power(3);
    EXPECT_NEAR(lambda_min(calc(f, v->b) - calc(f, v->a)), v->witness, 1e-12);
}

TEST(OrderViolation, HandWitness) {
    auto a = HermitianMatrix::from_rows({{1, 1}, {1, 1}});
    auto b = HermitianMatrix::from_rows({{2, 1}, {1, 1}});
    ASSERT_TRUE(loewner_leq(a, b, 0.0).holds);
    auto f = ScalarFunction::power(3);
    auto diff = calc(f, b) - calc(f, a);
    EXPECT_LE((diff - HermitianMatrix::from_rows({{9, 4}, {4, 1}})).frobenius_norm(), 1e-12);
    auto sd = spectral_decompose(diff);
    EXPECT_NEAR(sd.eigenvalues(0), 5 - std::sqrt(32.0), 1e-12);
    EXPECT_NEAR(sd.eigenvalues(1), 5 + std::sqrt(32.0), 1e-12);
    EXPECT_LT(sd.eigenvalues(0), 0.0);
}

TEST(OrderViolation, OperatorMonotoneFunctionsHaveNone) {
    for (Index n : {1, 2, 3}) {
        EXPECT_FALSE(find_order_violation(ScalarFunction::affine(2, 1), n, 2000, 3).has_value());
        EXPECT_FALSE(find_order_violation(ScalarFunction::power(1), n, 2000, 4).has_value());
    }
    EXPECT_THROW(find_order_violation(ScalarFunction::power(3), 2, 0, 1), BadDimensions);
}
