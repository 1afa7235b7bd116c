#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "loewner/constants.hpp"
#include "loewner/instances.hpp"

using namespace loewner;

TEST(Chord, Examples) {
    auto c = chord_coeffs(ScalarFunction::power(2), 1, 2);
    EXPECT_EQ(c.a_f, 3.0);
    EXPECT_EQ(c.b_f, -2.0);

    auto aff = chord_coeffs(ScalarFunction::affine(1.5, -4), -3, 7);
    EXPECT_NEAR(aff.a_f, 1.5, 1e-15);
    EXPECT_NEAR(aff.b_f, -4.0, 1e-14);

    const double e = std::exp(1.0);
    auto nl = chord_coeffs(ScalarFunction::neglog(), 1, e);
    EXPECT_NEAR(nl.a_f, -1 / (e - 1), 1e-15);
    EXPECT_NEAR(nl.b_f, 1 / (e - 1), 1e-15);
}

TEST(Chord, Errors) {
    EXPECT_THROW(chord_coeffs(ScalarFunction::power(2), 2, 1), BadInterval);
    EXPECT_THROW(chord_coeffs(ScalarFunction::power(2), 1, 1), BadInterval);
    EXPECT_THROW(chord_coeffs(ScalarFunction::neglog(), 0, 1), DomainError);
    EXPECT_THROW(chord_coeffs(ScalarFunction::power(2, Interval::closed(1, 3)), 1, 4), DomainError);
}

TEST(Chord, InterpolatesEndpoints) {
    Rng rng(5);
    for (const auto& f : standard_functions()) {
        const Interval iv = sample_interval(f.domain());
        std::uniform_real_distribution<double> u(iv.lo, iv.hi);
        for (int i = 0; i < 100; ++i) {
            double m = u(rng), big_m = u(rng);
            if (m > big_m) std::swap(m, big_m);
            if (big_m - m < 1e-3) continue;
            auto c = chord_coeffs(f, m, big_m);
            double scale = 1 + std::abs(f(m)) + std::abs(f(big_m)) + std::abs(c.a_f) * (std::abs(m) + std::abs(big_m));
            EXPECT_NEAR(c(m), f(m), 1e-12 * scale) << f.spec();
            EXPECT_NEAR(c(big_m), f(big_m), 1e-12 * scale) << f.spec();
        }
    }
}

TEST(Beta, Examples) {
    auto sq = ScalarFunction::power(2);
    auto r1 = beta_with_argmax(sq, 1, 3, 1);
    EXPECT_NEAR(r1.value, 1.0, 1e-12);
    EXPECT_NEAR(r1.argmax, 2.0, 1e-10);
    EXPECT_NEAR(beta(sq, 1, 3, 2), -1.0, 1e-12);
    EXPECT_NEAR(beta(ScalarFunction::affine(2, 3), 0, 5, 1), 0.0, 1e-14);
    EXPECT_NEAR(beta(ScalarFunction::affine(-1, 0.5), -2, 2, 1), 0.0, 1e-14);
}

TEST(Beta, Errors) {
    EXPECT_THROW(beta(ScalarFunction::power(2), 1, 3, 0), NonPositiveAlpha);
    EXPECT_THROW(beta(ScalarFunction::power(2), 1, 3, -1), NonPositiveAlpha);
    EXPECT_THROW(beta(ScalarFunction::power(2), 3, 1, 1), BadInterval);
    EXPECT_THROW(beta(ScalarFunction::neglog(), 0, 1, 1), DomainError);
}

TEST(Kantorovich, Examples) {
    EXPECT_NEAR(kantorovich(1, 2, 2), 1.125, 1e-12);
    EXPECT_NEAR(kantorovich(1, 4, 2), 1.5625, 1e-12);
    EXPECT_EQ(kantorovich(1, 2, 1), 1.0);
    EXPECT_EQ(kantorovich(0.5, 3, 0), 1.0);
    // p = 2 reduces to (M + m)^2 / (4 m M).
    for (auto [m, big_m] : {std::pair{0.3, 0.7}, {1.0, 10.0}, {2.0, 2.5}})
        EXPECT_NEAR(kantorovich(m, big_m, 2), (m + big_m) * (m + big_m) / (4 * m * big_m), 1e-12);
}

TEST(Kantorovich, ContinuousAcrossZeroAndOne) {
    for (auto [m, big_m] : {std::pair{1.0, 2.0}, {0.5, 3.0}, {0.1, 10.0}}) {
        for (double p : {1 - 1e-6, 1 + 1e-6, -1e-6, 1e-6}) EXPECT_LE(std::abs(kantorovich(m, big_m, p) - 1), 1e-4);
    }
}

TEST(Kantorovich, Errors) {
    EXPECT_THROW(kantorovich(0, 1, 2), BadInterval);
    EXPECT_THROW(kantorovich(2, 1, 2), BadInterval);
    EXPECT_THROW(kantorovich(1, 1, 2), BadInterval);
}

// ---------------------------------------------------------------------------
// Independent oracles

namespace {

// K(m, M, p) as the maximum over [m, M] of chord(t) / t^p, chord of t^p; refined by golden section.
double kantorovich_oracle(double m, double big_m, double p) {
    const double mp = std::pow(m, p), Mp = std::pow(big_m, p);
    auto ratio = [&](double t) { return (mp + (Mp - mp) * (t - m) / (big_m - m)) / std::pow(t, p); };
    const int n = 20000;
    int best = 0;
    double best_v = -1;
    for (int i = 0; i <= n; ++i) {
        double v = ratio(m + (big_m - m) * i / n);
        if (v > best_v) best_v = v, best = i;
    }
    double lo = m + (big_m - m) * std::max(0, best - 1) / n, hi = m + (big_m - m) * std::min(n, best + 1) / n;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200; ++it) {
        double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        if (ratio(a) < ratio(b))
            lo = a;
        else
            hi = b;
    }
    return std::max(best_v, ratio(0.5 * (lo + hi)));
}

double beta_grid(const ScalarFunction& f, double m, double big_m, double alpha) {
    const double fm = f(m), fM = f(big_m);
    double best = -kInf;
    const int n = 200000;
    for (int i = 0; i <= n; ++i) {
        double t = m + (big_m - m) * i / n;
        double chord = fm + (fM - fm) * (t - m) / (big_m - m);
        best = std::max(best, chord - alpha * f(t));
    }
    return best;
}

} // namespace

TEST(KantorovichOracle, MatchesChordRatioMaximum) {
    for (auto [m, big_m] : {std::pair{1.0, 2.0}, {0.5, 3.0}, {0.2, 5.0}, {1.0, 1.5}})
        for (double p : {1.5, 2.0, 3.0, 4.5, -1.0, -0.5}) {
            double k = kantorovich(m, big_m, p);
            EXPECT_NEAR(k, kantorovich_oracle(m, big_m, p), 1e-9 * k) << m << " " << big_m << " " << p;
            if (p >= 1.0) {
                EXPECT_GE(k, 1.0);
            }
        }
}

TEST(BetaOracle, MatchesDenseGrid) {
    Rng rng(12);
    std::uniform_real_distribution<double> alpha_d(0.2, 4.0);
    for (const auto& f : standard_functions()) {
        const Interval iv = sample_interval(f.domain());
        for (int i = 0; i < 10; ++i) {
            double m = iv.lo + 0.1 * i * (iv.hi - iv.lo) / 10, big_m = iv.hi - 0.05 * i * (iv.hi - iv.lo) / 10;
            double alpha = alpha_d(rng);
            auto r = beta_with_argmax(f, m, big_m, alpha);
            double scale = 1 + std::abs(f(m)) + std::abs(f(big_m));
            EXPECT_NEAR(r.value, beta_grid(f, m, big_m, alpha), 1e-8 * scale) << f.spec() << " alpha=" << alpha;
        }
    }
}

TEST(BetaProperty, DominatesSamplesAndIsAttained) {
    Rng rng(13);
    std::uniform_real_distribution<double> alpha_d(0.1, 5.0);
    for (const auto& f : standard_functions()) {
        const Interval iv = sample_interval(f.domain());
        const double m = iv.lo, big_m = iv.hi;
        const double alpha = alpha_d(rng);
        auto r = beta_with_argmax(f, m, big_m, alpha);
        auto c = chord_coeffs(f, m, big_m);
        auto g = [&](double t) { return c(t) - alpha * f(t); };
        std::uniform_real_distribution<double> u(m, big_m);
        for (int i = 0; i < 1000; ++i) {
            double t = u(rng);
            EXPECT_GE(r.value, g(t) - 1e-12 * (1 + std::abs(g(t))));
        }
        EXPECT_GE(r.argmax, m);
        EXPECT_LE(r.argmax, big_m);
        EXPECT_NEAR(r.value, g(r.argmax), 1e-10 * (1 + std::abs(r.value)));
    }
}

TEST(BetaProperty, NonincreasingInAlphaForNonnegativeF) {
    for (const auto& f : {ScalarFunction::power(2), ScalarFunction::power(3), ScalarFunction::exp(),
                          ScalarFunction::power(-1)}) {
        const Interval iv = sample_interval(f.domain());
        const double m = std::max(iv.lo, 0.25), big_m = iv.hi;
        double prev = kInf;
        for (int i = 1; i <= 50; ++i) {
            double b = beta(f, m, big_m, 0.1 * i);
            EXPECT_LE(b, prev + 1e-12) << f.spec();
            prev = b;
        }
    }
}
