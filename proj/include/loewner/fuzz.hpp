#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "loewner/certify.hpp"
#include "loewner/constants.hpp"
#include "loewner/gaps.hpp"
#include "loewner/instances.hpp"

namespace loewner::fuzz {

/// Outcome of one property suite. `worst_margin` is the smallest observed margin
/// (a check passes when its margin is >= -tolerance).
struct SuiteResult {
    std::string name;
    int trials = 0;
    int passed = 0;
    int failed = 0;
    double worst_margin = std::numeric_limits<double>::infinity();

    bool ok() const { return failed == 0 && trials > 0; }

    void record(bool pass, double margin) {
        ++trials;
        (pass ? passed : failed) += 1;
        worst_margin = std::min(worst_margin, margin);
    }
};

namespace detail {

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
}

inline int uniform_int(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double uniform(double lo, double hi, Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::vector<ScalarFunction> increasing_functions() {
    return {ScalarFunction::power(2.0), ScalarFunction::power(3.0), ScalarFunction::power(1.5), ScalarFunction::exp(),
            ScalarFunction::affine(2.0, -1.0)};
}

inline std::vector<ScalarFunction> decreasing_functions() {
    return {ScalarFunction::neglog(), ScalarFunction::power(-1.0), ScalarFunction::power(-2.0),
            ScalarFunction::affine(-1.0, 0.5)};
}

/// Random operands and family for a gap problem of output dimension k.
struct JensenInstance {
    ScalarFunction f;
    MapFamily family;
    std::vector<HermitianMatrix> a;
    std::vector<HermitianMatrix> b;
};

inline JensenInstance random_jensen_instance(Index k, int min_dim, int max_dim, Rng& rng) {
    ScalarFunction f = pick(standard_functions(), rng);
    const int count = uniform_int(1, 3, rng);
    int n = uniform_int(min_dim, max_dim, rng);
    while (count * n < k) ++n;
    MapFamily family = random_family(count, n, k, rng);
    const Interval iv = sample_interval(f.domain());
    auto a = random_operands(family.size(), n, iv, rng);
    auto b = random_operands(family.size(), n, iv, rng);
    return {f, family, a, b};
}

} // namespace detail

/// Scalar gradient inequality and its two-sided form for every standard family,
/// `trials` random (s, t) pairs each.
inline SuiteResult gradient_suite(int trials, std::uint64_t seed, double rel_tol = 1e-12) {
    SuiteResult res{"gradient"};
    Rng rng = stream_rng(seed, 1);
    for (const ScalarFunction& f : standard_functions()) {
        const Interval iv = sample_interval(f.domain());
        for (int i = 0; i < trials; ++i) {
            const double s = detail::uniform(iv.lo, iv.hi, rng);
            const double t = detail::uniform(iv.lo, iv.hi, rng);
            const double fs = f.eval(s), ft = f.eval(t), ds = f.deriv(s), dt = f.deriv(t);
            const double scale = 1.0 + std::abs(fs) + std::abs(ft) + std::abs(ds * (t - s)) + std::abs(dt * (t - s));
            const double tol = rel_tol * scale;
            // f'(s) t - f'(s) s <= f(t) - f(s) <= f'(t) t - f'(t) s
            const double left = (ft - fs) - (ds * t - ds * s);
            const double right = (dt * t - dt * s) - (ft - fs);
            const bool pass = check_gradient_inequality(f, s, t, tol) && left >= -tol && right >= -tol;
            res.record(pass, std::min(left, right) / scale);
        }
    }
    return res;
}

/// Two-sided pointwise bound on random unital families: dims 2-6, 1-3 maps, every standard
/// function, `vectors` random unit vectors per instance.
inline SuiteResult sandwich_suite(int trials, std::uint64_t seed, int vectors = 8, double tol = 1e-8) {
    SuiteResult res{"sandwich"};
    Rng rng = stream_rng(seed, 2);
    for (int i = 0; i < trials; ++i) {
        const Index k = detail::uniform_int(2, 6, rng);
        detail::JensenInstance inst = detail::random_jensen_instance(k, 2, 6, rng);
        SandwichOperators ops(inst.family, inst.a, inst.b, inst.f);
        bool pass = true;
        double margin = std::numeric_limits<double>::infinity();
        for (int v = 0; v < vectors; ++v) {
            SandwichPoint pt = ops.at(random_unit_vector(k, rng), tol);
            pass = pass && pt.ok;
            margin = std::min({margin, pt.middle - pt.lower, pt.upper - pt.middle});
        }
        res.record(pass, margin);
    }
    return res;
}

/// Nonnegativity of the Chebyshev functional on random (A, f), and of eta on random
/// unital families.
inline SuiteResult chebyshev_suite(int trials, int eta_trials, std::uint64_t seed, const MultistartOptions& opt = {},
                                   double tol = 1e-10) {
    SuiteResult res{"chebyshev"};
    Rng rng = stream_rng(seed, 3);
    for (int i = 0; i < trials; ++i) {
        const ScalarFunction f = detail::pick(standard_functions(), rng);
        const Interval iv = sample_interval(f.domain());
        const Index n = detail::uniform_int(1, 6, rng);
        GapResult g = solve_multistart(chebyshev_problem(f, random_hermitian(n, iv.lo, iv.hi, rng)), opt);
        res.record(g.value >= -tol, g.value);
    }
    for (int i = 0; i < eta_trials; ++i) {
        const Index k = detail::uniform_int(1, 6, rng);
        detail::JensenInstance inst = detail::random_jensen_instance(k, 1, 6, rng);
        GapResult g = solve_multistart(build_gap_problem(GapKind::eta, inst.f, inst.family, inst.a, inst.a), opt);
        res.record(g.value >= -tol, g.value);
    }
    return res;
}

/// Order certificates f(B) <= f(A) + gamma I. Trials cycle through unordered pairs, A <= B
/// and B <= A; when the order matches f's monotonicity, gamma must also be >= -1e-10.
inline SuiteResult gamma_suite(int trials, std::uint64_t seed, const MultistartOptions& opt = {},
                               double tol = kDefaultCertTol) {
    SuiteResult res{"gamma"};
    Rng rng = stream_rng(seed, 4);
    for (int i = 0; i < trials; ++i) {
        const ScalarFunction f = detail::pick(standard_functions(), rng);
        const Interval iv = sample_interval(f.domain());
        const Index n = detail::uniform_int(1, 6, rng);
        HermitianMatrix a, b;
        bool sign_expected = false;
        switch (i % 3) {
        case 0:
            a = random_hermitian(n, iv.lo, iv.hi, rng);
            b = random_hermitian(n, iv.lo, iv.hi, rng);
            break;
        case 1: { // A <= B
            DominatedPair p = random_dominated_pair_in(n, iv.lo, iv.hi, rng);
            a = p.b;
            b = p.a;
            sign_expected = f.monotonicity() == Monotonicity::increasing;
            break;
        }
        default: { // B <= A
            DominatedPair p = random_dominated_pair_in(n, iv.lo, iv.hi, rng);
            a = p.a;
            b = p.b;
            sign_expected = f.monotonicity() == Monotonicity::decreasing;
            break;
        }
        }
        Certificate c = certify_order(a, b, f, opt, tol);
        const double gamma = *c.constant("gamma");
        bool pass = c.pass && (!sign_expected || gamma >= -1e-10);
        res.record(pass, sign_expected ? std::min(c.slack + c.tol, gamma) : c.slack + c.tol);
    }
    return res;
}

/// Delta/eta/theta/vartheta certificates on random unital families.
inline SuiteResult jensen_suite(int trials, std::uint64_t seed, const MultistartOptions& opt = {},
                                double tol = kDefaultCertTol) {
    SuiteResult res{"jensen"};
    Rng rng = stream_rng(seed, 5);
    const JensenKind kinds[] = {JensenKind::delta_forward, JensenKind::eta_choi, JensenKind::theta_reverse,
                                JensenKind::vartheta_reverse};
    for (int i = 0; i < trials; ++i) {
        const Index k = detail::uniform_int(1, 5, rng);
        detail::JensenInstance inst = detail::random_jensen_instance(k, 1, 5, rng);
        Certificate c = certify_jensen(kinds[i % 4], inst.family, inst.a, inst.b, inst.f, opt, tol);
        res.record(c.pass, c.slack + c.tol);
    }
    return res;
}

/// One trial = one instance of each classical statement: Furuta (p cycling 1.5, 2, 3),
/// Loewner-Heinz (p cycling 0.3, 0.5, 0.9), and the increasing/decreasing alpha-beta
/// statements with beta computed for a random alpha.
inline SuiteResult classical_suite(int trials, std::uint64_t seed, double tol = kDefaultCertTol) {
    SuiteResult res{"classical"};
    Rng rng = stream_rng(seed, 6);
    const double furuta_p[] = {1.5, 2.0, 3.0};
    const double heinz_p[] = {0.3, 0.5, 0.9};
    const auto inc = detail::increasing_functions();
    const auto dec = detail::decreasing_functions();
    for (int i = 0; i < trials; ++i) {
        const Index n = detail::uniform_int(1, 6, rng);
        const double m = detail::uniform(0.1, 1.0, rng);
        const double big_m = m + detail::uniform(0.5, 3.0, rng);

        // A 1x1 spectral hull is a point, so the generator's interval is passed explicitly there.
        const bool explicit_interval = i % 2 == 1 || n == 1;

        DominatedPair p = random_dominated_pair(n, m, big_m, rng);
        ClassicalParams fp;
        fp.p = furuta_p[i % 3];
        if (explicit_interval) {
            fp.m = m;
            fp.big_m = big_m;
        }
        Certificate c = verify_classical(ClassicalStatement::furuta, p.a, p.b, fp, tol);
        res.record(c.pass, c.slack + c.tol);

        p = random_dominated_pair(n, m, big_m, rng);
        ClassicalParams hp;
        hp.p = heinz_p[i % 3];
        c = verify_classical(ClassicalStatement::lowner_heinz, p.b, p.a, hp, tol);
        res.record(c.pass, c.slack + c.tol);

        for (bool increasing : {true, false}) {
            p = random_dominated_pair(n, m, big_m, rng);
            ClassicalParams ap;
            ap.f = detail::pick(increasing ? inc : dec, rng);
            ap.alpha = detail::uniform(0.5, 2.0, rng);
            if (explicit_interval) {
                ap.m = m;
                ap.big_m = big_m;
            }
            c = verify_classical(increasing ? ClassicalStatement::alpha_beta_increasing
                                            : ClassicalStatement::alpha_beta_decreasing,
                                 p.a, p.b, ap, tol);
            res.record(c.pass, c.slack + c.tol);
        }
    }
    return res;
}

/// t^3 must show an order violation in dimension 2; t and 2t + 1 must not.
inline SuiteResult violation_suite(int trials, std::uint64_t seed) {
    SuiteResult res{"violation"};
    auto cube = find_order_violation(ScalarFunction::power(3.0), 2, trials, seed);
    res.record(cube.has_value(), cube ? -cube->witness : -1.0);
    for (const ScalarFunction& f : {ScalarFunction::affine(2.0, 1.0), ScalarFunction::power(1.0)}) {
        auto none = find_order_violation(f, 2, trials, seed);
        res.record(!none.has_value(), none ? none->witness : 0.0);
    }
    return res;
}

/// Multistart against the brute-force oracle. `small_trials` problems per kind at dims
/// 1-3 must agree within `agree_tol`; `large_trials` per kind at dims 4-6 must not fall
/// below the oracle by more than `dominance_tol`.
inline SuiteResult agreement_suite(int small_trials, int large_trials, std::uint64_t seed,
                                   const MultistartOptions& opt = {}, const BruteForceOptions& oracle = {},
                                   double agree_tol = 1e-5, double dominance_tol = 1e-7) {
    SuiteResult res{"agreement"};
    Rng rng = stream_rng(seed, 7);
    for (GapKind kind : kAllGapKinds) {
        for (int i = 0; i < small_trials + large_trials; ++i) {
            const bool small = i < small_trials;
            const Index k = small ? 1 + i % 3 : 4 + i % 3;
            detail::JensenInstance inst = detail::random_jensen_instance(k, 1, 4, rng);
            std::vector<HermitianMatrix> a = inst.a, b = inst.b;
            MapFamily family = inst.family;
            if (kind == GapKind::gamma || kind == GapKind::chebyshev) {
                const Interval iv = sample_interval(inst.f.domain());
                a = {random_hermitian(k, iv.lo, iv.hi, rng)};
                b = {random_hermitian(k, iv.lo, iv.hi, rng)};
            }
            GapProblem p = build_gap_problem(kind, inst.f, family, a, b);
            GapResult ms = solve_multistart(p, opt);
            BruteForceOptions bo = oracle;
            bo.seed = oracle.seed + static_cast<std::uint64_t>(i);
            GapResult bf = solve_bruteforce(p, bo);
            const double diff = ms.value - bf.value;
            const double scale = 1.0 + std::abs(bf.value);
            bool pass = diff >= -dominance_tol * scale;
            if (small) pass = pass && std::abs(diff) <= agree_tol * scale;
            res.record(pass, small ? -std::abs(diff) : diff);
        }
    }
    return res;
}

struct SuiteTable {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;

    bool ok() const {
        return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"gradient", "sandwich",  "chebyshev", "gamma",
                                                "jensen",   "classical", "violation", "agreement"};
    return names;
}

/// Runs one named suite, or every suite for "all", with `trials` instances each.
inline SuiteTable run_suites(const std::string& suite, int trials, std::uint64_t seed,
                             const MultistartOptions& base = {}) {
    MultistartOptions opt = base;
    opt.seed = seed;
    BruteForceOptions oracle;
    oracle.seed = seed;

    SuiteTable table;
    table.seed = seed;
    auto run = [&](const std::string& name) {
        if (name == "gradient") return gradient_suite(trials, seed);
        if (name == "sandwich") return sandwich_suite(trials, seed);
        if (name == "chebyshev") return chebyshev_suite(trials, trials, seed, opt);
        if (name == "gamma") return gamma_suite(trials, seed, opt);
        if (name == "jensen") return jensen_suite(trials, seed, opt);
        if (name == "classical") return classical_suite(trials, seed);
        if (name == "violation") return violation_suite(std::max(trials, 10000), seed);
        if (name == "agreement") return agreement_suite(trials, std::max(1, trials / 2), seed, opt, oracle);
        throw ParseError("unknown suite '" + name + "'");
    };
    if (suite == "all") {
        for (const auto& name : suite_names()) table.suites.push_back(run(name));
    } else {
        table.suites.push_back(run(suite));
    }
    return table;
}

} // namespace loewner::fuzz
