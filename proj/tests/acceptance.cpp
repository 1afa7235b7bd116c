// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "loewner/cli.hpp"
#include "loewner/loewner.hpp"

using namespace loewner;

namespace {

// Pinned tolerances.
constexpr double kGradientRelTol = 1e-12;
constexpr double kSandwichTol = 1e-8;
constexpr double kSignTol = 1e-10;
constexpr double kCertTol = 1e-8;
constexpr double kHandGapTol = 1e-6;
constexpr double kHandSandwichTol = 1e-10;
constexpr double kKantorovichTol = 1e-12;
constexpr double kKantorovichLimitTol = 1e-4;
constexpr double kBetaTol = 1e-9;
constexpr double kAgreeTol = 1e-5;
constexpr double kDominanceTol = 1e-7;
constexpr std::uint64_t kSeed = 42;

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-28s %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failures;
}

std::string summary(const fuzz::SuiteResult& r) {
    return std::to_string(r.passed) + "/" + std::to_string(r.trials) +
           " worst=" + loewner::detail::to_text(r.worst_margin);
}

std::string num(double x) { return loewner::detail::to_text(x); }

} // namespace

int main() {
    criterion(1, "gradient inequality", [] {
        auto r = fuzz::gradient_suite(10000, kSeed, kGradientRelTol);
        bool per_family = r.trials == 10000 * static_cast<int>(standard_functions().size());
        return Verdict{r.ok() && per_family, summary(r)};
    });

    criterion(2, "sandwich", [] {
        auto r = fuzz::sandwich_suite(500, kSeed, 8, kSandwichTol);
        return Verdict{r.ok() && r.trials == 500, summary(r)};
    });

    criterion(3, "chebyshev / eta positivity", [] {
        auto r = fuzz::chebyshev_suite(1000, 200, kSeed, {}, kSignTol);
        return Verdict{r.ok() && r.trials == 1200, summary(r)};
    });

    criterion(4, "gamma certificates", [] {
        auto r = fuzz::gamma_suite(200, kSeed, {}, kCertTol);
        return Verdict{r.ok() && r.trials == 200, summary(r)};
    });

    criterion(5, "hand-derived values", [] {
        auto a = HermitianMatrix::diagonal({0, 1});
        auto f = ScalarFunction::power(2);
        double half = solve_multistart(gamma_problem(f, a, a)).value;
        auto c = certify_order(a, HermitianMatrix::diagonal({1, 2}), f);
        double g4 = *c.constant("gamma");
        ComplexVector x(2);
        x << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        auto s = verify_sandwich_pointwise(MapFamily::identity(2), {a}, {a}, f, x, kSandwichTol);
        bool ok = std::abs(half - 0.5) <= kHandGapTol && std::abs(g4 - 4) <= kHandGapTol &&
                  std::abs(c.slack - 1) <= kHandGapTol && c.pass && std::abs(s.lower + 0.5) <= kHandSandwichTol &&
                  std::abs(s.middle) <= kHandSandwichTol && std::abs(s.upper - 0.5) <= kHandSandwichTol && s.ok;
        return Verdict{ok, "gamma=" + num(half) + " gamma=" + num(g4) + " slack=" + num(c.slack) + " sandwich=(" +
                               num(s.lower) + "," + num(s.middle) + "," + num(s.upper) + ")"};
    });

    criterion(6, "constants", [] {
        bool ok = std::abs(kantorovich(1, 2, 2) - 1.125) <= kKantorovichTol &&
                  std::abs(kantorovich(1, 4, 2) - 1.5625) <= kKantorovichTol;
        double worst_limit = 0;
        for (auto [m, big_m] : {std::pair{1.0, 2.0}, {0.5, 3.0}})
            for (double p : {1 - 1e-6, 1 + 1e-6}) worst_limit = std::max(worst_limit, std::abs(kantorovich(m, big_m, p) - 1));
        ok = ok && worst_limit <= kKantorovichLimitTol;
        auto f = ScalarFunction::power(2);
        double b1 = beta(f, 1, 3, 1), b2 = beta(f, 1, 3, 2);
        ok = ok && std::abs(b1 - 1) <= kBetaTol && std::abs(b2 + 1) <= kBetaTol;
        auto chord = chord_coeffs(f, 1, 2);
        ok = ok && chord.a_f == 3.0 && chord.b_f == -2.0;
        return Verdict{ok, "K(1,2,2)=" + num(kantorovich(1, 2, 2)) + " K(1,4,2)=" + num(kantorovich(1, 4, 2)) +
                               " |K(p~1)-1|<=" + num(worst_limit) + " beta=" + num(b1) + "," + num(b2) + " chord=(" +
                               num(chord.a_f) + "," + num(chord.b_f) + ")"};
    });

    criterion(7, "classical statements", [] {
        auto r = fuzz::classical_suite(200, kSeed, kCertTol);
        ClassicalParams prm;
        prm.p = 3;
        auto w = verify_classical(ClassicalStatement::furuta, HermitianMatrix::from_rows({{2, 1}, {1, 1}}),
                                  HermitianMatrix::from_rows({{1, 1}, {1, 1}}), prm, kCertTol);
        return Verdict{r.ok() && r.trials == 800 && w.pass, summary(r) + " witness slack=" + num(w.slack)};
    });

    criterion(8, "t^3 not operator monotone", [] {
        auto v = find_order_violation(ScalarFunction::power(3), 2, 10000, kSeed);
        auto a = HermitianMatrix::from_rows({{1, 1}, {1, 1}});
        auto b = HermitianMatrix::from_rows({{2, 1}, {1, 1}});
        auto f = ScalarFunction::power(3);
        double w = lambda_min(calc(f, b) - calc(f, a));
        // [[9,4],[4,1]] has eigenvalues 5 +- sqrt(32).
        bool ok = v.has_value() && loewner_leq(a, b, 0).holds && w < 0 && std::abs(w - (5 - std::sqrt(32.0))) <= 1e-12;
        return Verdict{ok, (v ? "found at trial " + std::to_string(v->trial) : std::string("not found")) +
                               " witness lambda_min=" + num(w)};
    });

    criterion(9, "solver agreement", [] {
        auto r = fuzz::agreement_suite(100, 20, kSeed, {}, {}, kAgreeTol, kDominanceTol);
        return Verdict{r.ok() && r.trials == 6 * 120, summary(r)};
    });

    criterion(10, "fuzz determinism", [] {
        cli::RunConfig cfg;
        cfg.subcommand = "fuzz";
        cfg.suite = "all";
        cfg.solver.seed = kSeed;
        cfg.json = true;
        std::ostringstream o1, o2, e;
        int c1 = cli::run(cfg, o1, e), c2 = cli::run(cfg, o2, e);
        bool ok = c1 == 0 && c2 == 0 && !o1.str().empty() && o1.str() == o2.str();
        return Verdict{ok, std::to_string(o1.str().size()) + " bytes, identical=" + (o1.str() == o2.str() ? "yes" : "no")};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
