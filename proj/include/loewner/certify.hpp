#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loewner/constants.hpp"
#include "loewner/gaps.hpp"
#include "loewner/hermitian.hpp"
#include "loewner/instances.hpp"
#include "loewner/maps.hpp"
#include "loewner/scalarfn.hpp"

namespace loewner {

inline constexpr double kDefaultCertTol = 1e-8;

/// FNV-1a over the raw bytes of the entries, as 16 hex digits.
inline std::string digest(const HermitianMatrix& m) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    const std::int64_t n = m.dim();
    mix(&n, sizeof n);
    for (Index j = 0; j < m.dim(); ++j)
        for (Index i = 0; i < m.dim(); ++i) {
            const double re = m(i, j).real();
            const double im = m(i, j).imag();
            mix(&re, sizeof re);
            mix(&im, sizeof im);
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct InputDigest {
    std::vector<Index> dims;
    std::string function; // spec string, empty when the statement has no f
    std::vector<std::string> matrices;
};

struct SolverInfo {
    std::string solver;
    std::uint64_t seed = 0;
    int restarts = 0;
    int iterations = 0;
    bool converged = true;
};

/// An inequality verdict: pass <=> slack >= -tol, with slack the minimum eigenvalue of the
/// difference asserted to be positive semidefinite.
struct Certificate {
    std::string statement;
    InputDigest inputs;
    std::vector<std::pair<std::string, double>> constants;
    double slack = 0.0;
    bool pass = false;
    double tol = 0.0;      // effective tolerance the verdict used
    double base_tol = 0.0; // before scaling by 1 + ||reference||_F
    std::optional<SolverInfo> solver;

    std::optional<double> constant(const std::string& name) const {
        for (const auto& [k, v] : constants)
            if (k == name) return v;
        return std::nullopt;
    }
};

namespace detail {

inline Certificate finish(Certificate c, const HermitianMatrix& difference, const HermitianMatrix& reference,
                          double tol) {
    c.slack = lambda_min(difference);
    c.base_tol = tol;
    c.tol = tol * (1.0 + reference.frobenius_norm());
    c.pass = c.slack >= -c.tol;
    return c;
}

inline SolverInfo info(const GapResult& r, const MultistartOptions& opt) {
    return {r.solver, opt.seed, r.restarts, r.iterations, r.converged};
}

inline InputDigest digest_of(const std::vector<HermitianMatrix>& ms, const std::string& fn) {
    InputDigest d;
    d.function = fn;
    for (const auto& m : ms) {
        d.dims.push_back(m.dim());
        d.matrices.push_back(digest(m));
    }
    return d;
}

} // namespace detail

/// f(B) <= f(A) + gamma I with gamma the maximum of <f'(B)Bx,x> - <Ax,x><f'(B)x,x>.
inline Certificate certify_order(const HermitianMatrix& a, const HermitianMatrix& b, const ScalarFunction& f,
                                 const MultistartOptions& opt = {}, double tol = kDefaultCertTol) {
    GapResult g = solve_multistart(gamma_problem(f, a, b), opt);
    const HermitianMatrix fa = calc(f, a);
    const HermitianMatrix fb = calc(f, b);

    Certificate c;
    c.statement = "gamma-order";
    c.inputs = detail::digest_of({a, b}, f.spec());
    c.constants = {{"gamma", g.value}};
    c.solver = detail::info(g, opt);
    return detail::finish(std::move(c), fa.shifted(g.value) - fb, fa, tol);
}

enum class JensenKind { delta_forward, eta_choi, theta_reverse, vartheta_reverse };

inline std::string to_string(JensenKind k) {
    switch (k) {
    case JensenKind::delta_forward: return "delta-forward";
    case JensenKind::eta_choi: return "eta-choi";
    case JensenKind::theta_reverse: return "theta-reverse";
    case JensenKind::vartheta_reverse: return "vartheta-reverse";
    }
    return "?";
}

inline GapKind gap_kind(JensenKind k) {
    switch (k) {
    case JensenKind::delta_forward: return GapKind::delta;
    case JensenKind::eta_choi: return GapKind::eta;
    case JensenKind::theta_reverse: return GapKind::theta;
    case JensenKind::vartheta_reverse: return GapKind::vartheta;
    }
    return GapKind::delta;
}

/// Forward:  f(sum Phi(B_i)) <= sum Phi(f(A_i)) + c I    (c = delta, or eta with B = A)
/// Reverse:  sum Phi(f(A_i)) <= f(sum Phi(B_i)) + c I    (c = theta, or vartheta with B = A)
inline Certificate certify_jensen(JensenKind kind, const MapFamily& family, const std::vector<HermitianMatrix>& a_list,
                                  const std::vector<HermitianMatrix>& b_list, const ScalarFunction& f,
                                  const MultistartOptions& opt = {}, double tol = kDefaultCertTol) {
    const GapKind gk = gap_kind(kind);
    GapResult g = solve_multistart(build_gap_problem(gk, f, family, a_list, b_list), opt);

    const bool same = kind == JensenKind::eta_choi || kind == JensenKind::vartheta_reverse;
    const std::vector<HermitianMatrix>& bs = same ? a_list : b_list;
    const HermitianMatrix f_of_sum = calc(f, family.apply_sum(bs));
    const HermitianMatrix sum_of_f = family.apply_sum(a_list, [&](const HermitianMatrix& x) { return calc(f, x); });

    Certificate c;
    c.statement = to_string(kind);
    std::vector<HermitianMatrix> all = a_list;
    if (!same) all.insert(all.end(), b_list.begin(), b_list.end());
    c.inputs = detail::digest_of(all, f.spec());
    c.constants = {{to_string(gk), g.value}};
    c.solver = detail::info(g, opt);
    const bool forward = kind == JensenKind::delta_forward || kind == JensenKind::eta_choi;
    if (forward) return detail::finish(std::move(c), sum_of_f.shifted(g.value) - f_of_sum, sum_of_f, tol);
    return detail::finish(std::move(c), f_of_sum.shifted(g.value) - sum_of_f, f_of_sum, tol);
}

/// Every operator the two-sided pointwise bound needs, computed once per instance.
class SandwichOperators {
public:
    SandwichOperators(const MapFamily& family, const std::vector<HermitianMatrix>& a_list,
                      const std::vector<HermitianMatrix>& b_list, const ScalarFunction& f) {
        auto unital = check_unital_family(family);
        if (!unital.unital)
            throw NotUnitalFamily("sum_i Phi_i(I) differs from I by " + detail::to_text(unital.defect));
        t_ = family.apply_sum(b_list);
        Calculus ct = calculus(f, t_);
        f_t_ = ct.value;
        df_t_ = ct.derivative;
        moment_t_ = ct.moment;
        sum_a_ = family.apply_sum(a_list);
        std::vector<HermitianMatrix> fa, dfa, ma;
        for (const auto& a : a_list) {
            Calculus ca = calculus(f, a);
            fa.push_back(ca.value);
            dfa.push_back(ca.derivative);
            ma.push_back(ca.moment);
        }
        sum_fa_ = family.apply_sum(fa);
        sum_dfa_ = family.apply_sum(dfa);
        sum_ma_ = family.apply_sum(ma);
    }

    Index dim() const { return t_.dim(); }

    struct Point {
        double lower;
        double middle;
        double upper;
        bool ok;
    };

    Point at(const ComplexVector& x, double tol) const {
        if (x.size() != dim())
            throw DimensionMismatch("unit vector has dimension " + std::to_string(x.size()) + ", expected " +
                                    std::to_string(dim()));
        if (std::abs(x.norm() - 1.0) > 1e-10)
            throw NotUnitVector("||x|| = " + detail::to_text(x.norm()) + ", expected 1");
        Point p;
        p.lower = sum_a_.expect(x) * df_t_.expect(x) - moment_t_.expect(x);
        p.middle = sum_fa_.expect(x) - f_t_.expect(x);
        p.upper = sum_ma_.expect(x) - sum_dfa_.expect(x) * t_.expect(x);
        p.ok = p.lower <= p.middle + tol && p.middle <= p.upper + tol;
        return p;
    }

private:
    HermitianMatrix t_, f_t_, df_t_, moment_t_, sum_a_, sum_fa_, sum_dfa_, sum_ma_;
};

using SandwichPoint = SandwichOperators::Point;

/// lower <= middle <= upper at the unit vector x, where with T = sum Phi(B_i):
///   lower  = <sum Phi(A_i) x,x><f'(T)x,x> - <f'(T)T x,x>
///   middle = <sum Phi(f(A_i)) x,x> - <f(T)x,x>
///   upper  = <sum Phi(f'(A_i)A_i) x,x> - <sum Phi(f'(A_i)) x,x><T x,x>
inline SandwichPoint verify_sandwich_pointwise(const MapFamily& family, const std::vector<HermitianMatrix>& a_list,
                                               const std::vector<HermitianMatrix>& b_list, const ScalarFunction& f,
                                               const ComplexVector& x, double tol) {
    return SandwichOperators(family, a_list, b_list, f).at(x, tol);
}

// ---------------------------------------------------------------------------
// Classical statements

enum class ClassicalStatement { furuta, lowner_heinz, alpha_beta_increasing, alpha_beta_decreasing };

inline std::string to_string(ClassicalStatement s) {
    switch (s) {
    case ClassicalStatement::furuta: return "furuta";
    case ClassicalStatement::lowner_heinz: return "lowner-heinz";
    case ClassicalStatement::alpha_beta_increasing: return "alpha-beta-increasing";
    case ClassicalStatement::alpha_beta_decreasing: return "alpha-beta-decreasing";
    }
    return "?";
}

struct ClassicalParams {
    double p = 2.0;                     // furuta, lowner-heinz
    double alpha = 1.0;                 // alpha-beta
    std::optional<ScalarFunction> f;    // alpha-beta
    std::optional<double> m;            // spectral interval; inferred when absent
    std::optional<double> big_m;
};

namespace detail {

inline void require_order(const HermitianMatrix& lower, const HermitianMatrix& upper, double tol, const char* what) {
    auto chk = loewner_leq(lower, upper, tol);
    if (!chk.holds)
        throw HypothesisViolated(std::string(what) + " fails: lambda_min of the difference is " + to_text(chk.slack));
}

inline void require_in_interval(const HermitianMatrix& x, double m, double big_m, const char* what) {
    SpectralDecomposition sd = spectral_decompose(x);
    if (sd.min() < m - kSpectrumSlack || sd.max() > big_m + kSpectrumSlack)
        throw HypothesisViolated(std::string("spectrum of ") + what + " [" + to_text(sd.min()) + "," +
                                 to_text(sd.max()) + "] is not inside [" + to_text(m) + "," + to_text(big_m) + "]");
}

inline std::pair<double, double> resolve_interval(const ClassicalParams& prm, double hull_lo, double hull_hi) {
    double m = prm.m.value_or(hull_lo);
    double big_m = prm.big_m.value_or(hull_hi);
    if (!(m > 0.0))
        throw HypothesisViolated("need 0 < m, got m = " + to_text(m));
    if (!(m < big_m))
        throw HypothesisViolated("need m < M, got [" + to_text(m) + "," + to_text(big_m) +
                                 "]; pass m and M explicitly when the spectral hull is a point");
    return {m, big_m};
}

} // namespace detail

/// furuta:                 B <= A, 0 < m <= sigma(A) <= M, p >= 1   =>  B^p <= K(m,M,p) A^p
/// lowner-heinz:           0 <= A <= B, p in [0,1]                   =>  A^p <= B^p
/// alpha-beta-increasing:  B <= A, sigma(A), sigma(B) in [m,M], f increasing convex
///                                                                   =>  f(B) <= alpha f(A) + beta I
/// alpha-beta-decreasing:  same with f decreasing convex             =>  f(A) <= alpha f(B) + beta I
/// Hypotheses are checked (order and positivity within tol) and raise HypothesisViolated.
inline Certificate verify_classical(ClassicalStatement st, const HermitianMatrix& a, const HermitianMatrix& b,
                                   const ClassicalParams& prm, double tol = kDefaultCertTol) {
    if (a.dim() != b.dim()) throw DimensionMismatch("A and B differ in dimension");
    Certificate c;
    c.statement = to_string(st);

    switch (st) {
    case ClassicalStatement::furuta: {
        if (!(prm.p >= 1.0)) throw HypothesisViolated("furuta needs p >= 1, got " + detail::to_text(prm.p));
        detail::require_order(b, a, tol, "B <= A");
        detail::require_order(HermitianMatrix::zero(b.dim()), b, tol, "B >= 0");
        SpectralDecomposition sa = spectral_decompose(a);
        auto [m, big_m] = detail::resolve_interval(prm, sa.min(), sa.max());
        detail::require_in_interval(a, m, big_m, "A");
        const ScalarFunction pw = ScalarFunction::power(prm.p);
        const double k = kantorovich(m, big_m, prm.p);
        const HermitianMatrix rhs = k * calc(pw, a);
        c.inputs = detail::digest_of({a, b}, pw.spec());
        c.constants = {{"K", k}, {"m", m}, {"M", big_m}, {"p", prm.p}};
        return detail::finish(std::move(c), rhs - calc(pw, b), rhs, tol);
    }
    case ClassicalStatement::lowner_heinz: {
        if (!(prm.p >= 0.0 && prm.p <= 1.0))
            throw HypothesisViolated("lowner-heinz needs p in [0,1], got " + detail::to_text(prm.p));
        detail::require_order(HermitianMatrix::zero(a.dim()), a, tol, "A >= 0");
        detail::require_order(a, b, tol, "A <= B");
        const double p = prm.p;
        auto pw = [p](double t) { return std::pow(std::max(t, 0.0), p); };
        const HermitianMatrix bp = calc(pw, b);
        c.inputs = detail::digest_of({a, b}, "");
        c.constants = {{"p", p}};
        return detail::finish(std::move(c), bp - calc(pw, a), bp, tol);
    }
    case ClassicalStatement::alpha_beta_increasing:
    case ClassicalStatement::alpha_beta_decreasing: {
        if (!prm.f) throw HypothesisViolated("alpha-beta statements need a function f");
        const ScalarFunction& f = *prm.f;
        const bool increasing = st == ClassicalStatement::alpha_beta_increasing;
        const Monotonicity want = increasing ? Monotonicity::increasing : Monotonicity::decreasing;
        if (f.monotonicity() != want)
            throw HypothesisViolated(f.spec() + " is " + to_string(f.monotonicity()) + ", statement needs " +
                                     to_string(want));
        detail::require_order(b, a, tol, "B <= A");
        SpectralDecomposition sa = spectral_decompose(a);
        SpectralDecomposition sb = spectral_decompose(b);
        auto [m, big_m] =
            detail::resolve_interval(prm, std::min(sa.min(), sb.min()), std::max(sa.max(), sb.max()));
        detail::require_in_interval(a, m, big_m, "A");
        detail::require_in_interval(b, m, big_m, "B");
        const double bt = beta(f, m, big_m, prm.alpha);
        const ChordCoefficients chord = chord_coeffs(f, m, big_m);
        // Clamp onto [m, M] so f sees only the hypothesis interval.
        const ScalarFunction fm = f.with_domain(Interval::closed(m, big_m));
        const HermitianMatrix& big = increasing ? a : b;
        const HermitianMatrix& small = increasing ? b : a;
        const HermitianMatrix rhs = (prm.alpha * calc(fm, big)).shifted(bt);
        c.inputs = detail::digest_of({a, b}, f.spec());
        c.constants = {{"alpha", prm.alpha}, {"beta", bt}, {"a_f", chord.a_f}, {"b_f", chord.b_f},
                       {"m", m},             {"M", big_m}};
        return detail::finish(std::move(c), rhs - calc(fm, small), rhs, tol);
    }
    }
    throw HypothesisViolated("unknown statement");
}

// ---------------------------------------------------------------------------

struct OrderViolation {
    HermitianMatrix a; // a <= b
    HermitianMatrix b;
    double witness;    // lambda_min(f(b) - f(a)) < 0
    int trial;
};

inline constexpr double kViolationThreshold = -1e-8;

/// Random pairs A <= B with spectra inside f's domain; returns the first with
/// lambda_min(f(B) - f(A)) < -1e-8, i.e. a proof that f is not operator monotone.
inline std::optional<OrderViolation> find_order_violation(const ScalarFunction& f, Index n, int trials,
                                                          std::uint64_t seed) {
    if (trials < 1) throw BadDimensions("trials must be >= 1");
    const Interval iv = sample_interval(f.domain());
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        DominatedPair pr = random_dominated_pair_in(n, iv.lo, iv.hi, rng);
        // pr.b <= pr.a, so A := pr.b and B := pr.a.
        double w = lambda_min(calc(f, pr.a) - calc(f, pr.b));
        if (w < kViolationThreshold) return OrderViolation{pr.b, pr.a, w, t};
    }
    return std::nullopt;
}

} // namespace loewner
