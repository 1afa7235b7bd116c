#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "loewner/hermitian.hpp"
#include "loewner/maps.hpp"
#include "loewner/scalarfn.hpp"

namespace loewner {

/// Which additive order constant a gap problem computes.
///   gamma      f(B) <= f(A) + gamma I                    single operators
///   delta      f(sum Phi(B_i)) <= sum Phi(f(A_i)) + delta I
///   eta        delta with B_i = A_i
///   theta      sum Phi(f(A_i)) <= f(sum Phi(B_i)) + theta I
///   vartheta   theta with B_i = A_i
///   chebyshev  <f'(A)A x,x> - <Ax,x><f'(A)x,x>, nonnegative for convex f
enum class GapKind { gamma, delta, eta, theta, vartheta, chebyshev };

inline constexpr GapKind kAllGapKinds[] = {GapKind::gamma, GapKind::delta,    GapKind::eta,
                                           GapKind::theta, GapKind::vartheta, GapKind::chebyshev};

inline std::string to_string(GapKind k) {
    switch (k) {
    case GapKind::gamma: return "gamma";
    case GapKind::delta: return "delta";
    case GapKind::eta: return "eta";
    case GapKind::theta: return "theta";
    case GapKind::vartheta: return "vartheta";
    case GapKind::chebyshev: return "chebyshev";
    }
    return "?";
}

inline GapKind parse_gap_kind(const std::string& s) {
    for (GapKind k : kAllGapKinds)
        if (to_string(k) == s) return k;
    throw ParseError("unknown gap kind '" + s + "' (gamma, delta, eta, theta, vartheta, chebyshev)");
}

/// F(x) = <Cx,x> - <Sx,x><Dx,x> on the complex unit sphere.
struct GapProblem {
    HermitianMatrix c;
    HermitianMatrix s;
    HermitianMatrix d;
    GapKind kind = GapKind::gamma;

    GapProblem(HermitianMatrix c_, HermitianMatrix s_, HermitianMatrix d_, GapKind kind_)
        : c(std::move(c_)), s(std::move(s_)), d(std::move(d_)), kind(kind_) {
        if (c.dim() != s.dim() || c.dim() != d.dim())
            throw DimensionMismatch("gap problem matrices must share one dimension");
        if (c.dim() < 1) throw BadDimensions("gap problem needs dimension >= 1");
    }

    Index dim() const { return c.dim(); }

    double objective(const ComplexVector& x) const { return c.expect(x) - s.expect(x) * d.expect(x); }

    /// Euclidean gradient on C^k viewed as R^2k: 2Cx - 2<Dx,x>Sx - 2<Sx,x>Dx.
    ComplexVector gradient(const ComplexVector& x) const {
        const ComplexVector sx = s.matrix() * x;
        const ComplexVector dx = d.matrix() * x;
        const double qs = x.dot(sx).real();
        const double qd = x.dot(dx).real();
        return 2.0 * (c.matrix() * x - qd * sx - qs * dx);
    }

    /// Scale used to seed step sizes.
    double scale() const { return c.frobenius_norm() + 2.0 * s.frobenius_norm() * d.frobenius_norm() + 1e-300; }
};

struct GapResult {
    double value = 0.0;
    ComplexVector maximizer;
    std::string solver;
    int iterations = 0; // of the winning restart (or refinement passes for the oracle)
    int restarts = 0;
    bool converged = true;
};

namespace detail {

inline void require_operands(const ScalarFunction& f, const std::vector<HermitianMatrix>& ops) {
    for (const auto& op : ops) checked_spectrum(f, spectral_decompose(op).eigenvalues);
}

} // namespace detail

/// C = f'(B) B, S = A, D = f'(B).
inline GapProblem gamma_problem(const ScalarFunction& f, const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("gamma: A and B differ in dimension");
    checked_spectrum(f, spectral_decompose(a).eigenvalues);
    Calculus cb = calculus(f, b);
    return GapProblem(cb.moment, a, cb.derivative, GapKind::gamma);
}

/// C = f'(A) A, S = A, D = f'(A).
inline GapProblem chebyshev_problem(const ScalarFunction& f, const HermitianMatrix& a) {
    Calculus ca = calculus(f, a);
    return GapProblem(ca.moment, a, ca.derivative, GapKind::chebyshev);
}

/// Builds the problem named by `kind`. gamma and chebyshev take the single operators
/// a_list[0] (and b_list[0]) directly and ignore `family`; eta and vartheta ignore b_list.
inline GapProblem build_gap_problem(GapKind kind, const ScalarFunction& f, const MapFamily& family,
                                    const std::vector<HermitianMatrix>& a_list,
                                    const std::vector<HermitianMatrix>& b_list) {
    if (kind == GapKind::gamma) {
        if (a_list.size() != 1 || b_list.size() != 1)
            throw DimensionMismatch("gamma takes exactly one A and one B");
        return gamma_problem(f, a_list[0], b_list[0]);
    }
    if (kind == GapKind::chebyshev) {
        if (a_list.size() != 1) throw DimensionMismatch("chebyshev takes exactly one A");
        return chebyshev_problem(f, a_list[0]);
    }

    auto unital = check_unital_family(family);
    if (!unital.unital)
        throw NotUnitalFamily("sum_i Phi_i(I) differs from I by " + detail::to_text(unital.defect) + " (Frobenius)");

    const bool same = kind == GapKind::eta || kind == GapKind::vartheta;
    const std::vector<HermitianMatrix>& bs = same ? a_list : b_list;
    detail::require_operands(f, a_list);
    detail::require_operands(f, bs);

    const HermitianMatrix t = family.apply_sum(bs);
    if (kind == GapKind::delta || kind == GapKind::eta) {
        Calculus ct = calculus(f, t);
        return GapProblem(ct.moment, family.apply_sum(a_list), ct.derivative, kind);
    }
    std::vector<HermitianMatrix> moments, derivs;
    for (const auto& a : a_list) {
        Calculus ca = calculus(f, a);
        moments.push_back(ca.moment);
        derivs.push_back(ca.derivative);
    }
    checked_spectrum(f, spectral_decompose(t).eigenvalues);
    return GapProblem(family.apply_sum(moments), family.apply_sum(derivs), t, kind);
}

// ---------------------------------------------------------------------------
// Solvers

struct MultistartOptions {
    int restarts = 64;
    int max_iter = 500;
    double step_tol = 1e-10;
    std::uint64_t seed = 42;
    int threads = 0; // 0: LOEWNER_CERT_THREADS or hardware concurrency
};

struct BruteForceOptions {
    int samples = 20000;
    std::uint64_t seed = 42;
    int grid = 2000;  // per axis, dimension 2 only
    int refine = 10;  // best candidates polished by coordinate ascent
};

/// Worker count for the restart pool, capped by LOEWNER_CERT_THREADS when set.
inline int restart_pool_size(int requested, int restarts) {
    int n = requested;
    if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("LOEWNER_CERT_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(1, std::min(n, restarts));
}

/// Independent engine per (seed, stream) so restarts do not depend on execution order.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
    return Rng(seq);
}

namespace detail {

struct AscentRun {
    double value;
    ComplexVector x;
    int iterations;
    bool converged;
};

inline ComplexVector tangent(const ComplexVector& x, const ComplexVector& g) {
    return g - x.dot(g).real() * x;
}

/// Riemannian gradient ascent from x0: tangent-projected gradient, Barzilai-Borwein trial
/// step, Armijo backtracking, normalization retraction.
inline AscentRun sphere_ascent(const GapProblem& p, ComplexVector x, int max_iter, double step_tol) {
    double fx = p.objective(x);
    ComplexVector gt = tangent(x, p.gradient(x));
    double step = 1.0 / p.scale();
    ComplexVector prev_x, prev_gt;
    bool have_prev = false;

    int it = 0;
    bool converged = false;
    for (; it < max_iter; ++it) {
        const double gnorm = gt.norm();
        if (gnorm <= step_tol) {
            converged = true;
            break;
        }
        double trial = 2.0 * step;
        if (have_prev) {
            const ComplexVector sv = x - prev_x;
            const ComplexVector yv = gt - prev_gt;
            const double sy = std::abs(sv.dot(yv).real());
            if (sy > 0.0) trial = sv.squaredNorm() / sy;
        }
        trial = std::clamp(trial, 1e-12 / p.scale(), 1e6 / p.scale());

        bool accepted = false;
        ComplexVector y;
        double fy = 0.0;
        for (int bt = 0; bt < 80; ++bt) {
            y = x + trial * gt;
            y /= y.norm();
            fy = p.objective(y);
            if (fy >= fx + 1e-4 * trial * gnorm * gnorm) {
                accepted = true;
                break;
            }
            trial *= 0.5;
        }
        if (!accepted) break; // no ascent representable in double precision

        prev_x = x;
        prev_gt = gt;
        have_prev = true;
        x = std::move(y);
        fx = fy;
        step = trial;
        gt = tangent(x, p.gradient(x));
    }
    if (!converged && gt.norm() <= step_tol) converged = true;
    return {p.objective(x), x, it, converged};
}

} // namespace detail

/// Multistart projected-gradient ascent. Restart r starts from a Gaussian direction drawn
/// from stream_rng(seed, r); the winner is the largest value, ties going to the lowest
/// restart index, so the result does not depend on the thread count.
inline GapResult solve_multistart(const GapProblem& p, const MultistartOptions& opt = {}) {
    if (opt.restarts < 1) throw BadDimensions("restarts must be >= 1");
    const Index k = p.dim();
    std::vector<detail::AscentRun> runs(static_cast<std::size_t>(opt.restarts));

    auto run_one = [&](int r) {
        Rng rng = stream_rng(opt.seed, static_cast<std::uint64_t>(r));
        runs[static_cast<std::size_t>(r)] = detail::sphere_ascent(p, random_unit_vector(k, rng), opt.max_iter, opt.step_tol);
    };

    const int workers = restart_pool_size(opt.threads, opt.restarts);
    if (workers == 1) {
        for (int r = 0; r < opt.restarts; ++r) run_one(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r = next++; r < opt.restarts; r = next++) run_one(r);
            });
        for (auto& th : pool) th.join();
    }

    std::size_t best = 0;
    bool any_converged = false;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        if (runs[r].value > runs[best].value) best = r;
        any_converged = any_converged || runs[r].converged;
    }
    GapResult out;
    out.value = runs[best].value;
    out.maximizer = runs[best].x;
    out.solver = "multistart";
    out.iterations = runs[best].iterations;
    out.restarts = opt.restarts;
    out.converged = any_converged;
    return out;
}

namespace detail {

/// Derivative-free polish: try +-h and +-ih on every coordinate, renormalize, keep
/// improvements; halve h after a pass without one.
inline int coordinate_ascent(const GapProblem& p, ComplexVector& x, double& fx) {
    const Complex dirs[] = {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)};
    double h = 0.1;
    int passes = 0;
    while (h > 1e-11 && passes < 200000) {
        ++passes;
        bool improved = false;
        for (Index i = 0; i < x.size(); ++i) {
            for (const Complex& dir : dirs) {
                ComplexVector y = x;
                y(i) += h * dir;
                y /= y.norm();
                double fy = p.objective(y);
                if (fy > fx) {
                    x = std::move(y);
                    fx = fy;
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    return passes;
}

struct Candidate {
    double value;
    ComplexVector x;
};

/// Exhaustive sweep of x = (cos t, e^{i phi} sin t), t in [0, pi/2], phi in [0, 2 pi).
inline Candidate grid_sweep_2d(const GapProblem& p, int n) {
    auto coeffs = [](const HermitianMatrix& m) {
        return std::array<Complex, 3>{m(0, 0), m(1, 1), m(0, 1)};
    };
    const auto cc = coeffs(p.c), sc = coeffs(p.s), dc = coeffs(p.d);
    const double pi = std::numbers::pi;

    std::vector<double> cos2(n), sin2(n), cs(n);
    for (int i = 0; i < n; ++i) {
        double t = n > 1 ? 0.5 * pi * i / (n - 1) : 0.0;
        cos2[i] = std::cos(t) * std::cos(t);
        sin2[i] = std::sin(t) * std::sin(t);
        cs[i] = std::cos(t) * std::sin(t);
    }
    Candidate best{-kInf, ComplexVector()};
    int best_i = 0, best_j = 0;
    for (int j = 0; j < n; ++j) {
        const double phi = 2.0 * pi * j / n;
        const Complex e(std::cos(phi), std::sin(phi));
        // <Mx,x> = m00 cos^2 + m11 sin^2 + 2 Re(m01 e^{i phi}) cos sin
        const double cr = 2.0 * (cc[2] * e).real();
        const double sr = 2.0 * (sc[2] * e).real();
        const double dr = 2.0 * (dc[2] * e).real();
        for (int i = 0; i < n; ++i) {
            const double qc = cc[0].real() * cos2[i] + cc[1].real() * sin2[i] + cr * cs[i];
            const double qs = sc[0].real() * cos2[i] + sc[1].real() * sin2[i] + sr * cs[i];
            const double qd = dc[0].real() * cos2[i] + dc[1].real() * sin2[i] + dr * cs[i];
            const double v = qc - qs * qd;
            if (v > best.value) {
                best.value = v;
                best_i = i;
                best_j = j;
            }
        }
    }
    const double t = n > 1 ? 0.5 * pi * best_i / (n - 1) : 0.0;
    const double phi = 2.0 * pi * best_j / n;
    best.x = ComplexVector(2);
    best.x(0) = std::cos(t);
    best.x(1) = std::polar(std::sin(t), phi);
    best.value = p.objective(best.x);
    return best;
}

} // namespace detail

/// Independent lower-bound oracle: random sphere samples (plus a full grid sweep in
/// dimension 2), the best few polished by derivative-free coordinate ascent. Every value
/// returned is F at an actual unit vector.
inline GapResult solve_bruteforce(const GapProblem& p, const BruteForceOptions& opt = {}) {
    if (opt.samples < 1) throw BadDimensions("samples must be >= 1");
    const Index k = p.dim();
    GapResult out;
    out.solver = "bruteforce";
    out.restarts = opt.samples;

    if (k == 1) {
        out.maximizer = ComplexVector::Ones(1);
        out.value = p.objective(out.maximizer);
        return out;
    }

    Rng rng(opt.seed);
    const std::size_t keep = static_cast<std::size_t>(std::max(1, opt.refine));
    std::vector<detail::Candidate> top;
    auto offer = [&](detail::Candidate c) {
        if (top.size() < keep) {
            top.push_back(std::move(c));
        } else {
            auto worst = std::min_element(top.begin(), top.end(),
                                          [](const auto& a, const auto& b) { return a.value < b.value; });
            if (c.value > worst->value) *worst = std::move(c);
        }
    };
    for (int i = 0; i < opt.samples; ++i) {
        ComplexVector x = random_unit_vector(k, rng);
        double v = p.objective(x);
        offer({v, std::move(x)});
    }
    if (k == 2 && opt.grid > 0) offer(detail::grid_sweep_2d(p, opt.grid));

    // Stable order for deterministic tie-breaks.
    std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
    out.value = -kInf;
    for (auto& cand : top) {
        int passes = detail::coordinate_ascent(p, cand.x, cand.value);
        if (cand.value > out.value) {
            out.value = cand.value;
            out.maximizer = cand.x;
            out.iterations = passes;
        }
    }
    out.value = p.objective(out.maximizer);
    return out;
}

} // namespace loewner
