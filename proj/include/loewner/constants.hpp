#pragma once

#include <cmath>

#include "loewner/detail/numeric_text.hpp"
#include "loewner/error.hpp"
#include "loewner/scalarfn.hpp"

namespace loewner {

/// The chord of f over [m, M]: a_f t + b_f agrees with f at both ends.
struct ChordCoefficients {
    double a_f;
    double b_f;
    double m;
    double big_m;

    double operator()(double t) const { return a_f * t + b_f; }
};

namespace detail {

inline void require_interval_in_domain(const ScalarFunction& f, double m, double big_m) {
    if (!(m < big_m))
        throw BadInterval("need m < M, got m=" + to_text(m) + " M=" + to_text(big_m));
    if (!Interval::closed(m, big_m).subset_of(f.domain()))
        throw DomainError("[" + to_text(m) + "," + to_text(big_m) + "] is not inside the domain " +
                          f.domain().to_string() + " of " + f.spec());
}

} // namespace detail

inline ChordCoefficients chord_coeffs(const ScalarFunction& f, double m, double big_m) {
    detail::require_interval_in_domain(f, m, big_m);
    const double fm = f.eval(m);
    const double fM = f.eval(big_m);
    const double width = big_m - m;
    return {(fM - fm) / width, (big_m * fm - m * fM) / width, m, big_m};
}

struct BetaResult {
    double value;
    double argmax;
};

/// max over t in [m, M] of a_f t + b_f - alpha f(t). The objective is concave, so its
/// maximizer is either an endpoint or the root of a_f - alpha f'(t), found by bisection.
inline BetaResult beta_with_argmax(const ScalarFunction& f, double m, double big_m, double alpha) {
    if (!(alpha > 0.0)) throw NonPositiveAlpha("alpha must be > 0, got " + detail::to_text(alpha));
    const ChordCoefficients chord = chord_coeffs(f, m, big_m);
    auto g = [&](double t) { return chord(t) - alpha * f.eval(t); };
    auto slope = [&](double t) { return chord.a_f - alpha * f.deriv(t); };

    double t_star;
    if (slope(m) <= 0.0) {
        t_star = m;
    } else if (slope(big_m) >= 0.0) {
        t_star = big_m;
    } else {
        double lo = m, hi = big_m;
        while (hi - lo > 1e-12) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (slope(mid) > 0.0 ? lo : hi) = mid;
        }
        t_star = 0.5 * (lo + hi);
    }

    BetaResult best{g(t_star), t_star};
    for (double end : {m, big_m}) {
        double v = g(end);
        if (v > best.value) best = {v, end};
    }
    return best;
}

inline double beta(const ScalarFunction& f, double m, double big_m, double alpha) {
    return beta_with_argmax(f, m, big_m, alpha).value;
}

/// Generalized Kantorovich constant K(m, M, p). At p = 0 and p = 1 the closed form is 0/0;
/// exponents within 1e-9 of either take the limit value 1.
inline double kantorovich(double m, double big_m, double p) {
    if (!(m > 0.0) || !(m < big_m))
        throw BadInterval("kantorovich needs 0 < m < M, got m=" + detail::to_text(m) + " M=" + detail::to_text(big_m));
    if (std::abs(p) <= 1e-9 || std::abs(p - 1.0) <= 1e-9) return 1.0;
    const double mp = std::pow(m, p);
    const double Mp = std::pow(big_m, p);
    const double cross = m * Mp - big_m * mp;
    const double lead = cross / ((p - 1.0) * (big_m - m));
    const double base = (p - 1.0) / p * (Mp - mp) / cross;
    return lead * std::pow(base, p);
}

} // namespace loewner
