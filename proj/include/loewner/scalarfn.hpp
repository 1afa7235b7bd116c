#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "loewner/detail/numeric_text.hpp"
#include "loewner/error.hpp"

namespace loewner {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A real interval; either end may be infinite (and is then always open).
struct Interval {
    double lo = -kInf;
    double hi = kInf;
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval real_line() { return {}; }
    static Interval positive() { return {0.0, kInf, false, false}; }
    static Interval nonnegative() { return {0.0, kInf, true, false}; }
    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }

    bool contains(double t) const {
        if (std::isnan(t)) return false;
        bool above = lo_closed ? t >= lo : t > lo;
        bool below = hi_closed ? t <= hi : t < hi;
        return above && below;
    }

    bool subset_of(const Interval& other) const {
        bool lo_ok = lo > other.lo || (lo == other.lo && (other.lo_closed || !lo_closed));
        bool hi_ok = hi < other.hi || (hi == other.hi && (other.hi_closed || !hi_closed));
        return lo_ok && hi_ok;
    }

    bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }

    std::string to_string() const {
        return std::string(lo_closed ? "[" : "(") + detail::to_text(lo) + "," + detail::to_text(hi) +
               (hi_closed ? "]" : ")");
    }

    /// Parses "(0,inf)", "[0,inf)", "[1,3]", "(-inf,inf)".
    static Interval parse(std::string_view text) {
        text = detail::trim(text);
        if (text.size() < 5) throw ParseError("bad interval '" + std::string(text) + "'");
        char open = text.front();
        char close = text.back();
        if ((open != '(' && open != '[') || (close != ')' && close != ']'))
            throw ParseError("bad interval brackets in '" + std::string(text) + "'");
        auto body = text.substr(1, text.size() - 2);
        auto comma = body.find(',');
        if (comma == std::string_view::npos) throw ParseError("interval needs lo,hi: '" + std::string(text) + "'");
        auto lo = detail::parse_double(body.substr(0, comma));
        auto hi = detail::parse_double(body.substr(comma + 1));
        if (!lo || !hi) throw ParseError("bad interval endpoint in '" + std::string(text) + "'");
        Interval iv{*lo, *hi, open == '[', close == ']'};
        if (std::isinf(iv.lo) && iv.lo_closed) throw ParseError("infinite endpoint cannot be closed");
        if (std::isinf(iv.hi) && iv.hi_closed) throw ParseError("infinite endpoint cannot be closed");
        if (iv.empty()) throw BadInterval("empty interval " + iv.to_string());
        return iv;
    }
};

enum class Family { power, exp, neglog, affine };
enum class Monotonicity { increasing, decreasing, neither };

inline std::string to_string(Monotonicity m) {
    switch (m) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::decreasing: return "decreasing";
    default: return "neither";
    }
}

/// A differentiable convex function on an interval, from a closed-form family:
///   power(p)    t^p        p >= 1 on a subset of [0,inf), or p <= 0 on a subset of (0,inf)
///   exp         e^t        anywhere
///   neglog      -ln t      subset of (0,inf)
///   affine(a,b) a t + b    anywhere
/// Derivatives at closed finite endpoints are the one-sided limits of the closed form.
class ScalarFunction {
public:
    static ScalarFunction power(double p) {
        return power(p, p >= 1.0 ? Interval::nonnegative() : Interval::positive());
    }
    static ScalarFunction power(double p, Interval dom) { return ScalarFunction(Family::power, p, 0.0, dom); }
    static ScalarFunction exp(Interval dom = Interval::real_line()) {
        return ScalarFunction(Family::exp, 0.0, 0.0, dom);
    }
    static ScalarFunction neglog(Interval dom = Interval::positive()) {
        return ScalarFunction(Family::neglog, 0.0, 0.0, dom);
    }
    static ScalarFunction affine(double a, double b, Interval dom = Interval::real_line()) {
        return ScalarFunction(Family::affine, a, b, dom);
    }

    /// Parses "power:3", "exp", "neglog", "affine:2,-1", each optionally followed by
    /// ";dom=(0,inf)" (a space also works as separator).
    static ScalarFunction parse(std::string_view spec);

    /// Same family and parameters, restricted to `dom`.
    ScalarFunction with_domain(Interval dom) const { return ScalarFunction(family_, a_, b_, dom); }

    Family family() const { return family_; }
    double exponent() const { return a_; }
    double slope() const { return a_; }
    double intercept() const { return b_; }
    const Interval& domain() const { return domain_; }

    double eval(double t) const {
        require_in_domain(t);
        return eval_raw(t);
    }
    double operator()(double t) const { return eval(t); }

    double deriv(double t) const {
        require_in_domain(t);
        return deriv_raw(t);
    }

    /// t * f'(t), the function whose calculus gives f'(A) A.
    double moment(double t) const { return t * deriv(t); }

    // Unchecked variants for callers that already validated (and possibly clamped) t.
    double eval_raw(double t) const {
        switch (family_) {
        case Family::power: return a_ == 0.0 ? 1.0 : std::pow(t, a_);
        case Family::exp: return std::exp(t);
        case Family::neglog: return -std::log(t);
        case Family::affine: return a_ * t + b_;
        }
        return 0.0;
    }
    double deriv_raw(double t) const {
        switch (family_) {
        case Family::power:
            if (a_ == 0.0) return 0.0;
            if (a_ == 1.0) return 1.0;
            return a_ * std::pow(t, a_ - 1.0);
        case Family::exp: return std::exp(t);
        case Family::neglog: return -1.0 / t;
        case Family::affine: return a_;
        }
        return 0.0;
    }

    /// Derived from the sign of f' at the domain ends (f' is nondecreasing).
    Monotonicity monotonicity() const {
        double lowest = deriv_limit(domain_.lo);
        double highest = deriv_limit(domain_.hi);
        if (lowest >= 0.0) return Monotonicity::increasing;
        if (highest <= 0.0) return Monotonicity::decreasing;
        return Monotonicity::neither;
    }

    std::string spec() const {
        std::string head;
        switch (family_) {
        case Family::power: head = "power:" + detail::to_text(a_); break;
        case Family::exp: head = "exp"; break;
        case Family::neglog: head = "neglog"; break;
        case Family::affine: head = "affine:" + detail::to_text(a_) + "," + detail::to_text(b_); break;
        }
        return head + ";dom=" + domain_.to_string();
    }

private:
    ScalarFunction(Family family, double a, double b, Interval dom) : family_(family), a_(a), b_(b), domain_(dom) {
        validate();
    }

    void validate() const {
        if (domain_.empty()) throw BadInterval("empty domain " + domain_.to_string());
        if (!std::isfinite(a_) || !std::isfinite(b_)) throw DomainError("function parameters must be finite");
        switch (family_) {
        case Family::power:
            if (a_ > 0.0 && a_ < 1.0)
                throw DomainError("power(p) with 0 < p < 1 is concave; admitted exponents are p >= 1 or p <= 0");
            if (a_ >= 1.0 && !domain_.subset_of(Interval::nonnegative()))
                throw DomainError("power(p), p >= 1, needs a domain inside [0,inf), got " + domain_.to_string());
            if (a_ <= 0.0 && !domain_.subset_of(Interval::positive()))
                throw DomainError("power(p), p <= 0, needs a domain inside (0,inf), got " + domain_.to_string());
            break;
        case Family::neglog:
            if (!domain_.subset_of(Interval::positive()))
                throw DomainError("neglog needs a domain inside (0,inf), got " + domain_.to_string());
            break;
        case Family::exp:
        case Family::affine: break;
        }
    }

    void require_in_domain(double t) const {
        if (!domain_.contains(t))
            throw DomainError("t = " + detail::to_text(t) + " outside domain " + domain_.to_string());
    }

    // Limit of f' at an end of the domain (possibly infinite).
    double deriv_limit(double t) const {
        if (std::isfinite(t)) {
            if (family_ == Family::power && t == 0.0 && a_ < 0.0) return -kInf;
            if (family_ == Family::neglog && t == 0.0) return -kInf;
            return deriv_raw(t);
        }
        switch (family_) {
        case Family::exp: return t > 0 ? kInf : 0.0;
        case Family::affine: return a_;
        case Family::neglog: return 0.0; // t -> +inf
        case Family::power:
            if (a_ == 0.0) return 0.0;
            if (a_ < 0.0) return 0.0;
            return a_ == 1.0 ? 1.0 : kInf;
        }
        return 0.0;
    }

    Family family_;
    double a_;
    double b_;
    Interval domain_;
};

inline ScalarFunction ScalarFunction::parse(std::string_view spec) {
    spec = detail::trim(spec);
    std::string_view head = spec;
    std::string_view dom_text;
    auto sep = spec.find_first_of("; ");
    if (sep != std::string_view::npos) {
        head = spec.substr(0, sep);
        auto rest = detail::trim(spec.substr(sep + 1));
        if (rest.rfind("dom=", 0) != 0) throw ParseError("expected 'dom=' after function spec, got '" + std::string(rest) + "'");
        dom_text = rest.substr(4);
    }
    std::string_view name = head;
    std::string_view args;
    auto colon = head.find(':');
    if (colon != std::string_view::npos) {
        name = head.substr(0, colon);
        args = head.substr(colon + 1);
    }

    auto make = [&]() -> ScalarFunction {
        if (name == "power") {
            auto p = detail::parse_double(args);
            if (!p) throw ParseError("power needs an exponent, e.g. power:2");
            return power(*p);
        }
        if (name == "exp") {
            if (!args.empty()) throw ParseError("exp takes no parameters");
            return exp();
        }
        if (name == "neglog") {
            if (!args.empty()) throw ParseError("neglog takes no parameters");
            return neglog();
        }
        if (name == "affine") {
            auto comma = args.find(',');
            if (comma == std::string_view::npos) throw ParseError("affine needs a,b, e.g. affine:2,-1");
            auto a = detail::parse_double(args.substr(0, comma));
            auto b = detail::parse_double(args.substr(comma + 1));
            if (!a || !b) throw ParseError("bad affine coefficients '" + std::string(args) + "'");
            return affine(*a, *b);
        }
        throw ParseError("unknown function family '" + std::string(name) + "'");
    };

    ScalarFunction f = make();
    if (!dom_text.empty()) f = f.with_domain(Interval::parse(dom_text));
    return f;
}

/// f(s) + f'(s)(t - s) <= f(t) + tol.
inline bool check_gradient_inequality(const ScalarFunction& f, double s, double t, double tol) {
    double lhs = f.eval(s) + f.deriv(s) * (t - s);
    return lhs <= f.eval(t) + tol;
}

} // namespace loewner
