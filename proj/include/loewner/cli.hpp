#pragma once

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "loewner/certify.hpp"
#include "loewner/constants.hpp"
#include "loewner/fuzz.hpp"
#include "loewner/gaps.hpp"
#include "loewner/io.hpp"

namespace loewner::cli {

using io::json;

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2 };

/// Everything a run depends on; identical configs give byte-identical reports.
struct RunConfig {
    std::string subcommand;

    std::string function;           // "power:2", "neglog;dom=(0,inf)", ...
    std::string domain;             // optional override, "[0,inf)" or "dom=[0,inf)"
    std::vector<std::string> a_paths;
    std::vector<std::string> b_paths;
    std::string family_path;

    std::string statement;          // certify
    std::string kind = "gamma";     // gap
    std::string suite = "all";      // fuzz

    MultistartOptions solver;
    bool oracle = false;
    int samples = 20000;

    double tol = kDefaultCertTol;
    std::optional<double> m, big_m, p, alpha;
    int dim = 2;
    int trials = 10000;
    bool trials_given = false;
    bool json = false;
};

namespace detail {

using loewner::detail::to_text;

inline ScalarFunction function_of(const RunConfig& cfg) {
    if (cfg.function.empty()) throw ParseError("--f is required");
    ScalarFunction f = ScalarFunction::parse(cfg.function);
    if (!cfg.domain.empty()) {
        std::string_view dom = cfg.domain;
        if (dom.rfind("dom=", 0) == 0) dom.remove_prefix(4);
        f = f.with_domain(Interval::parse(dom));
    }
    return f;
}

inline std::vector<HermitianMatrix> load_all(const std::vector<std::string>& paths, const char* flag) {
    if (paths.empty()) throw ParseError(std::string(flag) + " is required");
    std::vector<HermitianMatrix> out;
    for (const auto& path : paths)
        for (auto& m : io::read_matrices(path)) out.push_back(std::move(m));
    return out;
}

inline MapFamily family_of(const RunConfig& cfg, const std::vector<HermitianMatrix>& a) {
    if (!cfg.family_path.empty()) return io::read_family(cfg.family_path);
    if (a.size() != 1) throw ParseError("--family is required with more than one operand");
    return MapFamily::identity(a.front().dim());
}

inline double required(const std::optional<double>& v, const char* flag) {
    if (!v) throw ParseError(std::string(flag) + " is required");
    return *v;
}

inline json solver_json(const MultistartOptions& o) {
    return {{"restarts", o.restarts}, {"max_iter", o.max_iter}, {"step_tol", o.step_tol}, {"seed", o.seed}};
}

inline void print_certificate(const Certificate& c, std::ostream& out) {
    out << "statement: " << c.statement << "\n";
    for (const auto& [k, v] : c.constants) out << k << ": " << to_text(v) << "\n";
    out << "slack: " << to_text(c.slack) << "\n";
    out << "tol: " << to_text(c.tol) << "\n";
    if (c.solver)
        out << "solver: " << c.solver->solver << " seed=" << c.solver->seed << " restarts=" << c.solver->restarts
            << " converged=" << (c.solver->converged ? "yes" : "no") << "\n";
    out << "result: " << (c.pass ? "PASS" : "FAIL") << "\n";
}

inline int run_kantorovich(const RunConfig& cfg, std::ostream& out) {
    const double m = required(cfg.m, "--m"), big_m = required(cfg.big_m, "--M"), p = required(cfg.p, "--p");
    const double k = kantorovich(m, big_m, p);
    if (cfg.json)
        out << json{{"K", k}, {"m", m}, {"M", big_m}, {"p", p}}.dump() << "\n";
    else
        out << to_text(k) << "\n";
    return kPass;
}

inline int run_beta(const RunConfig& cfg, std::ostream& out) {
    const ScalarFunction f = function_of(cfg);
    const double m = required(cfg.m, "--m"), big_m = required(cfg.big_m, "--M");
    const double alpha = required(cfg.alpha, "--alpha");
    const BetaResult b = beta_with_argmax(f, m, big_m, alpha);
    const ChordCoefficients chord = chord_coeffs(f, m, big_m);
    if (cfg.json)
        out << json{{"beta", b.value}, {"argmax", b.argmax}, {"a_f", chord.a_f}, {"b_f", chord.b_f},
                    {"alpha", alpha},  {"m", m},             {"M", big_m},      {"f", f.spec()}}
                   .dump()
            << "\n";
    else
        out << to_text(b.value) << "\n";
    return kPass;
}

inline int run_gap(const RunConfig& cfg, std::ostream& out) {
    const ScalarFunction f = function_of(cfg);
    const GapKind kind = parse_gap_kind(cfg.kind);
    const auto a = load_all(cfg.a_paths, "--A");
    std::vector<HermitianMatrix> b;
    const bool needs_b = kind == GapKind::gamma || kind == GapKind::delta || kind == GapKind::theta;
    if (needs_b) b = load_all(cfg.b_paths, "--B");
    const MapFamily family = (kind == GapKind::gamma || kind == GapKind::chebyshev)
                                 ? MapFamily::identity(a.front().dim())
                                 : family_of(cfg, a);
    const GapProblem problem = build_gap_problem(kind, f, family, a, b);
    const GapResult r = solve_multistart(problem, cfg.solver);

    json j = io::to_json(r);
    j["kind"] = to_string(kind);
    j["f"] = f.spec();
    j["options"] = solver_json(cfg.solver);
    std::optional<GapResult> oracle;
    if (cfg.oracle) {
        BruteForceOptions bo;
        bo.samples = cfg.samples;
        bo.seed = cfg.solver.seed;
        oracle = solve_bruteforce(problem, bo);
        const double diff = r.value - oracle->value;
        j["agreement"] = {{"oracle_value", oracle->value},
                          {"difference", diff},
                          {"agree", std::abs(diff) <= 1e-5 * (1.0 + std::abs(oracle->value))},
                          {"samples", cfg.samples}};
    }
    if (cfg.json) {
        out << j.dump() << "\n";
    } else {
        out << to_string(kind) << ": " << to_text(r.value) << "\n";
        out << "converged: " << (r.converged ? "yes" : "no") << "\n";
        if (oracle) out << "oracle: " << to_text(oracle->value) << "\n";
    }
    return kPass;
}

inline int run_certify(const RunConfig& cfg, std::ostream& out) {
    const std::string& st = cfg.statement;
    Certificate c;
    if (st == "gamma-order") {
        const auto a = load_all(cfg.a_paths, "--A");
        const auto b = load_all(cfg.b_paths, "--B");
        if (a.size() != 1 || b.size() != 1) throw ParseError("gamma-order takes one A and one B");
        c = certify_order(a[0], b[0], function_of(cfg), cfg.solver, cfg.tol);
    } else if (st == "delta-forward" || st == "eta-choi" || st == "theta-reverse" || st == "vartheta-reverse") {
        const JensenKind kind = st == "delta-forward"   ? JensenKind::delta_forward
                                : st == "eta-choi"      ? JensenKind::eta_choi
                                : st == "theta-reverse" ? JensenKind::theta_reverse
                                                        : JensenKind::vartheta_reverse;
        const auto a = load_all(cfg.a_paths, "--A");
        const bool same = kind == JensenKind::eta_choi || kind == JensenKind::vartheta_reverse;
        const auto b = same ? a : load_all(cfg.b_paths, "--B");
        c = certify_jensen(kind, family_of(cfg, a), a, b, function_of(cfg), cfg.solver, cfg.tol);
    } else if (st == "furuta" || st == "lowner-heinz" || st == "alpha-beta-increasing" ||
               st == "alpha-beta-decreasing") {
        const auto a = load_all(cfg.a_paths, "--A");
        const auto b = load_all(cfg.b_paths, "--B");
        if (a.size() != 1 || b.size() != 1) throw ParseError(st + " takes one A and one B");
        ClassicalParams prm;
        prm.m = cfg.m;
        prm.big_m = cfg.big_m;
        ClassicalStatement cs;
        if (st == "furuta" || st == "lowner-heinz") {
            cs = st == "furuta" ? ClassicalStatement::furuta : ClassicalStatement::lowner_heinz;
            prm.p = required(cfg.p, "--p");
        } else {
            cs = st == "alpha-beta-increasing" ? ClassicalStatement::alpha_beta_increasing
                                               : ClassicalStatement::alpha_beta_decreasing;
            prm.f = function_of(cfg);
            prm.alpha = cfg.alpha.value_or(1.0);
        }
        c = verify_classical(cs, a[0], b[0], prm, cfg.tol);
    } else {
        throw ParseError("unknown statement '" + st +
                         "' (gamma-order, delta-forward, eta-choi, theta-reverse, vartheta-reverse, furuta, "
                         "lowner-heinz, alpha-beta-increasing, alpha-beta-decreasing)");
    }
    if (cfg.json)
        out << io::to_json(c).dump() << "\n";
    else
        print_certificate(c, out);
    return c.pass ? kPass : kFail;
}

inline int run_violation(const RunConfig& cfg, std::ostream& out) {
    const ScalarFunction f = function_of(cfg);
    auto v = find_order_violation(f, cfg.dim, cfg.trials, cfg.solver.seed);
    if (cfg.json) {
        json j{{"f", f.spec()}, {"dim", cfg.dim}, {"trials", cfg.trials}, {"seed", cfg.solver.seed},
               {"found", v.has_value()}};
        if (v) {
            j["witness"] = v->witness;
            j["trial"] = v->trial;
            j["A"] = io::to_json(v->a);
            j["B"] = io::to_json(v->b);
        }
        out << j.dump() << "\n";
    } else if (v) {
        out << "violation found at trial " << v->trial << ": lambda_min(f(B) - f(A)) = " << to_text(v->witness)
            << " with A <= B\n";
    } else {
        out << "no violation in " << cfg.trials << " trials\n";
    }
    return kPass;
}

inline int run_fuzz(const RunConfig& cfg, std::ostream& out) {
    const int trials = cfg.trials_given ? cfg.trials : 20;
    const fuzz::SuiteTable table = fuzz::run_suites(cfg.suite, trials, cfg.solver.seed, cfg.solver);
    if (cfg.json) {
        json suites = json::array();
        for (const auto& s : table.suites)
            suites.push_back({{"suite", s.name},
                              {"trials", s.trials},
                              {"passed", s.passed},
                              {"failed", s.failed},
                              {"worst_margin", s.worst_margin}});
        out << json{{"seed", table.seed}, {"trials", trials}, {"suites", suites}, {"pass", table.ok()}}.dump() << "\n";
    } else {
        out << std::left << std::setw(12) << "suite" << std::setw(10) << "passed" << std::setw(10) << "failed"
            << "worst margin\n";
        for (const auto& s : table.suites)
            out << std::setw(12) << s.name << std::setw(10) << (std::to_string(s.passed) + "/" + std::to_string(s.trials))
                << std::setw(10) << s.failed << to_text(s.worst_margin) << "\n";
        out << (table.ok() ? "all suites pass" : "FAILURES") << "\n";
    }
    return table.ok() ? kPass : kFail;
}

} // namespace detail

/// Dispatches on cfg.subcommand. Returns 0 on pass, 1 on a failed certificate or suite,
/// 2 on bad input or violated hypotheses (with a diagnostic on `err`).
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.subcommand == "kantorovich") return detail::run_kantorovich(cfg, out);
        if (cfg.subcommand == "beta") return detail::run_beta(cfg, out);
        if (cfg.subcommand == "gap") return detail::run_gap(cfg, out);
        if (cfg.subcommand == "certify") return detail::run_certify(cfg, out);
        if (cfg.subcommand == "violation") return detail::run_violation(cfg, out);
        if (cfg.subcommand == "fuzz") return detail::run_fuzz(cfg, out);
        err << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
    }
    return kInputError;
}

} // namespace loewner::cli
