// Command-line front end: certify, gap, kantorovich, beta, violation, fuzz.

#include <iostream>

#include "CLI11.hpp"

#include "loewner/cli.hpp"

int main(int argc, char** argv) {
    using loewner::cli::RunConfig;
    RunConfig cfg;

    CLI::App app{"Operator-order constants and eigenvalue-slack certificates for Hermitian matrices"};
    app.require_subcommand(1);

    auto add_function = [&](CLI::App* sub) {
        sub->add_option("--f", cfg.function, "function: power:P | exp | neglog | affine:A,B [;dom=...]");
        sub->add_option("--dom", cfg.domain, "domain override, e.g. \"[0,inf)\"");
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--restarts", cfg.solver.restarts, "multistart restarts")->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", cfg.solver.max_iter, "iterations per restart")->check(CLI::PositiveNumber);
        sub->add_option("--step-tol", cfg.solver.step_tol, "tangent-gradient tolerance");
        sub->add_option("--seed", cfg.solver.seed, "random seed");
    };
    auto add_interval = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m, "lower spectral bound m");
        sub->add_option("--M", cfg.big_m, "upper spectral bound M");
    };

    auto* kant = app.add_subcommand("kantorovich", "generalized Kantorovich constant K(m, M, p)");
    add_interval(kant);
    kant->add_option("--p", cfg.p, "exponent")->required();

    auto* beta = app.add_subcommand("beta", "beta = max_[m,M] a_f t + b_f - alpha f(t)");
    add_function(beta);
    add_interval(beta);
    beta->add_option("--alpha", cfg.alpha, "alpha > 0")->required();

    auto* gap = app.add_subcommand("gap", "maximize a gap objective over the unit sphere");
    gap->add_option("--kind", cfg.kind, "gamma | delta | eta | theta | vartheta | chebyshev");
    add_function(gap);
    gap->add_option("--A", cfg.a_paths, "matrix JSON file(s)");
    gap->add_option("--B", cfg.b_paths, "matrix JSON file(s)");
    gap->add_option("--family", cfg.family_path, "map family JSON file");
    add_solver(gap);
    gap->add_flag("--oracle", cfg.oracle, "also run the brute-force oracle");
    gap->add_option("--samples", cfg.samples, "oracle samples")->check(CLI::PositiveNumber);

    auto* cert = app.add_subcommand("certify", "certify an operator inequality by eigenvalue slack");
    cert->add_option("--statement", cfg.statement, "statement tag")->required();
    add_function(cert);
    cert->add_option("--A", cfg.a_paths, "matrix JSON file(s)");
    cert->add_option("--B", cfg.b_paths, "matrix JSON file(s)");
    cert->add_option("--family", cfg.family_path, "map family JSON file");
    cert->add_option("--tol", cfg.tol, "absolute slack tolerance before scaling");
    cert->add_option("--p", cfg.p, "exponent (furuta, lowner-heinz)");
    cert->add_option("--alpha", cfg.alpha, "alpha (alpha-beta statements)");
    add_interval(cert);
    add_solver(cert);

    auto* viol = app.add_subcommand("violation", "search for A <= B with f(A) not <= f(B)");
    add_function(viol);
    viol->add_option("--n", cfg.dim, "matrix dimension")->check(CLI::PositiveNumber);
    viol->add_option("--trials", cfg.trials, "random pairs to try")->check(CLI::PositiveNumber);
    viol->add_option("--seed", cfg.solver.seed, "random seed");

    auto* fz = app.add_subcommand("fuzz", "run property suites");
    fz->add_option("--suite", cfg.suite,
                   "all | gradient | sandwich | chebyshev | gamma | jensen | classical | violation | agreement");
    auto* trials_opt = fz->add_option("--trials", cfg.trials, "instances per suite")->check(CLI::PositiveNumber);
    add_solver(fz);

    for (auto* sub : {kant, beta, gap, cert, viol, fz}) sub->add_flag("--json", cfg.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : loewner::cli::kInputError;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.trials_given = trials_opt->count() > 0;
    return loewner::cli::run(cfg, std::cout, std::cerr);
}
