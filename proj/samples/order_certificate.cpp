// t^3 is monotone but not operator monotone: find a pair A <= B with A^3 not <= B^3,
// then repair the order with an additive constant gamma and certify it.

#include <cstdio>

#include "loewner/loewner.hpp"

int main() {
    using namespace loewner;
    const auto cube = ScalarFunction::power(3);

    auto v = find_order_violation(cube, 2, 10000, 42);
    if (!v) {
        std::puts("no violation found");
        return 1;
    }
    std::printf("trial %d: lambda_min(B^3 - A^3) = %.6g\n", v->trial, v->witness);

    // f(A) <= f(B) + gamma I, i.e. certify_order with the roles (B, A).
    Certificate c = certify_order(v->b, v->a, cube);
    std::printf("gamma = %.6g, slack = %.3g, %s\n", *c.constant("gamma"), c.slack, c.pass ? "PASS" : "FAIL");

    ClassicalParams prm;
    prm.p = 3.0;
    auto k = verify_classical(ClassicalStatement::furuta, v->b, v->a, prm);
    std::printf("furuta: K = %.6g, slack = %.3g, %s\n", *k.constant("K"), k.slack, k.pass ? "PASS" : "FAIL");
    return c.pass && k.pass ? 0 : 1;
}
