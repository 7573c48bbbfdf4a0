#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cforge/bft.hpp"
#include "cforge/parser.hpp"
#include "test_util.hpp"

using namespace cforge;
namespace tu = cforge::testutil;

TEST_CASE("literals, identifiers, precedence") {
    CHECK(parse_expr("0").is_zero());
    CHECK(parse_expr("S*P - P*S").is_zero());
    CHECK(parse_expr("42") == ScalarExpr(42));
    CHECK(parse_expr("1/2") == ScalarExpr(GaussRat(mpq_class(1, 2))));
    CHECK(parse_expr("2^3") == ScalarExpr(8));
    CHECK(parse_expr("S + P*K") ==
          ScalarExpr::gen(V_S) + ScalarExpr::gen(V_P) * ScalarExpr::gen(V_K));
    CHECK(parse_expr("S - P - K") ==
          ScalarExpr::gen(V_S) - ScalarExpr::gen(V_P) - ScalarExpr::gen(V_K));
    CHECK(parse_expr("S/P/K") ==
          ScalarExpr::gen(V_S) / ScalarExpr::gen(V_P) / ScalarExpr::gen(V_K));
    CHECK(parse_expr("-S^2") == -ScalarExpr::gen(V_S).pow(2));
    CHECK(parse_expr("(S + theta)^2") ==
          (ScalarExpr::gen(V_S) + ScalarExpr::gen(V_TH)).pow(2));
    CHECK(parse_expr("i*i") == ScalarExpr(-1));
    CHECK(parse_expr("R^2") == ScalarExpr(ScalarExpr::root_squared()));
    CHECK(parse_expr(" pi_theta \t* N1") ==
          ScalarExpr::gen(V_PTH) * ScalarExpr::gen(V_N1));
    // every generator name resolves
    for (int v = 0; v < NVARS; ++v)
        CHECK(parse_expr(var_name(v)) == ScalarExpr::gen(v));
}

TEST_CASE("the first-class Hamiltonian integrand") {
    ScalarExpr e =
        parse_expr("(K - 2*P*pi_theta + S*pi_theta^2) * S / (S + 2*theta)");
    CHECK(e == ScalarExpr(2) * first_class_hamiltonians().first);
}

TEST_CASE("errors carry positions") {
    CHECK_THROWS_AS(parse_expr("1/0"), parse_error);
    try {
        parse_expr("S + 1/0");
    } catch (const parse_error& err) {
        CHECK(err.position == 5);
    }
    try {
        parse_expr("S + foo");
    } catch (const parse_error& err) {
        CHECK(err.position == 4);
        CHECK(std::string(err.what()).find("foo") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expr("S +"), parse_error);
    CHECK_THROWS_AS(parse_expr("(S"), parse_error);
    CHECK_THROWS_AS(parse_expr("S^P"), parse_error);
    CHECK_THROWS_AS(parse_expr("S )"), parse_error);
    CHECK_THROWS_AS(parse_expr(""), parse_error);
    CHECK_THROWS_AS(parse_expr("S $ P"), parse_error);
    CHECK_THROWS_AS(parse_expr("S/(P - P)"), parse_error);
}

TEST_CASE("print/parse round trip on random expressions") {
    tu::Rng rng(31);
    std::vector<int> vars = {V_S, V_P, V_K, V_TH, V_PTH, V_N1, V_B1, V_N2, V_B2};
    for (int t = 0; t < 500; ++t) {
        bool with_root = t % 3 == 0;
        ScalarExpr e = tu::rand_scalar(rng, vars, with_root);
        std::string s = print_expr(e);
        INFO("expr: ", s);
        CHECK(parse_expr(s) == e);
    }
}
