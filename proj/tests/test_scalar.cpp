#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace cforge;
using testutil::Rng;

namespace {
const ScalarExpr S = ScalarExpr::gen(V_S);
const ScalarExpr P = ScalarExpr::gen(V_P);
const ScalarExpr K = ScalarExpr::gen(V_K);
const ScalarExpr TH = ScalarExpr::gen(V_TH);
const ScalarExpr PTH = ScalarExpr::gen(V_PTH);
}  // namespace

TEST_CASE("canonical simplifications") {
    CHECK((S * S * P * ScalarExpr(2)) / (S * ScalarExpr(2)) == S * P);
    CHECK((S - S).is_zero());
    CHECK(S * S.inv() == ScalarExpr(1));
    CHECK((P * P - P.pow(2)).is_zero());
    CHECK(K * S == S * K);
}

TEST_CASE("root reduction R^2 = (S+2theta)/S") {
    ScalarExpr R = ScalarExpr::root();
    CHECK(R * R == (S + TH * ScalarExpr(2)) / S);
    CHECK(R.pow(4) == ((S + TH * ScalarExpr(2)) / S).pow(2));
    CHECK(R.pow(3) == R * (S + TH * ScalarExpr(2)) / S);
    // 1/R = R*S/(S+2theta)
    CHECK(R.inv() == R * S / (S + TH * ScalarExpr(2)));
}

TEST_CASE("division guard") {
    CHECK_THROWS_AS(S / ScalarExpr(0), division_by_zero);
    CHECK_THROWS_AS((S - S).inv(), division_by_zero);
}

TEST_CASE("dot contraction") {
    VectorExpr q = VectorExpr::q_vec(), p = VectorExpr::p_vec();
    CHECK(dot(q, q) == S);
    CHECK(dot(q, p) == P);
    VectorExpr w = p - q.scaled(PTH);
    CHECK(dot(w, w) == K - ScalarExpr(2) * P * PTH + S * PTH * PTH);
}

TEST_CASE("evaluation at concrete points") {
    PointAssignment pt;
    pt.d0 = 3;
    pt.q = {1, 2, 2};
    pt.p = {0, 0, 0};
    CHECK(S.evaluate(pt) == GaussRat(mpq_class(9)));

    PointAssignment pt2;
    pt2.d0 = 3;
    pt2.q = {1, 0, 0};
    pt2.p = {3, 5, 7};
    CHECK(P.evaluate(pt2) == GaussRat(mpq_class(3)));

    // R at q=(1,0,0), theta=3/2 -> sqrt((1+3)/1) = 2
    PointAssignment pt3;
    pt3.d0 = 3;
    pt3.q = {1, 0, 0};
    pt3.p = {0, 0, 0};
    pt3.theta = mpq_class(3, 2);
    CHECK(ScalarExpr::root().evaluate(pt3) == GaussRat(mpq_class(2)));

    // irrational radicand rejected
    PointAssignment pt4 = pt3;
    pt4.theta = 1;
    CHECK_THROWS_AS(ScalarExpr::root().evaluate(pt4), point_error);

    // S = 0 rejected
    PointAssignment pt5;
    pt5.d0 = 3;
    pt5.q = {0, 0, 0};
    pt5.p = {1, 1, 1};
    CHECK_THROWS_AS(S.evaluate(pt5), point_error);
}

TEST_CASE("derivatives through the root") {
    ScalarExpr R = ScalarExpr::root();
    // dR/dS = -theta/(S^2 R) = -theta*R/(S(S+2theta))
    ScalarExpr expect_s = -(TH * R) / (S * (S + ScalarExpr(2) * TH));
    CHECK(R.derivative(V_S) == expect_s);
    ScalarExpr expect_th = R / (S + ScalarExpr(2) * TH);
    CHECK(R.derivative(V_TH) == expect_th);
    // consistency: d(R^2)/dtheta = 2 R dR/dtheta = 2/S
    CHECK((R * R).derivative(V_TH) == ScalarExpr(2) / S);
}

TEST_CASE("evaluation is a ring homomorphism") {
    Rng rng(2024);
    auto vars = testutil::phase_vars();
    int checked = 0;
    for (int d0 : {3, 4, 5}) {
        for (int t = 0; t < 34 && checked < 100; ++t, ++checked) {
            ScalarExpr a = testutil::rand_scalar(rng, vars);
            ScalarExpr b = testutil::rand_scalar(rng, vars);
            PointAssignment pt = testutil::rand_point(rng, d0);
            try {
                GaussRat va = a.evaluate(pt), vb = b.evaluate(pt);
                CHECK((a * b).evaluate(pt) == va * vb);
                CHECK((a + b).evaluate(pt) == va + vb);
            } catch (const point_error&) {
                --t;  // resample on unlucky denominator zeros
                --checked;
            }
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("root reduction consistent with evaluation") {
    Rng rng(7);
    ScalarExpr R = ScalarExpr::root();
    ScalarExpr rsq = (S + ScalarExpr(2) * TH) / S;
    for (int t = 0; t < 50; ++t) {
        PointAssignment pt = testutil::rand_point_with_root(rng, 3);
        CHECK((R * R).evaluate(pt) == rsq.evaluate(pt));
        CHECK(R.evaluate(pt) * R.evaluate(pt) == rsq.evaluate(pt));
    }
}

TEST_CASE("normalization is idempotent") {
    Rng rng(55);
    auto vars = testutil::phase_vars();
    for (int t = 0; t < 100; ++t) {
        ScalarExpr e = testutil::rand_scalar(rng, vars, t % 3 == 0);
        // re-running the constructor-normalization changes nothing
        ScalarExpr again(RatFun(e.base().num(), e.base().den()),
                         RatFun(e.rad().num(), e.rad().den()));
        CHECK(again.base().num() == e.base().num());
        CHECK(again.base().den() == e.base().den());
        CHECK(again.rad().num() == e.rad().num());
    }
}

TEST_CASE("aux-degree homogeneity and components") {
    ScalarExpr e = TH * TH / S + PTH * TH * ScalarExpr(3);
    CHECK(aux_homogeneous(e, 2));
    CHECK(!aux_homogeneous(e, 1));
    CHECK(aux_component(e, 2) == e);
    CHECK(aux_component(e, 1).is_zero());

    // theta-expansion of R picks out binomial(1/2, n) (2 theta/S)^n
    ScalarExpr R = ScalarExpr::root();
    CHECK(aux_component(R, 0) == ScalarExpr(1));
    CHECK(aux_component(R, 1) == TH / S);
    ScalarExpr ord2 = aux_component(R, 2);
    CHECK(ord2 == -(TH * TH) / (S * S * ScalarExpr(2)));
}

TEST_CASE("tensor trace uses delta_ii = d") {
    Tensor2Expr t;
    t.dd = ScalarExpr(1);
    t.qq = ScalarExpr(1);
    CHECK(t.trace() == ScalarExpr::gen(V_D) + S);
}
