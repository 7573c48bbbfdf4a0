#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cforge/graded.hpp"
#include "test_util.hpp"

using namespace cforge;
using G = GradedExpr;
namespace tu = cforge::testutil;

namespace {

// Random parity-homogeneous element: each monomial gets k distinct ghosts
// with k of a fixed parity (0/2 or 1/3).
G rand_graded(tu::Rng& rng) {
    std::uniform_int_distribution<int> nmono(1, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    int odd = coin(rng);
    G e;
    int n = nmono(rng);
    for (int t = 0; t < n; ++t) {
        int k = odd + 2 * coin(rng);
        std::array<int, NGHOST> gs;
        for (int g = 0; g < NGHOST; ++g) gs[g] = g;
        std::shuffle(gs.begin(), gs.end(), rng);
        G::Mask m = 0;
        for (int j = 0; j < k; ++j) m |= 1u << gs[j];
        e.add_term(m, tu::rand_scalar(rng, tu::phase_vars()));
    }
    return e;
}

ScalarExpr gen(int v) { return ScalarExpr::gen(v); }

}  // namespace

TEST_CASE("ghost monomial algebra") {
    CHECK((G::ghost(G_C1) * G::ghost(G_C1)).is_zero());
    CHECK(G::ghost(G_C1) * G::ghost(G_C2) == -(G::ghost(G_C2) * G::ghost(G_C1)));
    // scalar coefficients commute through
    G a = G::scalar(gen(V_S)) * G::ghost(G_P1);
    G b = G::ghost(G_P1) * G::scalar(gen(V_S));
    CHECK(a == b);
    // triple reorder: C2 P1 C1 = + C1 C2 P1 (two transpositions)
    G lhs = G::ghost(G_C2) * G::ghost(G_P1) * G::ghost(G_C1);
    G rhs = G::ghost(G_C1) * G::ghost(G_C2) * G::ghost(G_P1);
    CHECK(lhs == rhs);
    CHECK(G::ghost(G_C1).parity() == 1);
    CHECK((G::ghost(G_C1) * G::ghost(G_PBAR2)).parity() == 0);
    CHECK_THROWS_AS((G::scalar(ScalarExpr(1)) + G::ghost(G_C1)).parity(),
                    algebra_error);
}

TEST_CASE("generator bracket table") {
    CHECK(super_poisson(G::ghost(G_C1), G::ghost(G_PBAR1)) ==
          G::scalar(ScalarExpr(1)));
    CHECK(super_poisson(G::ghost(G_C2), G::ghost(G_PBAR2)) ==
          G::scalar(ScalarExpr(1)));
    CHECK(super_poisson(G::ghost(G_P1), G::ghost(G_CBAR1)) ==
          G::scalar(ScalarExpr(1)));
    CHECK(super_poisson(G::ghost(G_P2), G::ghost(G_CBAR2)) ==
          G::scalar(ScalarExpr(1)));
    CHECK(super_poisson(G::ghost(G_C1), G::ghost(G_PBAR2)).is_zero());
    CHECK(super_poisson(G::ghost(G_C1), G::ghost(G_C1)).is_zero());
    CHECK(super_poisson(G::ghost(G_C1), G::ghost(G_CBAR1)).is_zero());
    CHECK(super_poisson(G::ghost(G_LAMBDA), G::ghost(G_C1)).is_zero());
    // bosonic table pair via the scalar sector
    CHECK(super_poisson(G::scalar(gen(V_N1)), G::scalar(gen(V_B1))) ==
          G::scalar(ScalarExpr(1)));
}

TEST_CASE("bosonic inputs reduce to the plain bracket") {
    tu::Rng rng(520);
    std::vector<int> vars = {V_S, V_P, V_K, V_TH, V_PTH, V_N1, V_B2};
    for (int t = 0; t < 40; ++t) {
        ScalarExpr f = tu::rand_scalar(rng, vars);
        ScalarExpr g = tu::rand_scalar(rng, vars);
        CHECK(super_poisson(G::scalar(f), G::scalar(g)) ==
              G::scalar(poisson(f, g)));
    }
}

TEST_CASE("charges: ghost numbers and ghost-zero limits") {
    Charges ch = build_charges();
    CHECK(ch.q.ghost_number() == 1);
    CHECK(ch.psi.ghost_number() == -1);
    CHECK(ch.h_m.ghost_number() == 0);
    CHECK(ch.q.at_ghost_zero().is_zero());
    CHECK(ch.psi.at_ghost_zero().is_zero());
    CHECK(ch.h_m.at_ghost_zero() == first_class_hamiltonians().second);
    CHECK(ch.q.parity() == 1);
    CHECK(ch.psi.parity() == 1);
    CHECK(ch.h_m.parity() == 0);
}

TEST_CASE("BRST relations hold exactly") {
    for (const auto& chk : verify_brst_relations()) {
        INFO(chk.name, " residual: ", to_string(chk.residual));
        CHECK(chk.ok);
    }
}

TEST_CASE("second-class charge is the negative control") {
    G qb = second_class_brst_charge();
    G r = super_poisson(qb, qb);
    CHECK(!r.is_zero());
    // {Q_bad,Q_bad} = {Omega_1,Omega_2} C1 C2 - {Omega_2,Omega_1} C2 C1 = 4S C1 C2
    G expect = G::ghost(G_C1) * G::ghost(G_C2) *
               G::scalar(ScalarExpr(4) * gen(V_S));
    CHECK(r == expect);
}

TEST_CASE("BRST transformation rules") {
    G lam = G::ghost(G_LAMBDA);
    // delta_B S = 2 lambda S C  (componentwise delta_B q_i = lambda q_i C)
    CHECK(brst_transform(gen(V_S)) ==
          lam * G::ghost(G_C2) * G::scalar(ScalarExpr(2) * gen(V_S)));
    // delta_B theta = -lambda S C
    CHECK(brst_transform(gen(V_TH)) ==
          lam * G::ghost(G_C2) * G::scalar(-gen(V_S)));
    // delta_B C = delta_B B = 0
    CHECK(brst_transform(G::ghost(G_C1)).is_zero());
    CHECK(brst_transform(G::ghost(G_C2)).is_zero());
    CHECK(brst_transform(gen(V_B1)).is_zero());
    CHECK(brst_transform(gen(V_B2)).is_zero());
    // delta_B Cbar_a = -lambda B_a
    CHECK(brst_transform(G::ghost(G_CBAR2)) == -(lam * G::scalar(gen(V_B2))));
    CHECK(brst_transform(G::ghost(G_CBAR1)) == -(lam * G::scalar(gen(V_B1))));
    // momentum-sector transforms, computed (no displayed rule to match):
    // delta_B P = lambda(-2S C1 + 2 S pi_theta C2), delta_B pi_theta = -2 lambda C1
    CHECK(brst_transform(gen(V_P)) ==
          lam * (G::ghost(G_C1) * G::scalar(ScalarExpr(-2) * gen(V_S)) +
                 G::ghost(G_C2) *
                     G::scalar(ScalarExpr(2) * gen(V_S) * gen(V_PTH))));
    CHECK(brst_transform(gen(V_PTH)) ==
          lam * G::ghost(G_C1) * G::scalar(ScalarExpr(-2)));
    // the first-class constraints themselves are invariant
    auto [o1, o2] = first_class_constraints();
    CHECK(brst_transform(o1).is_zero());
    CHECK(brst_transform(o2).is_zero());
}

TEST_CASE("graded antisymmetry on random pairs") {
    tu::Rng rng(521);
    for (int t = 0; t < 200; ++t) {
        G a = rand_graded(rng), b = rand_graded(rng);
        int s = (a.parity() && b.parity()) ? 1 : -1;  // -(-1)^{eta_a eta_b}
        G lhs = super_poisson(a, b);
        G rhs = super_poisson(b, a);
        CHECK(lhs == (s < 0 ? -rhs : rhs));
    }
}

TEST_CASE("graded Jacobi identity on random triples") {
    tu::Rng rng(522);
    for (int t = 0; t < 50; ++t) {
        G a = rand_graded(rng), b = rand_graded(rng), c = rand_graded(rng);
        int pa = a.parity(), pb = b.parity(), pc = c.parity();
        auto signed_term = [](int s, G e) { return s ? -e : e; };
        G sum = signed_term(pa * pc, super_poisson(a, super_poisson(b, c))) +
                signed_term(pb * pa, super_poisson(b, super_poisson(c, a))) +
                signed_term(pc * pb, super_poisson(c, super_poisson(a, b)));
        INFO("triple ", t);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("ghost-number additivity") {
    tu::Rng rng(523);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 60; ++t) {
        G a = rand_graded(rng), b = rand_graded(rng);
        auto ga = a.ghost_number(), gb = b.ghost_number();
        if (!ga || !gb) continue;
        G r = super_poisson(a, b);
        if (r.is_zero()) continue;
        auto gr = r.ghost_number();
        REQUIRE(gr.has_value());
        CHECK(*gr == *ga + *gb);
        ++checked;
    }
    CHECK(checked >= 40);
}
