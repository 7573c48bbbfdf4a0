#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cforge/numeric.hpp"
#include "cforge/opcalc.hpp"
#include "test_util.hpp"

using namespace cforge;
using testutil::Rng;

namespace {

const RatFun rS = RatFun::var(V_S);
const RatFun rD = RatFun::var(V_D);
const RatFun rC = RatFun::var(V_C);
const RatFun inv_s(Poly(1L), Poly::var(V_S));

NKey key(std::vector<int> qs, std::vector<int> ds, int e, int l) {
    NKey k;
    k.qs = std::move(qs);
    k.ds = std::move(ds);
    k.e = e;
    k.l = l;
    return k;
}

NormalOp make(std::initializer_list<std::pair<NKey, RatFun>> terms) {
    NormalOp op;
    for (const auto& [k, c] : terms) op.add(k, c);
    return op;
}

}  // namespace

TEST_CASE("push-through rules") {
    // ∂↑a S = S ∂↑a + 2 q↑a
    CHECK(normal_order(OpWord{OpFactor::d(0), OpFactor::fun(rS)}) ==
          make({{key({}, {0}, 0, 0), rS}, {key({0}, {}, 0, 0), RatFun(2L)}}));
    // E S = S E + 2S
    CHECK(normal_order(OpWord{OpFactor::euler(), OpFactor::fun(rS)}) ==
          make({{key({}, {}, 1, 0), rS}, {key({}, {}, 0, 0), RatFun(2L) * rS}}));
    // L S = S L + 4E + 2d
    CHECK(normal_order(OpWord{OpFactor::laplace(), OpFactor::fun(rS)}) ==
          make({{key({}, {}, 0, 1), rS},
                {key({}, {}, 1, 0), RatFun(4L)},
                {key({}, {}, 0, 0), RatFun(2L) * rD}}));
    // E q↑a = q↑a (E+1), E ∂↑a = ∂↑a (E-1)
    CHECK(normal_order(OpWord{OpFactor::euler(), OpFactor::q(0)}) ==
          make({{key({0}, {}, 1, 0), RatFun(1L)},
                {key({0}, {}, 0, 0), RatFun(1L)}}));
    CHECK(normal_order(OpWord{OpFactor::euler(), OpFactor::d(0)}) ==
          make({{key({}, {0}, 1, 0), RatFun(1L)},
                {key({}, {0}, 0, 0), RatFun(-1L)}}));
    // L q↑a = q↑a L + 2 ∂↑a, L ∂↑a = ∂↑a L
    CHECK(normal_order(OpWord{OpFactor::laplace(), OpFactor::q(0)}) ==
          make({{key({0}, {}, 0, 1), RatFun(1L)},
                {key({}, {0}, 0, 0), RatFun(2L)}}));
    CHECK(normal_order(OpWord{OpFactor::laplace(), OpFactor::d(0)}) ==
          make({{key({}, {0}, 0, 1), RatFun(1L)}}));
    // ∂↑a f(1/S) picks up the chain rule
    CHECK(normal_order(OpWord{OpFactor::d(0), OpFactor::fun(inv_s)}) ==
          make({{key({}, {0}, 0, 0), inv_s},
                {key({0}, {}, 0, 0), -RatFun(2L) * inv_s * inv_s}}));
}

TEST_CASE("contractions") {
    CHECK(normal_order(OpWord{OpFactor::q(0), OpFactor::q(0)}) ==
          make({{key({}, {}, 0, 0), rS}}));
    CHECK(normal_order(OpWord{OpFactor::q(0), OpFactor::d(0)}) ==
          make({{key({}, {}, 1, 0), RatFun(1L)}}));
    CHECK(normal_order(OpWord{OpFactor::d(0), OpFactor::d(0)}) ==
          make({{key({}, {}, 0, 1), RatFun(1L)}}));
    // ∂↑a q↑a = E + d
    CHECK(normal_order(OpWord{OpFactor::d(0), OpFactor::q(0)}) ==
          make({{key({}, {}, 1, 0), RatFun(1L)}, {key({}, {}, 0, 0), rD}}));
    // δ_aa = d
    CHECK(normal_order(OpWord{OpFactor::delta(0, 0)}) ==
          make({{key({}, {}, 0, 0), rD}}));
    // q_a q_b ∂_a ∂_b = E² − E, a theorem of the ordering
    CHECK(normal_order(OpWord{OpFactor::q(0), OpFactor::q(1), OpFactor::d(0),
                              OpFactor::d(1)}) ==
          make({{key({}, {}, 2, 0), RatFun(1L)},
                {key({}, {}, 1, 0), RatFun(-1L)}}));
    // Euler pair left of a free derivative: q_a ∂_b ∂_a = ∂_b (E − 1)
    CHECK(normal_order(OpWord{OpFactor::q(0), OpFactor::d(1), OpFactor::d(0)}) ==
          make({{key({}, {1}, 1, 0), RatFun(1L)},
                {key({}, {1}, 0, 0), RatFun(-1L)}}));
}

TEST_CASE("word validation") {
    CHECK_THROWS_AS(
        normal_order(OpWord{OpFactor::q(0), OpFactor::q(0), OpFactor::d(0)}),
        algebra_error);
    CHECK_THROWS_AS(normal_order(OpWord{OpFactor::q(0), OpFactor::q(1),
                                        OpFactor::d(2)}),
                    algebra_error);
}

TEST_CASE("quantum commutators of Eq. 3") {
    auto checks = verify_quantum_commutators();
    REQUIRE(checks.size() == 5);
    for (const auto& c : checks) {
        INFO(c.name, ": ", to_string(c.residual));
        CHECK(c.ok);
    }
}

TEST_CASE("Weyl-ordered product reproduces Eq. 4") {
    NormalOp w = build_weyl_product();
    CHECK(w.fully_contracted());
    CHECK(w.coefficient(key({}, {}, 0, 1)) == RatFun(-1L));
    CHECK(w.coefficient(key({}, {}, 2, 0)) == inv_s);
    CHECK(w.coefficient(key({}, {}, 1, 0)) == (rD - RatFun(2L)) * inv_s);
    // ((d−1)²/4 − c²)/S
    RatFun want = ((rD - RatFun(1L)) * (rD - RatFun(1L)) / RatFun(4L) -
                   rC * rC) *
                  inv_s;
    CHECK(w.coefficient(key({}, {}, 0, 0)) == want);
    // nothing else
    CHECK(w.terms().size() == 4);
}

TEST_CASE("harmonic eigenvalues") {
    ScalarExpr l = ScalarExpr::gen(V_L), d = ScalarExpr::gen(V_D),
               c = ScalarExpr::gen(V_C);
    CHECK(apply_to_harmonic(build_weyl_product()) ==
          l * (l + d - ScalarExpr(2)) +
              (d - ScalarExpr(1)) * (d - ScalarExpr(1)) / ScalarExpr(4) -
              c * c);
    // the sphere Laplacian −L + (1/S)(E²−E) + ((d−1)/S)E
    OpSum lap = {OpWord{OpFactor::fun(-1L), OpFactor::laplace()},
                 OpWord{OpFactor::fun(inv_s), OpFactor::euler(),
                        OpFactor::euler()},
                 OpWord{OpFactor::fun(-inv_s), OpFactor::euler()},
                 OpWord{OpFactor::fun((rD - RatFun(1L)) * inv_s),
                        OpFactor::euler()}};
    CHECK(apply_to_harmonic(normal_order(lap)) == l * (l + d - ScalarExpr(2)));
    CHECK(apply_to_harmonic(normal_order(OpWord{})) == ScalarExpr(1));
    CHECK_THROWS_AS(apply_to_harmonic(normal_order(OpWord{OpFactor::q(0)})),
                    algebra_error);
}

namespace {

// random word over {f(S,d), q↑, ∂↑, E, L} keeping the label budget legal
OpWord random_word(Rng& rng, int max_len = 4) {
    std::uniform_int_distribution<int> len(1, max_len), pick(0, 5),
        coef(-3, 3);
    std::map<int, int> used;
    OpWord w;
    int n = len(rng);
    for (int t = 0; t < n; ++t) {
        switch (pick(rng)) {
            case 0: {
                Poly p = Poly::var(V_S).scaled(GaussRat(coef(rng))) +
                         Poly::var(V_D).scaled(GaussRat(coef(rng))) +
                         Poly(GaussRat(coef(rng) + 4L));
                w.factors.push_back(OpFactor::fun(RatFun(p)));
                break;
            }
            case 1:
                w.factors.push_back(OpFactor::fun(inv_s));
                break;
            case 2:
            case 3: {
                int label = used[0] < 2 ? 0 : (used[1] < 2 ? 1 : -1);
                if (label < 0) {
                    w.factors.push_back(OpFactor::euler());
                } else {
                    ++used[label];
                    w.factors.push_back(pick(rng) % 2 ? OpFactor::q(label)
                                                      : OpFactor::d(label));
                }
                break;
            }
            case 4:
                w.factors.push_back(OpFactor::euler());
                break;
            case 5:
                w.factors.push_back(OpFactor::laplace());
                break;
        }
    }
    return w;
}

// brute-force application of a factor list to a polynomial of q_0..q_{d0-1}
CompFn apply_factors(const std::vector<OpFactor>& fs, CompFn phi, int d0,
                     const std::map<int, int>& idx, const GaussRat& dval) {
    auto expand_poly = [&](const Poly& p) {
        CPoly out(d0);
        CPoly s(d0);
        for (int i = 0; i < d0; ++i)
            s = s + CPoly::variable(d0, i) * CPoly::variable(d0, i);
        for (const auto& [m, c] : p.terms()) {
            CPoly t(d0, c);
            for (int k = 0; k < m[V_S]; ++k) t = t * s;
            for (int k = 0; k < m[V_D]; ++k) t = t * CPoly(d0, dval);
            out = out + t;
        }
        return out;
    };
    auto euler = [&](const CompFn& f) {
        CompFn out(d0);
        for (int i = 0; i < d0; ++i)
            out = out + CompFn{CPoly::variable(d0, i), CPoly(d0, GaussRat(1))} *
                            f.derivative(i);
        return out;
    };
    auto laplace = [&](const CompFn& f) {
        CompFn out(d0);
        for (int i = 0; i < d0; ++i) out = out + f.derivative(i).derivative(i);
        return out;
    };
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
        switch (it->kind) {
            case OpFactor::Fun:
                phi = CompFn{expand_poly(it->f.num()), expand_poly(it->f.den())} *
                      phi;
                break;
            case OpFactor::Qup:
                phi = CompFn{CPoly::variable(d0, idx.at(it->a)),
                             CPoly(d0, GaussRat(1))} *
                      phi;
                break;
            case OpFactor::Dup:
                phi = phi.derivative(idx.at(it->a));
                break;
            case OpFactor::E:
                phi = euler(phi);
                break;
            case OpFactor::L:
                phi = laplace(phi);
                break;
            case OpFactor::Delta:
                if (idx.at(it->a) != idx.at(it->b)) return CompFn(d0);
                break;
        }
    }
    return phi;
}

// the same application through the normal form
CompFn apply_normal(const NormalOp& op, const CompFn& phi, int d0,
                    const std::map<int, int>& idx, const GaussRat& dval) {
    CompFn out(d0);
    for (const auto& [k, c] : op.terms()) {
        std::vector<OpFactor> fs;
        fs.push_back(OpFactor::fun(c));
        for (auto [a, b] : k.deltas) fs.push_back(OpFactor::delta(a, b));
        for (int a : k.qs) fs.push_back(OpFactor::q(a));
        for (int a : k.ds) fs.push_back(OpFactor::d(a));
        for (int j = 0; j < k.e; ++j) fs.push_back(OpFactor::euler());
        for (int j = 0; j < k.l; ++j) fs.push_back(OpFactor::laplace());
        out = out + apply_factors(fs, phi, d0, idx, dval);
    }
    return out;
}

std::pair<std::vector<int>, std::vector<int>> split_labels(const OpWord& w) {
    std::map<int, int> count;
    for (const OpFactor& f : w.factors)
        if (f.kind == OpFactor::Qup || f.kind == OpFactor::Dup) ++count[f.a];
    std::vector<int> free, bound;
    for (const auto& [label, n] : count)
        (n == 1 ? free : bound).push_back(label);
    return {free, bound};
}

std::vector<std::map<int, int>> enumerate(const std::vector<int>& labels,
                                          int d0) {
    std::vector<std::map<int, int>> out{{}};
    for (int f : labels) {
        std::vector<std::map<int, int>> next;
        for (const auto& a : out)
            for (int i = 0; i < d0; ++i) {
                auto b = a;
                b[f] = i;
                next.push_back(b);
            }
        out = next;
    }
    return out;
}

}  // namespace

TEST_CASE("confluence under reassociation") {
    Rng rng(1717);
    std::uniform_int_distribution<int> pos(0, 100);
    for (int t = 0; t < 200; ++t) {
        OpWord w = random_word(rng);
        NormalOp base = normal_order(w);
        // unit factors inserted anywhere change nothing
        OpWord padded = w;
        padded.factors.insert(
            padded.factors.begin() + pos(rng) % (padded.factors.size() + 1),
            OpFactor::fun(1L));
        CHECK(normal_order(padded) == base);
        // splitting into a product of sub-words changes nothing
        std::size_t cut = pos(rng) % (w.factors.size() + 1);
        OpWord u, v;
        u.factors.assign(w.factors.begin(), w.factors.begin() + cut);
        v.factors.assign(w.factors.begin() + cut, w.factors.end());
        CHECK(normal_order(product(OpSum{u}, OpSum{v})) == base);
    }
}

TEST_CASE("differentiation oracle at explicit dimensions") {
    Rng rng(2424);
    int points = 0;
    for (int d0 : {2, 3}) {
        for (int t = 0; t < 13; ++t) {
            OpWord w = random_word(rng, 3);
            NormalOp n = normal_order(w);
            // random polynomial test function, degree <= 4
            CPoly num(d0);
            std::uniform_int_distribution<int> coefd(-4, 4), deg(0, 2);
            for (int term = 0; term < 4; ++term) {
                CPoly::Key mk(d0, 0);
                for (int i = 0; i < d0; ++i)
                    mk[i] = static_cast<std::uint8_t>(deg(rng));
                num.add_term(mk, GaussRat(static_cast<long>(coefd(rng))));
            }
            CompFn phi{num, CPoly(d0, GaussRat(1))};
            GaussRat dval(static_cast<long>(d0));

            auto [frees, bounds] = split_labels(w);
            for (const auto& idx : enumerate(frees, d0)) {
                // a label repeated inside the word is an implicit sum
                CompFn direct(d0);
                for (const auto& bidx : enumerate(bounds, d0)) {
                    auto full = idx;
                    full.insert(bidx.begin(), bidx.end());
                    direct = direct + apply_factors(w.factors, phi, d0, full,
                                                    dval);
                }
                CompFn via = apply_normal(n, phi, d0, idx, dval);
                // compare at random rational points, exactly
                for (int p = 0; p < 2; ++p) {
                    std::vector<GaussRat> x;
                    for (int i = 0; i < d0; ++i)
                        x.emplace_back(testutil::rand_rat_nonzero(rng, 6));
                    try {
                        GaussRat a = direct.evaluate(x), b = via.evaluate(x);
                        CHECK(a == b);
                        ++points;
                    } catch (const point_error&) {
                        --p;  // unlucky 1/S pole cancellation, resample
                    }
                }
            }
        }
    }
    CHECK(points >= 50);
}
