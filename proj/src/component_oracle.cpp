#include <algorithm>
#include <random>

#include "cforge/numeric.hpp"

namespace cforge {

CPoly::CPoly(int nvars, const GaussRat& c) : nv_(nvars) {
    if (!c.is_zero()) terms_[Key(nvars, 0)] = c;
}

CPoly CPoly::variable(int nvars, int v) {
    CPoly p(nvars);
    Key k(nvars, 0);
    k[v] = 1;
    p.terms_[k] = GaussRat(1);
    return p;
}

void CPoly::add_term(const Key& k, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CPoly CPoly::operator+(const CPoly& o) const {
    CPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

CPoly CPoly::operator-(const CPoly& o) const {
    CPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

CPoly CPoly::operator*(const CPoly& o) const {
    CPoly r(nv_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            Key k(nv_);
            for (int v = 0; v < nv_; ++v)
                k[v] = static_cast<std::uint8_t>(ka[v] + kb[v]);
            r.add_term(k, ca * cb);
        }
    return r;
}

CPoly CPoly::operator-() const {
    CPoly r(nv_);
    for (const auto& [k, c] : terms_) r.add_term(k, -c);
    return r;
}

CPoly CPoly::derivative(int v) const {
    CPoly r(nv_);
    for (const auto& [k, c] : terms_) {
        if (k[v] == 0) continue;
        Key n = k;
        n[v] -= 1;
        r.add_term(n, c * GaussRat(static_cast<long>(k[v])));
    }
    return r;
}

GaussRat CPoly::evaluate(const std::vector<GaussRat>& x) const {
    GaussRat total;
    for (const auto& [k, c] : terms_) {
        GaussRat t = c;
        for (int v = 0; v < nv_; ++v)
            for (int e = 0; e < k[v]; ++e) t *= x[v];
        total += t;
    }
    return total;
}

CompFn CompFn::operator+(const CompFn& o) const {
    return {num * o.den + o.num * den, den * o.den};
}
CompFn CompFn::operator-(const CompFn& o) const {
    return {num * o.den - o.num * den, den * o.den};
}
CompFn CompFn::operator*(const CompFn& o) const {
    return {num * o.num, den * o.den};
}
CompFn CompFn::operator/(const CompFn& o) const {
    if (o.num.is_zero()) throw division_by_zero("component division by zero");
    return {num * o.den, den * o.num};
}
CompFn CompFn::derivative(int v) const {
    return {num.derivative(v) * den - num * den.derivative(v), den * den};
}
GaussRat CompFn::evaluate(const std::vector<GaussRat>& x) const {
    GaussRat d = den.evaluate(x);
    if (d.is_zero()) throw point_error("component denominator vanishes");
    return num.evaluate(x) / d;
}

ComponentSpace::ComponentSpace(int d0) : d0_(d0) {
    if (d0 < 1) throw algebra_error("d0 must be positive");
}

CompFn ComponentSpace::q(int i) const {
    CompFn f(nvars());
    f.num = CPoly::variable(nvars(), q_var(i));
    return f;
}

CompFn ComponentSpace::p(int i) const {
    CompFn f(nvars());
    f.num = CPoly::variable(nvars(), p_var(i));
    return f;
}

CompFn ComponentSpace::expand(const ScalarExpr& e,
                              const PointAssignment& pt) const {
    if (e.has_root())
        throw algebra_error("component expansion of a root-carrying expression");
    int nv = nvars();
    CPoly S(nv), Pv(nv), Kv(nv);
    for (int i = 0; i < d0_; ++i) {
        CPoly qi = CPoly::variable(nv, q_var(i));
        CPoly pi = CPoly::variable(nv, p_var(i));
        S = S + qi * qi;
        Pv = Pv + qi * pi;
        Kv = Kv + pi * pi;
    }
    std::array<CPoly, NVARS> gens{
        S,
        Pv,
        Kv,
        CPoly::variable(nv, theta_var()),
        CPoly::variable(nv, pi_theta_var()),
        CPoly::variable(nv, 2 * d0_ + 2),
        CPoly::variable(nv, 2 * d0_ + 3),
        CPoly::variable(nv, 2 * d0_ + 4),
        CPoly::variable(nv, 2 * d0_ + 5),
        CPoly(nv, GaussRat(mpq_class(d0_))),
        CPoly(nv, GaussRat(pt.c)),
        CPoly(nv, GaussRat(pt.l)),
        CPoly(nv, GaussRat(pt.eps)),
    };
    auto expand_poly = [&](const Poly& p) {
        CPoly out(nv);
        for (const auto& [m, c] : p.terms()) {
            CPoly t(nv, c);
            for (int v = 0; v < NVARS; ++v)
                for (int k = 0; k < m[v]; ++k) t = t * gens[v];
            out = out + t;
        }
        return out;
    };
    return {expand_poly(e.base().num()), expand_poly(e.base().den())};
}

GaussRat ComponentSpace::bracket_at(const CompFn& a, const CompFn& b,
                                    const std::vector<GaussRat>& x) const {
    GaussRat out;
    auto pair_term = [&](int xv, int pv) {
        CompFn ax = a.derivative(xv), ap = a.derivative(pv);
        if (ax.num.is_zero() && ap.num.is_zero()) return;
        out += ax.evaluate(x) * b.derivative(pv).evaluate(x) -
               ap.evaluate(x) * b.derivative(xv).evaluate(x);
    };
    for (int i = 0; i < d0_; ++i) pair_term(q_var(i), p_var(i));
    pair_term(theta_var(), pi_theta_var());
    pair_term(2 * d0_ + 2, 2 * d0_ + 3);
    pair_term(2 * d0_ + 4, 2 * d0_ + 5);
    return out;
}

GaussRat ComponentSpace::dirac_at(const CompFn& a, const CompFn& b,
                                  const PointAssignment& pt,
                                  const std::vector<GaussRat>& x) const {
    CompFn o1 = expand(ScalarExpr::gen(V_S) - ScalarExpr(1), pt);
    CompFn o2 = expand(ScalarExpr::gen(V_P), pt);
    const CompFn* omega[2] = {&o1, &o2};
    GaussRat delta[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            delta[i][j] = bracket_at(*omega[i], *omega[j], x);
    GaussRat det = delta[0][0] * delta[1][1] - delta[0][1] * delta[1][0];
    if (det.is_zero()) throw point_error("constraint matrix singular at point");
    GaussRat inv[2][2] = {{delta[1][1] / det, -delta[0][1] / det},
                          {-delta[1][0] / det, delta[0][0] / det}};
    GaussRat out = bracket_at(a, b, x);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out -= bracket_at(a, *omega[i], x) * inv[i][j] *
                   bracket_at(*omega[j], b, x);
    return out;
}

std::vector<GaussRat> ComponentSpace::point_values(
    const PointAssignment& pt) const {
    std::vector<GaussRat> x;
    x.reserve(nvars());
    for (int i = 0; i < d0_; ++i) x.emplace_back(pt.q[i]);
    for (int i = 0; i < d0_; ++i) x.emplace_back(pt.p[i]);
    x.emplace_back(pt.theta);
    x.emplace_back(pt.pi_theta);
    x.emplace_back(pt.n1);
    x.emplace_back(pt.b1);
    x.emplace_back(pt.n2);
    x.emplace_back(pt.b2);
    return x;
}

namespace {

mpq_class oracle_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 20);
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    return v;
}

PointAssignment oracle_point(std::mt19937_64& rng, int d0) {
    PointAssignment pt;
    pt.d0 = d0;
    pt.q.resize(d0);
    pt.p.resize(d0);
    for (;;) {
        for (int i = 0; i < d0; ++i) {
            pt.q[i] = oracle_rat(rng);
            pt.p[i] = oracle_rat(rng);
        }
        pt.theta = oracle_rat(rng);
        pt.pi_theta = oracle_rat(rng);
        pt.n1 = oracle_rat(rng);
        pt.b1 = oracle_rat(rng);
        pt.n2 = oracle_rat(rng);
        pt.b2 = oracle_rat(rng);
        if (pt.s_val() != 0) return pt;  // resample, never skip
    }
}

struct ScalarIdentity {
    std::string name;
    ScalarExpr lhs_a, lhs_b;  // bracket arguments
    ScalarExpr symbolic;      // invariant-algebra result
    bool use_dirac;
};

std::vector<ScalarIdentity> scalar_identities() {
    ScalarExpr S = ScalarExpr::gen(V_S), P = ScalarExpr::gen(V_P),
               K = ScalarExpr::gen(V_K), TH = ScalarExpr::gen(V_TH),
               PTH = ScalarExpr::gen(V_PTH);
    ScalarExpr o1 = S - ScalarExpr(1), o2 = P;
    ScalarExpr h = K / ScalarExpr(2);
    ConstraintSet cs = ConstraintSet::sphere();
    std::vector<ScalarIdentity> ids;
    auto pb = [&](std::string n, ScalarExpr a, ScalarExpr b) {
        ids.push_back({std::move(n), a, b, poisson(a, b), false});
    };
    auto db = [&](std::string n, ScalarExpr a, ScalarExpr b) {
        ids.push_back({std::move(n), a, b, dirac(a, b, cs), true});
    };
    pb("{S,P}", S, P);
    pb("{S,K}", S, K);
    pb("{P,K}", P, K);
    pb("{theta,pi_theta}", TH, PTH);
    pb("{Omega1,Omega2}", o1, o2);
    pb("{Omega1,H}", o1, h);
    pb("{Omega1+2theta,P-S*pi_theta}", o1 + ScalarExpr(2) * TH,
       P - S * PTH);
    db("{Omega1,H}_D", o1, h);
    db("{Omega2,S*K-P^2}_D", o2, S * K - P * P);
    db("{H,theta*pi_theta}_D", h, TH * PTH);
    return ids;
}

}  // namespace

std::vector<OracleMismatch> run_bracket_oracle(int trials,
                                               const std::vector<int>& d0_set,
                                               std::uint64_t seed,
                                               bool parallel) {
    if (trials < 1) throw algebra_error("trials must be >= 1");
    const auto ids = scalar_identities();
    const ConstraintSet cs = ConstraintSet::sphere();
    const Tensor2Expr dqp =
        dirac(VectorExpr::q_vec(), VectorExpr::p_vec(), cs);
    const Tensor2Expr dpp =
        dirac(VectorExpr::p_vec(), VectorExpr::p_vec(), cs);

    std::vector<OracleMismatch> mismatches;
    for (int d0 : d0_set) {
        ComponentSpace space(d0);
        std::vector<std::vector<OracleMismatch>> local(trials);

#ifdef CFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (t + 1)) ^
                                (static_cast<std::uint64_t>(d0) << 32));
            PointAssignment pt = oracle_point(rng, d0);
            auto x = space.point_values(pt);
            auto record = [&](const std::string& id) {
                local[t].push_back({id, d0, t});
            };
            for (const auto& id : ids) {
                CompFn a = space.expand(id.lhs_a, pt);
                CompFn b = space.expand(id.lhs_b, pt);
                GaussRat got = id.use_dirac ? space.dirac_at(a, b, pt, x)
                                            : space.bracket_at(a, b, x);
                if (got != id.symbolic.evaluate(pt)) record(id.name);
            }
            // Dirac brackets of the component fields themselves
            auto want_qp = dqp.evaluate(pt);
            auto want_pp = dpp.evaluate(pt);
            for (int i = 0; i < d0 && local[t].empty(); ++i)
                for (int j = 0; j < d0; ++j) {
                    if (space.dirac_at(space.q(i), space.p(j), pt, x) !=
                        want_qp[i][j])
                        record("{q_i,pi_j}_D");
                    if (space.dirac_at(space.p(i), space.p(j), pt, x) !=
                        want_pp[i][j])
                        record("{pi_i,pi_j}_D");
                }
        }
        for (int t = 0; t < trials; ++t)
            mismatches.insert(mismatches.end(), local[t].begin(), local[t].end());
    }
    return mismatches;
}

}  // namespace cforge
