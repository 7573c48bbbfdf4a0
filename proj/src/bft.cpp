#include "cforge/bft.hpp"

namespace cforge {

namespace {
ScalarExpr S() { return ScalarExpr::gen(V_S); }
ScalarExpr P() { return ScalarExpr::gen(V_P); }
ScalarExpr K() { return ScalarExpr::gen(V_K); }
ScalarExpr TH() { return ScalarExpr::gen(V_TH); }
ScalarExpr PTH() { return ScalarExpr::gen(V_PTH); }
}  // namespace

ScalarExpr BftConfig::x(int a, int b) {
    if (a != b) return ScalarExpr(0);
    return a == 0 ? ScalarExpr(2) : -S();
}

ScalarExpr BftConfig::x_inv(int a, int b) {
    if (a != b) return ScalarExpr(0);
    return a == 0 ? ScalarExpr(1) / ScalarExpr(2) : -S().inv();
}

GaussRat BftConfig::omega_upper(int a, int b) {
    if (a == b) return GaussRat(0);
    return a == 0 ? GaussRat(1) : GaussRat(-1);
}

GaussRat BftConfig::omega_lower(int a, int b) {
    if (a == b) return GaussRat(0);
    return a == 0 ? GaussRat(-1) : GaussRat(1);
}

bool verify_x_omega_condition() {
    ConstraintSet cs = ConstraintSet::sphere();
    for (int a = 0; a < 2; ++a)
        for (int d = 0; d < 2; ++d) {
            ScalarExpr lhs(0);
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    lhs += BftConfig::x(a, b) *
                           ScalarExpr(BftConfig::omega_upper(b, c)) *
                           BftConfig::x(d, c);
            if (lhs != -cs.delta(a, d)) return false;
        }
    return true;
}

std::pair<ScalarExpr, ScalarExpr> first_class_constraints() {
    return {S() - ScalarExpr(1) + ScalarExpr(2) * TH(), P() - S() * PTH()};
}

VectorExpr FieldSeries::partial_sum(int n) const {
    VectorExpr out;
    for (int m = 0; m <= n; ++m) out = out + terms_.at(m);
    return out;
}

FieldSeries iterate_field(const VectorExpr& seed, const BftConfig& cfg) {
    if (cfg.order < 0) throw algebra_error("negative truncation order");
    ScalarExpr detx = BftConfig::x(0, 0) * BftConfig::x(1, 1) -
                      BftConfig::x(0, 1) * BftConfig::x(1, 0);
    if (detx.is_zero()) throw algebra_error("non-invertible X");

    // constraint series: Omega^(0) = Omega_a, Omega^(1) = X_ab Phi^b, rest 0
    ConstraintSet cs = ConstraintSet::sphere();
    ScalarExpr phi[2] = {TH(), PTH()};
    auto omega_n = [&](int a, int n) -> ScalarExpr {
        if (n == 0) return cs.omega(a);
        if (n == 1) return BftConfig::x(a, a) * phi[a];
        return ScalarExpr(0);
    };

    std::vector<VectorExpr> f{seed};
    for (int n = 0; n < cfg.order; ++n) {
        VectorExpr g[2];
        for (int c = 0; c < 2; ++c) {
            for (int m = 0; m <= n; ++m)
                g[c] = g[c] + poisson(omega_n(c, n - m), f[m],
                                      BracketTable::f_only());
            for (int m = 0; m + 2 <= n; ++m)
                g[c] = g[c] + poisson(omega_n(c, n - m), f[m + 2],
                                      BracketTable::phi_only());
            // the trailing {Omega^(n+1), F^(1)}_Phi term of the displayed
            // formula; at n = 0 it would be circular and is absent
            if (n >= 1)
                g[c] = g[c] +
                       poisson(omega_n(c, n + 1), f[1], BracketTable::phi_only());
        }
        VectorExpr next;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    GaussRat w = BftConfig::omega_lower(a, b);
                    if (w.is_zero()) continue;
                    ScalarExpr coef =
                        phi[a] * ScalarExpr(w) * BftConfig::x_inv(b, c);
                    next = next + g[c].scaled(coef);
                }
        mpq_class fac(-1, n + 1);
        f.push_back(next.scaled(ScalarExpr(GaussRat(fac))));
    }
    return FieldSeries(std::move(f));
}

std::pair<VectorExpr, VectorExpr> closed_form_fields() {
    ScalarExpr R = ScalarExpr::root();
    VectorExpr qt = VectorExpr::q_vec().scaled(R);
    ScalarExpr rinv = S() * R / (S() + ScalarExpr(2) * TH());  // 1/R
    VectorExpr pt =
        (VectorExpr::p_vec() - VectorExpr::q_vec().scaled(PTH())).scaled(rinv);
    return {qt, pt};
}

std::pair<ScalarExpr, ScalarExpr> first_class_hamiltonians() {
    ScalarExpr w = K() - ScalarExpr(2) * P() * PTH() + S() * PTH() * PTH();
    ScalarExpr ht =
        w * S() / ((S() + ScalarExpr(2) * TH()) * ScalarExpr(2));
    ScalarExpr htp = ht + PTH() * first_class_constraints().second;
    return {ht, htp};
}

ScalarExpr gauge_transform(const ScalarExpr& f) {
    return ScalarExpr::gen(V_EPS) * poisson(f, first_class_constraints().second);
}

VectorExpr gauge_transform(const VectorExpr& v) {
    return poisson(v, first_class_constraints().second)
        .scaled(ScalarExpr::gen(V_EPS));
}

}  // namespace cforge
