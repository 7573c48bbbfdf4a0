#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cforge/bft.hpp"
#include "cforge/graded.hpp"
#include "cforge/numeric.hpp"
#include "cforge/opcalc.hpp"
#include "cforge/report.hpp"
#include "cforge/spectrum.hpp"

namespace cforge {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "info";
    }
}

namespace {

ScalarExpr half() { return ScalarExpr(RatFun(GaussRat(mpq_class(1, 2)))); }

mpq_class double_factorial(int n) {
    mpq_class r = 1;
    for (int k = 2 * n - 1; k >= 1; k -= 2) r *= k;
    return r;
}

mpq_class factorial(int n) {
    mpq_class r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// residual("") = pass; anything else is the offending expression
using CheckFn = std::function<std::string(const SuiteConfig&)>;

struct CheckDef {
    const char* name;
    const char* section;
    const char* citation;
    CheckFn fn;
};

std::string nonzero(const ScalarExpr& e) { return e.is_zero() ? "" : to_string(e); }

ScalarExpr omega2_used(const SuiteConfig& cfg) {
    if (cfg.mutation == Mutation::drop_omega2_momentum)
        return ConstraintSet::sphere().omega(1);  // missing -S*pi_theta
    return first_class_constraints().second;
}

std::string check_fundamental(const SuiteConfig&) {
    ScalarExpr s = ScalarExpr::gen(V_S), p = ScalarExpr::gen(V_P),
               k = ScalarExpr::gen(V_K);
    std::string r;
    if ((r = nonzero(poisson(s, p) - ScalarExpr(2) * s)) != "") return r;
    if ((r = nonzero(poisson(s, k) - ScalarExpr(4) * p)) != "") return r;
    if ((r = nonzero(poisson(p, k) - ScalarExpr(2) * k)) != "") return r;
    if ((r = nonzero(poisson(ScalarExpr::gen(V_TH), ScalarExpr::gen(V_PTH)) -
                     ScalarExpr(1))) != "")
        return r;
    return verify_table_jacobi() ? "" : "Jacobi identity violated in table";
}

std::string check_constraint_matrix(const SuiteConfig&) {
    ConstraintSet cs = ConstraintSet::sphere();
    ScalarExpr two_s = ScalarExpr(2) * ScalarExpr::gen(V_S);
    std::string r;
    if ((r = nonzero(cs.delta(0, 1) - two_s)) != "") return r;
    if ((r = nonzero(cs.delta(1, 0) + two_s)) != "") return r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            ScalarExpr id(a == b ? 1 : 0);
            ScalarExpr acc(0);
            for (int m = 0; m < 2; ++m) acc += cs.delta(a, m) * cs.delta_inv(m, b);
            if ((r = nonzero(acc - id)) != "") return r;
        }
    ScalarExpr h = half() * ScalarExpr::gen(V_K);
    return nonzero(poisson(cs.omega(0), h) - ScalarExpr(2) * cs.omega(1));
}

std::string check_dirac(const SuiteConfig&) {
    ConstraintSet cs = ConstraintSet::sphere();
    VectorExpr q = VectorExpr::q_vec(), p = VectorExpr::p_vec();
    ScalarExpr inv_s = ScalarExpr::gen(V_S).inv();
    Tensor2Expr qq = dirac(q, q, cs);
    if (!qq.is_zero()) return to_string(qq);
    Tensor2Expr qp = dirac(q, p, cs);
    Tensor2Expr want_qp{ScalarExpr(1), -inv_s, ScalarExpr(0), ScalarExpr(0),
                        ScalarExpr(0)};
    if (qp != want_qp) return to_string(qp - want_qp);
    Tensor2Expr pp = dirac(p, p, cs);
    Tensor2Expr want_pp{ScalarExpr(0), ScalarExpr(0), -inv_s, inv_s,
                        ScalarExpr(0)};
    if (pp != want_pp) return to_string(pp - want_pp);
    // constraints are Casimirs of the Dirac bracket
    ScalarExpr probe = ScalarExpr::gen(V_K) * inv_s + ScalarExpr::gen(V_P);
    for (int a = 0; a < 2; ++a) {
        ScalarExpr r = dirac(cs.omega(a), probe, cs);
        if (!r.is_zero()) return to_string(r);
    }
    return "";
}

std::string check_x_omega(const SuiteConfig&) {
    return verify_x_omega_condition() ? "" : "X omega X^T != -Delta";
}

std::string check_involution(const SuiteConfig& cfg) {
    ScalarExpr o1 = first_class_constraints().first;
    ScalarExpr o2 = omega2_used(cfg);
    return nonzero(poisson(o1, o2));
}

std::string check_embedded_fields(const SuiteConfig&) {
    auto [o1, o2] = first_class_constraints();
    auto [qt, pt] = closed_form_fields();
    for (const ScalarExpr& o : {o1, o2}) {
        VectorExpr a = poisson(o, qt);
        if (!a.is_zero()) return to_string(a);
        VectorExpr b = poisson(o, pt);
        if (!b.is_zero()) return to_string(b);
    }
    return "";
}

std::string check_series(const SuiteConfig&) {
    auto [qt, pt] = closed_form_fields();
    FieldSeries qs = iterate_field(VectorExpr::q_vec());
    FieldSeries ps = iterate_field(VectorExpr::p_vec());
    ScalarExpr th_over_s = ScalarExpr::gen(V_TH) / ScalarExpr::gen(V_S);
    for (int n = 0; n <= 6; ++n) {
        VectorExpr dq = qs.term(n) - aux_component(qt, n);
        if (!dq.is_zero()) return to_string(dq);
        VectorExpr dp = ps.term(n) - aux_component(pt, n);
        if (!dp.is_zero()) return to_string(dp);
        if (n == 0) continue;
        // q-series coefficient -(-1)^n (2n-3)!!/n!
        mpq_class qc = -double_factorial(n - 1) / factorial(n);
        if (n % 2) qc = -qc;
        VectorExpr want = VectorExpr::q_vec().scaled(
            th_over_s.pow(n) * ScalarExpr(GaussRat(qc)));
        if (qs.term(n) != want) return to_string(qs.term(n) - want);
    }
    return "";
}

std::string check_gauss_law(const SuiteConfig& cfg) {
    ScalarExpr o1 = first_class_constraints().first;
    ScalarExpr o2 = omega2_used(cfg);
    auto [ht, htp] = first_class_hamiltonians();
    std::string r;
    if ((r = nonzero(poisson(o1, ht))) != "") return r;
    if ((r = nonzero(poisson(o2, ht))) != "") return r;
    if ((r = nonzero(poisson(o1, htp) - ScalarExpr(2) * o2)) != "") return r;
    return nonzero(poisson(o2, htp));
}

std::string check_commutators(const SuiteConfig&) {
    for (const auto& c : verify_quantum_commutators())
        if (!c.ok) return c.name + ": " + to_string(c.residual);
    return "";
}

std::string check_weyl_product(const SuiteConfig& cfg) {
    NormalOp w = build_weyl_product();
    RatFun inv_s = RatFun(1L) / RatFun::var(V_S);
    RatFun rd = RatFun::var(V_D), rc = RatFun::var(V_C);
    long e_shift = cfg.mutation == Mutation::skew_weyl_coefficient ? 1 : 2;
    NKey l_key, e2_key, e1_key, c_key;
    l_key.l = 1;
    e2_key.e = 2;
    e1_key.e = 1;
    std::vector<std::pair<NKey, RatFun>> want = {
        {l_key, RatFun(-1L)},
        {e2_key, inv_s},
        {e1_key, (rd - RatFun(e_shift)) * inv_s},
        {c_key,
         ((rd - RatFun(1L)) * (rd - RatFun(1L)) / RatFun(4L) - rc * rc) *
             inv_s}};
    for (const auto& [k, v] : want)
        if (w.coefficient(k) != v) return to_string(w);
    return w.terms().size() == 4 ? "" : to_string(w);
}

std::string check_harmonic(const SuiteConfig&) {
    ScalarExpr l = ScalarExpr::gen(V_L), d = ScalarExpr::gen(V_D),
               c = ScalarExpr::gen(V_C);
    ScalarExpr want = l * (l + d - ScalarExpr(2)) +
                      (d - ScalarExpr(1)) * (d - ScalarExpr(1)) / ScalarExpr(4) -
                      c * c;
    return nonzero(apply_to_harmonic(build_weyl_product()) - want);
}

std::string check_c_fix(const SuiteConfig&) {
    RatFun c2 = fix_c();
    RatFun want = (RatFun::var(V_D) + RatFun(1L)) / RatFun(4L);
    if (c2 != want) return to_string(c2);
    ScalarExpr ed = energy_dirac();
    ScalarExpr a = half() * ed.derivative(V_C).derivative(V_C);
    ScalarExpr fixed = ed.substitute(V_C, Poly()) + a * ScalarExpr(c2);
    return nonzero(fixed - energy_bft());
}

std::string check_spectrum(const SuiteConfig&) {
    for (long d = 2; d <= 12; ++d) {
        mpq_class c2 = mpq_class(d + 1) / 4;
        for (long l = 0; l <= 10; ++l)
            if (energy_dirac_at(l, d, c2) != energy_bft_at(l, d))
                return "mismatch at d=" + std::to_string(d) +
                       ", l=" + std::to_string(l);
    }
    auto rows = spectrum_table(3, 10, std::nullopt);
    for (long l = 1; l <= 10; ++l)
        if (*rows[static_cast<std::size_t>(l)].gap != l)
            return "level spacing off at l=" + std::to_string(l);
    return "";
}

std::string check_brst(const SuiteConfig& cfg) {
    if (cfg.mutation == Mutation::flip_hm_ghost_sign) {
        Charges ch = build_charges();
        GradedExpr bad_hm =
            GradedExpr::scalar(first_class_hamiltonians().second) -
            GradedExpr::ghost(G_C1) * GradedExpr::ghost(G_PBAR2) *
                GradedExpr::scalar(ScalarExpr(2));
        GradedExpr r = super_poisson(ch.q, bad_hm);
        if (!r.is_zero()) return to_string(r);
        return "";
    }
    for (const auto& c : verify_brst_relations())
        if (!c.ok) return c.name + ": " + to_string(c.residual);
    return "";
}

std::string check_brst_negative(const SuiteConfig&) {
    GradedExpr qb = second_class_brst_charge();
    GradedExpr r = super_poisson(qb, qb);
    return r.is_zero() ? "{Q,Q} vanished for the second-class charge" : "";
}

std::string check_transforms(const SuiteConfig&) {
    ScalarExpr eps = ScalarExpr::gen(V_EPS), s = ScalarExpr::gen(V_S);
    VectorExpr dq = gauge_transform(VectorExpr::q_vec());
    if (dq != VectorExpr::q_vec().scaled(eps)) return to_string(dq);
    ScalarExpr dth = gauge_transform(ScalarExpr::gen(V_TH));
    if (dth != -(eps * s)) return to_string(dth);
    using G = GradedExpr;
    G lam = G::ghost(G_LAMBDA);
    G r = brst_transform(s) -
          lam * G::ghost(G_C2) * G::scalar(ScalarExpr(2) * s);
    if (!r.is_zero()) return to_string(r);
    r = brst_transform(ScalarExpr::gen(V_TH)) -
        lam * G::ghost(G_C2) * G::scalar(-s);
    if (!r.is_zero()) return to_string(r);
    if (!brst_transform(G::ghost(G_C2)).is_zero()) return "delta_B C != 0";
    if (!brst_transform(ScalarExpr::gen(V_B2)).is_zero())
        return "delta_B B != 0";
    r = brst_transform(G::ghost(G_CBAR2)) + lam * G::scalar(ScalarExpr::gen(V_B2));
    return r.is_zero() ? "" : to_string(r);
}

std::string check_circle(const SuiteConfig& cfg) {
    CircleGrid g(cfg.grid);
    int k = std::min(cfg.grid, 11);
    auto num = g.eigenvalues(k, cfg.parallel);
    auto ana = g.analytic_spectrum(k);
    for (int i = 1; i < k; ++i)
        if (std::abs(num[i] - ana[i]) / ana[i] >= 1e-12)
            return "circulant mismatch at index " + std::to_string(i);
    for (int l = 1; 2 * l < k; ++l) {
        double target = static_cast<double>(l) * l;
        if (std::abs(num[2 * l - 1] - target) / target >= 1e-2)
            return "dispersion bound exceeded at l=" + std::to_string(l);
    }
    return "";
}

std::string check_oracle(const SuiteConfig& cfg) {
    auto mism =
        run_bracket_oracle(cfg.trials, {3, 4, 5}, cfg.seed, cfg.parallel);
    if (mism.empty()) return "";
    const auto& m = mism.front();
    return m.identity + " at d0=" + std::to_string(m.d0) + ", trial " +
           std::to_string(m.trial) +
           (mism.size() > 1
                ? " (+" + std::to_string(mism.size() - 1) + " more)"
                : "");
}

const std::vector<CheckDef>& all_checks() {
    static const std::vector<CheckDef> defs = {
        {"fundamental brackets", "brackets", "canonical constraint algebra",
         check_fundamental},
        {"constraint matrix and secondary constraint", "brackets",
         "Delta_ab = 2 eps_ab q_i q_i", check_constraint_matrix},
        {"Dirac brackets", "brackets", "classical commutator forms",
         check_dirac},
        {"conversion matrices", "bft", "X omega X^T = -Delta", check_x_omega},
        {"first-class involution", "bft", "strongly involutive constraints",
         check_involution},
        {"embedded fields commute with constraints", "bft",
         "physical fields in the extended phase space", check_embedded_fields},
        {"field series matches closed forms", "bft",
         "double-factorial series coefficients", check_series},
        {"Hamiltonian involution and Gauss law", "bft",
         "{Omega~_1, H~'} = 2 Omega~_2", check_gauss_law},
        {"quantum commutators", "weyl", "operator commutator algebra",
         check_commutators},
        {"Weyl-ordered momentum product", "weyl",
         "Pi^N Pi^N normal form", check_weyl_product},
        {"harmonic eigenvalue", "weyl", "l(l+d-2) + (d-1)^2/4 - c^2",
         check_harmonic},
        {"c-parameter fixing", "weyl", "c = +-sqrt(d+1)/2", check_c_fix},
        {"spectrum agreement", "weyl", "Weyl-corrected energy spectrum",
         check_spectrum},
        {"BRST relations", "brst", "{Q,Q} = {Q,H_m} = {{Psi,Q},Q} = 0",
         check_brst},
        {"BRST negative control", "brst", "second-class obstruction",
         check_brst_negative},
        {"gauge and BRST transformations", "brst",
         "delta_B rules in the unitary gauge", check_transforms},
        {"circle Laplacian spectrum", "numeric", "sphere Laplacian at d=2",
         check_circle},
        {"componentwise bracket oracle", "numeric",
         "independent differentiation path", check_oracle},
    };
    return defs;
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    for (const CheckDef& def : all_checks()) {
        if (cfg.section != "all" && cfg.section != def.section) continue;
        CheckReport rep;
        rep.name = def.name;
        rep.citation = def.citation;
        auto t0 = std::chrono::steady_clock::now();
        try {
            rep.residual = def.fn(cfg);
            rep.status =
                rep.residual.empty() ? CheckStatus::pass : CheckStatus::fail;
        } catch (const std::exception& e) {
            rep.status = CheckStatus::fail;
            rep.residual = std::string("exception: ") + e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        rep.elapsed_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.push_back(std::move(rep));
    }
    return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (r.status == CheckStatus::fail) return false;
    return true;
}

std::string to_json(const std::vector<CheckReport>& reports, bool with_timing) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json o;
        o["name"] = r.name;
        o["status"] = status_name(r.status);
        o["residual"] = r.residual;
        o["elapsed_ms"] = with_timing ? r.elapsed_ms : 0.0;
        o["citation"] = r.citation;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string to_markdown(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    os << "| check | status | residual | elapsed (ms) | citation |\n";
    os << "|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        os << "| " << r.name << " | " << status_name(r.status) << " | "
           << (r.residual.empty() ? "-" : r.residual) << " | "
           << static_cast<long>(r.elapsed_ms + 0.5) << " | " << r.citation
           << " |\n";
    }
    return os.str();
}

}  // namespace cforge
