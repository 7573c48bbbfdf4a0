#include "cforge/bracket.hpp"

namespace cforge {

BracketTable::BracketTable(Sector sector) : sector_(sector) {
    auto set = [this](int a, int b, ScalarExpr v) {
        gen_gen_[a][b] = v;
        gen_gen_[b][a] = -v;
    };
    ScalarExpr S = ScalarExpr::gen(V_S), P = ScalarExpr::gen(V_P),
               K = ScalarExpr::gen(V_K);
    if (sector != Sector::PhiOnly) {
        set(V_S, V_P, ScalarExpr(2) * S);
        set(V_S, V_K, ScalarExpr(4) * P);
        set(V_P, V_K, ScalarExpr(2) * K);
        gen_q_[V_P] = {ScalarExpr(-1), ScalarExpr(0)};
        gen_q_[V_K] = {ScalarExpr(0), ScalarExpr(-2)};
        gen_p_[V_S] = {ScalarExpr(2), ScalarExpr(0)};
        gen_p_[V_P] = {ScalarExpr(0), ScalarExpr(1)};
        qp_delta_ = ScalarExpr(1);
    }
    if (sector != Sector::FOnly)
        set(V_TH, V_PTH, ScalarExpr(1));
    if (sector == Sector::Full) {
        set(V_N1, V_B1, ScalarExpr(1));
        set(V_N2, V_B2, ScalarExpr(1));
    }
}

const ScalarExpr& BracketTable::gen_gen(int a, int b) const {
    return gen_gen_[a][b];
}
const VectorExpr& BracketTable::gen_q(int a) const { return gen_q_[a]; }
const VectorExpr& BracketTable::gen_p(int a) const { return gen_p_[a]; }

const BracketTable& BracketTable::full() {
    static const BracketTable t(Sector::Full);
    return t;
}
const BracketTable& BracketTable::f_only() {
    static const BracketTable t(Sector::FOnly);
    return t;
}
const BracketTable& BracketTable::phi_only() {
    static const BracketTable t(Sector::PhiOnly);
    return t;
}

ScalarExpr poisson(const ScalarExpr& f, const ScalarExpr& g,
                   const BracketTable& table) {
    std::array<ScalarExpr, NGEN> df, dg;
    std::array<bool, NGEN> fz{}, gz{};
    for (int a = 0; a < NGEN; ++a) {
        df[a] = f.derivative(a);
        fz[a] = df[a].is_zero();
        dg[a] = g.derivative(a);
        gz[a] = dg[a].is_zero();
    }
    ScalarExpr out(0);
    for (int a = 0; a < NGEN; ++a) {
        if (fz[a]) continue;
        for (int b = 0; b < NGEN; ++b) {
            if (gz[b]) continue;
            const ScalarExpr& br = table.gen_gen(a, b);
            if (br.is_zero()) continue;
            out += df[a] * dg[b] * br;
        }
    }
    return out;
}

namespace {

// {f, q_.} and {f, pi_.} via the chain rule, as vectors in the free index.
VectorExpr chain_q(const ScalarExpr& f, const BracketTable& table) {
    VectorExpr out;
    for (int a = 0; a < NGEN; ++a) {
        const VectorExpr& e = table.gen_q(a);
        if (e.is_zero()) continue;
        ScalarExpr df = f.derivative(a);
        if (df.is_zero()) continue;
        out = out + e.scaled(df);
    }
    return out;
}

VectorExpr chain_p(const ScalarExpr& f, const BracketTable& table) {
    VectorExpr out;
    for (int a = 0; a < NGEN; ++a) {
        const VectorExpr& e = table.gen_p(a);
        if (e.is_zero()) continue;
        ScalarExpr df = f.derivative(a);
        if (df.is_zero()) continue;
        out = out + e.scaled(df);
    }
    return out;
}

}  // namespace

VectorExpr poisson(const ScalarExpr& f, const VectorExpr& v,
                   const BracketTable& table) {
    VectorExpr fq = chain_q(f, table), fp = chain_p(f, table);
    VectorExpr out;
    out.qc = poisson(f, v.qc, table) + v.qc * fq.qc + v.pc * fp.qc;
    out.pc = poisson(f, v.pc, table) + v.qc * fq.pc + v.pc * fp.pc;
    return out;
}

VectorExpr poisson(const VectorExpr& v, const ScalarExpr& f,
                   const BracketTable& table) {
    return -poisson(f, v, table);
}

Tensor2Expr poisson(const VectorExpr& v, const VectorExpr& w,
                    const BracketTable& table) {
    const ScalarExpr &A = v.qc, &B = v.pc, &C = w.qc, &D = w.pc;
    Tensor2Expr t;
    t.qq = poisson(A, C, table);
    t.qp = poisson(A, D, table);
    t.pq = poisson(B, C, table);
    t.pp = poisson(B, D, table);

    VectorExpr Aq = chain_q(A, table), Ap = chain_p(A, table);
    VectorExpr Bq = chain_q(B, table), Bp = chain_p(B, table);
    VectorExpr Cq = chain_q(C, table), Cp = chain_p(C, table);
    VectorExpr Dq = chain_q(D, table), Dp = chain_p(D, table);

    // second factor's coefficients bracketed with q_j, pi_j
    t.qq += C * Aq.qc + D * Ap.qc;
    t.qp += C * Aq.pc + D * Ap.pc;
    t.pq += C * Bq.qc + D * Bp.qc;
    t.pp += C * Bq.pc + D * Bp.pc;

    // first factor's component vectors bracketed with C, D
    t.qq -= A * Cq.qc + B * Cp.qc;
    t.pq -= A * Cq.pc + B * Cp.pc;
    t.qp -= A * Dq.qc + B * Dp.qc;
    t.pp -= A * Dq.pc + B * Dp.pc;

    // canonical {q_i, pi_j} = delta_ij
    t.dd = (A * D - B * C) * table.q_p_delta();
    return t;
}

bool verify_table_jacobi() {
    for (int a = 0; a < NGEN; ++a)
        for (int b = a + 1; b < NGEN; ++b)
            for (int c = b + 1; c < NGEN; ++c) {
                ScalarExpr xa = ScalarExpr::gen(a), xb = ScalarExpr::gen(b),
                           xc = ScalarExpr::gen(c);
                ScalarExpr j = poisson(xa, poisson(xb, xc)) +
                               poisson(xb, poisson(xc, xa)) +
                               poisson(xc, poisson(xa, xb));
                if (!j.is_zero()) return false;
            }
    return true;
}

ConstraintSet ConstraintSet::sphere() {
    return ConstraintSet(ScalarExpr::gen(V_S) - ScalarExpr(1),
                         ScalarExpr::gen(V_P));
}

ConstraintSet::ConstraintSet(ScalarExpr omega1, ScalarExpr omega2)
    : omega_{std::move(omega1), std::move(omega2)} {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) delta_[a][b] = poisson(omega_[a], omega_[b]);
    ScalarExpr det = delta_[0][0] * delta_[1][1] - delta_[0][1] * delta_[1][0];
    if (det.is_zero()) throw not_second_class();
    delta_inv_[0][0] = delta_[1][1] / det;
    delta_inv_[0][1] = -(delta_[0][1] / det);
    delta_inv_[1][0] = -(delta_[1][0] / det);
    delta_inv_[1][1] = delta_[0][0] / det;
}

ScalarExpr dirac(const ScalarExpr& a, const ScalarExpr& b,
                 const ConstraintSet& cs) {
    ScalarExpr out = poisson(a, b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ScalarExpr lhs = poisson(a, cs.omega(i));
            if (lhs.is_zero()) continue;
            out -= lhs * cs.delta_inv(i, j) * poisson(cs.omega(j), b);
        }
    return out;
}

VectorExpr dirac(const VectorExpr& v, const ScalarExpr& b,
                 const ConstraintSet& cs) {
    VectorExpr out = poisson(v, b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            VectorExpr lhs = poisson(v, cs.omega(i));
            if (lhs.is_zero()) continue;
            out = out - lhs.scaled(cs.delta_inv(i, j) * poisson(cs.omega(j), b));
        }
    return out;
}

VectorExpr dirac(const ScalarExpr& a, const VectorExpr& w,
                 const ConstraintSet& cs) {
    VectorExpr out = poisson(a, w);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ScalarExpr lhs = poisson(a, cs.omega(i));
            if (lhs.is_zero()) continue;
            out = out - poisson(cs.omega(j), w).scaled(lhs * cs.delta_inv(i, j));
        }
    return out;
}

Tensor2Expr dirac(const VectorExpr& v, const VectorExpr& w,
                  const ConstraintSet& cs) {
    Tensor2Expr out = poisson(v, w);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            VectorExpr lhs = poisson(v, cs.omega(i));
            if (lhs.is_zero()) continue;
            VectorExpr rhs = poisson(cs.omega(j), w);
            out = out - outer(lhs.scaled(cs.delta_inv(i, j)), rhs);
        }
    return out;
}

ReducedExpr reduce_on_shell(const ScalarExpr& e) {
    auto reduce = [](const RatFun& f) {
        return f.substitute(V_S, Poly(1L)).substitute(V_P, Poly());
    };
    return ReducedExpr(ScalarExpr(reduce(e.base()), reduce(e.rad())));
}

std::string to_string(const ReducedExpr& r) { return to_string(r.value()); }

}  // namespace cforge
