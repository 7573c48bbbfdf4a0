#include "cforge/scalar.hpp"

namespace cforge {

const RatFun& ScalarExpr::root_squared() {
    static const RatFun rsq(Poly::var(V_S) + Poly::var(V_TH).scaled(GaussRat(2)),
                            Poly::var(V_S));
    return rsq;
}

ScalarExpr ScalarExpr::root() { return ScalarExpr(RatFun(0L), RatFun(1L)); }

ScalarExpr ScalarExpr::operator+(const ScalarExpr& o) const {
    return ScalarExpr(base_ + o.base_, rad_ + o.rad_);
}

ScalarExpr ScalarExpr::operator-(const ScalarExpr& o) const {
    return ScalarExpr(base_ - o.base_, rad_ - o.rad_);
}

ScalarExpr ScalarExpr::operator*(const ScalarExpr& o) const {
    return ScalarExpr(base_ * o.base_ + rad_ * o.rad_ * root_squared(),
                      base_ * o.rad_ + rad_ * o.base_);
}

ScalarExpr ScalarExpr::inv() const {
    if (is_zero()) throw division_by_zero("inverse of zero expression");
    if (rad_.is_zero()) return ScalarExpr(base_.inv());
    // (a + b R)^-1 = (a - b R) / (a^2 - b^2 R^2)
    RatFun d = base_ * base_ - rad_ * rad_ * root_squared();
    if (d.is_zero())
        throw algebra_error("degenerate root extension in inverse");
    return ScalarExpr(base_ / d, -(rad_ / d));
}

ScalarExpr ScalarExpr::operator/(const ScalarExpr& o) const {
    return *this * o.inv();
}

ScalarExpr ScalarExpr::operator-() const { return ScalarExpr(-base_, -rad_); }

ScalarExpr ScalarExpr::pow(int n) const {
    if (n < 0) return inv().pow(-n);
    ScalarExpr r(1);
    for (int k = 0; k < n; ++k) r *= *this;
    return r;
}

ScalarExpr ScalarExpr::derivative(int v) const {
    ScalarExpr r(base_.derivative(v), rad_.derivative(v));
    if (!rad_.is_zero()) {
        // dR/dv = R * rfac(v)
        RatFun rfac;
        Poly S = Poly::var(V_S);
        Poly radicand = S + Poly::var(V_TH).scaled(GaussRat(2));
        if (v == V_S)
            rfac = RatFun(-Poly::var(V_TH), S * radicand);
        else if (v == V_TH)
            rfac = RatFun(Poly(1L), radicand);
        if (!rfac.is_zero()) r = r + ScalarExpr(RatFun(0L), rad_ * rfac);
    }
    return r;
}

ScalarExpr ScalarExpr::substitute(int v, const Poly& value) const {
    if (!rad_.is_zero() && (v == V_S || v == V_TH))
        throw algebra_error("substitution into the root's radicand");
    return ScalarExpr(base_.substitute(v, value), rad_.substitute(v, value));
}

ScalarExpr ScalarExpr::at_aux_zero() const {
    RatFun b = base_.substitute(V_TH, Poly()).substitute(V_PTH, Poly());
    RatFun r = rad_.substitute(V_TH, Poly()).substitute(V_PTH, Poly());
    return ScalarExpr(b + r);  // R -> 1 at theta = 0
}

GaussRat ScalarExpr::evaluate(const PointAssignment& pt) const {
    pt.validate();
    auto coords = pt.coords();
    GaussRat v = base_.evaluate(coords);
    if (!rad_.is_zero()) {
        GaussRat rc = rad_.evaluate(coords);
        if (!rc.is_zero()) v += rc * GaussRat(pt.root_value());
    }
    return v;
}

ScalarExpr dot(const VectorExpr& v, const VectorExpr& w) {
    ScalarExpr S = ScalarExpr::gen(V_S), P = ScalarExpr::gen(V_P),
               K = ScalarExpr::gen(V_K);
    return v.qc * w.qc * S + (v.qc * w.pc + v.pc * w.qc) * P + v.pc * w.pc * K;
}

ScalarExpr Tensor2Expr::trace() const {
    return dd * ScalarExpr::gen(V_D) + qq * ScalarExpr::gen(V_S) +
           (qp + pq) * ScalarExpr::gen(V_P) + pp * ScalarExpr::gen(V_K);
}

Tensor2Expr outer(const VectorExpr& a, const VectorExpr& b) {
    return {ScalarExpr(0), a.qc * b.qc, a.qc * b.pc, a.pc * b.qc, a.pc * b.pc};
}

std::vector<GaussRat> VectorExpr::evaluate(const PointAssignment& pt) const {
    GaussRat a = qc.evaluate(pt), b = pc.evaluate(pt);
    std::vector<GaussRat> out(pt.d0);
    for (int i = 0; i < pt.d0; ++i)
        out[i] = a * GaussRat(pt.q[i]) + b * GaussRat(pt.p[i]);
    return out;
}

std::vector<std::vector<GaussRat>> Tensor2Expr::evaluate(
    const PointAssignment& pt) const {
    GaussRat vdd = dd.evaluate(pt), vqq = qq.evaluate(pt), vqp = qp.evaluate(pt),
             vpq = pq.evaluate(pt), vpp = pp.evaluate(pt);
    std::vector<std::vector<GaussRat>> out(pt.d0,
                                           std::vector<GaussRat>(pt.d0));
    for (int i = 0; i < pt.d0; ++i)
        for (int j = 0; j < pt.d0; ++j) {
            GaussRat v = vqq * GaussRat(pt.q[i] * pt.q[j]) +
                         vqp * GaussRat(pt.q[i] * pt.p[j]) +
                         vpq * GaussRat(pt.p[i] * pt.q[j]) +
                         vpp * GaussRat(pt.p[i] * pt.p[j]);
            if (i == j) v += vdd;
            out[i][j] = v;
        }
    return out;
}

mpq_class PointAssignment::s_val() const {
    mpq_class s = 0;
    for (const auto& x : q) s += x * x;
    return s;
}

mpq_class PointAssignment::p_val() const {
    mpq_class v = 0;
    for (std::size_t i = 0; i < q.size(); ++i) v += q[i] * p[i];
    return v;
}

mpq_class PointAssignment::k_val() const {
    mpq_class v = 0;
    for (const auto& x : p) v += x * x;
    return v;
}

void PointAssignment::validate() const {
    if (static_cast<int>(q.size()) != d0 || static_cast<int>(p.size()) != d0)
        throw point_error("component count does not match d0");
    if (s_val() == 0) throw point_error("S vanishes at point");
}

std::array<GaussRat, NVARS> PointAssignment::coords() const {
    std::array<GaussRat, NVARS> a;
    a[V_S] = GaussRat(s_val());
    a[V_P] = GaussRat(p_val());
    a[V_K] = GaussRat(k_val());
    a[V_TH] = GaussRat(theta);
    a[V_PTH] = GaussRat(pi_theta);
    a[V_N1] = GaussRat(n1);
    a[V_B1] = GaussRat(b1);
    a[V_N2] = GaussRat(n2);
    a[V_B2] = GaussRat(b2);
    a[V_D] = GaussRat(mpq_class(d0));
    a[V_C] = GaussRat(c);
    a[V_L] = GaussRat(l);
    a[V_EPS] = GaussRat(eps);
    return a;
}

mpq_class PointAssignment::root_value() const {
    mpq_class s = s_val();
    if (s == 0) throw point_error("S vanishes at point");
    mpq_class radicand = (s + 2 * theta) / s;
    if (radicand <= 0) throw point_error("nonpositive radicand for R");
    return rational_sqrt(radicand);
}

namespace {

bool ratfun_aux_homogeneous(const RatFun& f, int n) {
    if (f.den().degree(V_TH) != 0 || f.den().degree(V_PTH) != 0) return false;
    for (const auto& [m, c] : f.num().terms())
        if (m[V_TH] + m[V_PTH] != n) return false;
    return true;
}

}  // namespace

bool aux_homogeneous(const ScalarExpr& e, int n) {
    if (e.has_root()) return false;
    return ratfun_aux_homogeneous(e.base(), n);
}

bool aux_homogeneous(const VectorExpr& v, int n) {
    return aux_homogeneous(v.qc, n) && aux_homogeneous(v.pc, n);
}

ScalarExpr aux_component(const ScalarExpr& e, int n) {
    ScalarExpr out(0);
    // pi_theta enters every expression here polynomially, theta through the
    // root as well; expand jointly and keep total degree n.
    for (int k = 0; k <= n; ++k) {
        int j = n - k;
        ScalarExpr der = e;
        for (int t = 0; t < j; ++t) der = der.derivative(V_TH);
        for (int t = 0; t < k; ++t) der = der.derivative(V_PTH);
        der = der.at_aux_zero();
        if (der.is_zero()) continue;
        mpq_class fact = 1;
        for (int t = 2; t <= j; ++t) fact *= t;
        for (int t = 2; t <= k; ++t) fact *= t;
        ScalarExpr mono = ScalarExpr::gen(V_TH).pow(j) *
                          ScalarExpr::gen(V_PTH).pow(k) *
                          ScalarExpr(GaussRat(mpq_class(1) / fact));
        out += der * mono;
    }
    return out;
}

VectorExpr aux_component(const VectorExpr& v, int n) {
    return {aux_component(v.qc, n), aux_component(v.pc, n)};
}

std::string to_string(const ScalarExpr& e) {
    if (e.is_zero()) return "0";
    if (e.rad().is_zero()) return to_string(e.base());
    std::string s;
    if (!e.base().is_zero()) s = to_string(e.base()) + " + ";
    s += to_string(e.rad()) + "*R";
    return s;
}

std::string to_string(const VectorExpr& v) {
    return to_string(v.qc) + "*q[i] + " + to_string(v.pc) + "*pi[i]";
}

std::string to_string(const Tensor2Expr& t) {
    return to_string(t.dd) + "*delta[ij] + " + to_string(t.qq) + "*q[i]q[j] + " +
           to_string(t.qp) + "*q[i]pi[j] + " + to_string(t.pq) +
           "*pi[i]q[j] + " + to_string(t.pp) + "*pi[i]pi[j]";
}

}  // namespace cforge
