#pragma once

#include <vector>

#include "cforge/ratfun.hpp"

namespace cforge {

struct PointAssignment;

// O(d)-invariant phase-space function: base + rad * R over the rational
// function field, where R is the algebraic root with R^2 = (S + 2*theta)/S.
// Powers R^k, k >= 2 are reduced on construction, so the R-degree is <= 1.
class ScalarExpr {
  public:
    ScalarExpr() = default;
    ScalarExpr(RatFun base) : base_(std::move(base)) {}
    ScalarExpr(RatFun base, RatFun rad)
        : base_(std::move(base)), rad_(std::move(rad)) {}
    explicit ScalarExpr(long n) : base_(n) {}
    explicit ScalarExpr(const GaussRat& c) : base_(c) {}

    static ScalarExpr gen(int v) { return ScalarExpr(RatFun::var(v)); }
    static ScalarExpr root();  // R itself
    static ScalarExpr imaginary() { return ScalarExpr(GaussRat::imaginary()); }

    // (S + 2*theta)/S as an element of the base field.
    static const RatFun& root_squared();

    const RatFun& base() const { return base_; }
    const RatFun& rad() const { return rad_; }
    bool has_root() const { return !rad_.is_zero(); }

    bool is_zero() const { return base_.is_zero() && rad_.is_zero(); }

    ScalarExpr operator+(const ScalarExpr& o) const;
    ScalarExpr operator-(const ScalarExpr& o) const;
    ScalarExpr operator*(const ScalarExpr& o) const;
    ScalarExpr operator/(const ScalarExpr& o) const;
    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }
    ScalarExpr& operator/=(const ScalarExpr& o) { return *this = *this / o; }

    ScalarExpr inv() const;
    ScalarExpr pow(int n) const;

    // Partial derivative with respect to a phase-space generator, extended
    // through the root: dR/dS = -theta/(S^2 R), dR/dtheta = 1/(S R).
    ScalarExpr derivative(int v) const;

    // Substitution for variables the root does not depend on (everything but
    // S and theta); throws on S or theta.
    ScalarExpr substitute(int v, const Poly& value) const;

    // theta -> 0 and pi_theta -> 0 with R -> 1.
    ScalarExpr at_aux_zero() const;

    GaussRat evaluate(const PointAssignment& pt) const;

    bool operator==(const ScalarExpr& o) const {
        return base_ == o.base_ && rad_ == o.rad_;
    }
    bool operator!=(const ScalarExpr& o) const { return !(*this == o); }

  private:
    RatFun base_, rad_;
};

// A * q_i + B * pi_i with scalar coefficients.
struct VectorExpr {
    ScalarExpr qc, pc;

    VectorExpr() = default;
    VectorExpr(ScalarExpr q, ScalarExpr p) : qc(std::move(q)), pc(std::move(p)) {}

    static VectorExpr q_vec() { return {ScalarExpr(1), ScalarExpr(0)}; }
    static VectorExpr p_vec() { return {ScalarExpr(0), ScalarExpr(1)}; }

    bool is_zero() const { return qc.is_zero() && pc.is_zero(); }
    VectorExpr operator+(const VectorExpr& o) const { return {qc + o.qc, pc + o.pc}; }
    VectorExpr operator-(const VectorExpr& o) const { return {qc - o.qc, pc - o.pc}; }
    VectorExpr operator-() const { return {-qc, -pc}; }
    VectorExpr scaled(const ScalarExpr& s) const { return {qc * s, pc * s}; }
    bool operator==(const VectorExpr& o) const { return qc == o.qc && pc == o.pc; }
    bool operator!=(const VectorExpr& o) const { return !(*this == o); }

    std::vector<GaussRat> evaluate(const PointAssignment& pt) const;
};

ScalarExpr dot(const VectorExpr& v, const VectorExpr& w);

// Coefficients over the basis {delta_ij, q_i q_j, q_i pi_j, pi_i q_j, pi_i pi_j}.
struct Tensor2Expr {
    ScalarExpr dd, qq, qp, pq, pp;

    bool is_zero() const {
        return dd.is_zero() && qq.is_zero() && qp.is_zero() && pq.is_zero() &&
               pp.is_zero();
    }
    Tensor2Expr operator+(const Tensor2Expr& o) const {
        return {dd + o.dd, qq + o.qq, qp + o.qp, pq + o.pq, pp + o.pp};
    }
    Tensor2Expr operator-(const Tensor2Expr& o) const {
        return {dd - o.dd, qq - o.qq, qp - o.qp, pq - o.pq, pp - o.pp};
    }
    bool operator==(const Tensor2Expr& o) const {
        return dd == o.dd && qq == o.qq && qp == o.qp && pq == o.pq && pp == o.pp;
    }
    bool operator!=(const Tensor2Expr& o) const { return !(*this == o); }

    // trace contraction with delta_ii = d
    ScalarExpr trace() const;

    std::vector<std::vector<GaussRat>> evaluate(const PointAssignment& pt) const;
};

// Outer product (a_q q_i + a_p pi_i)(b_q q_j + b_p pi_j).
Tensor2Expr outer(const VectorExpr& a, const VectorExpr& b);

// Concrete integer dimension plus exact rational phase-space values; the
// numeric-oracle side of every symbolic identity.
struct PointAssignment {
    int d0 = 3;
    std::vector<mpq_class> q, p;
    mpq_class theta = 0, pi_theta = 0;
    mpq_class n1 = 0, b1 = 0, n2 = 0, b2 = 0;
    mpq_class c = 0, l = 0, eps = 0;

    mpq_class s_val() const;
    mpq_class p_val() const;
    mpq_class k_val() const;

    // Throws point_error if S = 0.
    void validate() const;

    // Coordinates of the invariant generators (plus d, c, l, eps).
    std::array<GaussRat, NVARS> coords() const;

    // Rational value of R; throws point_error when irrational.
    mpq_class root_value() const;
};

// Degree-n homogeneity in {theta, pi_theta}; R-carrying expressions are
// never homogeneous.
bool aux_homogeneous(const ScalarExpr& e, int n);
bool aux_homogeneous(const VectorExpr& v, int n);

// Component of total degree n in {theta, pi_theta} via joint Taylor expansion.
ScalarExpr aux_component(const ScalarExpr& e, int n);
VectorExpr aux_component(const VectorExpr& v, int n);

std::string to_string(const ScalarExpr& e);
std::string to_string(const VectorExpr& v);
std::string to_string(const Tensor2Expr& t);

}  // namespace cforge
