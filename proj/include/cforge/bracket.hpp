#pragma once

#include "cforge/scalar.hpp"

namespace cforge {

// thrown when a constraint pair fails the second-class condition
struct not_second_class : algebra_error {
    not_second_class() : algebra_error("constraint matrix is singular") {}
};

// Which canonical sector a bracket runs over.  Full is the physical bracket;
// FOnly restricts to the original phase space (q, pi), PhiOnly to the
// auxiliary pair (theta, pi_theta).  The BFT iteration needs the split ones.
enum class Sector { Full, FOnly, PhiOnly };

// Fundamental brackets among the invariant generators and against the
// component vectors q_i, pi_i.  Checked against the Jacobi identity once at
// startup (see verify_table_jacobi).
class BracketTable {
  public:
    explicit BracketTable(Sector sector = Sector::Full);

    // {x_a, x_b} for generator variables
    const ScalarExpr& gen_gen(int a, int b) const;
    // {x_a, q_i} and {x_a, pi_i} as VectorExpr in the free index
    const VectorExpr& gen_q(int a) const;
    const VectorExpr& gen_p(int a) const;
    // {q_i, pi_j} coefficient (delta_ij); zero in the Phi sector
    const ScalarExpr& q_p_delta() const { return qp_delta_; }

    Sector sector() const { return sector_; }

    static const BracketTable& full();
    static const BracketTable& f_only();
    static const BracketTable& phi_only();

  private:
    Sector sector_;
    ScalarExpr gen_gen_[NGEN][NGEN];
    VectorExpr gen_q_[NGEN], gen_p_[NGEN];
    ScalarExpr qp_delta_;
};

// Jacobi identity over all generator triples of the full table.
bool verify_table_jacobi();

ScalarExpr poisson(const ScalarExpr& f, const ScalarExpr& g,
                   const BracketTable& table = BracketTable::full());
VectorExpr poisson(const ScalarExpr& f, const VectorExpr& v,
                   const BracketTable& table = BracketTable::full());
VectorExpr poisson(const VectorExpr& v, const ScalarExpr& f,
                   const BracketTable& table = BracketTable::full());
Tensor2Expr poisson(const VectorExpr& v, const VectorExpr& w,
                    const BracketTable& table = BracketTable::full());

// Second-class pair (Omega_1, Omega_2) with its bracket matrix and exact
// 2x2 inverse.
class ConstraintSet {
  public:
    // the sphere constraints Omega_1 = S - 1, Omega_2 = P
    static ConstraintSet sphere();

    ConstraintSet(ScalarExpr omega1, ScalarExpr omega2);

    const ScalarExpr& omega(int a) const { return omega_[a]; }
    const ScalarExpr& delta(int a, int b) const { return delta_[a][b]; }
    const ScalarExpr& delta_inv(int a, int b) const { return delta_inv_[a][b]; }

  private:
    ScalarExpr omega_[2];
    ScalarExpr delta_[2][2], delta_inv_[2][2];
};

ScalarExpr dirac(const ScalarExpr& a, const ScalarExpr& b,
                 const ConstraintSet& cs);
VectorExpr dirac(const VectorExpr& v, const ScalarExpr& b,
                 const ConstraintSet& cs);
VectorExpr dirac(const ScalarExpr& a, const VectorExpr& w,
                 const ConstraintSet& cs);
Tensor2Expr dirac(const VectorExpr& v, const VectorExpr& w,
                  const ConstraintSet& cs);

// Expression after imposing the constraint surface S -> 1, P -> 0.  A
// distinct type: reduced values take part in no further bracket.
class ReducedExpr {
  public:
    explicit ReducedExpr(ScalarExpr value) : value_(std::move(value)) {}
    const ScalarExpr& value() const { return value_; }
    bool operator==(const ReducedExpr& o) const { return value_ == o.value_; }
    bool operator!=(const ReducedExpr& o) const { return !(*this == o); }
    bool is_zero() const { return value_.is_zero(); }

  private:
    ScalarExpr value_;
};

ReducedExpr reduce_on_shell(const ScalarExpr& e);

std::string to_string(const ReducedExpr& r);

}  // namespace cforge
