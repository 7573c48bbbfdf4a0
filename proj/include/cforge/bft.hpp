#pragma once

#include "cforge/bracket.hpp"

namespace cforge {

// Conversion data: omega^{ab} = eps^{ab} and X_ab = diag(2, -S), the choice
// that terminates the constraint series at first order.
struct BftConfig {
    int order = 6;

    static ScalarExpr x(int a, int b);        // X_ab
    static ScalarExpr x_inv(int a, int b);    // X^{ab}, inverse matrix
    static GaussRat omega_upper(int a, int b);  // eps^{ab}, eps^{12} = +1
    static GaussRat omega_lower(int a, int b);  // inverse of eps^{ab}
};

// Zeroth-order condition X omega X^T = -Delta, checked exactly.
bool verify_x_omega_condition();

// Omega~_1 = Omega_1 + 2*theta, Omega~_2 = Omega_2 - S*pi_theta.
std::pair<ScalarExpr, ScalarExpr> first_class_constraints();

// Terms F^(0)..F^(N) of a converted field; term n is homogeneous of degree n
// in {theta, pi_theta}.
class FieldSeries {
  public:
    explicit FieldSeries(std::vector<VectorExpr> terms)
        : terms_(std::move(terms)) {}

    int order() const { return static_cast<int>(terms_.size()) - 1; }
    const VectorExpr& term(int n) const { return terms_.at(n); }
    VectorExpr partial_sum(int n) const;
    VectorExpr sum() const { return partial_sum(order()); }

  private:
    std::vector<VectorExpr> terms_;
};

// Iterative construction of the first-class field from a seed in {q_i, pi_i}.
FieldSeries iterate_field(const VectorExpr& seed, const BftConfig& cfg = {});

// Resummed fields: q~ = R*q_i, pi~ = (pi_i - q_i*pi_theta)*S*R/(S+2*theta).
std::pair<VectorExpr, VectorExpr> closed_form_fields();

// (H~, H~') with H~' = H~ + pi_theta * Omega~_2.
std::pair<ScalarExpr, ScalarExpr> first_class_hamiltonians();

// Gauge transformation generated by Omega~_2 with parameter eps.
ScalarExpr gauge_transform(const ScalarExpr& f);
VectorExpr gauge_transform(const VectorExpr& v);

}  // namespace cforge
