#pragma once

#include <cstdint>
#include <optional>

#include "cforge/bft.hpp"

namespace cforge {

// Odd generators in canonical order; lambda is the anticommuting BRST
// parameter, the rest are the ghost pairs (C^a, Pbar_a), (P^a, Cbar_a).
enum Ghost : int {
    G_LAMBDA = 0,
    G_C1,
    G_C2,
    G_PBAR1,
    G_PBAR2,
    G_P1,
    G_P2,
    G_CBAR1,
    G_CBAR2,
    NGHOST
};

const char* ghost_name(int g);
int ghost_number_of(int g);  // +1 for C, P; -1 for Cbar, Pbar and lambda

// Element of the graded algebra: sum of (even ScalarExpr coefficient) x
// (square-free ghost monomial); monomials are kept in canonical order with
// sign tracking, so equality is coefficient-map equality.
class GradedExpr {
  public:
    using Mask = std::uint16_t;

    GradedExpr() = default;

    static GradedExpr scalar(ScalarExpr c);
    static GradedExpr ghost(int g);

    const std::map<Mask, ScalarExpr>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GradedExpr operator+(const GradedExpr& o) const;
    GradedExpr operator-(const GradedExpr& o) const;
    GradedExpr operator*(const GradedExpr& o) const;
    GradedExpr operator-() const;

    bool operator==(const GradedExpr& o) const { return terms_ == o.terms_; }
    bool operator!=(const GradedExpr& o) const { return !(*this == o); }

    // 0 or 1; throws on parity-mixed sums
    int parity() const;
    // common ghost number, nullopt if inhomogeneous (zero counts as any)
    std::optional<int> ghost_number() const;
    // coefficient of the ghost-free monomial
    ScalarExpr at_ghost_zero() const;

    void add_term(Mask m, const ScalarExpr& c);

  private:
    std::map<Mask, ScalarExpr> terms_;
};

// Graded bracket {A,B} = dA/dq|_r dB/dp|_l - (-1)^{eta_A eta_B} dB/dq|_r
// dA/dp|_l over the bosonic table pairs and the four ghost pairs.
GradedExpr super_poisson(const GradedExpr& a, const GradedExpr& b);

struct Charges {
    GradedExpr q;    // BRST charge, ghost number +1
    GradedExpr psi;  // gauge-fixing fermion in the unitary gauge, -1
    GradedExpr h_m;  // minimal Hamiltonian, 0
};

Charges build_charges();

// Same charges built on the second-class constraints; the negative control
// for {Q,Q} = 0.
GradedExpr second_class_brst_charge();

// delta_B F = {F, lambda Q}; the displayed transformation rules fix this
// placement of lambda.
GradedExpr brst_transform(const GradedExpr& f);
GradedExpr brst_transform(const ScalarExpr& f);

struct GradedCheck {
    std::string name;
    bool ok = false;
    GradedExpr residual;
};

// {Q,Q}, {Q,H_m}, {{Psi,Q},Q}, all expected zero.
std::vector<GradedCheck> verify_brst_relations();

std::string to_string(const GradedExpr& e);

}  // namespace cforge
