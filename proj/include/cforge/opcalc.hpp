#pragma once

#include <string>
#include <vector>

#include "cforge/scalar.hpp"

namespace cforge {

// One multiplicative factor of an operator word.  Index labels are small
// non-negative ints for user indices; the engine generates negative labels
// for bound (contracted) indices.
struct OpFactor {
    enum Kind { Fun, Qup, Dup, E, L, Delta } kind;
    RatFun f;       // Fun payload: rational function of S, d, c
    int a = 0, b = 0;  // index labels (Qup/Dup use a; Delta uses a, b)

    static OpFactor fun(RatFun v) { return {Fun, std::move(v), 0, 0}; }
    static OpFactor fun(long n) { return fun(RatFun(n)); }
    static OpFactor q(int label) { return {Qup, RatFun(), label, 0}; }
    static OpFactor d(int label) { return {Dup, RatFun(), label, 0}; }
    static OpFactor euler() { return {E, RatFun(), 0, 0}; }
    static OpFactor laplace() { return {L, RatFun(), 0, 0}; }
    static OpFactor delta(int la, int lb) { return {Delta, RatFun(), la, lb}; }
};

// Juxtaposition of factors = operator composition, leftmost acts last.
struct OpWord {
    std::vector<OpFactor> factors;

    OpWord() = default;
    OpWord(std::initializer_list<OpFactor> fs) : factors(fs) {}
};

// Formal sum of words.
using OpSum = std::vector<OpWord>;

// Normal-form key: delta factors, free q/∂ indices (all sorted), then E^e L^l.
// The denoted operator is coef · Πδ · Πq↑ · Π∂↑ · E^e · L^l.
struct NKey {
    std::vector<std::pair<int, int>> deltas;
    std::vector<int> qs, ds;
    int e = 0, l = 0;

    auto operator<=>(const NKey&) const = default;
};

// Sum of normal-form terms with rational-function coefficients; two NormalOps
// are equal iff their coefficient maps are equal.
class NormalOp {
  public:
    using Terms = std::map<NKey, RatFun>;

    NormalOp() = default;

    void add(const NKey& k, const RatFun& c);
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool fully_contracted() const;

    RatFun coefficient(const NKey& k) const;

    NormalOp operator+(const NormalOp& o) const;
    NormalOp operator-(const NormalOp& o) const;
    NormalOp scaled(const RatFun& c) const;

    bool operator==(const NormalOp& o) const { return terms_ == o.terms_; }
    bool operator!=(const NormalOp& o) const { return !(*this == o); }

  private:
    Terms terms_;
};

// Exhaustive rewriting to the unique normal form.
NormalOp normal_order(const OpWord& w);
NormalOp normal_order(const OpSum& s);

// Operator product; bound labels of each word are renamed apart first, so
// repeated free labels across the operands contract in the product.
OpSum product(const OpSum& a, const OpSum& b);
OpSum commutator(const OpSum& a, const OpSum& b);
OpSum scaled(const OpSum& s, const RatFun& c);

// pi_i = -i(delta_ij - q_i q_j/S) ∂_j with free label `label`.
OpSum momentum_pi(int label);
// Pi_i = pi_i - i c q_i/S.
OpSum momentum_pi_shifted(int label);
// Weyl-symmetrized Pi_i^N = -(i/2)[(δ-qq/S)∂ + ∂(δ-qq/S) + 2c q/S].
OpSum momentum_pi_weyl(int label);

struct CommutatorCheck {
    std::string name;
    bool ok = false;
    NormalOp residual;  // zero on success, counterexample otherwise
};

// The Eq.-3 commutator set for pi_i and for the shifted Pi_i.
std::vector<CommutatorCheck> verify_quantum_commutators();

// Normal-ordered Pi_i^N Pi_i^N with symbolic c.
NormalOp build_weyl_product();

// Eigenvalue polynomial on harmonic h of degree l: L -> 0, E -> l, S -> 1.
// Requires a fully contracted normal form.
ScalarExpr apply_to_harmonic(const NormalOp& op);

std::string to_string(const NKey& k);
std::string to_string(const NormalOp& op);

}  // namespace cforge
