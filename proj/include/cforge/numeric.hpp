#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cforge/bracket.hpp"

namespace cforge {

// --- componentwise bracket oracle ---------------------------------------
//
// Expands invariant expressions into explicit components q_1..q_d0,
// pi_1..pi_d0, theta, pi_theta, N^a, B_a at a concrete integer dimension and
// computes brackets by exact rational partial differentiation.  Fully
// independent of the chain-rule path in bracket.cpp.

// Dense-exponent polynomial in a runtime number of component variables.
class CPoly {
  public:
    using Key = std::vector<std::uint8_t>;

    explicit CPoly(int nvars) : nv_(nvars) {}
    CPoly(int nvars, const GaussRat& c);

    static CPoly variable(int nvars, int v);

    int nvars() const { return nv_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Key& k, const GaussRat& c);
    const std::map<Key, GaussRat>& terms() const { return terms_; }

    CPoly operator+(const CPoly& o) const;
    CPoly operator-(const CPoly& o) const;
    CPoly operator*(const CPoly& o) const;
    CPoly operator-() const;
    CPoly derivative(int v) const;
    GaussRat evaluate(const std::vector<GaussRat>& x) const;

  private:
    int nv_;
    std::map<Key, GaussRat> terms_;
};

// Unnormalized fraction of component polynomials; exact evaluation only.
struct CompFn {
    CPoly num, den;

    explicit CompFn(int nvars) : num(nvars), den(nvars, GaussRat(1)) {}
    CompFn(CPoly n, CPoly d) : num(std::move(n)), den(std::move(d)) {}

    CompFn operator+(const CompFn& o) const;
    CompFn operator-(const CompFn& o) const;
    CompFn operator*(const CompFn& o) const;
    CompFn operator/(const CompFn& o) const;
    CompFn derivative(int v) const;
    GaussRat evaluate(const std::vector<GaussRat>& x) const;
};

// Component expansion at fixed d0.  Variable layout:
// q_0..q_{d0-1}, pi_0..pi_{d0-1}, theta, pi_theta, N1, B1, N2, B2.
class ComponentSpace {
  public:
    explicit ComponentSpace(int d0);

    int d0() const { return d0_; }
    int nvars() const { return 2 * d0_ + 6; }
    int q_var(int i) const { return i; }
    int p_var(int i) const { return d0_ + i; }
    int theta_var() const { return 2 * d0_; }
    int pi_theta_var() const { return 2 * d0_ + 1; }

    CompFn q(int i) const;
    CompFn p(int i) const;

    // Expands an R-free scalar; d, c, l, eps substitute their values in pt.
    CompFn expand(const ScalarExpr& e, const PointAssignment& pt) const;

    // Canonical Poisson bracket by explicit partial derivatives, evaluated
    // exactly at the point x.  Pointwise on purpose: symbolic sums over 2d0+6
    // unreduced fractions would blow up, exact values cannot.
    GaussRat bracket_at(const CompFn& a, const CompFn& b,
                        const std::vector<GaussRat>& x) const;

    // Dirac bracket with respect to the sphere pair, componentwise at x.
    GaussRat dirac_at(const CompFn& a, const CompFn& b,
                      const PointAssignment& pt,
                      const std::vector<GaussRat>& x) const;

    std::vector<GaussRat> point_values(const PointAssignment& pt) const;

  private:
    int d0_;
};

// One mismatch found by the oracle run.
struct OracleMismatch {
    std::string identity;
    int d0 = 0;
    long trial = 0;
};

// Componentwise verification of the advertised bracket identities at random
// rational points; rejected points (S = 0) are resampled, never skipped.
std::vector<OracleMismatch> run_bracket_oracle(int trials,
                                               const std::vector<int>& d0_set,
                                               std::uint64_t seed,
                                               bool parallel = true);

// --- finite-difference Laplacian on the circle --------------------------

// Periodic second-difference operator on N points of [0, 2pi); the d = 2
// numeric stand-in for the sphere Laplacian.
class CircleGrid {
  public:
    explicit CircleGrid(int n);

    int size() const { return n_; }
    double spacing() const;

    // k smallest eigenvalues of -(1/h^2) * second difference, ascending.
    std::vector<double> eigenvalues(int k, bool parallel = true) const;

    // analytic circulant spectrum (4/h^2) sin^2(pi m / N), sorted ascending
    std::vector<double> analytic_spectrum(int k) const;

  private:
    int n_;
};

}  // namespace cforge
