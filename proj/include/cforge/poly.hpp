#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cforge/rational.hpp"

namespace cforge {

// Fixed variable set of the whole engine.  The first nine are the bosonic
// phase-space generators; d is the spatial dimension symbol, c the
// momentum-shift parameter, l the harmonic degree, eps the gauge parameter.
enum Var : int {
    V_S = 0,
    V_P,
    V_K,
    V_TH,    // theta
    V_PTH,   // pi_theta
    V_N1,
    V_B1,
    V_N2,
    V_B2,
    V_D,     // dimension symbol d
    V_C,     // shift parameter c
    V_L,     // harmonic degree l
    V_EPS,   // gauge parameter
    NVARS
};

constexpr int NGEN = 9;  // bosonic phase-space generators S..B2

const char* var_name(int v);

// Dense exponent vector; 16-bit exponents leave headroom for the denominator
// growth of nested bracket computations.
using Mono = std::array<std::uint16_t, NVARS>;

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = 0, db = 0;
        for (int k = 0; k < NVARS; ++k) {
            da += a[k];
            db += b[k];
        }
        if (da != db) return da < db;
        return a < b;  // graded lex
    }
};

// Multivariate polynomial over the Gaussian rationals in the fixed variables.
class Poly {
  public:
    using Terms = std::map<Mono, GaussRat, MonoLess>;

    Poly() = default;
    explicit Poly(const GaussRat& c);
    explicit Poly(long n) : Poly(GaussRat(n)) {}

    static Poly var(int v, int exp = 1);
    static Poly constant(const GaussRat& c) { return Poly(c); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const GaussRat& constant_term() const;

    const Terms& terms() const { return terms_; }
    void add_term(const Mono& m, const GaussRat& c);

    int degree(int v) const;
    int total_degree() const;

    // Leading term in the fixed monomial order.
    const std::pair<const Mono, GaussRat>& leading() const;

    Poly derivative(int v) const;
    Poly substitute(int v, const Poly& value) const;
    GaussRat evaluate(const std::array<GaussRat, NVARS>& point) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const GaussRat& c) const;
    Poly pow(int n) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

  private:
    Terms terms_;  // zero coefficients never stored
};

inline Poly operator+(Poly a, const Poly& b) { return a += b; }
inline Poly operator-(Poly a, const Poly& b) { return a -= b; }

// Exact multivariate division; nullopt if b does not divide a.
std::optional<Poly> try_divide(const Poly& a, const Poly& b);

// Multivariate GCD via primitive pseudo-remainder sequences, monic in the
// fixed monomial order.  gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

std::string to_string(const Poly& p);

}  // namespace cforge
