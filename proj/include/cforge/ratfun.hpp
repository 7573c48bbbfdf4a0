#pragma once

#include "cforge/poly.hpp"

namespace cforge {

// Fraction of polynomials, normalized by GCD cancellation with a monic
// denominator.  Equality testing always cross-multiplies, so it stays sound
// even if a cancellation was skipped.
class RatFun {
  public:
    RatFun() : num_(), den_(1L) {}
    RatFun(Poly n) : num_(std::move(n)), den_(1L) {}
    RatFun(Poly n, Poly d);
    explicit RatFun(long n) : num_(Poly(n)), den_(1L) {}
    explicit RatFun(const GaussRat& c) : num_(Poly(c)), den_(1L) {}

    static RatFun var(int v, int exp = 1) { return RatFun(Poly::var(v, exp)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun operator-() const;
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun inv() const;
    RatFun derivative(int v) const;
    RatFun substitute(int v, const Poly& value) const;
    GaussRat evaluate(const std::array<GaussRat, NVARS>& point) const;

    int degree(int v) const { return std::max(num_.degree(v), den_.degree(v)); }

    bool operator==(const RatFun& o) const;
    bool operator!=(const RatFun& o) const { return !(*this == o); }

  private:
    void normalize();

    Poly num_, den_;
};

std::string to_string(const RatFun& f);

}  // namespace cforge
