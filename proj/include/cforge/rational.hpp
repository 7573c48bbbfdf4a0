#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace cforge {

struct algebra_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : algebra_error {
    division_by_zero() : algebra_error("division by zero") {}
    explicit division_by_zero(const std::string& m) : algebra_error(m) {}
};

// Bad evaluation point: S = 0, zero denominator, or irrational root value.
struct point_error : algebra_error {
    using algebra_error::algebra_error;
};

// Exact Gaussian rational a + b*i with arbitrary-precision rational a, b.
struct GaussRat {
    mpq_class re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long n) : re(n), im(0) {}
    GaussRat(mpq_class r) : re(std::move(r)), im(0) {}
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat imaginary() { return GaussRat(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }

    GaussRat inv() const {
        mpq_class n = re * re + im * im;
        if (n == 0) throw division_by_zero("inverse of zero Gaussian rational");
        return GaussRat(re / n, -im / n);
    }

    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        mpq_class r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inv(); }
};

inline GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
inline GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
inline GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
inline GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
inline GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }
inline bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

std::string to_string(const mpq_class& q);
std::string to_string(const GaussRat& g);

// Exact rational square root; throws point_error if the argument is not a
// perfect square of a rational (or is negative).
mpq_class rational_sqrt(const mpq_class& q);

}  // namespace cforge
