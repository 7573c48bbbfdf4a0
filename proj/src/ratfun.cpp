#include "cforge/ratfun.hpp"

namespace cforge {

RatFun::RatFun(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw division_by_zero("zero denominator polynomial");
    normalize();
}

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1L);
        return;
    }
    if (!den_.is_constant()) {
        if (auto q = try_divide(num_, den_)) {
            num_ = *q;
            den_ = Poly(1L);
        }
    }
    if (!den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            if (auto qn = try_divide(num_, g)) {
                if (auto qd = try_divide(den_, g)) {
                    num_ = *qn;
                    den_ = *qd;
                }
            }
        }
    }
    GaussRat lead = den_.leading().second;
    if (!(lead == GaussRat(1))) {
        GaussRat inv = lead.inv();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

bool RatFun::is_one() const {
    return num_.is_constant() && den_.is_constant() &&
           num_.constant_term() == den_.constant_term() && !num_.is_zero();
}

namespace {

// a/b + s*c/d over the least common denominator b*(d/g), g = gcd(b, d).
// Chain-rule sums repeat the same denominator many times; cancelling g here
// keeps their degree from growing multiplicatively.
RatFun add_over_lcd(const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                    long s) {
    if (b == d) return RatFun(a + c.scaled(GaussRat(s)), b);
    Poly g = poly_gcd(b, d);
    if (!g.is_constant()) {
        auto cb = try_divide(b, g), cd = try_divide(d, g);
        if (cb && cd)
            return RatFun(a * *cd + (c * *cb).scaled(GaussRat(s)), b * *cd);
    }
    return RatFun(a * d + (c * b).scaled(GaussRat(s)), b * d);
}

}  // namespace

RatFun RatFun::operator+(const RatFun& o) const {
    return add_over_lcd(num_, den_, o.num_, o.den_, 1);
}

RatFun RatFun::operator-(const RatFun& o) const {
    return add_over_lcd(num_, den_, o.num_, o.den_, -1);
}

RatFun RatFun::operator*(const RatFun& o) const {
    return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.num_.is_zero()) throw division_by_zero("division by zero expression");
    return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun RatFun::inv() const {
    if (num_.is_zero()) throw division_by_zero("inverse of zero expression");
    return RatFun(den_, num_);
}

RatFun RatFun::derivative(int v) const {
    // quotient rule
    return RatFun(num_.derivative(v) * den_ - num_ * den_.derivative(v),
                  den_ * den_);
}

RatFun RatFun::substitute(int v, const Poly& value) const {
    Poly d = den_.substitute(v, value);
    if (d.is_zero())
        throw division_by_zero("substitution annihilates denominator");
    return RatFun(num_.substitute(v, value), d);
}

GaussRat RatFun::evaluate(const std::array<GaussRat, NVARS>& point) const {
    GaussRat d = den_.evaluate(point);
    if (d.is_zero()) throw point_error("denominator vanishes at point");
    return num_.evaluate(point) / d;
}

bool RatFun::operator==(const RatFun& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

std::string to_string(const RatFun& f) {
    if (f.den().is_constant() && f.den().constant_term() == GaussRat(1))
        return "(" + to_string(f.num()) + ")";
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace cforge
