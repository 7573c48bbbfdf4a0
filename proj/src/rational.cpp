#include "cforge/rational.hpp"

namespace cforge {

std::string to_string(const mpq_class& q) { return q.get_str(); }

std::string to_string(const GaussRat& g) {
    if (g.im == 0) return to_string(g.re);
    if (g.re == 0) {
        if (g.im == 1) return "i";
        if (g.im == -1) return "-i";
        return to_string(g.im) + "*i";
    }
    std::string s = to_string(g.re);
    if (g.im > 0)
        s += "+" + (g.im == 1 ? std::string("i") : to_string(g.im) + "*i");
    else
        s += "-" + (g.im == -1 ? std::string("i") : to_string(-g.im) + "*i");
    return s;
}

mpq_class rational_sqrt(const mpq_class& q) {
    if (q < 0) throw point_error("square root of negative rational");
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (rn * rn != num || rd * rd != den)
        throw point_error("irrational square root: " + q.get_str());
    return mpq_class(rn) / mpq_class(rd);
}

}  // namespace cforge
