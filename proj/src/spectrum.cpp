#include <stdexcept>

#include "cforge/spectrum.hpp"

namespace cforge {

namespace {

ScalarExpr casimir() {
    ScalarExpr l = ScalarExpr::gen(V_L), d = ScalarExpr::gen(V_D);
    return l * (l + d - ScalarExpr(2));
}

ScalarExpr half(const ScalarExpr& e) {
    return e * ScalarExpr(RatFun(GaussRat(mpq_class(1, 2))));
}

}  // namespace

ScalarExpr energy_dirac() {
    ScalarExpr d = ScalarExpr::gen(V_D), c = ScalarExpr::gen(V_C);
    ScalarExpr quarter(RatFun(GaussRat(mpq_class(1, 4))));
    return half(casimir() + (d - ScalarExpr(1)).pow(2) * quarter - c * c);
}

ScalarExpr energy_bft() {
    ScalarExpr d = ScalarExpr::gen(V_D);
    ScalarExpr quarter(RatFun(GaussRat(mpq_class(1, 4))));
    return half(casimir() + d * (d - ScalarExpr(3)) * quarter);
}

mpq_class energy_dirac_at(long l, long d, const mpq_class& c_squared) {
    mpq_class e = l * (l + d - 2) + mpq_class(d - 1) * (d - 1) / 4 - c_squared;
    return e / 2;
}

mpq_class energy_bft_at(long l, long d) {
    mpq_class e = l * (l + d - 2) + mpq_class(d) * (d - 3) / 4;
    return e / 2;
}

RatFun fix_c(const ScalarExpr& dirac, const ScalarExpr& bft) {
    ScalarExpr diff = dirac - bft;
    if (diff.has_root()) throw algebra_error("fix_c: unexpected root term");
    // diff must be a(d) * c^2 + b(d): even and quadratic in c, with the
    // l-dependence cancelling between the two formulas
    ScalarExpr a = half(diff.derivative(V_C).derivative(V_C));
    ScalarExpr c = ScalarExpr::gen(V_C);
    ScalarExpr b = diff.substitute(V_C, Poly());
    if (a.is_zero() || !a.derivative(V_C).is_zero() ||
        !a.derivative(V_L).is_zero() || diff != a * c * c + b ||
        !b.derivative(V_L).is_zero())
        throw algebra_error("fix_c: no l-independent solution for c^2");
    ScalarExpr c2 = -(b / a);
    // explicit consistency check: substituting the solution kills diff
    if (!(a * c2 + b).is_zero())
        throw algebra_error("fix_c: solution fails verification");
    return c2.base();
}

RatFun fix_c() { return fix_c(energy_dirac(), energy_bft()); }

std::vector<SpectrumRow> spectrum_table(long d, long l_max,
                                        std::optional<mpq_class> c_value) {
    if (d < 2) throw std::invalid_argument("spectrum_table: d must be >= 2");
    if (l_max < 0) throw std::invalid_argument("spectrum_table: l_max < 0");
    mpq_class c2 =
        c_value ? mpq_class(*c_value * *c_value) : mpq_class(d + 1) / 4;
    std::vector<SpectrumRow> rows;
    rows.reserve(static_cast<std::size_t>(l_max) + 1);
    for (long l = 0; l <= l_max; ++l) {
        SpectrumRow row;
        row.l = l;
        row.e_dirac = energy_dirac_at(l, d, c2);
        row.e_bft = energy_bft_at(l, d);
        if (l > 0) row.gap = row.e_dirac - rows.back().e_dirac;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cforge
