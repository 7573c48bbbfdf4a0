#pragma once

#include <optional>

#include "cforge/scalar.hpp"

namespace cforge {

// Closed-form spectra as elements of Q(l, d, c):
//   E_dirac = (l(l+d-2) + (d-1)^2/4 - c^2)/2
//   E_bft   = (l(l+d-2) + d(d-3)/4)/2
ScalarExpr energy_dirac();
ScalarExpr energy_bft();

// Exact numeric values; c enters only through c^2, which keeps the fixed
// choice c = ±sqrt(d+1)/2 rational.
mpq_class energy_dirac_at(long l, long d, const mpq_class& c_squared);
mpq_class energy_bft_at(long l, long d);

// Solves dirac == bft as a polynomial identity in l for c^2; throws
// algebra_error when no l-independent solution exists (the negative control
// for mutated formulas).  The canonical overload returns c^2 = (d+1)/4.
RatFun fix_c(const ScalarExpr& dirac, const ScalarExpr& bft);
RatFun fix_c();

struct SpectrumRow {
    long l = 0;
    mpq_class e_dirac, e_bft;
    std::optional<mpq_class> gap;  // E_dirac(l) - E_dirac(l-1); empty at l = 0
};

// Exact table for integer d >= 2, 0 <= l <= l_max.  A present c_value is the
// rational parameter c itself; empty means the fixed choice c^2 = (d+1)/4.
std::vector<SpectrumRow> spectrum_table(long d, long l_max,
                                        std::optional<mpq_class> c_value);

}  // namespace cforge
