#include "cforge/poly.hpp"

#include <algorithm>

namespace cforge {

const char* var_name(int v) {
    static const char* names[NVARS] = {"S",  "P",  "K",  "theta", "pi_theta",
                                       "N1", "B1", "N2", "B2",    "d",
                                       "c",  "l",  "eps"};
    return names[v];
}

Poly::Poly(const GaussRat& c) {
    if (!c.is_zero()) terms_[Mono{}] = c;
}

Poly Poly::var(int v, int exp) {
    Poly p;
    if (exp < 0) throw algebra_error("negative exponent in monomial");
    Mono m{};
    m[v] = static_cast<std::uint16_t>(exp);
    p.terms_[m] = GaussRat(1);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
}

const GaussRat& Poly::constant_term() const {
    static const GaussRat zero;
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? zero : it->second;
}

void Poly::add_term(const Mono& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int Poly::degree(int v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[v]));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int k = 0; k < NVARS; ++k) t += m[k];
        d = std::max(d, t);
    }
    return d;
}

const std::pair<const Mono, GaussRat>& Poly::leading() const {
    if (terms_.empty()) throw algebra_error("leading term of zero polynomial");
    return *terms_.rbegin();
}

Poly Poly::derivative(int v) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0) continue;
        Mono n = m;
        n[v] -= 1;
        r.add_term(n, c * GaussRat(static_cast<long>(m[v])));
    }
    return r;
}

Poly Poly::substitute(int v, const Poly& value) const {
    // Horner over the powers of v.
    std::map<int, Poly> by_deg;
    for (const auto& [m, c] : terms_) {
        Mono n = m;
        int e = n[v];
        n[v] = 0;
        by_deg[e].add_term(n, c);
    }
    Poly r;
    int prev = -1;
    for (auto it = by_deg.rbegin(); it != by_deg.rend(); ++it) {
        if (prev >= 0) {
            Poly shift = value.pow(prev - it->first);
            r = r * shift;
        }
        r += it->second;
        prev = it->first;
    }
    if (prev > 0) r = r * value.pow(prev);
    return r;
}

GaussRat Poly::evaluate(const std::array<GaussRat, NVARS>& point) const {
    GaussRat total;
    for (const auto& [m, c] : terms_) {
        GaussRat t = c;
        for (int v = 0; v < NVARS; ++v) {
            for (int k = 0; k < m[v]; ++k) t *= point[v];
        }
        total += t;
    }
    return total;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

static Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    for (int k = 0; k < NVARS; ++k) {
        int e = a[k] + b[k];
        if (e > 65535) throw algebra_error("monomial exponent overflow");
        r[k] = static_cast<std::uint16_t>(e);
    }
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Poly Poly::scaled(const GaussRat& c) const {
    Poly r;
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Poly Poly::pow(int n) const {
    if (n < 0) throw algebra_error("negative polynomial power");
    Poly r(1L);
    Poly base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = n > 1 ? base * base : base;
        n >>= 1;
    }
    return r;
}

std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw division_by_zero("polynomial division by zero");
    Poly rem = a, quot;
    const auto& [lm, lc] = b.leading();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        Mono qm;
        for (int k = 0; k < NVARS; ++k) {
            if (rm[k] < lm[k]) return std::nullopt;
            qm[k] = static_cast<std::uint16_t>(rm[k] - lm[k]);
        }
        GaussRat qc = rc / lc;
        Poly t;
        t.add_term(qm, qc);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

namespace {

// PRS-based multivariate gcd can swell badly on dense inputs.  A work budget
// bounds it; on overflow the caller falls back to the common monomial factor,
// which keeps fraction normalization sound (equality testing cross-multiplies).
struct gcd_overflow {};
thread_local long g_gcd_budget = 0;

Poly budgeted_mul(const Poly& a, const Poly& b) {
    g_gcd_budget -= static_cast<long>(a.terms().size() * b.terms().size());
    if (g_gcd_budget < 0) throw gcd_overflow{};
    return a * b;
}

// Univariate view in variable v with Poly coefficients.
struct UniPoly {
    int v;
    std::vector<Poly> c;  // c[k] multiplies v^k

    int deg() const {
        for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
            if (!c[k].is_zero()) return k;
        return -1;
    }
    const Poly& lc() const { return c[deg()]; }
};

UniPoly to_uni(const Poly& p, int v) {
    UniPoly u{v, {}};
    u.c.resize(p.degree(v) + 1);
    for (const auto& [m, coef] : p.terms()) {
        Mono n = m;
        int e = n[v];
        n[v] = 0;
        u.c[e].add_term(n, coef);
    }
    return u;
}

Poly from_uni(const UniPoly& u) {
    Poly r;
    for (int k = 0; k < static_cast<int>(u.c.size()); ++k) {
        if (u.c[k].is_zero()) continue;
        r += u.c[k] * Poly::var(u.v, k);
    }
    return r;
}

// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g, computed in place.
UniPoly pseudo_rem(UniPoly f, const UniPoly& g) {
    int dg = g.deg();
    const Poly& glc = g.lc();
    while (f.deg() >= dg && f.deg() >= 0) {
        int df = f.deg();
        Poly flc = f.lc();
        for (int k = 0; k <= df; ++k) f.c[k] = budgeted_mul(f.c[k], glc);
        for (int k = 0; k <= dg; ++k) f.c[k + df - dg] -= budgeted_mul(g.c[k], flc);
    }
    return f;
}

Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading().second.inv());
}

int top_var(const Poly& a, const Poly& b) {
    for (int v = NVARS - 1; v >= 0; --v)
        if (a.degree(v) > 0 || b.degree(v) > 0) return v;
    return -1;
}

Poly gcd_rec(const Poly& a, const Poly& b);

// Univariate image of p in v with every other variable evaluated at pt.
std::vector<GaussRat> uni_image(const Poly& p, int v,
                                const std::array<GaussRat, NVARS>& pt) {
    std::vector<GaussRat> c(p.degree(v) + 1);
    for (const auto& [m, coef] : p.terms()) {
        GaussRat t = coef;
        for (int k = 0; k < NVARS; ++k) {
            if (k == v) continue;
            for (int e = 0; e < m[k]; ++e) t *= pt[k];
        }
        c[m[v]] += t;
    }
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    return c;
}

int uni_gcd_degree(std::vector<GaussRat> a, std::vector<GaussRat> b) {
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size()) {
            GaussRat q = a.back() / b.back();
            std::size_t off = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) a[off + k] -= q * b[k];
            while (!a.empty() && a.back().is_zero()) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// Certifies gcd(a, b) is constant (no common monomial assumed left).  For
// each shared variable v: if the evaluated images keep full v-degree, the
// image gcd degree bounds the v-degree of the true gcd from above.
bool gcd_certainly_trivial(const Poly& a, const Poly& b) {
    for (int v = 0; v < NVARS; ++v) {
        int da = a.degree(v), db = b.degree(v);
        if (da == 0 || db == 0) continue;
        bool cleared = false;
        for (int attempt = 0; attempt < 4 && !cleared; ++attempt) {
            std::array<GaussRat, NVARS> pt;
            unsigned long seed = 2654435761u * (attempt + 1);
            for (int k = 0; k < NVARS; ++k) {
                seed = seed * 6364136223846793005ull + 1442695040888963407ull;
                pt[k] = GaussRat(static_cast<long>((seed >> 33) % 19 + 2));
            }
            auto ia = uni_image(a, v, pt);
            auto ib = uni_image(b, v, pt);
            if (static_cast<int>(ia.size()) - 1 != da ||
                static_cast<int>(ib.size()) - 1 != db)
                continue;  // degenerate evaluation, retry
            if (uni_gcd_degree(std::move(ia), std::move(ib)) == 0) cleared = true;
            else return false;
        }
        if (!cleared) return false;
    }
    return true;
}

Poly content(const UniPoly& u) {
    Poly g;
    for (const auto& coef : u.c) {
        if (coef.is_zero()) continue;
        g = g.is_zero() ? monic(coef) : gcd_rec(g, coef);
        if (g.is_constant()) break;
    }
    return g;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);

    // common monomial factor
    Mono cm;
    cm.fill(255);
    auto shrink = [&cm](const Poly& p) {
        for (const auto& [m, c] : p.terms())
            for (int k = 0; k < NVARS; ++k) cm[k] = std::min(cm[k], m[k]);
    };
    shrink(a);
    shrink(b);
    Poly mono_f;
    mono_f.add_term(cm, GaussRat(1));
    Poly ra = *try_divide(a, mono_f);
    Poly rb = *try_divide(b, mono_f);

    int v = top_var(ra, rb);
    if (v < 0) return mono_f;  // both constants after monomial removal
    if (gcd_certainly_trivial(ra, rb)) return mono_f;
    if (ra.degree(v) == 0 || rb.degree(v) == 0) {
        // One argument is free of the top variable: gcd divides its content.
        const Poly& flat = ra.degree(v) == 0 ? ra : rb;
        const Poly& tall = ra.degree(v) == 0 ? rb : ra;
        Poly g = gcd_rec(flat, content(to_uni(tall, v)));
        return mono_f * g;
    }

    UniPoly ua = to_uni(ra, v), ub = to_uni(rb, v);
    Poly ca = content(ua), cb = content(ub);
    Poly cg = gcd_rec(ca, cb);
    for (auto& t : ua.c)
        if (!t.is_zero()) t = *try_divide(t, ca);
    for (auto& t : ub.c)
        if (!t.is_zero()) t = *try_divide(t, cb);

    UniPoly f = ua.deg() >= ub.deg() ? ua : ub;
    UniPoly g = ua.deg() >= ub.deg() ? ub : ua;
    while (g.deg() >= 0) {
        UniPoly r = pseudo_rem(f, g);
        f = g;
        g = r;
        if (g.deg() >= 0) {
            Poly c = content(g);
            for (auto& t : g.c)
                if (!t.is_zero()) t = *try_divide(t, c);
        }
    }
    Poly pp = from_uni(f);
    Poly c = content(f);
    pp = *try_divide(pp, c);
    return monic(mono_f * cg * pp);
}

Poly common_monomial(const Poly& a, const Poly& b) {
    Mono cm;
    cm.fill(255);
    for (const Poly* p : {&a, &b})
        for (const auto& [m, c] : p->terms())
            for (int k = 0; k < NVARS; ++k) cm[k] = std::min(cm[k], m[k]);
    Poly f;
    f.add_term(cm, GaussRat(1));
    return f;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    g_gcd_budget = 3000;
    try {
        return gcd_rec(a, b);
    } catch (const gcd_overflow&) {
        return common_monomial(a, b);
    }
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string term;
        bool unit_coeff = (c == GaussRat(1));
        std::string cs = to_string(c);
        bool simple = c.is_real() && c.re > 0;
        for (int v = 0; v < NVARS; ++v) {
            if (m[v] == 0) continue;
            if (!term.empty()) term += "*";
            term += var_name(v);
            if (m[v] > 1) term += "^" + std::to_string(static_cast<int>(m[v]));
        }
        std::string piece;
        if (term.empty())
            piece = simple ? cs : "(" + cs + ")";
        else if (unit_coeff)
            piece = term;
        else
            piece = (simple ? cs : "(" + cs + ")") + "*" + term;
        if (!first) out += " + ";
        out += piece;
        first = false;
    }
    return out;
}

}  // namespace cforge
