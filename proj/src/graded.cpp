#include <bit>

#include "cforge/graded.hpp"

namespace cforge {

const char* ghost_name(int g) {
    static const char* names[NGHOST] = {"lambda", "C1", "C2",    "Pbar1",
                                        "Pbar2",  "P1", "P2",    "Cbar1",
                                        "Cbar2"};
    return names[g];
}

int ghost_number_of(int g) {
    switch (g) {
        case G_C1:
        case G_C2:
        case G_P1:
        case G_P2:
            return 1;
        default:
            return -1;
    }
}

namespace {

int popcount(GradedExpr::Mask m) { return std::popcount(m); }

// sign of sorting the concatenation (a-block, b-block) into canonical order
int merge_sign(GradedExpr::Mask a, GradedExpr::Mask b) {
    int inv = 0;
    for (int g = 0; g < NGHOST; ++g)
        if (b & (1u << g)) inv += popcount(a >> (g + 1));
    return inv % 2 ? -1 : 1;
}

int right_sign(GradedExpr::Mask m, int g) {
    return popcount(m >> (g + 1)) % 2 ? -1 : 1;
}

int left_sign(GradedExpr::Mask m, int g) {
    return popcount(m & ((1u << g) - 1)) % 2 ? -1 : 1;
}

}  // namespace

GradedExpr GradedExpr::scalar(ScalarExpr c) {
    GradedExpr e;
    e.add_term(0, c);
    return e;
}

GradedExpr GradedExpr::ghost(int g) {
    GradedExpr e;
    e.add_term(static_cast<Mask>(1u << g), ScalarExpr(1));
    return e;
}

void GradedExpr::add_term(Mask m, const ScalarExpr& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GradedExpr GradedExpr::operator+(const GradedExpr& o) const {
    GradedExpr r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

GradedExpr GradedExpr::operator-(const GradedExpr& o) const {
    GradedExpr r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

GradedExpr GradedExpr::operator-() const {
    GradedExpr r;
    for (const auto& [m, c] : terms_) r.add_term(m, -c);
    return r;
}

GradedExpr GradedExpr::operator*(const GradedExpr& o) const {
    GradedExpr r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            if (m1 & m2) continue;  // repeated odd generator
            ScalarExpr c = c1 * c2;
            if (merge_sign(m1, m2) < 0) c = -c;
            r.add_term(static_cast<Mask>(m1 | m2), c);
        }
    return r;
}

int GradedExpr::parity() const {
    if (terms_.empty()) return 0;
    int p = popcount(terms_.begin()->first) % 2;
    for (const auto& [m, c] : terms_)
        if (popcount(m) % 2 != p)
            throw algebra_error("parity-inhomogeneous graded expression");
    return p;
}

std::optional<int> GradedExpr::ghost_number() const {
    std::optional<int> gh;
    for (const auto& [m, c] : terms_) {
        int n = 0;
        for (int g = 0; g < NGHOST; ++g)
            if (m & (1u << g)) n += ghost_number_of(g);
        if (gh && *gh != n) return std::nullopt;
        gh = n;
    }
    return gh;
}

ScalarExpr GradedExpr::at_ghost_zero() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? ScalarExpr(0) : it->second;
}

GradedExpr super_poisson(const GradedExpr& a, const GradedExpr& b) {
    int pa = a.parity(), pb = b.parity();
    int cross = (pa && pb) ? -1 : 1;  // -(-1)^{eta_A eta_B}, bosonic part
    GradedExpr out;

    for (const auto& [m1, c1] : a.terms())
        for (const auto& [m2, c2] : b.terms()) {
            // bosonic sector: the two displayed terms combine into the plain
            // Poisson bracket of the coefficients
            if (!(m1 & m2)) {
                ScalarExpr c = poisson(c1, c2);
                if (!c.is_zero()) {
                    if (merge_sign(m1, m2) < 0) c = -c;
                    out.add_term(static_cast<GradedExpr::Mask>(m1 | m2), c);
                }
            }
            // ghost pairs (q, p): (C^a, Pbar_a), (P^a, Cbar_a)
            static constexpr int pairs[4][2] = {{G_C1, G_PBAR1},
                                                {G_C2, G_PBAR2},
                                                {G_P1, G_CBAR1},
                                                {G_P2, G_CBAR2}};
            for (auto [gq, gp] : pairs) {
                GradedExpr::Mask bq = 1u << gq, bp = 1u << gp;
                // dA/dq|_r * dB/dp|_l
                if ((m1 & bq) && (m2 & bp)) {
                    GradedExpr::Mask r1 = m1 & ~bq, r2 = m2 & ~bp;
                    if (!(r1 & r2)) {
                        ScalarExpr c = c1 * c2;
                        int s = right_sign(m1, gq) * left_sign(m2, gp) *
                                merge_sign(r1, r2);
                        if (s < 0) c = -c;
                        out.add_term(static_cast<GradedExpr::Mask>(r1 | r2), c);
                    }
                }
                // -(-1)^{eta_A eta_B} dB/dq|_r * dA/dp|_l
                if ((m2 & bq) && (m1 & bp)) {
                    GradedExpr::Mask r2 = m2 & ~bq, r1 = m1 & ~bp;
                    if (!(r1 & r2)) {
                        ScalarExpr c = c2 * c1;
                        int s = right_sign(m2, gq) * left_sign(m1, gp) *
                                merge_sign(r2, r1) * ((pa && pb) ? 1 : -1);
                        if (s < 0) c = -c;
                        out.add_term(static_cast<GradedExpr::Mask>(r1 | r2), c);
                    }
                }
            }
        }
    return out;
}

namespace {

GradedExpr charge_q(const ScalarExpr& o1, const ScalarExpr& o2) {
    using G = GradedExpr;
    return G::ghost(G_C1) * G::scalar(o1) + G::ghost(G_C2) * G::scalar(o2) +
           G::ghost(G_P1) * G::scalar(ScalarExpr::gen(V_B1)) +
           G::ghost(G_P2) * G::scalar(ScalarExpr::gen(V_B2));
}

}  // namespace

Charges build_charges() {
    using G = GradedExpr;
    auto [o1, o2] = first_class_constraints();
    ConstraintSet cs = ConstraintSet::sphere();
    Charges ch;
    ch.q = charge_q(o1, o2);
    // unitary gauge chi^a = Omega_a
    ch.psi = G::ghost(G_CBAR1) * G::scalar(cs.omega(0)) +
             G::ghost(G_CBAR2) * G::scalar(cs.omega(1)) +
             G::ghost(G_PBAR1) * G::scalar(ScalarExpr::gen(V_N1)) +
             G::ghost(G_PBAR2) * G::scalar(ScalarExpr::gen(V_N2));
    // The ghost coupling is -2 C^1 Pbar_2 with the antighost written first,
    // i.e. +2 C1*Pbar2 in the canonical order used here; the opposite sign
    // leaves {Q, H_m} = 4*Omega~_2*C1 instead of zero.
    ch.h_m = G::scalar(first_class_hamiltonians().second) +
             G::ghost(G_C1) * G::ghost(G_PBAR2) * G::scalar(ScalarExpr(2));
    return ch;
}

GradedExpr second_class_brst_charge() {
    ConstraintSet cs = ConstraintSet::sphere();
    return charge_q(cs.omega(0), cs.omega(1));
}

GradedExpr brst_transform(const GradedExpr& f) {
    return super_poisson(f, GradedExpr::ghost(G_LAMBDA) * build_charges().q);
}

GradedExpr brst_transform(const ScalarExpr& f) {
    return brst_transform(GradedExpr::scalar(f));
}

std::vector<GradedCheck> verify_brst_relations() {
    Charges ch = build_charges();
    std::vector<GradedCheck> out;
    auto push = [&](std::string name, GradedExpr r) {
        out.push_back({std::move(name), r.is_zero(), std::move(r)});
    };
    push("{Q,Q}", super_poisson(ch.q, ch.q));
    push("{Q,H_m}", super_poisson(ch.q, ch.h_m));
    push("{{Psi,Q},Q}", super_poisson(super_poisson(ch.psi, ch.q), ch.q));
    return out;
}

std::string to_string(const GradedExpr& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : e.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ")";
        for (int g = 0; g < NGHOST; ++g)
            if (m & (1u << g)) s += std::string("*") + ghost_name(g);
    }
    return s;
}

}  // namespace cforge
