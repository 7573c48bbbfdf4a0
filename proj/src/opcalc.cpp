#include <algorithm>
#include <set>

#include "cforge/opcalc.hpp"

namespace cforge {

namespace {

thread_local int g_fresh = -1;
int fresh_label() { return g_fresh--; }

RatFun imag() { return RatFun(GaussRat::imaginary()); }
RatFun inv_s() { return RatFun(Poly(1L), Poly::var(V_S)); }

std::pair<int, int> norm_pair(int a, int b) {
    return a <= b ? std::pair{a, b} : std::pair{b, a};
}

// Intermediate word: coef · Πδ · Πq↑ · Π∂↑ (blocks internally commutative).
struct IKey {
    std::vector<std::pair<int, int>> deltas;
    std::vector<int> qs, ds;

    auto operator<=>(const IKey&) const = default;
};

using IExpr = std::map<IKey, RatFun>;

void accumulate(IExpr& e, IKey k, const RatFun& c) {
    std::sort(k.deltas.begin(), k.deltas.end());
    std::sort(k.qs.begin(), k.qs.end());
    std::sort(k.ds.begin(), k.ds.end());
    auto [it, inserted] = e.emplace(std::move(k), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

// Move one primitive factor in from the left of a normal word.
void prepend(const OpFactor& fac, const IKey& k, const RatFun& coef,
             IExpr& out) {
    switch (fac.kind) {
        case OpFactor::Fun:
            accumulate(out, k, fac.f * coef);
            break;
        case OpFactor::Delta: {
            IKey r = k;
            r.deltas.push_back(norm_pair(fac.a, fac.b));
            accumulate(out, r, coef);
            break;
        }
        case OpFactor::Qup: {
            IKey r = k;
            r.qs.push_back(fac.a);
            accumulate(out, r, coef);
            break;
        }
        case OpFactor::Dup: {
            // ∂↑a f(S) = f ∂↑a + 2 f' q↑a, then ∂↑a q↑b = q↑b ∂↑a + δ_ab
            IKey main = k;
            main.ds.push_back(fac.a);
            accumulate(out, main, coef);
            for (std::size_t j = 0; j < k.qs.size(); ++j) {
                IKey r = k;
                r.qs.erase(r.qs.begin() + j);
                r.deltas.push_back(norm_pair(fac.a, k.qs[j]));
                accumulate(out, r, coef);
            }
            RatFun df = coef.derivative(V_S);
            if (!df.is_zero()) {
                IKey r = k;
                r.qs.push_back(fac.a);
                accumulate(out, r, RatFun(2L) * df);
            }
            break;
        }
        case OpFactor::E:
        case OpFactor::L:
            throw algebra_error("contracted factor not expanded");
    }
}

void validate(const OpWord& w) {
    std::map<int, int> count;
    for (const OpFactor& f : w.factors) {
        if (f.kind == OpFactor::Qup || f.kind == OpFactor::Dup)
            ++count[f.a];
        else if (f.kind == OpFactor::Delta) {
            ++count[f.a];
            ++count[f.b];
        }
    }
    int free = 0;
    for (const auto& [label, n] : count) {
        if (n > 2) throw algebra_error("index label used more than twice");
        if (n == 1) ++free;
    }
    if (free > 2) throw algebra_error("more than 2 free indices");
}

// (E-m)(E-m-1)...(E-m-k+1) as coefficients of powers of E.  The offset m
// accounts for commuting the k contracted Euler pairs past m free ∂↑ factors
// on their way to the E-slot of the normal form: g(E)·∂↑ = ∂↑·g(E-1).
std::vector<GaussRat> falling_factorial(int k, int m) {
    std::vector<GaussRat> c{GaussRat(1)};
    for (int j = 0; j < k; ++j) {
        std::vector<GaussRat> n(c.size() + 1);
        for (std::size_t t = 0; t < c.size(); ++t) {
            n[t + 1] += c[t];
            n[t] -= c[t] * GaussRat(static_cast<long>(m + j));
        }
        c = std::move(n);
    }
    return c;
}

void finalize(IKey k, RatFun coef, NormalOp& out) {
    // resolve delta factors against every other occurrence
    auto occurs = [&](int label, std::size_t skip) {
        for (std::size_t j = 0; j < k.deltas.size(); ++j)
            if (j != skip &&
                (k.deltas[j].first == label || k.deltas[j].second == label))
                return true;
        return std::count(k.qs.begin(), k.qs.end(), label) > 0 ||
               std::count(k.ds.begin(), k.ds.end(), label) > 0;
    };
    auto replace_one = [&](int from, int to, std::size_t skip) {
        for (std::size_t j = 0; j < k.deltas.size(); ++j) {
            if (j == skip) continue;
            if (k.deltas[j].first == from) {
                k.deltas[j] = norm_pair(to, k.deltas[j].second);
                return;
            }
            if (k.deltas[j].second == from) {
                k.deltas[j] = norm_pair(k.deltas[j].first, to);
                return;
            }
        }
        auto qi = std::find(k.qs.begin(), k.qs.end(), from);
        if (qi != k.qs.end()) {
            *qi = to;
            return;
        }
        auto di = std::find(k.ds.begin(), k.ds.end(), from);
        if (di != k.ds.end()) *di = to;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t j = 0; j < k.deltas.size(); ++j) {
            auto [a, b] = k.deltas[j];
            if (a == b) {
                coef *= RatFun::var(V_D);  // δ_aa = d
            } else if (occurs(a, j)) {
                replace_one(a, b, j);
            } else if (occurs(b, j)) {
                replace_one(b, a, j);
            } else {
                continue;  // genuine free-free delta
            }
            k.deltas.erase(k.deltas.begin() + j);
            changed = true;
            break;
        }
    }

    // contract repeated labels: q·q -> S, q·∂ -> Euler pair, ∂·∂ -> L
    int epairs = 0, lpow = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (int label : std::set<int>(k.qs.begin(), k.qs.end())) {
            long nq = std::count(k.qs.begin(), k.qs.end(), label);
            long nd = std::count(k.ds.begin(), k.ds.end(), label);
            if (nq + nd < 2) continue;
            if (nq == 2) {
                coef *= RatFun::var(V_S);
                std::erase(k.qs, label);
            } else {
                ++epairs;
                std::erase(k.qs, label);
                std::erase(k.ds, label);
            }
            changed = true;
            break;
        }
        if (changed) continue;
        for (int label : std::set<int>(k.ds.begin(), k.ds.end())) {
            if (std::count(k.ds.begin(), k.ds.end(), label) == 2) {
                ++lpow;
                std::erase(k.ds, label);
                changed = true;
                break;
            }
        }
    }

    auto ff = falling_factorial(epairs, static_cast<int>(k.ds.size()));
    for (std::size_t e = 0; e < ff.size(); ++e) {
        if (ff[e].is_zero()) continue;
        NKey nk;
        nk.deltas = k.deltas;
        nk.qs = k.qs;
        nk.ds = k.ds;
        nk.e = static_cast<int>(e);
        nk.l = lpow;
        std::sort(nk.deltas.begin(), nk.deltas.end());
        std::sort(nk.qs.begin(), nk.qs.end());
        std::sort(nk.ds.begin(), nk.ds.end());
        out.add(nk, coef * RatFun(ff[e]));
    }
}

}  // namespace

void NormalOp::add(const NKey& k, const RatFun& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool NormalOp::fully_contracted() const {
    for (const auto& [k, c] : terms_)
        if (!k.deltas.empty() || !k.qs.empty() || !k.ds.empty()) return false;
    return true;
}

RatFun NormalOp::coefficient(const NKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? RatFun() : it->second;
}

NormalOp NormalOp::operator+(const NormalOp& o) const {
    NormalOp r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, c);
    return r;
}

NormalOp NormalOp::operator-(const NormalOp& o) const {
    NormalOp r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, -c);
    return r;
}

NormalOp NormalOp::scaled(const RatFun& c) const {
    NormalOp r;
    for (const auto& [k, v] : terms_) r.add(k, v * c);
    return r;
}

NormalOp normal_order(const OpWord& w) {
    validate(w);
    // expand the contracted operators with fresh bound labels
    std::vector<OpFactor> fs;
    for (const OpFactor& f : w.factors) {
        if (f.kind == OpFactor::E) {
            int t = fresh_label();
            fs.push_back(OpFactor::q(t));
            fs.push_back(OpFactor::d(t));
        } else if (f.kind == OpFactor::L) {
            int t = fresh_label();
            fs.push_back(OpFactor::d(t));
            fs.push_back(OpFactor::d(t));
        } else {
            fs.push_back(f);
        }
    }
    IExpr cur;
    cur.emplace(IKey{}, RatFun(1L));
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
        IExpr next;
        for (const auto& [k, c] : cur) prepend(*it, k, c, next);
        cur = std::move(next);
    }
    NormalOp out;
    for (const auto& [k, c] : cur) finalize(k, c, out);
    return out;
}

NormalOp normal_order(const OpSum& s) {
    NormalOp out;
    for (const OpWord& w : s) out = out + normal_order(w);
    return out;
}

namespace {

// rename labels bound within the word (appearing twice) to fresh ones
OpWord rename_bound(const OpWord& w) {
    std::map<int, int> count;
    for (const OpFactor& f : w.factors) {
        if (f.kind == OpFactor::Qup || f.kind == OpFactor::Dup)
            ++count[f.a];
        else if (f.kind == OpFactor::Delta) {
            ++count[f.a];
            ++count[f.b];
        }
    }
    std::map<int, int> rename;
    for (const auto& [label, n] : count)
        if (n == 2) rename[label] = fresh_label();
    OpWord r = w;
    for (OpFactor& f : r.factors) {
        if (f.kind == OpFactor::Qup || f.kind == OpFactor::Dup) {
            if (auto it = rename.find(f.a); it != rename.end()) f.a = it->second;
        } else if (f.kind == OpFactor::Delta) {
            if (auto it = rename.find(f.a); it != rename.end()) f.a = it->second;
            if (auto it = rename.find(f.b); it != rename.end()) f.b = it->second;
        }
    }
    return r;
}

}  // namespace

OpSum product(const OpSum& a, const OpSum& b) {
    OpSum out;
    for (const OpWord& wa : a)
        for (const OpWord& wb : b) {
            OpWord w = rename_bound(wa);
            OpWord rb = rename_bound(wb);
            w.factors.insert(w.factors.end(), rb.factors.begin(),
                             rb.factors.end());
            out.push_back(std::move(w));
        }
    return out;
}

OpSum commutator(const OpSum& a, const OpSum& b) {
    OpSum out = product(a, b);
    for (OpWord w : product(b, a)) {
        w.factors.insert(w.factors.begin(), OpFactor::fun(RatFun(-1L)));
        out.push_back(std::move(w));
    }
    return out;
}

OpSum scaled(const OpSum& s, const RatFun& c) {
    OpSum out = s;
    for (OpWord& w : out)
        w.factors.insert(w.factors.begin(), OpFactor::fun(c));
    return out;
}

OpSum momentum_pi(int label) {
    int t = fresh_label();
    return {
        OpWord{OpFactor::fun(-imag()), OpFactor::d(label)},
        OpWord{OpFactor::fun(imag() * inv_s()), OpFactor::q(label),
               OpFactor::q(t), OpFactor::d(t)},
    };
}

OpSum momentum_pi_shifted(int label) {
    OpSum s = momentum_pi(label);
    s.push_back(OpWord{OpFactor::fun(-imag() * RatFun::var(V_C) * inv_s()),
                       OpFactor::q(label)});
    return s;
}

OpSum momentum_pi_weyl(int label) {
    int t1 = fresh_label(), t2 = fresh_label();
    OpSum s = {
        // (δ_ij − q_i q_j/S) ∂_j
        OpWord{OpFactor::d(label)},
        OpWord{OpFactor::fun(-inv_s()), OpFactor::q(label), OpFactor::q(t1),
               OpFactor::d(t1)},
        // ∂_j (δ_ij − q_i q_j/S)
        OpWord{OpFactor::d(label)},
        OpWord{OpFactor::fun(-1L), OpFactor::d(t2), OpFactor::fun(inv_s()),
               OpFactor::q(label), OpFactor::q(t2)},
        // 2c q_i/S
        OpWord{OpFactor::fun(RatFun(2L) * RatFun::var(V_C) * inv_s()),
               OpFactor::q(label)},
    };
    return scaled(s, -imag() / RatFun(2L));
}

std::vector<CommutatorCheck> verify_quantum_commutators() {
    std::vector<CommutatorCheck> checks;
    auto run = [&](std::string name, const OpSum& lhs, const OpSum& rhs) {
        NormalOp residual = normal_order(lhs) - normal_order(rhs);
        checks.push_back({std::move(name), residual.is_zero(), residual});
    };
    OpSum qi = {OpWord{OpFactor::q(0)}}, qj = {OpWord{OpFactor::q(1)}};
    // i(δ_ij − q_i q_j/S)
    OpSum eq3 = {OpWord{OpFactor::fun(imag()), OpFactor::delta(0, 1)},
                 OpWord{OpFactor::fun(-imag() * inv_s()), OpFactor::q(0),
                        OpFactor::q(1)}};
    auto structure = [&](auto make) {
        // (i/S)(q_j X_i − q_i X_j)
        OpSum s = product(scaled(qj, imag() * inv_s()), make(0));
        for (OpWord w : product(scaled(qi, imag() * inv_s()), make(1))) {
            w.factors.insert(w.factors.begin(), OpFactor::fun(RatFun(-1L)));
            s.push_back(std::move(w));
        }
        return s;
    };

    run("[q_i,q_j]", commutator(qi, qj), OpSum{});
    run("[q_i,pi_j]", commutator(qi, momentum_pi(1)), eq3);
    run("[pi_i,pi_j]", commutator(momentum_pi(0), momentum_pi(1)),
        structure([](int l) { return momentum_pi(l); }));
    run("[q_i,Pi_j]", commutator(qi, momentum_pi_shifted(1)), eq3);
    run("[Pi_i,Pi_j]",
        commutator(momentum_pi_shifted(0), momentum_pi_shifted(1)),
        structure([](int l) { return momentum_pi_shifted(l); }));
    return checks;
}

NormalOp build_weyl_product() {
    OpSum p = momentum_pi_weyl(0);
    return normal_order(product(p, p));
}

ScalarExpr apply_to_harmonic(const NormalOp& op) {
    if (!op.fully_contracted())
        throw algebra_error("operator not fully contracted");
    ScalarExpr out(0);
    for (const auto& [k, c] : op.terms()) {
        if (k.l > 0) continue;  // L annihilates harmonics
        ScalarExpr term(c.substitute(V_S, Poly(1L)));
        out += term * ScalarExpr::gen(V_L).pow(k.e);
    }
    return out;
}

std::string to_string(const NKey& k) {
    std::string s;
    for (auto [a, b] : k.deltas)
        s += "delta(" + std::to_string(a) + "," + std::to_string(b) + ")*";
    for (int a : k.qs) s += "q^" + std::to_string(a) + "*";
    for (int a : k.ds) s += "D^" + std::to_string(a) + "*";
    for (int j = 0; j < k.e; ++j) s += "E*";
    for (int j = 0; j < k.l; ++j) s += "L*";
    if (!s.empty()) s.pop_back();
    return s.empty() ? "1" : s;
}

std::string to_string(const NormalOp& op) {
    if (op.is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : op.terms()) {
        if (!s.empty()) s += " + ";
        s += to_string(c) + "*" + to_string(k);
    }
    return s;
}

}  // namespace cforge
