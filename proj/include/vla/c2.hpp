#pragma once

#include "vla/envelope.hpp"
#include "vla/linalg.hpp"
#include "vla/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace vla {

// V / C2(V) up to a weight bound, with C2(V)_h = span{(Tu)_(-1) v} = span{u_(-2) v}.
struct C2Quotient {
    struct Entry {
        std::uint32_t x, y;
        EnvElem product;  // class of x_(-1) y
        EnvElem bracket;  // class of x_(0) y
    };
    std::map<Rational, SpanReducer> spans;
    std::map<Rational, std::vector<std::uint32_t>> basis;  // quotient representatives
    std::vector<Entry> table;

    std::size_t dim(const Rational& h) const {
        auto it = basis.find(h);
        return it == basis.end() ? 0 : it->second.size();
    }
    EnvElem reduce(Envelope& V, const EnvElem& x) const {
        EnvElem out;
        for (auto& [h, part] : V.components(x)) {
            auto it = spans.find(h);
            out += it == spans.end() ? part : it->second.reduce(part);
        }
        return out;
    }
};

// number of T's carried by a word: sum of (-t-1) over its modes
inline long t_degree(const Envelope& V, std::uint32_t w) {
    long d = 0;
    for (auto& m : V.word(w)) d += -m.t - 1;
    return d;
}

// Pivots favour words with more T's, so quotient representatives look like
// products of generator states.
inline C2Quotient c2_quotient(Envelope& V, const Rational& h_max) {
    C2Quotient Q;
    auto better = [&V](std::uint32_t x, std::uint32_t y) {
        long dx = t_degree(V, x), dy = t_degree(V, y);
        return dx != dy ? dx > dy : x > y;
    };
    std::vector<Rational> weights;
    for (long k = 0; V.scaled(k) <= h_max; ++k) weights.push_back(V.scaled(k));
    for (auto& h : weights) {
        SpanReducer S(better);
        for (auto& hu : weights) {
            if (hu == 0) continue;  // T|0> = 0
            Rational hv = h - hu - 1;
            if (hv < 0) break;
            for (auto u : V.basis(hu))
                for (auto v : V.basis(hv)) S.insert(V.nth_product(u, -2, v));
        }
        std::vector<std::uint32_t> reps;
        for (auto w : V.basis(h))
            if (!S.is_pivot(w)) reps.push_back(w);
        Q.basis[h] = std::move(reps);
        Q.spans.emplace(h, std::move(S));
    }
    for (auto& [hx, xs] : Q.basis)
        for (auto& [hy, ys] : Q.basis) {
            if (hx + hy > h_max) continue;
            for (auto x : xs)
                for (auto y : ys)
                    Q.table.push_back({x, y, Q.reduce(V, V.nth_product(x, -1, y)), Q.reduce(V, V.nth_product(x, 0, y))});
        }
    return Q;
}

// Commutativity and (for rank-1 style checks) vanishing of the induced bracket.
inline Report check_c2_poisson(Envelope& V, const C2Quotient& Q) {
    Report rep;
    std::size_t bad_comm = 0, bad_br = 0, n = 0;
    std::string w_comm, w_br;
    std::map<std::pair<std::uint32_t, std::uint32_t>, const C2Quotient::Entry*> at;
    for (auto& e : Q.table) at[{e.x, e.y}] = &e;
    for (auto& e : Q.table) {
        ++n;
        const auto* f = at.at({e.y, e.x});
        int z = (V.odd(e.x) && V.odd(e.y)) ? -1 : 1;
        if (!(e.product - f->product * Scalar(z)).is_zero() && !bad_comm++)
            w_comm = V.word_string(e.x) + " , " + V.word_string(e.y);
        if (!e.bracket.is_zero() && !bad_br++)
            w_br = V.word_string(e.x) + " , " + V.word_string(e.y) + ": " + V.to_string(e.bracket);
    }
    rep.add("c2-product-commutative", bad_comm == 0,
            bad_comm ? std::to_string(bad_comm) + " failed; " + w_comm : std::to_string(n) + " pairs");
    rep.add("c2-bracket-vanishes", bad_br == 0,
            bad_br ? std::to_string(bad_br) + " nonzero; " + w_br : std::to_string(n) + " pairs");
    return rep;
}

}  // namespace vla
