#pragma once

#include "vla/envelope.hpp"

#include <functional>
#include <map>
#include <vector>

namespace vla {

// Incremental Gauss-Jordan elimination over Q[params] on EnvElem coordinates.
// Pivots with constant coefficients are preferred; a parametric pivot is
// treated as generically invertible and eliminated fraction-free, so rows
// (and reduced vectors) are only defined up to a nonzero factor in Q(params).
class SpanReducer {
public:
    // better(x, y): coordinate x is the preferred pivot over y.
    using Preference = std::function<bool(std::uint32_t, std::uint32_t)>;

    explicit SpanReducer(Preference better = {}) : better_(std::move(better)) {}

    // Adds v to the span; true when the rank grew.
    bool insert(const EnvElem& v) {
        EnvElem r = reduce(v);
        if (r.is_zero()) return false;
        std::uint32_t p = choose_pivot(r);
        // keep every pivot coordinate in exactly one row
        for (auto& [q, row] : rows_) {
            Scalar x = row.coeff(p);
            if (!x.is_zero()) row = eliminate(row, r, p, x);
        }
        rows_.emplace(p, std::move(r));
        return true;
    }

    // Normal form of v modulo the span: no pivot coordinate survives.
    EnvElem reduce(const EnvElem& v) const {
        EnvElem r = v;
        for (auto& [p, row] : rows_) {
            Scalar x = r.coeff(p);
            if (!x.is_zero()) r = eliminate(r, row, p, x);
        }
        return r;
    }
    bool contains(const EnvElem& v) const { return reduce(v).is_zero(); }

    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::uint32_t id) const { return rows_.count(id) != 0; }
    const std::map<std::uint32_t, EnvElem>& rows() const { return rows_; }

private:
    // v - (x / row_p) row, or row_p v - x row when row_p is not a constant
    static EnvElem eliminate(const EnvElem& v, const EnvElem& row, std::uint32_t p, const Scalar& x) {
        Scalar rp = row.coeff(p);
        EnvElem out;
        if (rp.is_constant()) {
            out = v;
            out.add_scaled(row, -(x * Scalar(Rational(1) / rp.constant_value())));
        } else if (auto q = x.div_exact(rp)) {
            out = v;
            out.add_scaled(row, -*q);
        } else {
            out = v * rp;
            out.add_scaled(row, -x);
        }
        return out;
    }

    std::uint32_t choose_pivot(const EnvElem& r) const {
        std::uint32_t best = r.terms().front().first;
        bool best_const = r.terms().front().second.is_constant();
        for (auto& [id, c] : r.terms()) {
            bool k = c.is_constant();
            if (k != best_const) {
                if (k) best = id, best_const = true;
                continue;
            }
            if (better_ && better_(id, best)) best = id;
        }
        return best;
    }

    Preference better_;
    std::map<std::uint32_t, EnvElem> rows_;
};

}  // namespace vla
