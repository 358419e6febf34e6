#pragma once

#include "qhpp/basket.hpp"

#include <functional>

namespace qhpp {

/// Bounded exhaustive chain generation. Chains are emitted in canonical
/// order: by length, then lexicographically by weights. An unbounded
/// constraint set is rejected.
struct ChainConstraints {
    int max_length = 0;              // required, >= 0
    int max_weight = 0;              // required, >= 2
    std::optional<int> exact_length; // restrict to one length
    std::optional<int> min_length;
    // tr-relation tr = 3l - tr_offset (e.g. tr_offset = 2 for tr = 3l-2).
    std::optional<int> tr_offset;
    // K^2/BMY window: chain must extend the partial basket to a bmy pass.
    std::optional<Basket> partial_basket;
    bool require_bmy_pass = false;
    std::optional<Int> min_q;
    std::optional<Int> max_q;
};

inline void enumerate_chains(const ChainConstraints& c, const std::function<void(const Chain&)>& emit) {
    if (c.max_length < 0 || c.max_weight < 2)
        throw std::invalid_argument("enumerate_chains: bounds missing or unbounded");
    if (c.require_bmy_pass && !c.partial_basket)
        throw std::invalid_argument("enumerate_chains: BMY window needs a partial basket");

    int lo = c.exact_length.value_or(c.min_length.value_or(0));
    int hi = c.exact_length.value_or(c.max_length);
    if (hi > c.max_length) hi = c.max_length;

    std::vector<int> w;
    auto accept = [&](const Chain& chain) {
        if (c.tr_offset) {
            if (chain.tr() != Int(3 * chain.length() - *c.tr_offset)) return;
        }
        if (c.min_q || c.max_q || c.require_bmy_pass) {
            Int q = continuant(chain);
            if (c.min_q && q < *c.min_q) return;
            if (c.max_q && q > *c.max_q) return;
            if (c.require_bmy_pass) {
                Basket b = c.partial_basket->with_chain(chain);
                if (bmy_gate(b) != BmyVerdict::pass) return;
            }
        }
        emit(chain);
    };

    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
            accept(Chain(w));
            return;
        }
        for (int n = 2; n <= c.max_weight; ++n) {
            w.push_back(n);
            rec(remaining - 1);
            w.pop_back();
        }
    };
    for (int l = std::max(lo, 0); l <= hi; ++l) {
        w.clear();
        rec(l);
    }
}

inline std::vector<Chain> enumerate_chains(const ChainConstraints& c) {
    std::vector<Chain> out;
    enumerate_chains(c, [&](const Chain& ch) { out.push_back(ch); });
    return out;
}

/// All weight vectors of length l with excess sum(n_i - 2) = r, i.e. the
/// chains satisfying tr = 2l + r exactly. Canonical (lexicographic) order.
inline std::vector<Chain> chains_with_excess(int l, int r) {
    std::vector<Chain> out;
    if (l < 0 || r < 0) return out;
    std::vector<int> w(static_cast<size_t>(l), 2);
    std::function<void(int, int)> rec = [&](int idx, int rem) {
        if (idx == l) {
            if (rem == 0) out.push_back(Chain(w));
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            w[static_cast<size_t>(idx)] = 2 + e;
            rec(idx + 1, rem - e);
        }
        w[static_cast<size_t>(idx)] = 2;
    };
    rec(0, r);
    return out;
}

} // namespace qhpp
