#pragma once

#include "qhpp/rational.hpp"

#include <algorithm>
#include <span>
#include <sstream>
#include <vector>

namespace qhpp {

namespace detail {
inline std::string_view trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
}
} // namespace detail

/// Weighted linear dual graph of the minimal resolution of a cyclic
/// quotient singularity: weights n_i = -D_i^2, all >= 2. The empty chain
/// stands for a smooth point (q = 1) so that basket formulas degenerate
/// gracefully.
class Chain {
public:
    Chain() = default;

    explicit Chain(std::vector<int> weights) : weights_(std::move(weights)) {
        for (int w : weights_)
            if (w < 2) throw std::invalid_argument("chain weight < 2");
    }

    const std::vector<int>& weights() const { return weights_; }
    int length() const { return static_cast<int>(weights_.size()); }
    bool empty() const { return weights_.empty(); }
    int weight(int j) const { return weights_.at(static_cast<size_t>(j - 1)); } // 1-based

    /// tr = sum of weights = -(sum of self-intersections).
    Int tr() const {
        Int t = 0;
        for (int w : weights_) t += w;
        return t;
    }

    Chain reversed() const {
        std::vector<int> r(weights_.rbegin(), weights_.rend());
        return Chain(std::move(r));
    }

    bool all_two() const {
        return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 2; });
    }

    /// Serialized as a bracketed weight list, e.g. "[3,2,2]".
    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < weights_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(weights_[i]);
        }
        return s + "]";
    }

    static Chain parse(std::string_view text) {
        auto fail = [&] { throw std::invalid_argument("bad chain literal '" + std::string(text) + "'"); };
        size_t i = 0;
        auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
        skip();
        if (i >= text.size() || text[i] != '[') fail();
        ++i;
        std::vector<int> ws;
        skip();
        if (i < text.size() && text[i] == ']') return Chain{};
        while (true) {
            skip();
            size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) fail();
            ws.push_back(std::stoi(std::string(text.substr(start, i - start))));
            skip();
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            if (i < text.size() && text[i] == ']') { ++i; break; }
            fail();
        }
        skip();
        if (i != text.size()) fail();
        return Chain(std::move(ws));
    }

    friend bool operator==(const Chain&, const Chain&) = default;
    friend auto operator<=>(const Chain&, const Chain&) = default;

private:
    std::vector<int> weights_;
};

/// Continuant K(n_1..n_l): K_j = n_j K_{j-1} - K_{j-2}, K(empty) = 1,
/// K at length -1 is 0. Equals the order of the local fundamental group
/// of the point obtained by contracting the chain.
inline Int continuant(std::span<const int> weights) {
    Int km2 = 0, km1 = 1;
    for (int n : weights) {
        if (n < 2) throw std::invalid_argument("continuant weight < 2");
        Int k = n * km1 - km2;
        km2 = std::move(km1);
        km1 = std::move(k);
    }
    return km1;
}

inline Int continuant(const std::vector<int>& weights) {
    return continuant(std::span<const int>(weights));
}

inline Int continuant(const Chain& chain) { return continuant(chain.weights()); }

/// The per-chain invariants of Notation 2.1: q and the partial orders
/// u_j (first j-1 components contracted) and v_j (last l-j contracted),
/// with q1 = v_1, ql = u_l and the interior continuant q_inner.
/// Defined for nonempty chains; q_inner of a length-1 chain is 0 so that
/// q1*ql = q*q_inner + 1 holds for every l >= 1.
struct ChainInvariants {
    Int q;
    Int q1;
    Int ql;
    Int q_inner;
    Int tr;
    std::vector<Int> u; // u_1 = 1, strictly increasing
    std::vector<Int> v; // v_l = 1, strictly decreasing
};

inline ChainInvariants chain_invariants(const Chain& chain) {
    if (chain.empty()) throw std::invalid_argument("chain_invariants of empty chain");
    const auto& w = chain.weights();
    const int l = chain.length();
    ChainInvariants inv;
    inv.tr = chain.tr();
    // u by forward recurrence, v by backward recurrence; both are plain
    // continuants of prefixes/suffixes.
    inv.u.resize(static_cast<size_t>(l));
    inv.v.resize(static_cast<size_t>(l));
    {
        Int km2 = 0, km1 = 1;
        for (int j = 0; j < l; ++j) {
            inv.u[static_cast<size_t>(j)] = km1; // K(w_1..w_{j-1}) for 1-based j = j+1
            Int k = w[static_cast<size_t>(j)] * km1 - km2;
            km2 = km1;
            km1 = k;
        }
        inv.q = km1;
    }
    {
        Int km2 = 0, km1 = 1;
        for (int j = l - 1; j >= 0; --j) {
            inv.v[static_cast<size_t>(j)] = km1; // K(w_{j+1}..w_l)
            Int k = w[static_cast<size_t>(j)] * km1 - km2;
            km2 = km1;
            km1 = k;
        }
    }
    inv.q1 = inv.v[0];
    inv.ql = inv.u[static_cast<size_t>(l - 1)];
    if (l == 1) {
        inv.q_inner = 0;
    } else {
        std::span<const int> interior(w.data() + 1, static_cast<size_t>(l - 2));
        inv.q_inner = continuant(interior);
    }
    return inv;
}

/// Hirzebruch-Jung expansion of q/a: the chain resolving 1/q(1,a).
inline Chain hj_expand(const Int& q, const Int& a) {
    if (q < 2) throw std::invalid_argument("hj_expand: q must be >= 2");
    if (a <= 0 || a >= q) throw std::invalid_argument("hj_expand: need 0 < a < q");
    if (gcd(a, q) != 1) throw std::invalid_argument("hj_expand: gcd(a,q) != 1");
    std::vector<int> ws;
    Int p = q, r = a;
    while (r > 0) {
        Int n = (p + r - 1) / r; // ceil(p/r)
        ws.push_back(static_cast<int>(n));
        Int nr = n * r - p;
        p = r;
        r = nr;
    }
    return Chain(std::move(ws));
}

/// Type (q, a) of the singularity a chain contracts to: q = continuant,
/// a = q1. Inverse of hj_expand.
inline std::pair<Int, Int> chain_to_type(const Chain& chain) {
    if (chain.empty()) return {1, 0};
    ChainInvariants inv = chain_invariants(chain);
    return {inv.q, inv.q1};
}

/// A cyclic quotient singularity 1/q(1,a), stored with the hj_expand(q,a)
/// chain orientation. Equality of singularities is up to chain reversal,
/// i.e. 1/q(1,a) == 1/q(1,a') when a*a' = 1 (mod q).
struct CyclicSingularity {
    Int q;
    Int a;
    Chain chain;

    static CyclicSingularity from_type(const Int& q, const Int& a) {
        return CyclicSingularity{q, a, hj_expand(q, a)};
    }

    static CyclicSingularity from_chain(const Chain& c) {
        auto [q, a] = chain_to_type(c);
        if (q < 2) throw std::invalid_argument("smooth point is not a singularity");
        return CyclicSingularity{q, a, c};
    }

    /// A_n shorthand when the chain is n twos, i.e. a = q-1.
    bool is_rdp() const { return a == q - 1; }

    std::string str() const {
        if (is_rdp()) return "A" + Int(q - 1).str();
        return "1/" + q.str() + "(1," + a.str() + ")";
    }
};

inline bool same_singularity(const CyclicSingularity& s, const CyclicSingularity& t) {
    if (s.q != t.q) return false;
    if (s.a == t.a) return true;
    return (s.a * t.a) % s.q == 1 % s.q;
}

/// Reversing a chain fixes q and conjugates the type: the reversed chain
/// resolves 1/q(1,a') with a*a' = 1 (mod q).
inline std::pair<Chain, CyclicSingularity> reverse_conjugate(const Chain& chain) {
    if (chain.empty()) throw std::invalid_argument("reverse_conjugate of empty chain");
    Chain rev = chain.reversed();
    return {rev, CyclicSingularity::from_chain(rev)};
}

/// u/v profile plus the coefficients c_j = 1 - (v_j + u_j)/q that appear
/// in the curve-detecting formula (and equal the discrepancy coefficients).
struct UVProfile {
    std::vector<Int> u;
    std::vector<Int> v;
    std::vector<Rat> coeff;
};

inline UVProfile uv_profile(const Chain& chain) {
    if (chain.empty()) throw std::invalid_argument("uv_profile of empty chain");
    ChainInvariants inv = chain_invariants(chain);
    UVProfile p;
    p.u = inv.u;
    p.v = inv.v;
    p.coeff.reserve(p.u.size());
    for (size_t j = 0; j < p.u.size(); ++j)
        p.coeff.push_back(Rat(1) - Rat(p.v[j] + p.u[j], inv.q));
    return p;
}

/// Discrepancy divisor data of a chain: coefficients a_j with
/// sum(a_j A_j . A_i) = 2 - n_i, and its self-intersection. The value is
/// computed twice, by the closed form 2l - tr + 2 - (q1+ql+2)/q and by
/// the quadratic form of the solved linear system; a mismatch would mean
/// an internal error and throws.
struct DiscrepancyData {
    std::vector<Rat> a;
    Rat d_squared;
};

inline DiscrepancyData discrepancies(const Chain& chain) {
    if (chain.empty()) throw std::invalid_argument("discrepancies of empty chain");
    const auto& w = chain.weights();
    const int l = chain.length();

    // Solve M a = b with M tridiagonal (diag -n_i, offdiag 1), b_i = 2 - n_i,
    // by exact forward elimination. M is negative definite, so pivots are
    // nonzero.
    std::vector<Rat> diag(static_cast<size_t>(l)), rhs(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) {
        diag[static_cast<size_t>(i)] = Rat(-w[static_cast<size_t>(i)]);
        rhs[static_cast<size_t>(i)] = Rat(2 - w[static_cast<size_t>(i)]);
    }
    for (int i = 1; i < l; ++i) {
        Rat f = Rat(1) / diag[static_cast<size_t>(i - 1)];
        diag[static_cast<size_t>(i)] -= f;
        rhs[static_cast<size_t>(i)] -= f * rhs[static_cast<size_t>(i - 1)];
        if (diag[static_cast<size_t>(i)] == 0) throw std::logic_error("singular intersection matrix");
    }
    DiscrepancyData d;
    d.a.assign(static_cast<size_t>(l), Rat(0));
    for (int i = l - 1; i >= 0; --i) {
        Rat s = rhs[static_cast<size_t>(i)];
        if (i + 1 < l) s -= d.a[static_cast<size_t>(i + 1)];
        d.a[static_cast<size_t>(i)] = s / diag[static_cast<size_t>(i)];
    }

    // Quadratic form a^T M a over the original matrix.
    Rat quad = 0;
    for (int i = 0; i < l; ++i) {
        quad += d.a[static_cast<size_t>(i)] * d.a[static_cast<size_t>(i)] * Rat(-w[static_cast<size_t>(i)]);
        if (i + 1 < l) quad += 2 * d.a[static_cast<size_t>(i)] * d.a[static_cast<size_t>(i + 1)];
    }

    ChainInvariants inv = chain_invariants(chain);
    Rat closed = Rat(2 * l) - Rat(inv.tr) + 2 - Rat(inv.q1 + inv.ql + 2, inv.q);
    if (quad != closed) throw std::logic_error("discrepancy routes disagree on " + chain.str());
    d.d_squared = closed;
    return d;
}

/// Contribution of one chain to the K^2 formula:
/// tr - 2l - 2 + (q1+ql+2)/q, zero for the empty chain (smooth point).
inline Rat k2_term(const Chain& chain) {
    if (chain.empty()) return Rat(0);
    ChainInvariants inv = chain_invariants(chain);
    return Rat(inv.tr) - Rat(2 * chain.length() + 2) + Rat(inv.q1 + inv.ql + 2, inv.q);
}

} // namespace qhpp
