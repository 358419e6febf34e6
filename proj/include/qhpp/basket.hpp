#pragma once

#include "qhpp/chain.hpp"

#include <map>
#include <optional>

namespace qhpp {

/// Multiset of cyclic quotient singularities attached to a candidate
/// Q-homology projective plane. A rational candidate carries at most 4;
/// 5 is legal only for the Enriques type 3A1 + 2A3.
class Basket {
public:
    Basket() = default;
    explicit Basket(std::vector<CyclicSingularity> sings) : sings_(std::move(sings)) {
        if (sings_.size() > 5) throw std::invalid_argument("basket holds more than 5 singularities");
    }

    static Basket of_chains(const std::vector<Chain>& chains) {
        std::vector<CyclicSingularity> ss;
        for (const auto& c : chains)
            if (!c.empty()) ss.push_back(CyclicSingularity::from_chain(c));
        return Basket(std::move(ss));
    }

    const std::vector<CyclicSingularity>& singularities() const { return sings_; }
    size_t size() const { return sings_.size(); }

    /// L = total number of exceptional components.
    int L() const {
        int l = 0;
        for (const auto& s : sings_) l += s.chain.length();
        return l;
    }

    std::vector<Int> orders() const {
        std::vector<Int> qs;
        for (const auto& s : sings_) qs.push_back(s.q);
        return qs;
    }

    Basket with(const CyclicSingularity& s) const {
        auto ss = sings_;
        ss.push_back(s);
        return Basket(std::move(ss));
    }

    Basket with_chain(const Chain& c) const { return with(CyclicSingularity::from_chain(c)); }

    bool is_three_a1_two_a3() const {
        if (sings_.size() != 5) return false;
        int a1 = 0, a3 = 0;
        for (const auto& s : sings_) {
            if (s.is_rdp() && s.q == 2) ++a1;
            else if (s.is_rdp() && s.q == 4) ++a3;
        }
        return a1 == 3 && a3 == 2;
    }

    enum class SizeCheck { ok, five_requires_enriques, too_many };

    /// Cap on the number of singular points: at most 4 for a rational
    /// candidate; exactly 5 only for 3A1+2A3 (Enriques), which is not
    /// rational.
    SizeCheck size_check(bool rational_candidate = true) const {
        if (sings_.size() <= 4) return SizeCheck::ok;
        if (sings_.size() == 5 && !rational_candidate && is_three_a1_two_a3()) return SizeCheck::ok;
        return sings_.size() == 5 ? SizeCheck::five_requires_enriques : SizeCheck::too_many;
    }

    /// "A1 + 1/3(1,1) + 1/5(1,2) + [2,3,2,3]"
    std::string str() const {
        if (sings_.empty()) return "(empty)";
        std::string s;
        for (size_t i = 0; i < sings_.size(); ++i) {
            if (i) s += " + ";
            s += sings_[i].str();
        }
        return s;
    }

    static Basket parse(std::string_view text);

private:
    std::vector<CyclicSingularity> sings_;
};

namespace detail {
inline CyclicSingularity parse_singularity(std::string_view tok) {
    tok = trim(tok);
    if (tok.empty()) throw std::invalid_argument("empty singularity token");
    if (tok.front() == '[') return CyclicSingularity::from_chain(Chain::parse(tok));
    if (tok.front() == 'A' || tok.front() == 'a') {
        Int n{std::string(tok.substr(1))};
        if (n < 1) throw std::invalid_argument("bad A_n token");
        return CyclicSingularity::from_type(n + 1, n);
    }
    // "1/q(1,a)"
    auto slash = tok.find('/');
    auto open = tok.find('(');
    auto comma = tok.find(',', open == std::string_view::npos ? 0 : open);
    auto close = tok.find(')');
    if (slash == std::string_view::npos || open == std::string_view::npos ||
        comma == std::string_view::npos || close == std::string_view::npos ||
        trim(tok.substr(0, slash)) != "1")
        throw std::invalid_argument("bad singularity token '" + std::string(tok) + "'");
    Int q{std::string(trim(tok.substr(slash + 1, open - slash - 1)))};
    std::string_view one = trim(tok.substr(open + 1, comma - open - 1));
    if (one != "1") throw std::invalid_argument("singularity type must be 1/q(1,a)");
    Int a{std::string(trim(tok.substr(comma + 1, close - comma - 1)))};
    return CyclicSingularity::from_type(q, a);
}
} // namespace detail

inline Basket Basket::parse(std::string_view text) {
    text = detail::trim(text);
    std::vector<CyclicSingularity> ss;
    if (text.empty() || text == "(empty)") return Basket{};
    size_t pos = 0;
    while (pos < text.size()) {
        // split on '+' at depth 0 (outside brackets/parens)
        int depth = 0;
        size_t end = pos;
        for (; end < text.size(); ++end) {
            char c = text[end];
            if (c == '[' || c == '(') ++depth;
            else if (c == ']' || c == ')') --depth;
            else if (c == '+' && depth == 0) break;
        }
        ss.push_back(detail::parse_singularity(text.substr(pos, end - pos)));
        pos = (end < text.size()) ? end + 1 : end;
    }
    return Basket(std::move(ss));
}

/// K^2 of the singular surface: 9 - L + sum over chains of
/// (tr - 2l - 2 + (q1+ql+2)/q).
inline Rat k_squared(const Basket& basket) {
    Rat k = 9 - basket.L();
    for (const auto& s : basket.singularities()) k += k2_term(s.chain);
    return k;
}

/// K^2 of the smooth model: Noether bookkeeping gives 9 - L.
inline int k_squared_smooth(const Basket& basket) { return 9 - basket.L(); }

/// e_orb = 3 - sum (1 - 1/q_p); e_top = 3 for a QHPP.
inline Rat orbifold_euler(const Basket& basket) {
    Rat e = 3;
    for (const auto& s : basket.singularities()) e -= Rat(1) - Rat(1, s.q);
    return e;
}

struct SurfaceInvariants {
    Rat k_squared;
    Rat e_orb;
    int k_squared_smooth;
};

/// Computes K^2 both by the closed formula and by
/// 9 - L - sum D_p^2 (discrepancy route); the two must agree.
inline SurfaceInvariants surface_invariants(const Basket& basket) {
    SurfaceInvariants si{k_squared(basket), orbifold_euler(basket), k_squared_smooth(basket)};
    Rat via_disc = si.k_squared_smooth;
    for (const auto& s : basket.singularities()) via_disc -= discrepancies(s.chain).d_squared;
    if (via_disc != si.k_squared) throw std::logic_error("K^2 routes disagree on " + basket.str());
    return si;
}

enum class BmyVerdict { pass, fail_upper, fail_positive };

inline std::string to_string(BmyVerdict v) {
    switch (v) {
        case BmyVerdict::pass: return "pass";
        case BmyVerdict::fail_upper: return "fail_upper";
        case BmyVerdict::fail_positive: return "fail_positive";
    }
    return "?";
}

/// Bogomolov-Miyaoka-Yau gate for a log-general-type candidate:
/// pass iff 0 < K^2 <= 3 e_orb.
inline BmyVerdict bmy_gate(const Basket& basket) {
    Rat k2 = k_squared(basket);
    if (k2 <= 0) return BmyVerdict::fail_positive;
    if (k2 > 3 * orbifold_euler(basket)) return BmyVerdict::fail_upper;
    return BmyVerdict::pass;
}

/// Arithmetic necessary conditions on the orders of a basket: pairwise
/// coprimality, gcd(q,30) = 1 for the largest order, and the
/// perfect-square obstruction on 30*q*K^2 (equivalently 30(q1+q) in the
/// contracted RDP sub-case).
struct ObstructionReport {
    bool pairwise_coprime = true;
    std::optional<std::pair<Int, Int>> offending_pair;
    std::optional<Int> fourth_order;
    bool gcd30_ok = true;
    std::optional<Rat> square_test_value; // 30*q*K^2 or 30*(q1+q)
    std::optional<bool> square_test_ok;   // set when a value was tested

    bool all_pass() const {
        return pairwise_coprime && gcd30_ok && (!square_test_ok || *square_test_ok);
    }
};

inline ObstructionReport arithmetic_obstructions(const std::vector<Int>& orders) {
    ObstructionReport r;
    for (size_t i = 0; i < orders.size() && r.pairwise_coprime; ++i)
        for (size_t j = i + 1; j < orders.size(); ++j)
            if (gcd(orders[i], orders[j]) != 1) {
                r.pairwise_coprime = false;
                r.offending_pair = {orders[i], orders[j]};
                break;
            }
    if (!orders.empty()) {
        Int q = *std::max_element(orders.begin(), orders.end());
        r.fourth_order = q;
        r.gcd30_ok = gcd(q, Int(30)) == 1;
    }
    return r;
}

inline ObstructionReport arithmetic_obstructions(const Basket& basket) {
    ObstructionReport r = arithmetic_obstructions(basket.orders());
    Rat q = 1;
    if (!basket.orders().empty())
        q = Rat(*std::max_element(basket.orders().begin(), basket.orders().end()));
    r.square_test_value = Rat(30) * q * k_squared(basket);
    r.square_test_ok = is_integer_perfect_square(*r.square_test_value);
    return r;
}

/// The (q, q1) form of the square obstruction: in the n1 = 3 contraction
/// case, 30*q*K^2 is a square iff 30(q1+q) is.
inline ObstructionReport arithmetic_obstructions(const Int& q, const Int& q1) {
    ObstructionReport r;
    r.fourth_order = q;
    r.gcd30_ok = gcd(q, Int(30)) == 1;
    r.square_test_value = Rat(30 * (q1 + q));
    r.square_test_ok = is_integer_perfect_square(*r.square_test_value);
    return r;
}

} // namespace qhpp
