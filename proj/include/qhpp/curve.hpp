#pragma once

#include "qhpp/chain.hpp"

#include <map>
#include <optional>

namespace qhpp {

/// Raised when equation (2) is asked about a curve hitting more than two
/// components of one exceptional chain (outside the proposition's scope).
struct Eq2Inapplicable : std::domain_error {
    Eq2Inapplicable() : std::domain_error("eq2_inapplicable") {}
};

/// One intersection of the hypothetical curve with an exceptional
/// component: chain index (0-based), component index (1-based along the
/// chain), multiplicity C.A_j >= 1.
struct CurveHit {
    int chain;
    int component;
    int multiplicity = 1;
};

/// Numerical data of a hypothetical irreducible curve C on the resolution:
/// kc = C.K, c2 = C^2, plus its hits on the exceptional chains.
/// Parses from compact strings like "E(-1): D4[1]*1, D4[9]*1" where Dk[j]
/// is component j of chain k (1-based) and "*m" an optional multiplicity.
struct CurveHypothesis {
    std::string label = "C";
    Int kc;
    Int c2;
    std::vector<CurveHit> hits;

    /// A (-1)-curve: smooth rational with C^2 = -1, so C.K = -1.
    static CurveHypothesis minus_one_curve(std::vector<CurveHit> hits, std::string label = "E") {
        return CurveHypothesis{std::move(label), -1, -1, std::move(hits)};
    }

    std::string str() const {
        std::string s = label + "(" + kc.str() + "," + c2.str() + "):";
        for (size_t i = 0; i < hits.size(); ++i) {
            s += (i ? ", " : " ");
            s += "D" + std::to_string(hits[i].chain + 1) + "[" + std::to_string(hits[i].component) + "]*" +
                 std::to_string(hits[i].multiplicity);
        }
        return s;
    }

    static CurveHypothesis parse(std::string_view text);
};

inline CurveHypothesis CurveHypothesis::parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("bad curve literal '" + std::string(text) + "'"); };
    auto colon = text.find(':');
    std::string_view head = detail::trim(colon == std::string_view::npos ? text : text.substr(0, colon));
    CurveHypothesis c;
    auto open = head.find('(');
    auto close = head.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) fail();
    c.label = std::string(detail::trim(head.substr(0, open)));
    std::string_view nums = head.substr(open + 1, close - open - 1);
    auto comma = nums.find(',');
    if (comma == std::string_view::npos) {
        // "E(-1)" shorthand: a (-1)-curve, kc = c2 = -1 by adjunction.
        Int s{std::string(detail::trim(nums))};
        if (s != -1) fail();
        c.kc = -1;
        c.c2 = -1;
    } else {
        c.kc = Int(std::string(detail::trim(nums.substr(0, comma))));
        c.c2 = Int(std::string(detail::trim(nums.substr(comma + 1))));
    }
    if (colon == std::string_view::npos) return c;
    std::string_view rest = text.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
        auto next = rest.find(',', pos);
        std::string_view tok = detail::trim(rest.substr(pos, next == std::string_view::npos ? rest.size() - pos : next - pos));
        if (!tok.empty()) {
            if (tok.front() != 'D' && tok.front() != 'd') fail();
            auto lb = tok.find('[');
            auto rb = tok.find(']');
            if (lb == std::string_view::npos || rb == std::string_view::npos) fail();
            CurveHit h;
            h.chain = std::stoi(std::string(tok.substr(1, lb - 1))) - 1;
            h.component = std::stoi(std::string(tok.substr(lb + 1, rb - lb - 1)));
            auto star = tok.find('*', rb);
            h.multiplicity = star == std::string_view::npos ? 1 : std::stoi(std::string(tok.substr(star + 1)));
            if (h.chain < 0 || h.component < 1 || h.multiplicity < 1) fail();
            c.hits.push_back(h);
        }
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return c;
}

namespace detail {
// hits grouped per chain, merged by component, sorted by component index
inline std::map<int, std::vector<std::pair<int, Int>>> hits_by_chain(const CurveHypothesis& curve,
                                                                     const std::vector<Chain>& chains) {
    std::map<int, std::map<int, Int>> acc;
    for (const auto& h : curve.hits) {
        if (h.chain < 0 || h.chain >= static_cast<int>(chains.size()))
            throw std::out_of_range("curve hit names chain " + std::to_string(h.chain + 1));
        if (h.component < 1 || h.component > chains[static_cast<size_t>(h.chain)].length())
            throw std::out_of_range("curve hit component out of range on chain " + std::to_string(h.chain + 1));
        if (h.multiplicity < 1) throw std::invalid_argument("hit multiplicity must be >= 1");
        acc[h.chain][h.component] += h.multiplicity;
    }
    std::map<int, std::vector<std::pair<int, Int>>> out;
    for (auto& [ci, comps] : acc) out[ci] = {comps.begin(), comps.end()};
    return out;
}
} // namespace detail

/// Equation (1) of the curve-detecting formula:
/// m_C K^2 = C.K + sum_p sum_j c_j (C.A_j) with c_j = 1 - (v_j+u_j)/q.
inline Rat equation_one(const CurveHypothesis& curve, const std::vector<Chain>& chains) {
    Rat alpha = Rat(curve.kc);
    for (auto& [ci, comps] : detail::hits_by_chain(curve, chains)) {
        UVProfile p = uv_profile(chains[static_cast<size_t>(ci)]);
        for (auto& [j, mult] : comps) alpha += p.coeff[static_cast<size_t>(j - 1)] * Rat(mult);
    }
    return alpha;
}

inline bool equation_two_applicable(const CurveHypothesis& curve, const std::vector<Chain>& chains) {
    for (auto& [ci, comps] : detail::hits_by_chain(curve, chains))
        if (comps.size() > 2) return false;
    return true;
}

/// Equation (2): m_C^2 K^2 = C^2 + sum_p of the u/v quadratic correction.
/// Applicable only when C hits at most two components per chain.
inline Rat equation_two(const CurveHypothesis& curve, const std::vector<Chain>& chains) {
    Rat beta = Rat(curve.c2);
    for (auto& [ci, comps] : detail::hits_by_chain(curve, chains)) {
        if (comps.size() > 2) throw Eq2Inapplicable{};
        ChainInvariants inv = chain_invariants(chains[static_cast<size_t>(ci)]);
        auto u = [&](int j) { return inv.u[static_cast<size_t>(j - 1)]; };
        auto v = [&](int j) { return inv.v[static_cast<size_t>(j - 1)]; };
        if (comps.size() == 1) {
            auto [s, ms] = comps[0];
            beta += Rat(v(s) * u(s) * ms * ms, inv.q);
        } else {
            auto [s, ms] = comps[0]; // s < t by construction
            auto [t, mt] = comps[1];
            beta += Rat(v(s) * u(s) * ms * ms + v(t) * u(t) * mt * mt + 2 * v(t) * u(s) * ms * mt, inv.q);
        }
    }
    return beta;
}

enum class Positivity { k_ample, numerically_trivial, anti_k_ample, inconsistent, undetermined };

inline std::string to_string(Positivity p) {
    switch (p) {
        case Positivity::k_ample: return "K ample";
        case Positivity::numerically_trivial: return "numerically trivial";
        case Positivity::anti_k_ample: return "-K ample";
        case Positivity::inconsistent: return "inconsistent";
        case Positivity::undetermined: return "undetermined";
    }
    return "?";
}

/// Result of solving equations (1) and (2) for the unknowns (m, K^2):
/// alpha = m K^2, beta = m^2 K^2. The sign of m classifies the positivity
/// of K by the ampleness trichotomy.
struct InferenceResult {
    Rat alpha;
    Rat beta;
    std::optional<Rat> m;
    std::optional<Rat> k_squared;
    Positivity classification = Positivity::undetermined;
    bool infeasible_for_log_general_type = false;

    std::string str() const {
        auto opt = [](const std::optional<Rat>& r) { return r ? to_string(*r) : std::string("undetermined"); };
        return "alpha=" + to_string(alpha) + " beta=" + to_string(beta) + " m=" + opt(m) +
               " K2=" + opt(k_squared) + " [" + to_string(classification) + "]";
    }
};

/// Solves (alpha, beta) for m and K^2 when both are nonzero; with a known
/// K^2 supplied, checks both equations as constraints instead. A result is
/// flagged infeasible for log general type when m <= 0 or the derived K^2
/// violates 0 < K^2 <= 3 e_orb of the supplied chains.
inline InferenceResult infer_from_curve(const CurveHypothesis& curve, const std::vector<Chain>& chains,
                                        std::optional<Rat> known_k_squared = {}) {
    InferenceResult r;
    r.alpha = equation_one(curve, chains);
    r.beta = equation_two(curve, chains);

    if (known_k_squared) {
        r.k_squared = known_k_squared;
        if (*known_k_squared == 0) {
            r.classification = (r.alpha == 0 && r.beta == 0) ? Positivity::numerically_trivial
                                                             : Positivity::inconsistent;
        } else {
            Rat m = r.alpha / *known_k_squared;
            if (m * m * *known_k_squared != r.beta) {
                r.classification = Positivity::inconsistent;
            } else {
                r.m = m;
                r.classification = m > 0   ? Positivity::k_ample
                                   : m < 0 ? Positivity::anti_k_ample
                                           : Positivity::numerically_trivial;
            }
        }
    } else if (r.alpha == 0 && r.beta == 0) {
        // m = 0 is consistent; K^2 stays undetermined.
        r.m = Rat(0);
        r.classification = Positivity::numerically_trivial;
    } else if (r.alpha == 0 || r.beta == 0) {
        // alpha = 0, beta != 0 contradicts m^2 K^2 = beta; beta = 0,
        // alpha != 0 contradicts m K^2 = alpha.
        r.classification = Positivity::inconsistent;
    } else {
        r.m = r.beta / r.alpha;
        r.k_squared = r.alpha * r.alpha / r.beta;
        r.classification = *r.m > 0 ? Positivity::k_ample : Positivity::anti_k_ample;
    }

    if (r.classification == Positivity::k_ample) {
        // The log-general-type reading must also clear the BMY gate.
        if (r.k_squared) {
            Rat e_orb = 3;
            for (const auto& c : chains)
                if (!c.empty()) e_orb -= Rat(1) - Rat(1, continuant(c));
            r.infeasible_for_log_general_type = !(*r.k_squared > 0 && *r.k_squared <= 3 * e_orb);
        }
    } else {
        r.infeasible_for_log_general_type = true;
    }
    return r;
}

/// Exhaustive coefficient-sum scan on [3,2^8]: all hit multisets {j,k}
/// of total multiplicity two. Every sum must stay below 1 (so m > 0 is
/// impossible for a (-1)-curve with these hits); the maximum over
/// distinct pairs is 17/19, attained at (1,2).
struct PairScanResult {
    struct Row {
        int j, k;
        Rat sum;
    };
    std::vector<Row> rows;
    Rat max_distinct = 0; // over j < k
    Rat max_all = 0;      // including double hits j = k
    bool all_below_one = true;
};

inline PairScanResult pair_scan_23719() {
    Chain chain = hj_expand(19, 9); // [3,2,2,2,2,2,2,2,2]
    UVProfile p = uv_profile(chain);
    PairScanResult res;
    for (int j = 1; j <= chain.length(); ++j)
        for (int k = j; k <= chain.length(); ++k) {
            Rat s = p.coeff[static_cast<size_t>(j - 1)] + p.coeff[static_cast<size_t>(k - 1)];
            res.rows.push_back({j, k, s});
            if (s >= 1) res.all_below_one = false;
            if (s > res.max_all) res.max_all = s;
            if (j < k && s > res.max_distinct) res.max_distinct = s;
        }
    return res;
}

} // namespace qhpp
