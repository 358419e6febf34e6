#pragma once

#include "qhpp/curve.hpp"

#include <map>
#include <set>

namespace qhpp {

/// A marked dual graph: labeled curves with self-intersections and a
/// symmetric intersection matrix (off-diagonal >= 0), plus the Picard rank
/// of the ambient smooth surface. Curves with self-intersection <= -2 form
/// the exceptional divisor D of a minimal resolution; the rest are extra
/// curves. A contraction that would create a tangential or nodal image
/// (E.C >= 2) sets the non-snc marker; such states are kept for reductio
/// arguments but never pass qhpp_check.
class MarkedResolution {
public:
    MarkedResolution() = default;

    int add_curve(const std::string& label, int self_intersection) {
        if (index_.count(label)) throw std::invalid_argument("duplicate curve label '" + label + "'");
        index_[label] = static_cast<int>(labels_.size());
        labels_.push_back(label);
        self_.push_back(self_intersection);
        for (auto& row : inter_) row.push_back(0);
        inter_.push_back(std::vector<int>(labels_.size(), 0));
        return static_cast<int>(labels_.size()) - 1;
    }

    void set_intersection(const std::string& a, const std::string& b, int m) {
        if (m < 0) throw std::invalid_argument("negative intersection");
        int i = index(a), j = index(b);
        if (i == j) throw std::invalid_argument("use self-intersection for " + a);
        inter_[static_cast<size_t>(i)][static_cast<size_t>(j)] = m;
        inter_[static_cast<size_t>(j)][static_cast<size_t>(i)] = m;
    }

    int index(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw std::invalid_argument("unknown curve '" + label + "'");
        return it->second;
    }
    bool has_curve(const std::string& label) const { return index_.count(label) > 0; }

    int curve_count() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(static_cast<size_t>(i)); }
    int self(int i) const { return self_.at(static_cast<size_t>(i)); }
    int self(const std::string& l) const { return self(index(l)); }
    int intersection(int i, int j) const { return i == j ? self(i) : inter_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int intersection(const std::string& a, const std::string& b) const { return intersection(index(a), index(b)); }

    int picard_rank = 0;
    bool non_snc = false;

    bool is_exceptional(int i) const { return self(i) <= -2; }

    std::vector<int> exceptional_indices() const {
        std::vector<int> v;
        for (int i = 0; i < curve_count(); ++i)
            if (is_exceptional(i)) v.push_back(i);
        return v;
    }
    std::vector<int> extra_indices() const {
        std::vector<int> v;
        for (int i = 0; i < curve_count(); ++i)
            if (!is_exceptional(i)) v.push_back(i);
        return v;
    }

    /// E.D: total intersection of a curve with the exceptional divisor.
    int dot_exceptional(int e) const {
        int t = 0;
        for (int i : exceptional_indices())
            if (i != e) t += intersection(e, i);
        return t;
    }

    friend bool operator==(const MarkedResolution& a, const MarkedResolution& b) {
        return a.labels_ == b.labels_ && a.self_ == b.self_ && a.inter_ == b.inter_ &&
               a.picard_rank == b.picard_rank && a.non_snc == b.non_snc;
    }

    /// Adjacency-list text form:
    ///   curve <label> <self-intersection>
    ///   edge <label> <label> [multiplicity]
    ///   picard <rank>
    std::string str() const {
        std::string s;
        for (int i = 0; i < curve_count(); ++i)
            s += "curve " + label(i) + " " + std::to_string(self(i)) + "\n";
        for (int i = 0; i < curve_count(); ++i)
            for (int j = i + 1; j < curve_count(); ++j)
                if (intersection(i, j) > 0)
                    s += "edge " + label(i) + " " + label(j) +
                         (intersection(i, j) == 1 ? "" : " " + std::to_string(intersection(i, j))) + "\n";
        s += "picard " + std::to_string(picard_rank) + "\n";
        return s;
    }

    static MarkedResolution parse(std::string_view text) {
        MarkedResolution s;
        size_t pos = 0;
        bool picard_seen = false;
        while (pos < text.size()) {
            auto eol = text.find('\n', pos);
            std::string_view line = detail::trim(text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
            pos = eol == std::string_view::npos ? text.size() : eol + 1;
            if (line.empty() || line.front() == '#') continue;
            std::vector<std::string> tok;
            size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                size_t start = i;
                while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                if (i > start) tok.emplace_back(line.substr(start, i - start));
            }
            if (tok.empty()) continue;
            if (tok[0] == "curve" && tok.size() == 3) {
                s.add_curve(tok[1], std::stoi(tok[2]));
            } else if (tok[0] == "edge" && (tok.size() == 3 || tok.size() == 4)) {
                s.set_intersection(tok[1], tok[2], tok.size() == 4 ? std::stoi(tok[3]) : 1);
            } else if (tok[0] == "picard" && tok.size() == 2) {
                s.picard_rank = std::stoi(tok[1]);
                picard_seen = true;
            } else {
                throw std::invalid_argument("bad graph line '" + std::string(line) + "'");
            }
        }
        if (!picard_seen) s.picard_rank = 1 + static_cast<int>(s.exceptional_indices().size());
        return s;
    }

private:
    std::vector<std::string> labels_;
    std::vector<int> self_;
    std::vector<std::vector<int>> inter_;
    std::map<std::string, int> index_;
};

/// Blow up a point lying on the named curves (1 = free point, 2 = an
/// intersection point, 3 = a point common to three curves, as arises when
/// resolving a tangency). Every curve through the point drops
/// self-intersection by one, each pair loses one mutual intersection, and
/// the new (-1)-curve meets each once.
inline MarkedResolution blow_up(const MarkedResolution& state, const std::vector<std::string>& at,
                                const std::string& new_label = "") {
    if (at.empty() || at.size() > 3) throw std::invalid_argument("blow_up: point lies on 1..3 curves");
    for (size_t i = 0; i < at.size(); ++i)
        for (size_t j = i + 1; j < at.size(); ++j)
            if (state.intersection(at[i], at[j]) < 1)
                throw std::invalid_argument("blow_up: " + at[i] + " and " + at[j] + " do not meet");

    MarkedResolution out = state;
    std::string name = new_label;
    if (name.empty()) {
        int n = 1;
        while (out.has_curve("F" + std::to_string(n))) ++n;
        name = "F" + std::to_string(n);
    }

    // rebuild via a copy with one more curve
    MarkedResolution next;
    next.picard_rank = state.picard_rank + 1;
    next.non_snc = state.non_snc;
    for (int i = 0; i < state.curve_count(); ++i) {
        int s = state.self(i);
        if (std::find(at.begin(), at.end(), state.label(i)) != at.end()) s -= 1;
        next.add_curve(state.label(i), s);
    }
    int f = next.add_curve(name, -1);
    for (int i = 0; i < state.curve_count(); ++i)
        for (int j = i + 1; j < state.curve_count(); ++j) {
            int m = state.intersection(i, j);
            bool i_at = std::find(at.begin(), at.end(), state.label(i)) != at.end();
            bool j_at = std::find(at.begin(), at.end(), state.label(j)) != at.end();
            if (i_at && j_at) m -= 1;
            if (m) next.set_intersection(state.label(i), state.label(j), m);
        }
    for (const auto& l : at) next.set_intersection(l, next.label(f), 1);
    return next;
}

/// Contract a (-1)-curve: images gain A.B += (A.E)(B.E) and
/// A^2 += (A.E)^2. Contracting across a multiple intersection (E.C >= 2)
/// leaves a non-snc image and flags the state.
inline MarkedResolution contract(const MarkedResolution& state, const std::string& curve) {
    int e = state.index(curve);
    if (state.self(e) != -1) throw std::invalid_argument("contract: " + curve + " is not a (-1)-curve");

    MarkedResolution next;
    next.picard_rank = state.picard_rank - 1;
    next.non_snc = state.non_snc;
    for (int i = 0; i < state.curve_count(); ++i) {
        if (i == e) continue;
        int ie = state.intersection(i, e);
        if (ie >= 2) next.non_snc = true;
        next.add_curve(state.label(i), state.self(i) + ie * ie);
    }
    for (int i = 0; i < state.curve_count(); ++i) {
        if (i == e) continue;
        for (int j = i + 1; j < state.curve_count(); ++j) {
            if (j == e) continue;
            int m = state.intersection(i, j) + state.intersection(i, e) * state.intersection(j, e);
            if (m) next.set_intersection(state.label(i), state.label(j), m);
        }
    }
    return next;
}

/// Decomposition of the exceptional set into disjoint simple chains;
/// nullopt when it is not a disjoint union of linear chains (a curve with
/// three exceptional neighbors, a double adjacency, or a cycle).
inline std::optional<std::vector<std::vector<int>>> exceptional_chain_decomposition(const MarkedResolution& s) {
    auto exc = s.exceptional_indices();
    std::set<int> excset(exc.begin(), exc.end());
    std::map<int, std::vector<int>> nbr;
    for (int i : exc) {
        for (int j : exc) {
            if (j == i) continue;
            int m = s.intersection(i, j);
            if (m == 0) continue;
            if (m >= 2) return std::nullopt;
            nbr[i].push_back(j);
        }
        if (nbr[i].size() > 2) return std::nullopt;
    }
    std::set<int> seen;
    std::vector<std::vector<int>> chains;
    // start walks at endpoints (degree <= 1), smallest label first
    std::vector<int> order = exc;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return s.label(a) < s.label(b); });
    for (int start : order) {
        if (seen.count(start) || nbr[start].size() > 1) continue;
        std::vector<int> chain;
        int prev = -1, cur = start;
        while (true) {
            chain.push_back(cur);
            seen.insert(cur);
            int nxt = -1;
            for (int cand : nbr[cur])
                if (cand != prev) nxt = cand;
            if (nxt == -1) break;
            prev = cur;
            cur = nxt;
        }
        chains.push_back(std::move(chain));
    }
    if (seen.size() != excset.size()) return std::nullopt; // leftover = cycle
    return chains;
}

struct QhppVerdict {
    enum class Reason { ok, non_snc, not_chain_decomposition, too_many_chains, rank_mismatch };
    bool valid = false;
    Reason reason = Reason::ok;
    int chain_count = 0;
    int L = 0;

    std::string str() const {
        switch (reason) {
            case Reason::ok: return "valid";
            case Reason::non_snc: return "invalid: not a simple-normal-crossing resolution";
            case Reason::not_chain_decomposition: return "invalid: exceptional set is not a disjoint union of chains";
            case Reason::too_many_chains: return "invalid: " + std::to_string(chain_count) + " chains exceed 4";
            case Reason::rank_mismatch: return "invalid: picard rank != 1 + L";
        }
        return "?";
    }
};

/// Validity gate for (the minimal resolution of) a rational Q-homology
/// projective plane: at most 4 disjoint exceptional chains of weights >= 2,
/// Picard rank 1 + L, and no non-snc marker.
inline QhppVerdict qhpp_check(const MarkedResolution& s, int max_chains = 4) {
    QhppVerdict v;
    auto dec = exceptional_chain_decomposition(s);
    if (dec) {
        v.chain_count = static_cast<int>(dec->size());
        v.L = static_cast<int>(s.exceptional_indices().size());
    }
    if (s.non_snc) {
        v.reason = QhppVerdict::Reason::non_snc;
        return v;
    }
    if (!dec) {
        v.reason = QhppVerdict::Reason::not_chain_decomposition;
        return v;
    }
    if (v.chain_count > max_chains) {
        v.reason = QhppVerdict::Reason::too_many_chains;
        return v;
    }
    if (s.picard_rank != 1 + v.L) {
        v.reason = QhppVerdict::Reason::rank_mismatch;
        return v;
    }
    v.valid = true;
    return v;
}

/// Contraction bookkeeping for a chain starting with weight 2: dropping
/// the first component relates the invariants linearly, and the change of
/// (q1+ql+2)/q is (qbar-qbar1-1)^2 / (qbar (2 qbar - qbar1)), vanishing
/// exactly for rational double points.
struct ContractionIdentities {
    Int q, q1, ql;
    Int bq, bq1, bql, bq_inner;
    bool linear_ok = false;
    Rat difference;           // (q1+ql+2)/q - (bq1+bql+2)/bq
    Int quadratic_lhs;        // difference * bq * (2 bq - bq1)
    Int quadratic_rhs;        // (bq - bq1 - 1)^2
    bool quadratic_ok = false;
    bool difference_vanishes = false;
};

inline ContractionIdentities contraction_identities(const Chain& chain) {
    if (chain.length() < 2) throw std::invalid_argument("contraction_identities: chain length >= 2 required");
    if (chain.weight(1) != 2) throw std::invalid_argument("contraction_identities: first weight must be 2");

    std::vector<int> bar(chain.weights().begin() + 1, chain.weights().end());
    Chain barchain{bar};

    ChainInvariants a = chain_invariants(chain);
    ChainInvariants b = chain_invariants(barchain);

    ContractionIdentities r;
    r.q = a.q; r.q1 = a.q1; r.ql = a.ql;
    r.bq = b.q; r.bq1 = b.q1; r.bql = b.ql; r.bq_inner = b.q_inner;
    r.linear_ok = (r.q1 == r.bq) && (r.ql == 2 * r.bql - r.bq_inner) && (r.q == 2 * r.bq - r.bq1);
    r.difference = Rat(r.q1 + r.ql + 2, r.q) - Rat(r.bq1 + r.bql + 2, r.bq);
    Rat lhs = r.difference * Rat(r.bq) * Rat(2 * r.bq - r.bq1);
    if (denominator(lhs) != 1) throw std::logic_error("quadratic identity lhs is not integral");
    r.quadratic_lhs = numerator(lhs);
    r.quadratic_rhs = (r.bq - r.bq1 - 1) * (r.bq - r.bq1 - 1);
    r.quadratic_ok = r.quadratic_lhs == r.quadratic_rhs;
    r.difference_vanishes = r.difference == 0;
    return r;
}

enum class TerminalClass { log_del_pezzo, log_general_type, numerically_trivial, not_qhpp };

inline std::string to_string(TerminalClass t) {
    switch (t) {
        case TerminalClass::log_del_pezzo: return "log del Pezzo";
        case TerminalClass::log_general_type: return "log general type";
        case TerminalClass::numerically_trivial: return "numerically trivial";
        case TerminalClass::not_qhpp: return "not_qhpp";
    }
    return "?";
}

/// Positivity of K on the contracted surface, decided by running the
/// curve-detecting formula on extra curves (one conclusive curve decides,
/// by the ampleness trichotomy). Curves hitting more than two components
/// of one chain are skipped.
inline Positivity classify_state(const MarkedResolution& s) {
    auto dec = exceptional_chain_decomposition(s);
    if (!dec) return Positivity::undetermined;
    std::vector<Chain> chains;
    std::map<int, std::pair<int, int>> where; // curve index -> (chain, 1-based comp)
    for (const auto& path : *dec) {
        std::vector<int> ws;
        for (size_t k = 0; k < path.size(); ++k) {
            ws.push_back(-s.self(path[k]));
            where[path[k]] = {static_cast<int>(chains.size()), static_cast<int>(k) + 1};
        }
        chains.emplace_back(std::move(ws));
    }
    std::vector<int> extras = s.extra_indices();
    std::sort(extras.begin(), extras.end(), [&](int a, int b) { return s.label(a) < s.label(b); });
    for (int e : extras) {
        CurveHypothesis c;
        c.label = s.label(e);
        c.c2 = s.self(e);
        c.kc = -2 - s.self(e); // smooth rational
        for (auto& [idx, pos] : where) {
            int m = s.intersection(e, idx);
            if (m > 0) c.hits.push_back({pos.first, pos.second, m});
        }
        if (!equation_two_applicable(c, chains)) continue;
        InferenceResult r = infer_from_curve(c, chains);
        switch (r.classification) {
            case Positivity::k_ample:
            case Positivity::numerically_trivial:
            case Positivity::anti_k_ample:
                return r.classification;
            default:
                continue;
        }
    }
    return Positivity::undetermined;
}

inline TerminalClass terminal_class_of(const MarkedResolution& s) {
    if (!qhpp_check(s).valid) return TerminalClass::not_qhpp;
    switch (classify_state(s)) {
        case Positivity::anti_k_ample: return TerminalClass::log_del_pezzo;
        case Positivity::k_ample: return TerminalClass::log_general_type;
        case Positivity::numerically_trivial: return TerminalClass::numerically_trivial;
        default: return TerminalClass::log_general_type; // unclassified, reported as non-terminal
    }
}

/// Extra (-1)-curves eligible for a cascade step: E.D <= 2.
inline std::vector<std::string> admissible_steps(const MarkedResolution& s) {
    std::vector<std::string> out;
    for (int e : s.extra_indices())
        if (s.self(e) == -1 && s.dot_exceptional(e) <= 2) out.push_back(s.label(e));
    std::sort(out.begin(), out.end());
    return out;
}

struct CascadePath {
    std::vector<std::string> steps;
    std::vector<Positivity> step_classes; // classification after each step
    MarkedResolution terminal_state;
    TerminalClass terminal_class = TerminalClass::not_qhpp;
};

/// Depth-first search for a cascade: contract admissible (-1)-curves,
/// keeping only states that stay valid QHPP resolutions, until a state
/// classifies as log del Pezzo (-K ample). Deterministic first-found path
/// in label order; none on exhaustion.
inline std::optional<CascadePath> cascade_search(const MarkedResolution& start, int max_depth = 8) {
    if (!qhpp_check(start).valid) throw std::invalid_argument("cascade_search: initial state fails qhpp_check");

    CascadePath path;
    std::function<std::optional<CascadePath>(const MarkedResolution&, int)> rec =
        [&](const MarkedResolution& s, int depth) -> std::optional<CascadePath> {
        Positivity cls = classify_state(s);
        if (cls == Positivity::anti_k_ample) {
            CascadePath done = path;
            done.terminal_state = s;
            done.terminal_class = TerminalClass::log_del_pezzo;
            return done;
        }
        if (depth >= max_depth) return std::nullopt;
        for (const std::string& e : admissible_steps(s)) {
            MarkedResolution next = contract(s, e);
            if (!qhpp_check(next).valid) continue;
            path.steps.push_back(e);
            path.step_classes.push_back(classify_state(next));
            if (auto r = rec(next, depth + 1)) return r;
            path.steps.pop_back();
            path.step_classes.pop_back();
        }
        return std::nullopt;
    };
    return rec(start, 0);
}

} // namespace qhpp
