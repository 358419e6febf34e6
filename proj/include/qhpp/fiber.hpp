#pragma once

#include "qhpp/chain.hpp"

#include <map>
#include <set>

namespace qhpp {

/// One singular fiber of a P^1-fibration as a tree of rational curves:
/// components carry (self-intersection <= -1, multiplicity >= 1), edges are
/// transversal intersections. Invariantly F.C = 0 for every component C
/// (hence F^2 = 0), and at least one component is a (-1)-curve. Cyclic
/// configurations are rejected at construction.
class FiberConfig {
public:
    struct Component {
        int self;
        int mult;
        friend auto operator<=>(const Component&, const Component&) = default;
    };

    FiberConfig() = default;

    static FiberConfig make(std::vector<Component> comps, std::vector<std::pair<int, int>> edges) {
        FiberConfig f;
        f.comps_ = std::move(comps);
        f.edges_ = std::move(edges);
        f.rebuild_adjacency();
        f.validate();
        return f;
    }

    /// The fiber of the base case: a smooth fiber blown up once, two
    /// (-1)-curves of multiplicity one meeting transversally.
    static FiberConfig base() {
        return make({{-1, 1}, {-1, 1}}, {{0, 1}});
    }

    int size() const { return static_cast<int>(comps_.size()); }
    const std::vector<Component>& components() const { return comps_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbours(int i) const { return adj_[static_cast<size_t>(i)]; }
    int self(int i) const { return comps_[static_cast<size_t>(i)].self; }
    int mult(int i) const { return comps_[static_cast<size_t>(i)].mult; }
    bool is_minus_one(int i) const { return self(i) == -1; }
    int degree(int i) const { return static_cast<int>(adj_[static_cast<size_t>(i)].size()); }

    /// F.C for a component: mult*self + sum of neighbouring multiplicities.
    int fiber_dot(int i) const {
        int t = mult(i) * self(i);
        for (int j : neighbours(i)) t += mult(j);
        return t;
    }

    /// F^2 = sum m_i (F.C_i); zero for a fiber.
    int fiber_square() const {
        int t = 0;
        for (int i = 0; i < size(); ++i) t += mult(i) * fiber_dot(i);
        return t;
    }

    /// K.F = sum m_i (-2 - C_i^2); -2 for a fiber.
    int canonical_dot() const {
        int t = 0;
        for (int i = 0; i < size(); ++i) t += mult(i) * (-2 - self(i));
        return t;
    }

    /// Blow up a free point of component i: the component drops by one and
    /// acquires a (-1)-leaf of the same multiplicity.
    FiberConfig blow_up_free(int i) const {
        FiberConfig f = *this;
        f.comps_[static_cast<size_t>(i)].self -= 1;
        f.comps_.push_back({-1, mult(i)});
        f.edges_.push_back({i, f.size() - 1});
        f.rebuild_adjacency();
        return f;
    }

    /// Blow up the node between adjacent components i and j: both drop by
    /// one and a (-1)-curve of multiplicity m_i + m_j is inserted.
    FiberConfig blow_up_node(int i, int j) const {
        FiberConfig f = *this;
        auto it = std::find_if(f.edges_.begin(), f.edges_.end(), [&](auto e) {
            return (e.first == i && e.second == j) || (e.first == j && e.second == i);
        });
        if (it == f.edges_.end()) throw std::invalid_argument("blow_up_node: components not adjacent");
        f.edges_.erase(it);
        f.comps_[static_cast<size_t>(i)].self -= 1;
        f.comps_[static_cast<size_t>(j)].self -= 1;
        f.comps_.push_back({-1, mult(i) + mult(j)});
        f.edges_.push_back({i, f.size() - 1});
        f.edges_.push_back({j, f.size() - 1});
        f.rebuild_adjacency();
        return f;
    }

    /// Canonical form: minimum over roots of the AHU tree encoding with
    /// (self, mult) node labels. Equal keys = isomorphic configurations.
    std::string canonical_key() const {
        std::string best;
        for (int r = 0; r < size(); ++r) {
            std::string k = encode(r, -1);
            if (best.empty() || k < best) best = k;
        }
        return best;
    }

    /// Weighted-tree expression, e.g. "E1(-1,1) - A(-3,1) - E2(-1,2) - B(-2,1)"
    /// for chains; branches print in brackets.
    std::string str() const;

    friend bool operator==(const FiberConfig& a, const FiberConfig& b) {
        return a.canonical_key() == b.canonical_key();
    }

    void validate() const {
        const int n = size();
        if (n == 0) throw std::invalid_argument("empty fiber");
        if (static_cast<int>(edges_.size()) != n - 1) throw std::invalid_argument("fiber graph is not a tree");
        // connectivity (acyclicity follows from the edge count)
        std::vector<int> stack{0}, seen(static_cast<size_t>(n), 0);
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : neighbours(v))
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
        }
        if (cnt != n) throw std::invalid_argument("fiber graph is disconnected (cycle elsewhere)");
        bool has_minus_one = false;
        for (int i = 0; i < n; ++i) {
            if (self(i) > -1) throw std::invalid_argument("fiber component with self-intersection > -1");
            if (mult(i) < 1) throw std::invalid_argument("fiber multiplicity < 1");
            if (is_minus_one(i)) has_minus_one = true;
            if (fiber_dot(i) != 0) throw std::invalid_argument("F.C != 0: not a fiber");
        }
        if (!has_minus_one) throw std::invalid_argument("singular fiber needs a (-1)-component");
    }

private:
    std::vector<Component> comps_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;

    void rebuild_adjacency() {
        adj_.assign(comps_.size(), {});
        for (auto [a, b] : edges_) {
            adj_[static_cast<size_t>(a)].push_back(b);
            adj_[static_cast<size_t>(b)].push_back(a);
        }
    }

    std::string encode(int v, int parent) const {
        std::vector<std::string> kids;
        for (int w : neighbours(v))
            if (w != parent) kids.push_back(encode(w, v));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + std::to_string(self(v)) + "," + std::to_string(mult(v));
        for (const auto& k : kids) s += k;
        return s + ")";
    }
};

inline std::string FiberConfig::str() const {
    // label (-1)-curves E1, E2, ... and the rest A, B, C, ... in print order
    int ecount = 0;
    char letter = 'A';
    std::vector<std::string> name(static_cast<size_t>(size()));
    auto label = [&](int i) {
        if (name[static_cast<size_t>(i)].empty()) {
            if (is_minus_one(i)) name[static_cast<size_t>(i)] = "E" + std::to_string(++ecount);
            else name[static_cast<size_t>(i)] = std::string(1, letter++);
        }
        return name[static_cast<size_t>(i)] + "(" + std::to_string(self(i)) + "," + std::to_string(mult(i)) + ")";
    };
    bool is_path = true;
    for (int i = 0; i < size(); ++i)
        if (degree(i) > 2) is_path = false;
    if (is_path && size() > 1) {
        int end = -1;
        for (int i = 0; i < size() && end < 0; ++i)
            if (degree(i) <= 1) end = i;
        // walk both directions, pick the lexicographically smaller signature
        auto walk = [&](int start) {
            std::vector<int> order;
            int prev = -1, cur = start;
            while (cur != -1) {
                order.push_back(cur);
                int nxt = -1;
                for (int w : neighbours(cur))
                    if (w != prev) nxt = w;
                prev = cur;
                cur = nxt;
            }
            return order;
        };
        std::vector<int> fwd = walk(end);
        std::vector<int> bwd(fwd.rbegin(), fwd.rend());
        auto sig = [&](const std::vector<int>& o) {
            std::string s;
            for (int i : o) s += std::to_string(self(i)) + "," + std::to_string(mult(i)) + ";";
            return s;
        };
        const std::vector<int>& order = sig(fwd) <= sig(bwd) ? fwd : bwd;
        std::string s;
        for (size_t i = 0; i < order.size(); ++i) {
            if (i) s += " - ";
            s += label(order[i]);
        }
        return s;
    }
    // general tree: nested from the canonical root
    std::function<std::string(int, int)> rec = [&](int v, int parent) {
        std::string s = label(v);
        std::vector<int> kids;
        for (int w : neighbours(v))
            if (w != parent) kids.push_back(w);
        if (!kids.empty()) {
            s += "[";
            for (size_t i = 0; i < kids.size(); ++i) {
                if (i) s += ", ";
                s += rec(kids[i], v);
            }
            s += "]";
        }
        return s;
    };
    return rec(0, -1);
}

/// Exhaustive generation of singular fibers by repeated blow-up of the base
/// fiber, deduplicated by canonical form, complete up to max_components.
/// Deterministic order: by component count, then canonical key.
inline std::vector<FiberConfig> enumerate_fibers(int max_components) {
    constexpr int hard_cap = 12;
    if (max_components < 2) throw std::invalid_argument("enumerate_fibers: bound below base size");
    if (max_components > hard_cap)
        throw std::invalid_argument("enumerate_fibers: bound exceeds configured cap of " + std::to_string(hard_cap));

    std::map<std::string, FiberConfig> seen;
    std::vector<FiberConfig> frontier{FiberConfig::base()};
    seen[FiberConfig::base().canonical_key()] = FiberConfig::base();
    while (!frontier.empty()) {
        std::vector<FiberConfig> next;
        for (const FiberConfig& f : frontier) {
            if (f.size() >= max_components) continue;
            std::vector<FiberConfig> children;
            for (int i = 0; i < f.size(); ++i) children.push_back(f.blow_up_free(i));
            for (auto [a, b] : f.edges()) children.push_back(f.blow_up_node(a, b));
            for (FiberConfig& c : children) {
                std::string key = c.canonical_key();
                if (seen.emplace(key, c).second) next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    std::vector<FiberConfig> out;
    for (auto& [k, f] : seen) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const FiberConfig& a, const FiberConfig& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.canonical_key() < b.canonical_key();
    });
    return out;
}

/// Horizontal components available to one fiber: ordinary sections meet the
/// fiber in one multiplicity-1 component; the 2-section (at most one)
/// contributes total multiplicity two: two hits on multiplicity-1
/// components (possibly tangentially on one) or a single hit on a
/// multiplicity-2 component.
///
/// With chain_accounting on, the horizontal components are components of
/// the fourth exceptional chain, and the non-(-1) fiber components outside
/// the fragments must fit into the exceptional chains: at most one run of
/// them is a complete standalone chain (such as the A1 point), every other
/// run is a piece of the fourth chain and needs its chain continuations
/// realized through leftover horizontal capacity or a chain end.
struct HorizontalBudget {
    int sections = 2;
    int two_sections = 1;
    bool chain_accounting = true;
};

/// One horizontal assignment entry of a witness: which horizontal hits
/// which component, and with how many intersection units.
struct HorizontalHit {
    std::string horizontal;
    int component;
    int units;
};

struct FiberMatch {
    FiberConfig config;
    std::vector<std::vector<int>> fragment_components; // per fragment, path in order
    std::vector<HorizontalHit> witness;
};

namespace detail {

// One demand on horizontal capacity: either intersection units toward a
// (-1)-curve's floor, or a single chain link to the endpoint of a piece of
// the fourth chain.
struct HorizontalDemand {
    int comp;
    int mult;       // multiplicity of the target component
    int units;      // required intersection number with horizontals
};

// Exact assignment search. Sections carry one unit and may only land on
// multiplicity-1 components; the 2-section carries total fiber multiplicity
// two: it hits one multiplicity-2 component once, or distributes two
// intersection units over multiplicity-1 components (both on one component
// means tangential contact).
inline bool solve_horizontals(const std::vector<HorizontalDemand>& demands, int sections_left,
                              int two_units_left, bool two_usable_on_m2, size_t k,
                              std::vector<HorizontalHit>& witness, int next_section) {
    if (k == demands.size()) return true;
    HorizontalDemand d = demands[k];
    if (d.units == 0) return solve_horizontals(demands, sections_left, two_units_left, two_usable_on_m2, k + 1, witness, next_section);
    if (d.mult >= 3) return false;
    if (d.mult == 2) {
        // only a full hit of the 2-section reaches a multiplicity-2 component
        if (d.units > 1 || two_units_left != 2 || !two_usable_on_m2) return false;
        witness.push_back({"s", d.comp, 1});
        if (solve_horizontals(demands, sections_left, 0, false, k + 1, witness, next_section)) return true;
        witness.pop_back();
        return false;
    }
    // multiplicity 1: take a section unit or a 2-section unit
    if (sections_left > 0) {
        witness.push_back({"s" + std::to_string(next_section), d.comp, 1});
        auto rest = demands;
        rest[k].units -= 1;
        if (solve_horizontals(rest, sections_left - 1, two_units_left, two_usable_on_m2, k, witness, next_section + 1))
            return true;
        witness.pop_back();
    }
    if (two_units_left > 0) {
        witness.push_back({"s", d.comp, 1});
        auto rest = demands;
        rest[k].units -= 1;
        if (solve_horizontals(rest, sections_left, two_units_left - 1, false, k, witness, next_section)) return true;
        witness.pop_back();
    }
    return false;
}

} // namespace detail

/// Finds a horizontal assignment for one embedded configuration, or
/// nullopt. Floors: every (-1)-curve must reach E.(D + horizontals) >= 3
/// when it meets a fragment or a standalone chain (its exceptional hits are
/// then not all on the fourth chain) and >= 2 otherwise; non-(-1) fiber
/// components count as D. With chain accounting, the runs of non-(-1)
/// components outside the fragments must additionally fit the exceptional
/// chains (see HorizontalBudget).
inline std::optional<std::vector<HorizontalHit>> assign_horizontals(const FiberConfig& f,
                                                                    const std::vector<std::vector<int>>& frags,
                                                                    const HorizontalBudget& budget) {
    std::vector<char> in_frag(static_cast<size_t>(f.size()), 0);
    for (const auto& path : frags)
        for (int v : path) in_frag[static_cast<size_t>(v)] = 1;

    // runs of non-(-1) components outside the fragments
    std::vector<int> run_of(static_cast<size_t>(f.size()), -1);
    std::vector<std::vector<int>> runs;
    for (int i = 0; i < f.size(); ++i) {
        if (f.is_minus_one(i) || in_frag[static_cast<size_t>(i)] || run_of[static_cast<size_t>(i)] >= 0) continue;
        std::vector<int> run, stack{i};
        run_of[static_cast<size_t>(i)] = static_cast<int>(runs.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            run.push_back(v);
            for (int w : f.neighbours(v)) {
                if (f.is_minus_one(w) || in_frag[static_cast<size_t>(w)]) continue;
                if (run_of[static_cast<size_t>(w)] >= 0) continue;
                run_of[static_cast<size_t>(w)] = static_cast<int>(runs.size());
                stack.push_back(w);
            }
        }
        runs.push_back(std::move(run));
    }

    auto run_endpoints = [&](const std::vector<int>& run) -> std::optional<std::pair<int, int>> {
        // a run must be a path inside the fiber tree; return its two ends
        int e1 = -1, e2 = -1;
        for (int v : run) {
            int deg = 0;
            for (int w : f.neighbours(v))
                if (!f.is_minus_one(w) && !in_frag[static_cast<size_t>(w)] && run_of[static_cast<size_t>(w)] == run_of[static_cast<size_t>(v)]) ++deg;
            if (deg > 2) return std::nullopt;
            if (deg <= 1) (e1 < 0 ? e1 : e2) = v;
        }
        if (run.size() == 1) return std::make_pair(run[0], run[0]);
        if (e1 < 0 || e2 < 0) return std::nullopt; // cycle cannot occur in a tree
        return std::make_pair(e1, e2);
    };

    auto floors_and_solve = [&](int standalone_run) -> std::optional<std::vector<HorizontalHit>> {
        std::vector<detail::HorizontalDemand> demands;
        for (int i = 0; i < f.size(); ++i) {
            if (!f.is_minus_one(i)) continue;
            bool strict = false;
            int dcredit = 0;
            for (int w : f.neighbours(i)) {
                if (!f.is_minus_one(w)) ++dcredit;
                if (in_frag[static_cast<size_t>(w)]) strict = true;
                if (standalone_run >= 0 && run_of[static_cast<size_t>(w)] == standalone_run) strict = true;
            }
            int need = (strict ? 3 : 2) - dcredit;
            if (need > 0) demands.push_back({i, f.mult(i), need});
        }
        auto try_solve = [&](std::vector<detail::HorizontalDemand> ds) -> std::optional<std::vector<HorizontalHit>> {
            std::sort(ds.begin(), ds.end(), [](const auto& a, const auto& b) {
                if (a.mult != b.mult) return a.mult > b.mult;
                return a.comp < b.comp;
            });
            std::vector<HorizontalHit> witness;
            if (detail::solve_horizontals(ds, budget.sections, budget.two_sections >= 1 ? 2 : 0,
                                          budget.two_sections >= 1, 0, witness, 1))
                return witness;
            return std::nullopt;
        };

        if (!budget.chain_accounting) {
            // without accounting every run must still be path-shaped
            for (size_t r = 0; r < runs.size(); ++r)
                if (!run_endpoints(runs[r])) return std::nullopt;
            return try_solve(demands);
        }

        // Chain links for the fourth-chain pieces: each piece continues the
        // chain in two directions; a direction is either one of the two
        // chain ends (a piece may absorb at most one: containing both would
        // make it the whole chain, impossible while the horizontal
        // components belong to it) or a link through leftover horizontal
        // capacity into the piece's endpoint. Branch over distributions.
        std::vector<std::pair<int, int>> piece_eps;
        for (size_t r = 0; r < runs.size(); ++r) {
            if (static_cast<int>(r) == standalone_run) continue;
            auto ep = run_endpoints(runs[r]);
            if (!ep) return std::nullopt; // branched run fits no chain
            piece_eps.push_back(*ep);
        }
        std::optional<std::vector<HorizontalHit>> result;
        std::function<void(size_t, int, std::vector<detail::HorizontalDemand>&)> distribute =
            [&](size_t p, int ends_left, std::vector<detail::HorizontalDemand>& ds) {
            if (result) return;
            if (p == piece_eps.size()) {
                result = try_solve(ds);
                return;
            }
            auto [a, b] = piece_eps[p];
            auto with_link = [&](int x, auto&& cont) {
                ds.push_back({x, f.mult(x), 1});
                cont();
                ds.pop_back();
            };
            if (ends_left > 0) {
                // chain end at one endpoint, link at the other
                with_link(b, [&] { distribute(p + 1, ends_left - 1, ds); });
                if (a != b) with_link(a, [&] { distribute(p + 1, ends_left - 1, ds); });
            }
            // no chain end: links at both endpoints
            with_link(a, [&] {
                if (a != b) with_link(b, [&] { distribute(p + 1, ends_left, ds); });
                else {
                    ds.back().units += 1; // single-component piece linked twice
                    distribute(p + 1, ends_left, ds);
                    ds.back().units -= 1;
                }
            });
        };
        distribute(0, 2, demands);
        return result;
    };

    if (!budget.chain_accounting) return floors_and_solve(-1);
    // at most one run stands alone as a complete chain of another point
    if (auto w = floors_and_solve(-1)) return w;
    for (size_t r = 0; r < runs.size(); ++r) {
        if (!run_endpoints(runs[r])) continue;
        if (auto w = floors_and_solve(static_cast<int>(r))) return w;
    }
    return std::nullopt;
}

inline std::vector<FiberMatch> fibers_containing(const std::vector<FiberConfig>& configs,
                                                 const std::vector<Chain>& fragments,
                                                 const HorizontalBudget& budget) {
    for (const Chain& fr : fragments)
        if (fr.empty()) throw std::invalid_argument("empty fragment");
    std::vector<FiberMatch> out;
    for (const FiberConfig& f : configs) {
        std::vector<char> used(static_cast<size_t>(f.size()), 0);
        std::vector<std::vector<int>> frags;
        // try every embedding until one admits a horizontal assignment
        struct Found {
            std::vector<std::vector<int>> frags;
            std::vector<HorizontalHit> witness;
        };
        std::optional<Found> found;
        std::function<bool(size_t)> search = [&](size_t k) -> bool {
            if (k == fragments.size()) {
                if (auto w = assign_horizontals(f, frags, budget)) {
                    found = Found{frags, *w};
                    return true;
                }
                return false;
            }
            // enumerate embeddings of fragment k
            const auto& ws = fragments[k].weights();
            const int L = static_cast<int>(ws.size());
            std::vector<int> path;
            std::function<bool(int)> extend = [&](int pos) -> bool {
                if (pos == L) {
                    for (int idx = 0; idx < L; ++idx) {
                        int v = path[static_cast<size_t>(idx)];
                        for (int w : f.neighbours(v)) {
                            if (f.is_minus_one(w)) continue;
                            bool in_path = (idx > 0 && path[static_cast<size_t>(idx - 1)] == w) ||
                                           (idx + 1 < L && path[static_cast<size_t>(idx + 1)] == w);
                            if (!in_path) return false;
                        }
                    }
                    frags.push_back(path);
                    for (int v : path) used[static_cast<size_t>(v)] = 1;
                    bool ok = search(k + 1);
                    if (!ok) {
                        for (int v : path) used[static_cast<size_t>(v)] = 0;
                        frags.pop_back();
                    }
                    return ok;
                }
                for (int v = 0; v < f.size(); ++v) {
                    if (used[static_cast<size_t>(v)]) continue;
                    if (std::find(path.begin(), path.end(), v) != path.end()) continue;
                    if (f.self(v) != -ws[static_cast<size_t>(pos)]) continue;
                    if (pos > 0) {
                        const auto& nb = f.neighbours(path.back());
                        if (std::find(nb.begin(), nb.end(), v) == nb.end()) continue;
                    }
                    path.push_back(v);
                    if (extend(pos + 1)) return true;
                    path.pop_back();
                }
                return false;
            };
            return extend(0);
        };
        if (search(0) && found) out.push_back({f, found->frags, found->witness});
    }
    return out;
}

inline std::vector<FiberMatch> fibers_containing(const std::vector<Chain>& fragments,
                                                 const HorizontalBudget& budget, int max_components = 9) {
    return fibers_containing(enumerate_fibers(max_components), fragments, budget);
}

/// The open-ended family of the second fiber shape over the (-3)-curve:
/// E1(-1,1) - A(-3,1) - E2(-1,2) - B where B starts as the chain
/// (-4,1)-(-1,2)-(-2,1) and grows by blow-ups at nodes of B adjacent to a
/// (-1)-curve. Members up to the component bound, as canonical keys.
inline std::map<std::string, FiberConfig> fiberD2_case2_family(int max_components) {
    FiberConfig base = FiberConfig::make(
        {{-1, 1}, {-3, 1}, {-1, 2}, {-4, 1}, {-1, 2}, {-2, 1}},
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    // indices >= 3 form B; node blow-ups inside B keep indices of old
    // components, new ones append at the end (still inside B)
    std::map<std::string, FiberConfig> family;
    std::vector<FiberConfig> frontier{base};
    family[base.canonical_key()] = base;
    while (!frontier.empty()) {
        std::vector<FiberConfig> next;
        for (const FiberConfig& f : frontier) {
            if (f.size() >= max_components) continue;
            for (auto [a, b] : f.edges()) {
                if (a < 3 || b < 3) continue; // stay inside B
                if (f.self(a) != -1 && f.self(b) != -1) continue;
                FiberConfig c = f.blow_up_node(a, b);
                if (family.emplace(c.canonical_key(), c).second) next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    return family;
}

/// Mechanical verification of the fiber-shape lemmas: the fiber through
/// the (-3)-curve has exactly the two published shapes (one of them an
/// open family), the fiber through the order-5 point has exactly one shape
/// for A4 and one for 1/5(1,2), and none exists for 1/5(1,1).
///
/// The (-3) fiber is stated under the wider four-horizontal hypothesis and
/// its second case is described generatively, so that entry checks three
/// facts: every published shape is feasible under the relaxed budget, the
/// strict budget with chain accounting admits nothing beyond the published
/// list, and every relaxed-feasible configuration outside the published
/// list is one the chain accounting rejects. The order-5 entries compare
/// the strict filter output directly.
struct FiberLemmaReport {
    struct Entry {
        std::string name;
        std::string fragment;
        HorizontalBudget budget;
        int matched = 0; // size of the reproduced case list
        bool pass = false;
        std::vector<std::string> extra;   // admitted but unexpected
        std::vector<std::string> missing; // expected but not admitted
        int excluded_by_accounting = 0;   // arithmetic shapes removed by chain accounting
    };
    std::vector<Entry> entries;
    // the relaxed four-horizontal run of the (-3) fiber, reported alongside
    int d2_relaxed_count = 0;
    bool d2_relaxed_superset = false;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

inline FiberLemmaReport verify_fiber_lemmas(int max_components = 9) {
    FiberLemmaReport rep;
    std::vector<FiberConfig> all = enumerate_fibers(max_components);
    const HorizontalBudget sharp{2, 1, true};
    const HorizontalBudget relaxed{3, 1, false};

    auto keys_of = [](const std::vector<FiberMatch>& ms) {
        std::set<std::string> s;
        for (const auto& m : ms) s.insert(m.config.canonical_key());
        return s;
    };

    // fiberD_2 case (1): E1(-1,1) - A(-3,1) - E2(-1,2) - B(-2,1)
    {
        FiberConfig d2_case1 =
            FiberConfig::make({{-1, 1}, {-3, 1}, {-1, 2}, {-2, 1}}, {{0, 1}, {1, 2}, {2, 3}});
        std::map<std::string, FiberConfig> expected_cfg{{d2_case1.canonical_key(), d2_case1}};
        for (auto& [k, f] : fiberD2_case2_family(max_components)) expected_cfg.emplace(k, f);
        std::set<std::string> expected;
        for (auto& [k, f] : expected_cfg) expected.insert(k);

        auto relaxed_ms = fibers_containing(all, {Chain{{3}}}, relaxed);
        auto sharp_ms = fibers_containing(all, {Chain{{3}}}, sharp);
        auto relaxed_keys = keys_of(relaxed_ms);
        auto sharp_keys = keys_of(sharp_ms);

        FiberLemmaReport::Entry e;
        e.name = "fiberD2";
        e.fragment = Chain{{3}}.str();
        e.budget = relaxed;
        e.matched = static_cast<int>(expected.size());
        for (const auto& k : expected)
            if (!relaxed_keys.count(k)) e.missing.push_back(expected_cfg.at(k).str());
        for (const auto& k : sharp_keys)
            if (!expected.count(k)) {
                for (const auto& m : sharp_ms)
                    if (m.config.canonical_key() == k) e.extra.push_back(m.config.str());
            }
        for (const auto& k : relaxed_keys)
            if (!expected.count(k)) {
                if (sharp_keys.count(k)) {
                    for (const auto& m : relaxed_ms)
                        if (m.config.canonical_key() == k) e.extra.push_back(m.config.str());
                } else {
                    ++e.excluded_by_accounting;
                }
            }
        e.pass = e.missing.empty() && e.extra.empty();
        rep.d2_relaxed_count = static_cast<int>(relaxed_keys.size());
        rep.d2_relaxed_superset = std::includes(relaxed_keys.begin(), relaxed_keys.end(),
                                                expected.begin(), expected.end());
        rep.entries.push_back(std::move(e));
    }

    auto run_sharp = [&](const std::string& name, const Chain& fragment,
                         const std::set<std::string>& expected,
                         const std::map<std::string, FiberConfig>& printable) {
        auto ms = fibers_containing(all, {fragment}, sharp);
        FiberLemmaReport::Entry e;
        e.name = name;
        e.fragment = fragment.str();
        e.budget = sharp;
        e.matched = static_cast<int>(ms.size());
        auto got = keys_of(ms);
        for (const auto& k : got)
            if (!expected.count(k)) {
                for (const auto& m : ms)
                    if (m.config.canonical_key() == k) e.extra.push_back(m.config.str());
            }
        for (const auto& k : expected)
            if (!got.count(k)) e.missing.push_back(printable.count(k) ? printable.at(k).str() : k);
        e.pass = e.extra.empty() && e.missing.empty();
        rep.entries.push_back(std::move(e));
    };

    // fiberD_3 (1): A4 gives E1(-1,1) - A1..A4(-2,1) - E2(-1,1)
    FiberConfig d3_a4 = FiberConfig::make(
        {{-1, 1}, {-2, 1}, {-2, 1}, {-2, 1}, {-2, 1}, {-1, 1}},
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    run_sharp("fiberD3-A4", Chain{{2, 2, 2, 2}}, {d3_a4.canonical_key()},
              {{d3_a4.canonical_key(), d3_a4}});

    // fiberD_3 (2): 1/5(1,2) gives E1(-1,1) - A1(-2,1) - A2(-3,1) - E2(-1,2) - B(-2,1)
    FiberConfig d3_512 = FiberConfig::make(
        {{-1, 1}, {-2, 1}, {-3, 1}, {-1, 2}, {-2, 1}},
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    run_sharp("fiberD3-1/5(1,2)", Chain{{2, 3}}, {d3_512.canonical_key()},
              {{d3_512.canonical_key(), d3_512}});

    // 1/5(1,1) admits no fiber at all
    run_sharp("fiberD3-1/5(1,1)", Chain{{5}}, {}, {});

    return rep;
}

} // namespace qhpp
