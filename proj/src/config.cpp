#include "plumbfill/config.hpp"

#include "plumbfill/detail/engine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace plumbfill {

std::string to_string(FillingType t) {
    switch (t) {
        case FillingType::A: return "A";
        case FillingType::B: return "B";
        case FillingType::C: return "C";
        case FillingType::BoundaryCase: return "BoundaryCase";
    }
    return "?";
}

int CurveConfiguration::cap_strand_count() const {
    int n = 0;
    for (const auto& s : strands)
        if (s.in_cap()) ++n;
    return n;
}

const Strand& CurveConfiguration::central() const {
    for (const auto& s : strands)
        if (s.role == StrandRole::CapCentral) return s;
    throw domain_error("configuration has no central strand");
}

const Strand* CurveConfiguration::find_comp(int arm, int pos) const {
    for (const auto& s : strands)
        if (s.role == StrandRole::CapArm && s.arm == arm && s.pos == pos) return &s;
    return nullptr;
}

const Strand* CurveConfiguration::find_aux(int slot) const {
    for (const auto& s : strands)
        if (s.role == StrandRole::Auxiliary && s.arm == slot) return &s;
    return nullptr;
}

std::vector<HomologyClass> CurveConfiguration::first_arm_classes() const {
    std::vector<HomologyClass> out;
    for (int i = 0; i < essential_arm_count(); ++i) {
        const Strand* s = find_comp(i, 0);
        if (!s) throw domain_error("configuration is missing an arm head");
        out.push_back(s->cls);
    }
    for (int j = 0; j < aux_arm_count; ++j) {
        const Strand* s = find_aux(j);
        if (!s) throw domain_error("configuration is missing a (-1) arm");
        out.push_back(s->cls);
    }
    return out;
}

void CurveConfiguration::validate() const {
    const Strand& c = central();
    if (c.cls.l != 1 || self_intersection(c.cls) != 1)
        throw domain_error("central strand must have class l");
    std::vector<const Strand*> cap;
    for (int i = 0; i < essential_arm_count(); ++i) {
        const auto& w = arm_weights[i];
        const Strand* prev = nullptr;
        for (size_t t = 0; t < w.size(); ++t) {
            const Strand* s = find_comp(i, static_cast<int>(t));
            if (!s) throw domain_error("missing arm component");
            if (self_intersection(s->cls) != w[t]) throw domain_error("arm component degree mismatch");
            if (s->cls.l != (t == 0 ? 1 : 0)) throw domain_error("arm component line coefficient mismatch");
            if (t > 0 && pair(s->cls, prev->cls) != 1) throw domain_error("arm chain broken");
            cap.push_back(s);
            prev = s;
        }
    }
    for (int j = 0; j < aux_arm_count; ++j) {
        const Strand* s = find_aux(j);
        if (!s) throw domain_error("missing (-1) arm");
        if (s->cls.l != 1 || self_intersection(s->cls) != -1)
            throw domain_error("(-1) arm must be a line of self-intersection -1");
        cap.push_back(s);
    }
    for (size_t a = 0; a < cap.size(); ++a)
        for (size_t b = a + 1; b < cap.size(); ++b) {
            long long p = pair(cap[a]->cls, cap[b]->cls);
            bool adjacent = cap[a]->role == StrandRole::CapArm && cap[b]->role == StrandRole::CapArm &&
                            cap[a]->arm == cap[b]->arm && std::abs(cap[a]->pos - cap[b]->pos) == 1;
            if (p != (adjacent ? 1 : 0)) throw domain_error("cap strands intersect incorrectly");
        }
    for (const auto& s : strands) {
        if (!adjunction_check(s.cls)) throw domain_error("strand fails adjunction");
        if (s.role == StrandRole::Exceptional && self_intersection(s.cls) != -1)
            throw domain_error("non-cap strand off -1");
    }
}

int b2_of(const CurveConfiguration& c) { return (c.N + 1) - c.cap_strand_count(); }

}  // namespace plumbfill

// ---------------------------------------------------------------------------
// Canonical forms.
//
// A configuration is, equivalently, a digraph on {lines} + {exceptional
// indices}: every index k labels exactly one strand (the exceptional sphere
// created by blow-up k, possibly lowered into the cap later), and u -> v
// means index v lies on strand u. Lines carry their arm shape as a color;
// indices are uniform. Canonical labeling by refinement with
// individualization on ties; exact at these sizes.

namespace plumbfill::detail {

namespace {

std::vector<int> refine(const ColoredDigraph& g, std::vector<int> color) {
    while (true) {
        std::vector<std::tuple<int, std::vector<int>, std::vector<int>, int>> sig(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<int> oc, ic;
            for (int w : g.out[v]) oc.push_back(color[w]);
            for (int w : g.in[v]) ic.push_back(color[w]);
            std::sort(oc.begin(), oc.end());
            std::sort(ic.begin(), ic.end());
            sig[v] = {color[v], std::move(oc), std::move(ic), v};
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
        });
        std::vector<int> next(g.n);
        int classes = 0;
        for (int i = 0; i < g.n; ++i) {
            if (i > 0 && (std::get<0>(sorted[i]) != std::get<0>(sorted[i - 1]) ||
                          std::get<1>(sorted[i]) != std::get<1>(sorted[i - 1]) ||
                          std::get<2>(sorted[i]) != std::get<2>(sorted[i - 1])))
                ++classes;
            next[std::get<3>(sorted[i])] = classes;
        }
        bool stable = true;
        {
            std::map<int, std::set<int>> by_old;
            for (int v = 0; v < g.n; ++v) by_old[color[v]].insert(next[v]);
            for (auto& [k, s] : by_old)
                if (s.size() > 1) stable = false;
        }
        color = std::move(next);
        if (stable) return color;
    }
}

std::string serialize_discrete(const ColoredDigraph& g, const std::vector<int>& color) {
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[color[v]] = v;
    std::ostringstream os;
    for (int c = 0; c < g.n; ++c) {
        int v = order[c];
        os << g.base_color[v] << ":";
        std::vector<int> nb;
        for (int w : g.out[v]) nb.push_back(color[w]);
        std::sort(nb.begin(), nb.end());
        for (int x : nb) os << x << ",";
        os << ";";
    }
    return os.str();
}

void canon_search(const ColoredDigraph& g, std::vector<int> color, std::string& best) {
    color = refine(g, color);
    int max_color = 0;
    for (int c : color) max_color = std::max(max_color, c);
    if (max_color == g.n - 1) {
        std::string s = serialize_discrete(g, color);
        if (best.empty() || s < best) best = s;
        return;
    }
    std::vector<int> count(g.n, 0);
    for (int c : color) ++count[c];
    int target = -1;
    for (int c = 0; c < g.n; ++c)
        if (count[c] > 1) { target = c; break; }
    for (int v = 0; v < g.n; ++v) {
        if (color[v] != target) continue;
        auto next = color;
        for (int w = 0; w < g.n; ++w)
            if (next[w] >= target && w != v) next[w] += 1;
        canon_search(g, next, best);
    }
}

}  // namespace

std::string ColoredDigraph::canonical_form() const {
    std::string best;
    std::vector<int> color = base_color;
    {
        std::vector<int> sorted = color;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto& c : color)
            c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
    }
    canon_search(*this, color, best);
    return best;
}

std::vector<int> arm_groups(const std::vector<std::vector<long long>>& arms) {
    std::vector<std::vector<long long>> sorted = arms;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> g;
    for (const auto& a : arms)
        g.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin()));
    return g;
}

ColoredDigraph configuration_digraph(const std::vector<std::vector<int>>& line_supports,
                                     const std::vector<std::vector<int>>& exc_masks,
                                     const std::vector<int>& line_colors) {
    int A = static_cast<int>(line_supports.size());
    int N = static_cast<int>(exc_masks.size()) - 1;
    ColoredDigraph g;
    g.n = A + N;
    g.base_color.resize(g.n);
    g.out.assign(g.n, {});
    g.in.assign(g.n, {});
    auto idx_vertex = [&](int k) { return A + k - 1; };
    for (int i = 0; i < A; ++i) {
        g.base_color[i] = line_colors[i];
        for (int k : line_supports[i]) {
            g.out[i].push_back(idx_vertex(k));
            g.in[idx_vertex(k)].push_back(i);
        }
    }
    for (int k = 1; k <= N; ++k) {
        g.base_color[idx_vertex(k)] = 1'000'000;
        for (int m : exc_masks[k]) {
            g.out[idx_vertex(k)].push_back(idx_vertex(m));
            g.in[idx_vertex(m)].push_back(idx_vertex(k));
        }
    }
    return g;
}

int RawState::line_degree(int i) const { return 1 - std::popcount(line_mask[i]); }
int RawState::exc_degree(int k) const { return -1 - std::popcount(exc_mask[k]); }
int RawState::new_index() {
    exc_mask.push_back(0);
    return n_indices();
}

long long raw_pair(const RawState& s, int u, int v) {
    auto mask_of = [&](int x) { return x < s.A ? s.line_mask[x] : s.exc_mask[x - s.A + 1]; };
    auto lead_of = [&](int x) { return x < s.A ? 0 : x - s.A + 1; };
    Mask mu = mask_of(u), mv = mask_of(v);
    long long p = (u < s.A && v < s.A) ? 1 : 0;
    int lu = lead_of(u), lv = lead_of(v);
    if (lu && (mv >> lu) & 1) p += 1;
    if (lv && (mu >> lv) & 1) p += 1;
    p -= std::popcount(mu & mv);
    return p;
}

void apply_blow(RawState& s, int u, int v) {
    int k = s.new_index();
    Mask bit = Mask(1) << k;
    auto add = [&](int x) {
        if (x < s.A) s.line_mask[x] |= bit;
        else s.exc_mask[x - s.A + 1] |= bit;
    };
    add(u);
    if (v >= 0) add(v);
}

RawState phase0(int A, const LineArrangement& base) {
    RawState s;
    s.A = A;
    s.line_mask.assign(A, 0);
    s.exc_mask.assign(1, 0);
    for (const auto& pt : base.points) {
        if (pt.front() == 0) continue;  // the complex line is never blown up
        int k = s.new_index();
        for (int line : pt) s.line_mask[line - 1] |= Mask(1) << k;
    }
    return s;
}

std::string raw_key(const RawState& s, const std::vector<int>& line_colors) {
    std::vector<std::vector<int>> line_supports(s.A);
    for (int i = 0; i < s.A; ++i)
        for (int k = 1; k <= s.n_indices(); ++k)
            if ((s.line_mask[i] >> k) & 1) line_supports[i].push_back(k);
    std::vector<std::vector<int>> exc_masks(s.n_indices() + 1);
    for (int k = 1; k <= s.n_indices(); ++k)
        for (int m = 1; m <= s.n_indices(); ++m)
            if ((s.exc_mask[k] >> m) & 1) exc_masks[k].push_back(m);
    auto g = configuration_digraph(line_supports, exc_masks, line_colors);
    return std::to_string(s.extra_used) + "#" + g.canonical_form();
}

bool try_assign(const RawState& s, const EngineTask& task, CompAssignment& out) {
    int A = s.A;
    int N = s.n_indices();
    std::vector<int> lowered;
    for (int k = 1; k <= N; ++k)
        if (s.exc_degree(k) <= -2) lowered.push_back(k);

    struct Slot { int arm, pos; long long w; };
    std::vector<Slot> slots;
    for (int i = 0; i < A; ++i)
        for (size_t t = 1; t < task.arms[i].size(); ++t)
            slots.push_back({i, static_cast<int>(t), task.arms[i][t]});

    size_t lowered_needed = 0;
    for (const auto& sl : slots)
        if (sl.w <= -2) ++lowered_needed;
    if (lowered.size() != lowered_needed) return false;

    std::vector<int> chosen(slots.size(), 0);
    std::vector<bool> used(N + 1, false);

    auto strand_of = [&](int arm, int pos) -> int {
        if (pos == 0) return arm;
        for (size_t q = 0; q < slots.size(); ++q)
            if (slots[q].arm == arm && slots[q].pos == pos) return A + chosen[q] - 1;
        return -1;
    };

    auto rec = [&](auto&& self, size_t q) -> bool {
        if (q == slots.size()) return true;
        const Slot& sl = slots[q];
        int prev = strand_of(sl.arm, sl.pos - 1);
        for (int k = 1; k <= N; ++k) {
            if (used[k] || s.exc_degree(k) != sl.w) continue;
            int me = A + k - 1;
            if (raw_pair(s, me, prev) != 1) continue;
            bool ok = true;
            for (int i = 0; i < A && ok; ++i) {
                long long expect = (i == sl.arm && sl.pos == 1) ? 1 : 0;
                if (raw_pair(s, me, i) != expect) ok = false;
            }
            for (size_t q2 = 0; q2 < q && ok; ++q2) {
                bool adj = slots[q2].arm == sl.arm && std::abs(slots[q2].pos - sl.pos) == 1;
                if (raw_pair(s, me, A + chosen[q2] - 1) != (adj ? 1 : 0)) ok = false;
            }
            if (!ok) continue;
            chosen[q] = k;
            used[k] = true;
            if (self(self, q + 1)) return true;
            used[k] = false;
            chosen[q] = 0;
        }
        return false;
    };
    if (!rec(rec, 0)) return false;
    for (int k : lowered) {
        bool placed = false;
        for (size_t q = 0; q < slots.size(); ++q)
            if (chosen[q] == k) placed = true;
        if (!placed) return false;
    }
    for (size_t q = 0; q < slots.size(); ++q) out.comp[{slots[q].arm, slots[q].pos}] = chosen[q];
    return true;
}

CurveConfiguration realize_configuration(const RawState& s, const EngineTask& task,
                                         const CompAssignment& assign) {
    CurveConfiguration c;
    c.N = s.n_indices();
    int essential = static_cast<int>(task.arms.size()) - task.aux_count;
    for (int i = 0; i < essential; ++i) c.arm_weights.push_back(task.arms[i]);
    c.aux_arm_count = task.aux_count;

    Strand central;
    central.id = 0;
    central.cls = HomologyClass::line(c.N);
    central.role = StrandRole::CapCentral;
    c.strands.push_back(central);
    for (int i = 0; i < s.A; ++i) {
        Strand t;
        t.id = 1 + i;
        t.cls = HomologyClass(c.N, 1);
        for (int k = 1; k <= c.N; ++k)
            if ((s.line_mask[i] >> k) & 1) t.cls.set_coeff(k, 1);
        if (i < essential) {
            t.role = StrandRole::CapArm;
            t.arm = i;
            t.pos = 0;
        } else {
            t.role = StrandRole::Auxiliary;
            t.arm = i - essential;
        }
        c.strands.push_back(t);
    }
    for (int k = 1; k <= c.N; ++k) {
        Strand e;
        e.id = s.A + k;
        e.cls = HomologyClass(c.N);
        e.cls.set_coeff(k, -1);
        for (int m = 1; m <= c.N; ++m)
            if ((s.exc_mask[k] >> m) & 1) e.cls.set_coeff(m, 1);
        e.role = StrandRole::Exceptional;
        for (const auto& [key, idx] : assign.comp)
            if (idx == k) {
                e.role = StrandRole::CapArm;
                e.arm = key.first;
                e.pos = key.second;
            }
        c.strands.push_back(e);
    }
    c.validate();
    return c;
}

}  // namespace plumbfill::detail

// ---------------------------------------------------------------------------

namespace plumbfill {

using detail::RawState;

std::string canonical_key(const CurveConfiguration& c) {
    auto arms_all = c.arm_weights;
    for (int j = 0; j < c.aux_arm_count; ++j) arms_all.push_back({-1});

    std::vector<std::vector<int>> line_supports;
    for (const auto& cls : c.first_arm_classes()) line_supports.push_back(cls.support());

    std::vector<std::vector<int>> exc_masks(c.N + 1);
    std::vector<bool> seen(c.N + 1, false);
    for (const auto& s : c.strands) {
        if (s.cls.l != 0) continue;
        int lead = 0;
        for (int k = 1; k <= c.N; ++k)
            if (s.cls.coeff(k) == -1) { lead = k; break; }
        if (lead == 0) throw domain_error("exceptional strand without lead index");
        if (seen[lead]) throw domain_error("duplicate lead index");
        seen[lead] = true;
        for (int k = 1; k <= c.N; ++k)
            if (k != lead && s.cls.coeff(k) != 0) exc_masks[lead].push_back(k);
    }
    for (int k = 1; k <= c.N; ++k)
        if (!seen[k]) throw domain_error("index with no strand");

    auto groups = detail::arm_groups(arms_all);
    auto g = detail::configuration_digraph(line_supports, exc_masks, groups);

    std::ostringstream header;
    auto sorted_arms = arms_all;
    std::sort(sorted_arms.begin(), sorted_arms.end());
    for (const auto& a : sorted_arms) {
        for (long long w : a) header << w << ",";
        header << "|";
    }
    header << "N" << c.N << "#";
    return header.str() + g.canonical_form();
}

bool config_equivalent(const CurveConfiguration& a, const CurveConfiguration& b) {
    return canonical_key(a) == canonical_key(b);
}

bool cap_leq(const std::vector<std::vector<long long>>& lo,
             const std::vector<std::vector<long long>>& hi) {
    if (lo.size() != hi.size()) return false;
    for (size_t i = 0; i < lo.size(); ++i) {
        size_t np = lo[i].size(), n = hi[i].size();
        if (np > n) return false;
        for (size_t j = 0; j < np; ++j) {
            long long ap = -lo[i][j], a = -hi[i][j];  // positive a_{ij}
            if (ap > a) return false;
            if (np < n && j + 1 == np && ap >= a) return false;  // strict at the junction
        }
    }
    return true;
}

bool cap_leq(const ConcaveCap& lo, const ConcaveCap& hi) {
    if (lo.minus_one_arm_count != hi.minus_one_arm_count) return false;
    return cap_leq(lo.essential_arms, hi.essential_arms);
}

// ---------------------------------------------------------------------------
// Search engine

namespace {

// A strand created by a non-intersection blow-up meets only its parent, and
// blowing up that intersection would detach it from every possible chain
// neighbour, so such strands never take part in further blow-ups of a valid
// configuration. The search therefore branches over intersection blow-ups
// only; the non-intersection ones (chain extensions and degree lowering) are
// reconstructed per completion.
struct EngineRun {
    detail::EngineTask task;
    std::vector<int> line_colors;
    std::unordered_set<std::string> visited;
    std::map<std::string, CurveConfiguration> found;
    long long explored = 0;
    bool complete = true;
    long long min_interior = 0;

    void run(RawState start) {
        min_interior = -1;
        for (const auto& a : task.arms)
            for (size_t t = 1; t < a.size(); ++t) min_interior = std::min(min_interior, a[t]);
        dfs(std::move(start));
    }

    void dfs(RawState s) {
        if (++explored > task.limits.max_nodes) {
            complete = false;
            return;
        }
        std::string key = detail::raw_key(s, line_colors);
        if (!visited.insert(key).second) return;
        for (int i = 0; i < s.A; ++i)
            if (s.line_degree(i) < task.arms[i][0]) return;  // overshot

        completions(s);

        int n_strands = s.A + s.n_indices();
        if (s.n_indices() + 1 >= 60) return;  // mask width guard

        for (int u = 0; u < n_strands; ++u) {
            bool u_line = u < s.A;
            if (u_line ? s.line_degree(u) <= task.arms[u][0] : s.exc_degree(u - s.A + 1) <= min_interior)
                continue;
            for (int v = u + 1; v < n_strands; ++v) {
                bool v_line = v < s.A;
                if (v_line ? s.line_degree(v) <= task.arms[v][0]
                           : s.exc_degree(v - s.A + 1) <= min_interior)
                    continue;
                if (detail::raw_pair(s, u, v) != 1) continue;
                bool extra = !u_line && !v_line;
                if (extra && s.extra_used >= task.limits.max_extra) {
                    complete = false;
                    continue;
                }
                RawState t = s;
                detail::apply_blow(t, u, v);
                if (extra) t.extra_used++;
                dfs(std::move(t));
            }
        }
    }

    // ----- completion: assign collision strands to arm prefixes, then build
    // the unique free-blow-up tail for each assignment.

    void completions(const RawState& s) {
        int A = s.A;
        std::vector<std::vector<int>> prefixes(A);
        std::vector<bool> used(s.n_indices() + 1, false);
        assign_arm(s, 0, prefixes, used);
    }

    bool prefix_ok_to_stop(const RawState& s, int arm, const std::vector<int>& prefix) const {
        const auto& w = task.arms[arm];
        int m = static_cast<int>(w.size());
        int p = 1 + static_cast<int>(prefix.size());
        if (p > m) return false;
        long long line_ext = (p == 1 && m > 1) ? 1 : 0;
        if (s.line_degree(arm) < w[0] + line_ext) return false;
        for (int t = 1; t < p; ++t) {
            long long ext = (t == p - 1 && p < m) ? 1 : 0;
            if (s.exc_degree(prefix[t - 1]) < w[t] + ext) return false;
        }
        return true;
    }

    void assign_arm(const RawState& s, int arm, std::vector<std::vector<int>>& prefixes,
                    std::vector<bool>& used) {
        if (arm == s.A) {
            for (int k = 1; k <= s.n_indices(); ++k)
                if (s.exc_degree(k) <= -2 && !used[k]) return;  // lowered strand left over
            emit(s, prefixes);
            return;
        }
        grow_prefix(s, arm, prefixes, used);
    }

    void grow_prefix(const RawState& s, int arm, std::vector<std::vector<int>>& prefixes,
                     std::vector<bool>& used) {
        if (prefix_ok_to_stop(s, arm, prefixes[arm])) assign_arm(s, arm + 1, prefixes, used);
        const auto& w = task.arms[arm];
        int next_pos = 1 + static_cast<int>(prefixes[arm].size());
        if (next_pos >= static_cast<int>(w.size()) + 0) return;
        int prev = prefixes[arm].empty() ? arm : s.A + prefixes[arm].back() - 1;
        for (int k = 1; k <= s.n_indices(); ++k) {
            if (used[k]) continue;
            if (s.exc_degree(k) < w[next_pos]) continue;
            if (detail::raw_pair(s, s.A + k - 1, prev) != 1) continue;
            used[k] = true;
            prefixes[arm].push_back(k);
            grow_prefix(s, arm, prefixes, used);
            prefixes[arm].pop_back();
            used[k] = false;
        }
    }

    void emit(const RawState& s0, const std::vector<std::vector<int>>& prefixes) {
        // cross-pairing pattern among the chosen cap strands
        struct Piece { int strand; int arm; int pos; };
        std::vector<Piece> pieces;
        for (int i = 0; i < s0.A; ++i) {
            pieces.push_back({i, i, 0});
            for (size_t t = 0; t < prefixes[i].size(); ++t)
                pieces.push_back({s0.A + prefixes[i][t] - 1, i, static_cast<int>(t) + 1});
        }
        for (size_t a = 0; a < pieces.size(); ++a)
            for (size_t b = a + 1; b < pieces.size(); ++b) {
                bool adj = pieces[a].arm == pieces[b].arm &&
                           std::abs(pieces[a].pos - pieces[b].pos) == 1;
                if (detail::raw_pair(s0, pieces[a].strand, pieces[b].strand) != (adj ? 1 : 0)) return;
            }

        RawState s = s0;
        detail::CompAssignment assign;
        for (int i = 0; i < s0.A; ++i) {
            const auto& w = task.arms[i];
            int m = static_cast<int>(w.size());
            int p = 1 + static_cast<int>(prefixes[i].size());
            for (int t = 1; t < p; ++t) assign.comp[{i, t}] = prefixes[i][t - 1];
            int last = p == 1 ? i : s.A + prefixes[i][p - 2] - 1;
            for (int t = p; t < m; ++t) {
                detail::apply_blow(s, last, -1);
                int k = s.n_indices();
                assign.comp[{i, t}] = k;
                last = s.A + k - 1;
            }
            // lower each component to its weight
            {
                if (s.line_degree(i) < w[0]) return;
                while (s.line_degree(i) > w[0]) detail::apply_blow(s, i, -1);
            }
            for (int t = 1; t < m; ++t) {
                int k = assign.comp[{i, t}];
                if (s.exc_degree(k) < w[t]) return;
                while (s.exc_degree(k) > w[t]) detail::apply_blow(s, s.A + k - 1, -1);
            }
        }
        if (s.n_indices() >= 60) return;
        CurveConfiguration c = detail::realize_configuration(s, task, assign);
        found.emplace(canonical_key(c), std::move(c));
    }
};

}  // namespace

LineArrangement concurrent_arrangement(int lines) {
    if (lines >= 3) return make_snm(lines, lines);
    return make_snm(lines, 0);
}

LineArrangement free_line_arrangement(int lines) {
    if (lines >= 4) return make_snm(lines, lines - 1);
    return make_snm(lines, 0);
}

RawEnumerationResult enumerate_cap_configurations(const std::vector<std::vector<long long>>& arms,
                                                  const LineArrangement& base,
                                                  const EnumerationLimits& limits) {
    if (static_cast<int>(arms.size()) != base.n_lines)
        throw domain_error("enumerate: one arm per symplectic line required");
    EngineRun run;
    run.task.arms = arms;
    run.task.aux_count = 0;
    run.task.limits = limits;
    run.line_colors = detail::arm_groups(arms);
    run.run(detail::phase0(base.n_lines, base));
    RawEnumerationResult out;
    out.complete = run.complete;
    out.explored = run.explored;
    for (auto& [k, c] : run.found) out.configs.push_back(std::move(c));
    return out;
}

// ---------------------------------------------------------------------------
// Seifert-level enumeration

namespace {

// Reorder an engine configuration so its essential arms follow the cap's arm
// order (engine arms are a permutation with equal weight lists).
CurveConfiguration relabel_arms(const CurveConfiguration& c,
                                const std::vector<std::vector<long long>>& target_arms,
                                int aux_count) {
    auto arms_all = c.arm_weights;
    int total = static_cast<int>(arms_all.size());
    int essential = total - aux_count;
    std::vector<int> perm(total, -1);
    std::vector<bool> taken(total, false);
    const std::vector<long long> minus_one{-1};
    for (int i = 0; i < total; ++i) {
        for (int j = 0; j < total; ++j) {
            if (taken[j]) continue;
            const std::vector<long long>& tgt = j < essential ? target_arms[j] : minus_one;
            if (arms_all[i] == tgt) {
                perm[i] = j;
                taken[j] = true;
                break;
            }
        }
        if (perm[i] < 0) throw domain_error("relabel_arms: arm shapes do not match");
    }
    CurveConfiguration out = c;
    out.arm_weights = target_arms;
    out.aux_arm_count = aux_count;
    for (auto& s : out.strands) {
        if (s.role != StrandRole::CapArm) continue;
        int j = perm[s.arm];
        if (j < essential) {
            s.arm = j;
        } else {
            s.role = StrandRole::Auxiliary;
            s.arm = j - essential;
            s.pos = -1;
        }
    }
    return out;
}

}  // namespace

EnumerationResult enumerate_fillings(const SeifertData& data, int max_extra) {
    EnumerationLimits lim;
    lim.max_extra = max_extra;
    return enumerate_fillings(data, lim);
}

EnumerationResult enumerate_fillings(const SeifertData& data, const EnumerationLimits& limits) {
    ConcaveCap cap = build_cap(data);
    auto arms_all = cap.all_arms();
    int A = static_cast<int>(arms_all.size());

    std::vector<LineArrangement> shapes{concurrent_arrangement(A)};
    {
        LineArrangement right = free_line_arrangement(A);
        if (!(right == shapes[0])) shapes.push_back(right);
    }

    EnumerationResult result;
    std::map<std::string, FillingDescriptor> dedup;
    FillingDescriptor minres = minimal_resolution_descriptor(data);
    std::string minres_key = canonical_key(minres.config);

    for (size_t si = 0; si < shapes.size(); ++si) {
        const LineArrangement& base = shapes[si];
        std::vector<std::vector<std::vector<long long>>> orders;
        if (si == 0) {
            orders.push_back(arms_all);
        } else {
            // the free line (last index) can carry any distinct arm shape
            std::set<std::vector<long long>> seen;
            for (int i = 0; i < A; ++i) {
                if (!seen.insert(arms_all[i]).second) continue;
                auto order = arms_all;
                order.erase(order.begin() + i);
                order.push_back(arms_all[i]);
                orders.push_back(order);
            }
        }
        std::set<std::vector<std::vector<long long>>> order_dedup;
        for (const auto& order : orders) {
            if (!order_dedup.insert(order).second) continue;
            RawEnumerationResult raw = enumerate_cap_configurations(order, base, limits);
            result.explored += raw.explored;
            if (!raw.complete) result.complete = false;
            for (const auto& rc : raw.configs) {
                CurveConfiguration c = relabel_arms(rc, cap.essential_arms, cap.minus_one_arm_count);
                std::string key = canonical_key(c);
                if (dedup.count(key)) continue;
                FillingDescriptor d;
                d.seifert = data;
                d.config = std::move(c);
                d.arrangement = arrangement_of_filling(d.config.first_arm_classes());
                d.b2 = b2_of(d.config);
                d.minimal_resolution = (key == minres_key);
                d.type_tag = classify_type(d);
                dedup.emplace(key, std::move(d));
            }
        }
    }
    for (auto& [k, d] : dedup) result.fillings.push_back(std::move(d));
    return result;
}

// ---------------------------------------------------------------------------
// Starting configurations and standard blow-ups

namespace {

CurveConfiguration config_from_raw(const RawState& s, const ConcaveCap& cap) {
    CurveConfiguration c;
    c.N = s.n_indices();
    c.arm_weights = cap.essential_arms;
    c.aux_arm_count = cap.minus_one_arm_count;
    Strand central;
    central.id = 0;
    central.cls = HomologyClass::line(c.N);
    central.role = StrandRole::CapCentral;
    c.strands.push_back(central);
    int essential = static_cast<int>(cap.essential_arms.size());
    for (int i = 0; i < s.A; ++i) {
        Strand t;
        t.id = 1 + i;
        t.cls = HomologyClass(c.N, 1);
        for (int k = 1; k <= c.N; ++k)
            if ((s.line_mask[i] >> k) & 1) t.cls.set_coeff(k, 1);
        if (i < essential) {
            t.role = StrandRole::CapArm;
            t.arm = i;
            t.pos = 0;
        } else {
            t.role = StrandRole::Auxiliary;
            t.arm = i - essential;
        }
        c.strands.push_back(t);
    }
    for (int k = 1; k <= c.N; ++k) {
        Strand e;
        e.id = s.A + k;
        e.cls = HomologyClass(c.N);
        e.cls.set_coeff(k, -1);
        for (int m = 1; m <= c.N; ++m)
            if ((s.exc_mask[k] >> m) & 1) e.cls.set_coeff(m, 1);
        e.role = StrandRole::Exceptional;
        c.strands.push_back(e);
    }
    return c;
}

}  // namespace

std::vector<InitialConfiguration> initial_configurations(const ConcaveCap& cap) {
    auto arms_all = cap.all_arms();
    int A = static_cast<int>(arms_all.size());
    bool boundary = cap.minus_one_arm_count == 0;
    std::vector<InitialConfiguration> out;

    LineArrangement left = concurrent_arrangement(A);
    RawState a_state = detail::phase0(A, left);
    {
        InitialConfiguration ic;
        ic.label = 'a';
        ic.config = config_from_raw(a_state, cap);
        ic.e_strand_id = A >= 2 ? A + 1 : -1;
        ic.boundary_case = boundary;
        out.push_back(std::move(ic));
    }

    if (A >= 2) {
        RawState s = a_state;
        InitialConfiguration ic;
        ic.label = 'b';
        for (int i = 1; i < A; ++i) {
            detail::apply_blow(s, s.A /* exceptional 1 */, i);
            ic.marked_ids.push_back(s.A + s.n_indices());
        }
        ic.config = config_from_raw(s, cap);
        ic.e_strand_id = A + 1;
        ic.boundary_case = boundary;
        out.push_back(std::move(ic));
    }

    LineArrangement right = free_line_arrangement(A);
    if (!(right == left)) {
        RawState s = detail::phase0(A, right);
        InitialConfiguration ic;
        ic.label = 'c';
        ic.config = config_from_raw(s, cap);
        ic.e_strand_id = A + 1;
        for (int k = 2; k <= s.n_indices(); ++k) ic.marked_ids.push_back(A + k);
        ic.boundary_case = boundary;
        out.push_back(std::move(ic));
    }
    return out;
}

CurveConfiguration standard_blowups(const CurveConfiguration& partial, const ConcaveCap& cap) {
    CurveConfiguration c = partial;
    c.arm_weights = cap.essential_arms;
    c.aux_arm_count = cap.minus_one_arm_count;
    int essential = static_cast<int>(cap.essential_arms.size());

    std::vector<std::vector<long long>> have;
    for (int i = 0; i < essential; ++i) {
        std::vector<long long> arm;
        for (int t = 0; const Strand* s = c.find_comp(i, t); ++t) arm.push_back(self_intersection(s->cls));
        if (arm.empty()) throw domain_error("standard_blowups: arm head missing");
        have.push_back(arm);
    }
    if (!cap_leq(have, cap.essential_arms))
        throw domain_error("standard_blowups: partial cap does not sit below the target cap");
    for (const auto& s : c.strands)
        if (s.role == StrandRole::Exceptional && self_intersection(s.cls) != -1)
            throw domain_error("standard_blowups: non-cap strand off -1");

    auto free_blow = [&](int strand_id) {
        int new_id = blow_up(c.strands, {strand_id});
        c.N += 1;
        return new_id;
    };

    for (int i = 0; i < essential; ++i) {
        const auto& target = cap.essential_arms[i];
        int len = 0;
        while (c.find_comp(i, len)) ++len;
        while (len < static_cast<int>(target.size())) {
            const Strand* last = c.find_comp(i, len - 1);
            int ne = free_blow(last->id);
            for (auto& s : c.strands)
                if (s.id == ne) {
                    s.role = StrandRole::CapArm;
                    s.arm = i;
                    s.pos = len;
                }
            ++len;
        }
        for (int t = 0; t < len; ++t) {
            while (self_intersection(c.find_comp(i, t)->cls) > target[t]) free_blow(c.find_comp(i, t)->id);
            if (self_intersection(c.find_comp(i, t)->cls) != target[t])
                throw domain_error("standard_blowups: component overshoots its weight");
        }
    }
    for (int j = 0; j < cap.minus_one_arm_count; ++j) {
        if (!c.find_aux(j)) throw domain_error("standard_blowups: missing (-1) arm line");
        while (self_intersection(c.find_aux(j)->cls) > -1) free_blow(c.find_aux(j)->id);
        if (self_intersection(c.find_aux(j)->cls) != -1)
            throw domain_error("standard_blowups: (-1) arm overshoots");
    }
    c.validate();
    return c;
}

FillingDescriptor minimal_resolution_descriptor(const SeifertData& data) {
    ConcaveCap cap = build_cap(data);
    auto initials = initial_configurations(cap);
    CurveConfiguration c = standard_blowups(initials.front().config, cap);
    FillingDescriptor d;
    d.seifert = data;
    d.config = std::move(c);
    d.arrangement = arrangement_of_filling(d.config.first_arm_classes());
    d.b2 = b2_of(d.config);
    d.type_tag = cap.minus_one_arm_count == 0 ? FillingType::BoundaryCase : FillingType::A;
    d.minimal_resolution = true;
    return d;
}

FillingType classify_type(const FillingDescriptor& d) {
    if (d.seifert.b == d.seifert.arm_count() + 1) return FillingType::BoundaryCase;
    const CurveConfiguration& c = d.config;
    auto lines = c.first_arm_classes();
    int A = static_cast<int>(lines.size());

    std::vector<int> on_lines(c.N + 1, 0);
    for (const auto& cls : lines)
        for (int k = 1; k <= c.N; ++k)
            if (cls.coeff(k) != 0) ++on_lines[k];
    int multi = 0;
    for (int k = 1; k <= c.N; ++k)
        if (on_lines[k] == A && A >= 2) multi = k;

    auto strand_of_index = [&](int k) -> const Strand* {
        for (const auto& s : c.strands)
            if (s.cls.l == 0 && s.cls.coeff(k) == -1) return &s;
        return nullptr;
    };
    auto blown = [&](int k) {
        const Strand* s = strand_of_index(k);
        return s && s->role != StrandRole::Exceptional;
    };

    if (A == 1) return FillingType::A;
    if (multi != 0 && !blown(multi)) return FillingType::A;
    int m_count = 0;
    for (int k = 1; k <= c.N; ++k) {
        if (k == multi) continue;
        bool marked = on_lines[k] >= 2;
        if (!marked && multi != 0 && blown(multi)) {
            const Strand* e = strand_of_index(multi);
            if (e->cls.coeff(k) != 0 && on_lines[k] >= 1) marked = true;
        }
        if (marked && blown(k)) ++m_count;
    }
    return m_count <= 1 ? FillingType::B : FillingType::C;
}

}  // namespace plumbfill
