#pragma once

// Finite G-sets and equivariant maps: orbits, pullbacks, coproducts,
// induction/restriction, and the canonical forms that give iso classes a
// decidable identity.  Canonical forms are what make span composition a
// strict operation later on, so the conventions here (coset ordering, orbit
// ordering, chart basepoints) are fixed once and used everywhere.

#include <cassert>
#include <functional>
#include <sstream>

#include "group.hpp"

namespace orbitkit {

struct GSet {
    GroupPtr group;
    int size = 0;
    std::vector<std::vector<int>> action;  // action[g][x]

    int act(int g, int x) const { return action[g][x]; }
    bool operator==(const GSet& o) const {
        return group.get() == o.group.get() && size == o.size && action == o.action;
    }
};

struct GMap {
    GSet source;
    GSet target;
    std::vector<int> map;

    int operator()(int x) const { return map[x]; }
    bool operator==(const GMap& o) const {
        return source == o.source && target == o.target && map == o.map;
    }
};

inline bool is_valid_gset(const GSet& x) {
    if (!x.group || x.size < 0) return false;
    if ((int)x.action.size() != x.group->order) return false;
    for (const auto& perm : x.action) {
        if ((int)perm.size() != x.size) return false;
        std::vector<bool> hit(x.size, false);
        for (int v : perm) {
            if (v < 0 || v >= x.size || hit[v]) return false;
            hit[v] = true;
        }
    }
    for (int p = 0; p < x.size; ++p)
        if (x.action[x.group->identity][p] != p) return false;
    for (int g = 0; g < x.group->order; ++g)
        for (int h = 0; h < x.group->order; ++h)
            for (int p = 0; p < x.size; ++p)
                if (x.action[x.group->mul(g, h)][p] != x.action[g][x.action[h][p]])
                    return false;
    return true;
}

inline bool is_valid_gmap(const GMap& f) {
    if (f.source.group.get() != f.target.group.get()) return false;
    if ((int)f.map.size() != f.source.size) return false;
    for (int v : f.map)
        if (v < 0 || v >= f.target.size) return false;
    for (int g = 0; g < f.source.group->order; ++g)
        for (int p = 0; p < f.source.size; ++p)
            if (f.map[f.source.act(g, p)] != f.target.act(g, f.map[p])) return false;
    return true;
}

// ---- basic constructions --------------------------------------------------

inline GSet empty_gset(const GroupPtr& g) {
    return {g, 0, std::vector<std::vector<int>>(g->order)};
}

inline GSet trivial_gset(const GroupPtr& g, int n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return {g, n, std::vector<std::vector<int>>(g->order, id)};
}

// Cosets of a subgroup, ordered by first appearance when scanning group
// elements in index order.  The coset of the identity has stabilizer exactly
// the subgroup itself; it is the canonical chart basepoint.
struct CosetGSet {
    GSet gs;
    std::vector<int> coset_of;           // group element -> point
    std::vector<int> coset_least;        // point -> least group element in the coset
    int identity_coset = 0;
};

inline const CosetGSet& coset_gset(const GroupPtr& g, int sub) {
    static std::map<std::pair<const FiniteGroup*, int>, CosetGSet> cache;
    auto key = std::make_pair(g.get(), sub);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    CosetGSet c;
    c.coset_of.assign(g->order, -1);
    const auto& h = g->subgroup_elems[sub];
    for (int x = 0; x < g->order; ++x) {
        if (c.coset_of[x] >= 0) continue;
        int pt = (int)c.coset_least.size();
        c.coset_least.push_back(x);
        for (int hh : h) c.coset_of[g->mul(x, hh)] = pt;
    }
    int n = (int)c.coset_least.size();
    c.gs.group = g;
    c.gs.size = n;
    c.gs.action.assign(g->order, std::vector<int>(n));
    for (int gg = 0; gg < g->order; ++gg)
        for (int p = 0; p < n; ++p)
            c.gs.action[gg][p] = c.coset_of[g->mul(gg, c.coset_least[p])];
    c.identity_coset = c.coset_of[g->identity];
    return cache.emplace(key, std::move(c)).first->second;
}

inline GSet regular_gset(const GroupPtr& g) {
    return coset_gset(g, 0).gs;  // subgroup 0 is {e}: lattice is sorted by size
}

struct DisjointUnion {
    GSet gs;
    std::vector<int> offsets;  // offsets[i] = start of part i
};

inline DisjointUnion disjoint_union(const std::vector<GSet>& parts, const GroupPtr& g) {
    DisjointUnion out;
    out.gs.group = g;
    out.gs.size = 0;
    for (const auto& p : parts) {
        out.offsets.push_back(out.gs.size);
        out.gs.size += p.size;
    }
    out.gs.action.assign(g->order, std::vector<int>(out.gs.size));
    for (int gg = 0; gg < g->order; ++gg)
        for (size_t i = 0; i < parts.size(); ++i)
            for (int p = 0; p < parts[i].size; ++p)
                out.gs.action[gg][out.offsets[i] + p] = out.offsets[i] + parts[i].act(gg, p);
    return out;
}

struct ProductGSet {
    GSet gs;                       // carrier: row-major pairs (i, j)
    GMap p1, p2;
};

inline ProductGSet product_gset(const GSet& a, const GSet& b) {
    ProductGSet out;
    const auto& g = a.group;
    out.gs.group = g;
    out.gs.size = a.size * b.size;
    out.gs.action.assign(g->order, std::vector<int>(out.gs.size));
    for (int gg = 0; gg < g->order; ++gg)
        for (int i = 0; i < a.size; ++i)
            for (int j = 0; j < b.size; ++j)
                out.gs.action[gg][i * b.size + j] = a.act(gg, i) * b.size + b.act(gg, j);
    out.p1 = {out.gs, a, std::vector<int>(out.gs.size)};
    out.p2 = {out.gs, b, std::vector<int>(out.gs.size)};
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < b.size; ++j) {
            out.p1.map[i * b.size + j] = i;
            out.p2.map[i * b.size + j] = j;
        }
    return out;
}

// Sub-G-set on a sorted list of stable points, with the inclusion map.
struct SubGSet {
    GSet gs;
    GMap incl;
};

inline SubGSet sub_gset(const GSet& x, const std::vector<int>& points) {
    std::vector<int> pos(x.size, -1);
    for (size_t i = 0; i < points.size(); ++i) pos[points[i]] = (int)i;
    SubGSet out;
    out.gs.group = x.group;
    out.gs.size = (int)points.size();
    out.gs.action.assign(x.group->order, std::vector<int>(points.size()));
    for (int g = 0; g < x.group->order; ++g)
        for (size_t i = 0; i < points.size(); ++i) {
            int img = x.act(g, points[i]);
            assert(pos[img] >= 0 && "sub_gset: point set not stable");
            out.gs.action[g][i] = pos[img];
        }
    out.incl = {out.gs, x, points};
    return out;
}

// ---- orbits and stabilizers -----------------------------------------------

inline std::vector<int> stabilizer_elems(const GSet& x, int p) {
    std::vector<int> s;
    for (int g = 0; g < x.group->order; ++g)
        if (x.act(g, p) == p) s.push_back(g);
    return s;
}

inline int stabilizer_sub(const GSet& x, int p) {
    return x.group->subgroup_index(stabilizer_elems(x, p));
}

struct Orbit {
    std::vector<int> points;  // sorted
    int base = 0;             // least point
    int stab_sub = 0;         // subgroup index of Stab(base)
    int stab_class = 0;       // conjugacy class id
};

inline std::vector<Orbit> orbit_decomposition(const GSet& x) {
    std::vector<Orbit> out;
    std::vector<bool> seen(x.size, false);
    for (int p = 0; p < x.size; ++p) {
        if (seen[p]) continue;
        Orbit o;
        std::set<int> pts;
        std::vector<int> stack = {p};
        pts.insert(p);
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (int g = 0; g < x.group->order; ++g) {
                int r = x.act(g, q);
                if (pts.insert(r).second) stack.push_back(r);
            }
        }
        o.points.assign(pts.begin(), pts.end());
        for (int q : o.points) seen[q] = true;
        o.base = o.points.front();
        o.stab_sub = stabilizer_sub(x, o.base);
        o.stab_class = x.group->subgroup_class[o.stab_sub];
        out.push_back(std::move(o));
    }
    return out;
}

inline std::vector<int> orbit_of_point(const GSet& x) {
    auto orbs = orbit_decomposition(x);
    std::vector<int> out(x.size, -1);
    for (size_t i = 0; i < orbs.size(); ++i)
        for (int p : orbs[i].points) out[p] = (int)i;
    return out;
}

inline bool is_transitive(const GSet& x) { return orbit_decomposition(x).size() == 1; }

// Sorted multiset of orbit stabilizer classes; the complete iso invariant for
// finite G-sets.
inline std::vector<int> orbit_class_multiset(const GSet& x) {
    std::vector<int> out;
    for (const auto& o : orbit_decomposition(x)) out.push_back(o.stab_class);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> fixed_points(const GSet& x, const std::vector<int>& subgroup_elems) {
    std::vector<int> out;
    for (int p = 0; p < x.size; ++p) {
        bool fixed = true;
        for (int g : subgroup_elems)
            if (x.act(g, p) != p) { fixed = false; break; }
        if (fixed) out.push_back(p);
    }
    return out;
}

// ---- map classification ---------------------------------------------------

inline bool is_injective(const GMap& f) {
    std::vector<bool> hit(f.target.size, false);
    for (int v : f.map) {
        if (hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

inline bool is_surjective(const GMap& f) {
    std::vector<bool> hit(f.target.size, false);
    for (int v : f.map) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool is_iso(const GMap& f) {
    return f.source.size == f.target.size && is_injective(f);
}

// Injective with stable image, i.e. isomorphism onto a coproduct summand.
// For equivariant maps the image is automatically stable, but we check it
// anyway rather than rely on the caller having validated equivariance.
inline bool is_summand_inclusion(const GMap& f) {
    if (!is_injective(f)) return false;
    std::vector<bool> img(f.target.size, false);
    for (int v : f.map) img[v] = true;
    for (int g = 0; g < f.target.group->order; ++g)
        for (int p = 0; p < f.target.size; ++p)
            if (img[p] && !img[f.target.act(g, p)]) return false;
    return true;
}

// A fold map: every fiber lies in one orbit-summand pattern U = n copies of
// each target orbit folding down.  Concretely: f restricted to each orbit of
// the source is an isomorphism onto an orbit of the target.
inline bool is_fold_like(const GMap& f) {
    for (const auto& o : orbit_decomposition(f.source)) {
        std::set<int> img;
        for (int p : o.points) img.insert(f.map[p]);
        if (img.size() != o.points.size()) return false;  // not injective on the orbit
    }
    return is_surjective(f);
}

// ---- equivariant map enumeration -------------------------------------------

// For each point of a transitive piece, a transporter from the orbit base.
inline std::vector<int> transporters(const GSet& x, const Orbit& o) {
    std::vector<int> t(x.size, -1);
    for (int g = 0; g < x.group->order; ++g) {
        int q = x.act(g, o.base);
        if (t[q] < 0) t[q] = g;
    }
    return t;
}

// All equivariant maps U -> V in a fixed deterministic order.
inline std::vector<std::vector<int>> equivariant_maps(const GSet& u, const GSet& v) {
    auto orbs = orbit_decomposition(u);
    std::vector<std::vector<int>> per_orbit_choices;   // valid images of each orbit base
    std::vector<std::vector<int>> trans;
    for (const auto& o : orbs) {
        const auto stab = u.group->subgroup_elems[o.stab_sub];
        std::vector<int> choices;
        for (int q = 0; q < v.size; ++q) {
            bool ok = true;
            for (int g : stab)
                if (v.act(g, q) != q) { ok = false; break; }
            if (ok) choices.push_back(q);
        }
        per_orbit_choices.push_back(choices);
        trans.push_back(transporters(u, o));
    }
    std::vector<std::vector<int>> out;
    std::vector<size_t> pick(orbs.size(), 0);
    bool any = true;
    for (const auto& c : per_orbit_choices)
        if (c.empty()) any = false;
    if (u.size == 0) return {std::vector<int>{}};
    if (!any) return out;
    while (true) {
        std::vector<int> m(u.size);
        for (size_t i = 0; i < orbs.size(); ++i) {
            int q = per_orbit_choices[i][pick[i]];
            for (int p : orbs[i].points) m[p] = v.act(trans[i][p], q);
        }
        out.push_back(std::move(m));
        size_t i = 0;
        while (i < orbs.size() && ++pick[i] == per_orbit_choices[i].size()) pick[i++] = 0;
        if (i == orbs.size()) break;
    }
    return out;
}

// ---- pullback ---------------------------------------------------------------

struct Pullback {
    GSet gs;
    std::vector<std::pair<int, int>> points;  // row-major pairs (x, y)
    GMap p1, p2;
    std::vector<int> pair_pos;  // x*|Y| + y -> point index or -1
};

inline Pullback pullback(const GMap& f, const GMap& g) {
    assert(f.target == g.target && "pullback: targets differ");
    Pullback out;
    const auto& grp = f.source.group;
    int ny = g.source.size;
    out.pair_pos.assign(f.source.size * ny, -1);
    for (int x = 0; x < f.source.size; ++x)
        for (int y = 0; y < ny; ++y)
            if (f.map[x] == g.map[y]) {
                out.pair_pos[x * ny + y] = (int)out.points.size();
                out.points.push_back({x, y});
            }
    out.gs.group = grp;
    out.gs.size = (int)out.points.size();
    out.gs.action.assign(grp->order, std::vector<int>(out.gs.size));
    for (int gg = 0; gg < grp->order; ++gg)
        for (int i = 0; i < out.gs.size; ++i) {
            auto [x, y] = out.points[i];
            out.gs.action[gg][i] = out.pair_pos[f.source.act(gg, x) * ny + g.source.act(gg, y)];
        }
    out.p1 = {out.gs, f.source, {}};
    out.p2 = {out.gs, g.source, {}};
    for (auto [x, y] : out.points) {
        out.p1.map.push_back(x);
        out.p2.map.push_back(y);
    }
    return out;
}

// ---- induction / restriction -------------------------------------------------

// Restriction to a subgroup, as a set over the standalone subgroup group.
inline GSet restrict_gset(const GSet& x, int sub) {
    const auto& sg = x.group->subgroup_as_group(sub);
    GSet out;
    out.group = sg.group;
    out.size = x.size;
    out.action.assign(sg.group->order, {});
    for (int h = 0; h < sg.group->order; ++h) out.action[h] = x.action[sg.embed[h]];
    return out;
}

// Induction G x_H X for X an H-set (over subgroup_as_group(sub).group).
inline GSet induce_gset(const GroupPtr& g, int sub, const GSet& x) {
    const auto& sg = g->subgroup_as_group(sub);
    assert(x.group.get() == sg.group.get() && "induce_gset: not a set over that subgroup");
    int n = g->order * x.size;
    // Union-find over raw pairs (a, p) with (a*h, p) ~ (a, h*p).
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int a) { return uf[a] == a ? a : uf[a] = find(uf[a]); };
    auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
    auto enc = [&](int a, int p) { return a * x.size + p; };
    for (int a = 0; a < g->order; ++a)
        for (int p = 0; p < x.size; ++p)
            for (int h = 0; h < sg.group->order; ++h)
                unite(enc(g->mul(a, sg.embed[h]), p), enc(a, x.act(h, p)));
    std::vector<int> cls(n, -1);
    int cnt = 0;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) cls[i] = cnt++;
    for (int i = 0; i < n; ++i) cls[i] = cls[find(i)];
    GSet out;
    out.group = g;
    out.size = cnt;
    out.action.assign(g->order, std::vector<int>(cnt, -1));
    for (int gg = 0; gg < g->order; ++gg)
        for (int a = 0; a < g->order; ++a)
            for (int p = 0; p < x.size; ++p)
                out.action[gg][cls[enc(a, p)]] = cls[enc(g->mul(gg, a), p)];
    return out;
}

// ---- canonical forms ----------------------------------------------------------

// Valid chart basepoints of an orbit: points whose stabilizer is exactly the
// class representative subgroup.  Charts are coset_gset(class_rep) -> orbit,
// coset c |-> least_elem(c) * q; minimizing over basepoints q quotients out
// every automorphism of the orbit.
inline std::vector<int> chart_basepoints(const GSet& x, const Orbit& o) {
    int rep = x.group->class_rep[o.stab_class];
    std::vector<int> out;
    for (int p : o.points)
        if (stabilizer_sub(x, p) == rep) out.push_back(p);
    assert(!out.empty());
    return out;
}

struct CanonicalGSet {
    GSet gs;
    std::vector<int> from_canonical;  // canonical point -> original point
    std::vector<int> orbit_classes;   // sorted class multiset
    uint64_t hash = 0;
};

inline CanonicalGSet canonical_form(const GSet& x) {
    CanonicalGSet out;
    auto orbs = orbit_decomposition(x);
    std::stable_sort(orbs.begin(), orbs.end(),
                     [](const Orbit& a, const Orbit& b) { return a.stab_class < b.stab_class; });
    std::vector<GSet> parts;
    for (const auto& o : orbs) {
        out.orbit_classes.push_back(o.stab_class);
        int rep = x.group->class_rep[o.stab_class];
        const auto& cg = coset_gset(x.group, rep);
        parts.push_back(cg.gs);
        int q = chart_basepoints(x, o).front();
        for (int c = 0; c < cg.gs.size; ++c)
            out.from_canonical.push_back(x.act(cg.coset_least[c], q));
    }
    out.gs = disjoint_union(parts, x.group).gs;
    std::ostringstream key;
    key << x.group->name << ':';
    for (int c : out.orbit_classes) key << c << ',';
    out.hash = std::hash<std::string>{}(key.str());
    return out;
}

// Canonical form of an arrow (U, f: U -> V) with V held pointwise fixed.
// Two arrows over the same V get identical canonical data iff they are
// isomorphic over the identity of V.
struct CanonicalArrow {
    GSet u;                            // disjoint union of class-rep coset sets
    std::vector<int> f;                // canonical structure map into V
    std::vector<int> from_canonical;   // canonical point -> original U point
    std::string key;                   // includes V only through f's values
};

inline CanonicalArrow canonical_arrow(const GSet& u, const std::vector<int>& f, const GSet& v) {
    struct OrbCol {
        int cls;
        std::vector<int> vec;   // structure map in chart coordinates
        std::vector<int> back;  // canonical point -> original point
    };
    std::vector<OrbCol> cols;
    for (const auto& o : orbit_decomposition(u)) {
        int rep = u.group->class_rep[o.stab_class];
        const auto& cg = coset_gset(u.group, rep);
        OrbCol best;
        best.cls = -1;
        for (int q : chart_basepoints(u, o)) {
            OrbCol cand;
            cand.cls = o.stab_class;
            for (int c = 0; c < cg.gs.size; ++c) {
                int p = u.act(cg.coset_least[c], q);
                cand.back.push_back(p);
                cand.vec.push_back(f[p]);
            }
            if (best.cls < 0 || cand.vec < best.vec) best = std::move(cand);
        }
        cols.push_back(std::move(best));
    }
    std::stable_sort(cols.begin(), cols.end(), [](const OrbCol& a, const OrbCol& b) {
        if (a.cls != b.cls) return a.cls < b.cls;
        return a.vec < b.vec;
    });
    CanonicalArrow out;
    std::vector<GSet> parts;
    std::ostringstream key;
    key << u.group->name << '/' << v.size << '|';
    for (const auto& c : cols) {
        parts.push_back(coset_gset(u.group, u.group->class_rep[c.cls]).gs);
        out.from_canonical.insert(out.from_canonical.end(), c.back.begin(), c.back.end());
        out.f.insert(out.f.end(), c.vec.begin(), c.vec.end());
        key << c.cls << ':';
        for (int vv : c.vec) key << vv << ',';
        key << ';';
    }
    out.u = disjoint_union(parts, u.group).gs;
    out.key = key.str();
    return out;
}

}  // namespace orbitkit
