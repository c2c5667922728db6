#pragma once

// The total span category of pointed finite T-sets over the orbit category:
// objects are arrows [f: U -> V], morphisms are spans whose backward leg is a
// summand inclusion into U x_V Y and whose forward leg lives over the
// identity of Y.  Morphisms are stored in canonical form (the apex IS the
// stable subset of the pullback, listed by sorted pair code), so equality is
// literal data equality and composition is strictly associative.

#include "gset.hpp"

namespace orbitkit {

struct ArrowObject {
    GSet u;
    GSet v;
    std::vector<int> f;       // structure map u -> v
    bool orbit_base = true;   // small base: v transitive; big base: any v

    bool operator==(const ArrowObject& o) const {
        return u == o.u && v == o.v && f == o.f;
    }
};

inline bool is_valid_arrow(const ArrowObject& a) {
    GMap fm{a.u, a.v, a.f};
    if (!is_valid_gset(a.u) || !is_valid_gset(a.v) || !is_valid_gmap(fm)) return false;
    if (a.orbit_base && a.v.size > 0 && !is_transitive(a.v)) return false;
    return true;
}

inline std::string arrow_key(const ArrowObject& a) {
    std::ostringstream k;
    k << a.u.group->name << '|' << a.v.size << '|';
    for (const auto& row : a.v.action)
        for (int p : row) k << p << ',';
    k << '|';
    k << canonical_arrow(a.u, a.f, a.v).key;
    return k.str();
}

struct SpanMorphism {
    ArrowObject src, dst;
    std::vector<int> base;   // dst.v -> src.v (the span's leg in the orbit direction)
    std::vector<int> pairs;  // sorted codes i*|dst.v|+j of the apex inside U x_V Y
    std::vector<int> zx;     // apex -> dst.u over the identity of dst.v
    // derived, kept for convenience:
    GSet z;
    std::vector<int> zu, zy;

    bool operator==(const SpanMorphism& o) const {
        return src == o.src && dst == o.dst && base == o.base && pairs == o.pairs && zx == o.zx;
    }
};

inline std::string span_key(const SpanMorphism& m) {
    std::ostringstream k;
    for (int b : m.base) k << b << ',';
    k << '|';
    for (int p : m.pairs) k << p << ',';
    k << '|';
    for (int x : m.zx) k << x << ',';
    return k.str();
}

// Build a span from its canonical data, deriving the apex G-set.
inline SpanMorphism make_span(const ArrowObject& src, const ArrowObject& dst,
                              std::vector<int> base, std::vector<int> pairs,
                              std::vector<int> zx) {
    SpanMorphism m;
    m.src = src;
    m.dst = dst;
    m.base = std::move(base);
    m.pairs = std::move(pairs);
    m.zx = std::move(zx);
    int ny = dst.v.size;
    std::map<int, int> pos;
    for (size_t t = 0; t < m.pairs.size(); ++t) pos[m.pairs[t]] = (int)t;
    const auto& g = src.u.group;
    m.z.group = g;
    m.z.size = (int)m.pairs.size();
    m.z.action.assign(g->order, std::vector<int>(m.z.size));
    m.zu.resize(m.z.size);
    m.zy.resize(m.z.size);
    for (int t = 0; t < m.z.size; ++t) {
        int i = m.pairs[t] / ny, j = m.pairs[t] % ny;
        m.zu[t] = i;
        m.zy[t] = j;
        for (int gg = 0; gg < g->order; ++gg) {
            auto it = pos.find(src.u.act(gg, i) * ny + dst.v.act(gg, j));
            assert(it != pos.end() && "make_span: apex pair set not stable");
            m.z.action[gg][t] = it->second;
        }
    }
    return m;
}

inline bool is_valid_span(const SpanMorphism& m) {
    if (!is_valid_arrow(m.src) || !is_valid_arrow(m.dst)) return false;
    if (!is_valid_gmap({m.dst.v, m.src.v, m.base})) return false;
    int ny = m.dst.v.size;
    if (!std::is_sorted(m.pairs.begin(), m.pairs.end())) return false;
    if (std::adjacent_find(m.pairs.begin(), m.pairs.end()) != m.pairs.end()) return false;
    for (size_t t = 0; t < m.pairs.size(); ++t) {
        int i = m.pairs[t] / ny, j = m.pairs[t] % ny;
        if (i < 0 || i >= m.src.u.size || j < 0) return false;
        if (m.src.f[i] != m.base[j]) return false;                 // lands in the pullback
        if (m.dst.f[m.zx[t]] != j) return false;                   // forward leg over id_Y
    }
    if (!is_valid_gmap({m.z, m.dst.u, m.zx})) return false;
    return true;
}

inline SpanMorphism identity_span(const ArrowObject& a) {
    std::vector<int> base(a.v.size);
    std::iota(base.begin(), base.end(), 0);
    std::vector<int> pairs, zx;
    for (int i = 0; i < a.u.size; ++i) {
        pairs.push_back(i * a.v.size + a.f[i]);
        zx.push_back(i);
    }
    return make_span(a, a, std::move(base), std::move(pairs), std::move(zx));
}

// ---- classification ---------------------------------------------------------

inline bool is_inert(const SpanMorphism& m) {
    if ((int)m.zx.size() != m.dst.u.size) return false;
    std::vector<bool> hit(m.dst.u.size, false);
    for (int v : m.zx) {
        if (hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

inline int full_pullback_count(const SpanMorphism& m) {
    int cnt = 0;
    for (int i = 0; i < m.src.u.size; ++i)
        for (int j = 0; j < m.dst.v.size; ++j)
            if (m.src.f[i] == m.base[j]) ++cnt;
    return cnt;
}

inline bool is_active(const SpanMorphism& m) {
    return (int)m.pairs.size() == full_pullback_count(m);
}

inline bool is_fiberwise(const SpanMorphism& m) {
    if (!(m.src.v == m.dst.v)) return false;
    for (int j = 0; j < m.dst.v.size; ++j)
        if (m.base[j] != j) return false;
    return true;
}

inline bool is_fiberwise_active(const SpanMorphism& m) {
    return is_fiberwise(m) && is_active(m);
}

// ---- composition --------------------------------------------------------------

inline SpanMorphism compose(const SpanMorphism& m2, const SpanMorphism& m1) {
    assert(m1.dst == m2.src && "compose: endpoints mismatch");
    int ny = m2.dst.v.size;
    std::vector<int> base(ny);
    for (int j = 0; j < ny; ++j) base[j] = m1.base[m2.base[j]];
    std::vector<std::pair<int, int>> ext;  // (pair code, forward image)
    for (size_t t1 = 0; t1 < m1.pairs.size(); ++t1)
        for (size_t t2 = 0; t2 < m2.pairs.size(); ++t2)
            if (m1.zx[t1] == m2.zu[t2])
                ext.push_back({m1.zu[t1] * ny + m2.zy[t2], m2.zx[t2]});
    std::sort(ext.begin(), ext.end());
    std::vector<int> pairs, zx;
    for (size_t i = 0; i < ext.size(); ++i) {
        assert((i == 0 || ext[i].first != ext[i - 1].first) &&
               "compose: composite apex failed to embed (si condition violated?)");
        pairs.push_back(ext[i].first);
        zx.push_back(ext[i].second);
    }
    return make_span(m1.src, m2.dst, std::move(base), std::move(pairs), std::move(zx));
}

// ---- hom sets ------------------------------------------------------------------

// Complete, duplicate-free, deterministic enumeration of Hom(a, b):
// base maps in equivariant_maps order, then stable subsets of the pullback by
// ascending orbit mask, then forward legs by odometer over orbit images.
inline std::vector<SpanMorphism> hom_set(const ArrowObject& a, const ArrowObject& b) {
    std::vector<SpanMorphism> out;
    for (const auto& k : equivariant_maps(b.v, a.v)) {
        GMap fm{a.u, a.v, a.f};
        GMap km{b.v, a.v, k};
        auto pb = pullback(fm, km);
        auto orbs = orbit_decomposition(pb.gs);
        int no = (int)orbs.size();
        for (uint64_t mask = 0; mask < (uint64_t(1) << no); ++mask) {
            std::vector<int> pts;
            for (int i = 0; i < no; ++i)
                if (mask >> i & 1)
                    pts.insert(pts.end(), orbs[i].points.begin(), orbs[i].points.end());
            std::sort(pts.begin(), pts.end());
            auto sub = sub_gset(pb.gs, pts);
            // forward leg candidates per orbit of the apex
            auto zorbs = orbit_decomposition(sub.gs);
            std::vector<std::vector<int>> choices;
            std::vector<std::vector<int>> trans;
            bool possible = true;
            for (const auto& o : zorbs) {
                int p0 = sub.incl.map[o.base];
                int ytgt = pb.points[p0].second;
                const auto& stab = sub.gs.group->subgroup_elems[o.stab_sub];
                std::vector<int> c;
                for (int q = 0; q < b.u.size; ++q) {
                    if (b.f[q] != ytgt) continue;
                    bool ok = true;
                    for (int g : stab)
                        if (b.u.act(g, q) != q) { ok = false; break; }
                    if (ok) c.push_back(q);
                }
                if (c.empty()) { possible = false; break; }
                choices.push_back(c);
                trans.push_back(transporters(sub.gs, o));
            }
            if (!possible) continue;
            std::vector<int> pcodes;
            for (int p : pts) pcodes.push_back(pb.points[p].first * b.v.size + pb.points[p].second);
            std::vector<size_t> pick(zorbs.size(), 0);
            while (true) {
                std::vector<int> zx(sub.gs.size);
                for (size_t i = 0; i < zorbs.size(); ++i) {
                    int q = choices[i][pick[i]];
                    for (int t : zorbs[i].points) zx[t] = b.u.act(trans[i][t], q);
                }
                out.push_back(make_span(a, b, k, pcodes, zx));
                size_t i = 0;
                while (i < zorbs.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
                if (i == zorbs.size()) break;
            }
        }
    }
    return out;
}

// ---- factorization ---------------------------------------------------------------

struct Factorization {
    ArrowObject mid;
    SpanMorphism inert_part;   // src -> mid, carries the base change
    SpanMorphism active_part;  // mid -> dst, fiberwise active
};

// The inert / active factorization: the inert factor projects onto the apex
// (canonicalized as an arrow over dst.v), the second factor is active with
// degenerate base.  The same pair serves the inert/active and the
// inert/fiberwise-active factorization systems, since the canonical active
// factor happens to be fiberwise.
inline Factorization inert_active_factorize(const SpanMorphism& m) {
    Factorization out;
    if (is_inert(m)) {
        out.mid = m.dst;
        out.inert_part = m;
        out.active_part = identity_span(m.dst);
        return out;
    }
    if (is_fiberwise_active(m)) {
        out.mid = m.src;
        out.inert_part = identity_span(m.src);
        out.active_part = m;
        return out;
    }
    auto ca = canonical_arrow(m.z, m.zy, m.dst.v);
    out.mid = {ca.u, m.dst.v, ca.f, m.dst.orbit_base};
    std::vector<int> to_canonical(m.z.size);
    for (int t = 0; t < (int)ca.from_canonical.size(); ++t)
        to_canonical[ca.from_canonical[t]] = t;
    // inert factor: same apex pair set, forward leg renames the apex
    std::vector<int> zx1(m.z.size);
    for (int t = 0; t < m.z.size; ++t) zx1[t] = to_canonical[t];
    out.inert_part = make_span(m.src, out.mid, m.base, m.pairs, std::move(zx1));
    // active factor: full pullback of mid over the identity base
    std::vector<int> idbase(m.dst.v.size);
    std::iota(idbase.begin(), idbase.end(), 0);
    std::vector<int> pairs2, zx2;
    for (int t = 0; t < out.mid.u.size; ++t) {
        pairs2.push_back(t * m.dst.v.size + out.mid.f[t]);
        zx2.push_back(m.zx[ca.from_canonical[t]]);
    }
    out.active_part = make_span(out.mid, m.dst, std::move(idbase), std::move(pairs2), std::move(zx2));
    return out;
}

// ---- characteristic morphisms and pointing ------------------------------------------

// The inert morphism projecting [U -> V] onto the orbit summand W (given by
// its index in orbit_decomposition(u)).  The target is the canonical
// [G/K = G/K] for K the class representative of W's stabilizer.
inline SpanMorphism characteristic_morphism(const ArrowObject& a, int orbit_index) {
    auto orbs = orbit_decomposition(a.u);
    assert(orbit_index >= 0 && orbit_index < (int)orbs.size());
    const auto& o = orbs[orbit_index];
    const auto& g = a.u.group;
    const auto& cg = coset_gset(g, g->class_rep[o.stab_class]);
    ArrowObject tgt;
    tgt.u = cg.gs;
    tgt.v = cg.gs;
    tgt.f.resize(cg.gs.size);
    std::iota(tgt.f.begin(), tgt.f.end(), 0);
    tgt.orbit_base = a.orbit_base;
    int q = chart_basepoints(a.u, o).front();
    std::vector<int> base(cg.gs.size);
    std::vector<std::pair<int, int>> ext;
    for (int c = 0; c < cg.gs.size; ++c) {
        int p = a.u.act(cg.coset_least[c], q);
        base[c] = a.f[p];
        ext.push_back({p * cg.gs.size + c, c});
    }
    std::sort(ext.begin(), ext.end());
    std::vector<int> pairs, zx;
    for (auto [code, c] : ext) {
        pairs.push_back(code);
        zx.push_back(c);
    }
    return make_span(a, tgt, std::move(base), std::move(pairs), std::move(zx));
}

// The image of a fiberwise map t: U -> X over a common base V under the
// pointing functor: an active span with degenerate base.
inline SpanMorphism pointing(const ArrowObject& a, const ArrowObject& b,
                             const std::vector<int>& t) {
    assert(a.v == b.v && "pointing: objects must share the base orbit");
    std::vector<int> base(a.v.size);
    std::iota(base.begin(), base.end(), 0);
    std::vector<int> pairs, zx;
    for (int i = 0; i < a.u.size; ++i) {
        pairs.push_back(i * a.v.size + a.f[i]);
        zx.push_back(t[i]);
    }
    return make_span(a, b, std::move(base), std::move(pairs), std::move(zx));
}

// ---- atomic / orbital verification ----------------------------------------------------

struct AtomicOrbitalReport {
    bool orbital = true;        // pullbacks of orbit cospans exist with the universal property
    bool atomic = true;         // every orbit map with a left inverse is an isomorphism
    std::vector<std::string> witnesses;
    bool passed() const { return orbital && atomic && witnesses.empty(); }
};

inline AtomicOrbitalReport verify_atomic_orbital(const GroupPtr& g) {
    AtomicOrbitalReport rep;
    int nc = g->num_classes();
    std::vector<GSet> orbits;
    for (int c = 0; c < nc; ++c) orbits.push_back(coset_gset(g, g->class_rep[c]).gs);
    // Orbital: every cospan of orbits has a pullback in finite G-sets whose
    // universal property holds against a mediating-map search from orbit cones.
    for (int ca = 0; ca < nc; ++ca)
        for (int cb = 0; cb < nc; ++cb)
            for (int cc = 0; cc < nc; ++cc)
                for (const auto& f : equivariant_maps(orbits[ca], orbits[cc]))
                    for (const auto& h : equivariant_maps(orbits[cb], orbits[cc])) {
                        auto pb = pullback({orbits[ca], orbits[cc], f},
                                           {orbits[cb], orbits[cc], h});
                        for (int cw = 0; cw < nc; ++cw)
                            for (const auto& w1 : equivariant_maps(orbits[cw], orbits[ca]))
                                for (const auto& w2 : equivariant_maps(orbits[cw], orbits[cb])) {
                                    bool commutes = true;
                                    for (int p = 0; p < orbits[cw].size; ++p)
                                        if (f[w1[p]] != h[w2[p]]) { commutes = false; break; }
                                    if (!commutes) continue;
                                    int mediators = 0;
                                    for (const auto& u : equivariant_maps(orbits[cw], pb.gs)) {
                                        bool ok = true;
                                        for (int p = 0; p < orbits[cw].size; ++p)
                                            if (pb.p1.map[u[p]] != w1[p] ||
                                                pb.p2.map[u[p]] != w2[p]) { ok = false; break; }
                                        if (ok) ++mediators;
                                    }
                                    if (mediators != 1) {
                                        rep.orbital = false;
                                        rep.witnesses.push_back(
                                            "pullback universal property failed over classes " +
                                            std::to_string(ca) + "," + std::to_string(cb));
                                    }
                                }
                    }
    // Atomic: retract scan over all orbit hom-sets.
    for (int ca = 0; ca < nc; ++ca)
        for (int cb = 0; cb < nc; ++cb)
            for (const auto& f : equivariant_maps(orbits[ca], orbits[cb]))
                for (const auto& h : equivariant_maps(orbits[cb], orbits[ca])) {
                    bool left_inverse = true;
                    for (int p = 0; p < orbits[ca].size; ++p)
                        if (h[f[p]] != p) { left_inverse = false; break; }
                    if (left_inverse && !is_iso({orbits[ca], orbits[cb], f})) {
                        rep.atomic = false;
                        rep.witnesses.push_back("non-invertible split mono between classes " +
                                                std::to_string(ca) + "," + std::to_string(cb));
                    }
                }
    return rep;
}

// A bare finite category, for the synthetic non-atomic counterexample.
struct FiniteCategory {
    int num_objects = 0;
    std::vector<int> mor_src, mor_dst;
    std::vector<int> identity_of;                  // per object
    std::map<std::pair<int, int>, int> comp;       // (g, f) -> g o f
};

struct CategoryAtomicityReport {
    bool atomic = true;
    std::vector<std::string> witnesses;
};

inline CategoryAtomicityReport verify_atomic_category(const FiniteCategory& c) {
    CategoryAtomicityReport rep;
    auto is_invertible = [&](int f) {
        for (int h = 0; h < (int)c.mor_src.size(); ++h) {
            if (c.mor_src[h] != c.mor_dst[f] || c.mor_dst[h] != c.mor_src[f]) continue;
            if (c.comp.at({h, f}) == c.identity_of[c.mor_src[f]] &&
                c.comp.at({f, h}) == c.identity_of[c.mor_dst[f]])
                return true;
        }
        return false;
    };
    for (int f = 0; f < (int)c.mor_src.size(); ++f)
        for (int h = 0; h < (int)c.mor_src.size(); ++h) {
            if (c.mor_src[h] != c.mor_dst[f] || c.mor_dst[h] != c.mor_src[f]) continue;
            if (c.comp.at({h, f}) != c.identity_of[c.mor_src[f]]) continue;
            if (!is_invertible(f)) {
                rep.atomic = false;
                rep.witnesses.push_back("morphism " + std::to_string(f) +
                                        " has left inverse " + std::to_string(h) +
                                        " but is not invertible");
            }
        }
    return rep;
}

// Three objects A, B, C; f: A->B and r: B->A with r o f = id_A but f o r != id_B.
// f is a non-invertible split mono (r a split epi), so atomicity fails.
inline FiniteCategory split_epi_category() {
    FiniteCategory c;
    c.num_objects = 3;
    // morphisms: 0:id_A 1:id_B 2:id_C 3:f(A->B) 4:r(B->A) 5:e(B->B)=f o r
    c.mor_src = {0, 1, 2, 0, 1, 1};
    c.mor_dst = {0, 1, 2, 1, 0, 1};
    c.identity_of = {0, 1, 2};
    auto& k = c.comp;
    k[{0, 0}] = 0; k[{1, 1}] = 1; k[{2, 2}] = 2;
    k[{3, 0}] = 3; k[{1, 3}] = 3;
    k[{4, 1}] = 4; k[{0, 4}] = 4;
    k[{5, 1}] = 5; k[{1, 5}] = 5;
    k[{4, 3}] = 0;              // r o f = id_A
    k[{3, 4}] = 5;              // f o r = e
    k[{5, 3}] = 3;              // e o f = f
    k[{4, 5}] = 4;              // r o e = r
    k[{5, 5}] = 5;              // e o e = e
    return c;
}

}  // namespace orbitkit
