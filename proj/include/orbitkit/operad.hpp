#pragma once

// Set-level models of parametrized operads: a finite category sitting over a
// bounded universe of canonical pointed arrows, with flagged inert edges.
// The checkers certify the cocartesian-lift, Segal, and fiberwise-active
// decomposition conditions; constructors provide the terminal (commutative)
// model, trivial models attached to a coefficient G-set, monoidal envelopes,
// and suboperads.

#include "span.hpp"

#include <array>
#include <functional>
#include <memory>
#include <random>
#include <tuple>

namespace orbitkit {

// ---- bounded universe of base objects ------------------------------------------------

struct HomBlock {
    std::vector<SpanMorphism> spans;
    std::map<std::string, int> index;
    std::vector<char> inert, active, fw_active;
};

struct BaseUniverse {
    GroupPtr group;
    int bound = 4;                      // max |U| for enumerated arrows [U -> V]
    std::vector<ArrowObject> objects;   // canonical arrows over class-rep orbits
    std::vector<int> object_class;      // class of the target orbit, per object
    std::map<std::string, int> by_key;
    std::vector<int> identity_object;   // per class: [C = C]
    std::vector<int> empty_object;      // per class: [0 -> C]

    mutable std::map<std::pair<int, int>, HomBlock> hom_cache;
    mutable std::map<std::array<int, 5>, int> comp_cache;
    mutable std::map<std::pair<int, int>, std::pair<int, int>> char_cache;
    mutable std::map<int, int> id_cache;

    static std::string object_key(int cls, const std::string& arrow_key) {
        return std::to_string(cls) + '#' + arrow_key;
    }

    const HomBlock& block(int a, int b) const {
        auto key = std::make_pair(a, b);
        auto it = hom_cache.find(key);
        if (it != hom_cache.end()) return it->second;
        HomBlock blk;
        blk.spans = hom_set(objects[a], objects[b]);
        for (size_t i = 0; i < blk.spans.size(); ++i) {
            blk.index[span_key(blk.spans[i])] = (int)i;
            blk.inert.push_back(is_inert(blk.spans[i]));
            blk.active.push_back(is_active(blk.spans[i]));
            blk.fw_active.push_back(is_fiberwise_active(blk.spans[i]));
        }
        return hom_cache.emplace(key, std::move(blk)).first->second;
    }

    int find_span(int a, int b, const SpanMorphism& m) const {
        const auto& blk = block(a, b);
        auto it = blk.index.find(span_key(m));
        return it == blk.index.end() ? -1 : it->second;
    }

    // index in block(a, c) of spans[s2] o spans[s1], s1 in block(a, b), s2 in block(b, c)
    int compose_spans(int a, int b, int c, int s2, int s1) const {
        std::array<int, 5> key{a, b, c, s2, s1};
        auto it = comp_cache.find(key);
        if (it != comp_cache.end()) return it->second;
        auto m = compose(block(b, c).spans[s2], block(a, b).spans[s1]);
        int idx = find_span(a, c, m);
        assert(idx >= 0 && "universe not closed under composition");
        comp_cache.emplace(key, idx);
        return idx;
    }

    int identity_span_index(int a) const {
        auto it = id_cache.find(a);
        if (it != id_cache.end()) return it->second;
        int idx = find_span(a, a, identity_span(objects[a]));
        assert(idx >= 0);
        id_cache.emplace(a, idx);
        return idx;
    }

    // characteristic projection of object a onto its orbit w: (target object, span index)
    std::pair<int, int> characteristic(int a, int w) const {
        auto key = std::make_pair(a, w);
        auto it = char_cache.find(key);
        if (it != char_cache.end()) return it->second;
        auto chi = characteristic_morphism(objects[a], w);
        auto orbs = orbit_decomposition(objects[a].u);
        int tgt = identity_object[orbs[w].stab_class];
        int s = find_span(a, tgt, chi);
        assert(s >= 0);
        auto val = std::make_pair(tgt, s);
        char_cache.emplace(key, val);
        return val;
    }

    int find_object(int cls, const GSet& u, const std::vector<int>& f) const {
        const auto& v = objects[identity_object[cls]].v;
        auto ca = canonical_arrow(u, f, v);
        auto it = by_key.find(object_key(cls, ca.key));
        return it == by_key.end() ? -1 : it->second;
    }
};

using UniversePtr = std::shared_ptr<BaseUniverse>;

inline UniversePtr make_universe(const GroupPtr& g, int bound) {
    auto uni = std::make_shared<BaseUniverse>();
    uni->group = g;
    uni->bound = bound;
    int nc = g->num_classes();
    std::vector<GSet> orb(nc);
    for (int c = 0; c < nc; ++c) orb[c] = coset_gset(g, g->class_rep[c]).gs;

    // multisets of orbit classes with total size <= bound
    std::vector<std::vector<int>> multisets;
    std::vector<int> counts(nc, 0);
    std::function<void(int, int)> rec = [&](int c, int room) {
        if (c == nc) {
            multisets.push_back(counts);
            return;
        }
        for (int k = 0; k * orb[c].size <= room; ++k) {
            counts[c] = k;
            rec(c + 1, room - k * orb[c].size);
        }
        counts[c] = 0;
    };
    rec(0, bound);

    auto add = [&](int cls, const GSet& u, const std::vector<int>& f) {
        auto ca = canonical_arrow(u, f, orb[cls]);
        auto key = BaseUniverse::object_key(cls, ca.key);
        auto it = uni->by_key.find(key);
        if (it != uni->by_key.end()) return it->second;
        int idx = (int)uni->objects.size();
        uni->objects.push_back({ca.u, orb[cls], ca.f, true});
        uni->object_class.push_back(cls);
        uni->by_key.emplace(key, idx);
        return idx;
    };

    for (int cls = 0; cls < nc; ++cls) {
        for (const auto& ms : multisets) {
            std::vector<GSet> parts;
            for (int d = 0; d < nc; ++d)
                for (int k = 0; k < ms[d]; ++k) parts.push_back(orb[d]);
            GSet u = parts.empty() ? empty_gset(g) : disjoint_union(parts, g).gs;
            for (const auto& f : equivariant_maps(u, orb[cls])) add(cls, u, f);
        }
        std::vector<int> iota(orb[cls].size);
        std::iota(iota.begin(), iota.end(), 0);
        uni->identity_object.push_back(add(cls, orb[cls], iota));
        uni->empty_object.push_back(add(cls, empty_gset(g), {}));
    }
    return uni;
}

// ---- operad instances ----------------------------------------------------------------

struct OperadObject {
    int base = 0;   // universe object
    int color = 0;  // construction-specific fiber datum
    std::string label;
};

struct OperadMorphism {
    int src = 0, dst = 0;
    int base = 0;         // index into block(base(src), base(dst))
    bool inert = false;   // flagged inert
};

struct DiscreteTOperad {
    UniversePtr uni;
    std::vector<OperadObject> objects;
    std::vector<OperadMorphism> morphisms;
    std::vector<int> identity;  // per object
    // Fiber size of an object, used to scope checker obligations to the bound:
    // a pushforward whose expected weight exceeds the universe bound cannot be
    // represented and is skipped rather than reported.  Defaults to |base.u|.
    std::vector<int> weight;

    // composition: overrides first, then the construction rule; -1 = undefined
    std::function<int(const DiscreteTOperad&, int, int)> composer;
    std::map<std::pair<int, int>, int> comp_override;
    mutable std::map<std::pair<int, int>, int> comp_cache;

    std::vector<std::vector<int>> out_of, into;
    std::map<std::tuple<int, int, int>, std::vector<int>> by_base;
    std::vector<std::vector<int>> fiber;  // per universe object

    void reindex() {
        if (weight.size() != objects.size()) {
            weight.resize(objects.size());
            for (size_t i = 0; i < objects.size(); ++i)
                weight[i] = uni->objects[objects[i].base].u.size;
        }
        out_of.assign(objects.size(), {});
        into.assign(objects.size(), {});
        by_base.clear();
        fiber.assign(uni->objects.size(), {});
        for (size_t i = 0; i < objects.size(); ++i) fiber[objects[i].base].push_back((int)i);
        for (size_t m = 0; m < morphisms.size(); ++m) {
            out_of[morphisms[m].src].push_back((int)m);
            into[morphisms[m].dst].push_back((int)m);
            by_base[{morphisms[m].src, morphisms[m].dst, morphisms[m].base}].push_back((int)m);
        }
        comp_cache.clear();
    }

    bool composable(int g, int f) const { return morphisms[f].dst == morphisms[g].src; }

    int compose(int g, int f) const {
        assert(composable(g, f));
        auto key = std::make_pair(g, f);
        auto ov = comp_override.find(key);
        if (ov != comp_override.end()) return ov->second;
        auto it = comp_cache.find(key);
        if (it != comp_cache.end()) return it->second;
        int r = composer ? composer(*this, g, f) : -1;
        comp_cache.emplace(key, r);
        return r;
    }

    const std::vector<int>& at_base(int x, int y, int s) const {
        static const std::vector<int> none;
        auto it = by_base.find({x, y, s});
        return it == by_base.end() ? none : it->second;
    }
};

// the unique-morphism-per-base rule shared by the single-element constructions
inline int compose_by_base(const DiscreteTOperad& O, int g, int f) {
    const auto& mf = O.morphisms[f];
    const auto& mg = O.morphisms[g];
    int a = O.objects[mf.src].base, b = O.objects[mf.dst].base, c = O.objects[mg.dst].base;
    int s = O.uni->compose_spans(a, b, c, mg.base, mf.base);
    const auto& cand = O.at_base(mf.src, mg.dst, s);
    return cand.size() == 1 ? cand[0] : -1;
}

// worst-case growth factor of a pushforward along a span: the largest fiber of
// the backward apex leg.  A source of weight w pushes to weight at most
// w * inflation, so obligations beyond the bound are out of checking scope.
inline int pushforward_inflation(const SpanMorphism& s) {
    std::map<int, int> cnt;
    int mx = 0;
    for (int t = 0; t < s.z.size; ++t) mx = std::max(mx, ++cnt[s.zu[t]]);
    return mx;
}

// exactly one flagged morphism from x over span s (into fiber over b); -1 if not unique
inline int flagged_lift(const DiscreteTOperad& O, int x, int b, int s) {
    int found = -1;
    for (int m : O.out_of[x]) {
        if (!O.morphisms[m].inert || O.morphisms[m].base != s) continue;
        if (O.objects[O.morphisms[m].dst].base != b) continue;
        if (found >= 0) return -1;
        found = m;
    }
    return found;
}

// per orbit of base(x).u, the target of the flagged characteristic lift (-1 if missing)
inline std::vector<int> segal_components(const DiscreteTOperad& O, int x) {
    int a = O.objects[x].base;
    int n = (int)orbit_decomposition(O.uni->objects[a].u).size();
    std::vector<int> out(n, -1);
    for (int w = 0; w < n; ++w) {
        auto [tgt, s] = O.uni->characteristic(a, w);
        int e = flagged_lift(O, x, tgt, s);
        if (e >= 0) out[w] = O.morphisms[e].dst;
    }
    return out;
}

// ---- terminal and trivial models -----------------------------------------------------

// one object per base arrow, one morphism per span: the terminal (one-color
// commutative) model, i.e. the base category fibered over itself
inline DiscreteTOperad commutative_operad(const UniversePtr& uni) {
    DiscreteTOperad O;
    O.uni = uni;
    for (size_t b = 0; b < uni->objects.size(); ++b)
        O.objects.push_back({(int)b, 0, "b" + std::to_string(b)});
    for (size_t a = 0; a < uni->objects.size(); ++a)
        for (size_t b = 0; b < uni->objects.size(); ++b) {
            const auto& blk = uni->block((int)a, (int)b);
            for (size_t s = 0; s < blk.spans.size(); ++s)
                O.morphisms.push_back({(int)a, (int)b, (int)s, (bool)blk.inert[s]});
        }
    O.composer = compose_by_base;
    O.reindex();
    for (size_t x = 0; x < O.objects.size(); ++x)
        O.identity.push_back(O.at_base((int)x, (int)x, uni->identity_span_index((int)x)).front());
    return O;
}

// Objects over [U -> V] are equivariant maps U -> A (a coefficient system of
// fixed points), morphisms exist only over inert spans and only when the
// colors transport.  A = a point recovers the trivial model.
inline DiscreteTOperad triv_operad(const UniversePtr& uni, const GSet& coeff) {
    DiscreteTOperad O;
    O.uni = uni;
    std::map<std::pair<int, std::vector<int>>, int> obj_of;
    std::vector<std::vector<std::vector<int>>> colors(uni->objects.size());
    for (size_t b = 0; b < uni->objects.size(); ++b) {
        colors[b] = equivariant_maps(uni->objects[b].u, coeff);
        for (size_t c = 0; c < colors[b].size(); ++c) {
            obj_of[{(int)b, colors[b][c]}] = (int)O.objects.size();
            O.objects.push_back({(int)b, (int)c, "b" + std::to_string(b) + "c" + std::to_string(c)});
        }
    }
    for (size_t a = 0; a < uni->objects.size(); ++a)
        for (size_t b = 0; b < uni->objects.size(); ++b) {
            const auto& blk = uni->block((int)a, (int)b);
            for (size_t s = 0; s < blk.spans.size(); ++s) {
                if (!blk.inert[s]) continue;
                const auto& sp = blk.spans[s];
                std::vector<int> tr(sp.dst.u.size);  // dst point -> src point
                for (int t = 0; t < sp.z.size; ++t) tr[sp.zx[t]] = sp.zu[t];
                for (const auto& phi : colors[a]) {
                    std::vector<int> psi(sp.dst.u.size);
                    for (int p = 0; p < sp.dst.u.size; ++p) psi[p] = phi[tr[p]];
                    O.morphisms.push_back({obj_of.at({(int)a, phi}), obj_of.at({(int)b, psi}),
                                           (int)s, true});
                }
            }
        }
    O.composer = compose_by_base;
    O.reindex();
    for (size_t x = 0; x < O.objects.size(); ++x) {
        int b = O.objects[x].base;
        O.identity.push_back(O.at_base((int)x, (int)x, uni->identity_span_index(b)).front());
    }
    return O;
}

inline DiscreteTOperad triv_operad(const UniversePtr& uni) {
    return triv_operad(uni, trivial_gset(uni->group, 1));
}

// ---- axiom checking ------------------------------------------------------------------

struct AxiomViolation {
    std::string axiom;    // functoriality | cocartesian-lift | segal | decomposition-3prime
    std::string witness;
};

struct AxiomReport {
    bool passed = true;
    int bound = 0;
    std::vector<AxiomViolation> violations;
    bool has(const std::string& axiom) const {
        for (const auto& v : violations)
            if (v.axiom == axiom) return true;
        return false;
    }
};

namespace detail {
inline void report_violation(AxiomReport& rep, const std::string& axiom,
                             const std::string& witness, int cap = 16) {
    rep.passed = false;
    int n = 0;
    for (const auto& v : rep.violations) n += v.axiom == axiom;
    if (n < cap) rep.violations.push_back({axiom, witness});
}

// unique-filler property of e against every factorization of every morphism out of src(e)
inline bool unique_fillers(const DiscreteTOperad& O, int e, std::string* why = nullptr) {
    const auto& uni = *O.uni;
    int x = O.morphisms[e].src, y = O.morphisms[e].dst, s = O.morphisms[e].base;
    int a = O.objects[x].base, b = O.objects[y].base;
    for (int m : O.out_of[x]) {
        int z = O.morphisms[m].dst;
        int bz = O.objects[z].base;
        const auto& blk2 = uni.block(b, bz);
        for (size_t s2 = 0; s2 < blk2.spans.size(); ++s2) {
            if (uni.compose_spans(a, b, bz, (int)s2, s) != O.morphisms[m].base) continue;
            int fillers = 0;
            for (int h : O.at_base(y, z, (int)s2)) fillers += O.compose(h, e) == m;
            if (fillers != 1) {
                if (why)
                    *why = "morphism " + std::to_string(m) + " over factor span " +
                           std::to_string(s2) + " has " + std::to_string(fillers) + " fillers";
                return false;
            }
        }
    }
    return true;
}
}  // namespace detail

inline AxiomReport check_operad_axioms(const DiscreteTOperad& O) {
    AxiomReport rep;
    rep.bound = O.uni->bound;
    const auto& uni = *O.uni;

    // structural functoriality; malformed data short-circuits the axioms
    if (O.identity.size() != O.objects.size())
        detail::report_violation(rep, "functoriality", "identity table size mismatch");
    for (size_t x = 0; x < O.identity.size() && x < O.objects.size(); ++x) {
        int i = O.identity[x];
        const auto& m = O.morphisms[i];
        if (m.src != (int)x || m.dst != (int)x ||
            m.base != uni.identity_span_index(O.objects[x].base))
            detail::report_violation(rep, "functoriality",
                                     "identity of object " + std::to_string(x) +
                                         " does not sit over the identity span");
    }
    for (size_t m = 0; m < O.morphisms.size(); ++m) {
        const auto& mm = O.morphisms[m];
        int a = O.objects[mm.src].base, b = O.objects[mm.dst].base;
        if (mm.inert && !uni.block(a, b).inert[mm.base])
            detail::report_violation(rep, "functoriality",
                                     "morphism " + std::to_string(m) +
                                         " flagged inert over a non-inert span");
        if (O.compose((int)m, O.identity[mm.src]) != (int)m ||
            O.compose(O.identity[mm.dst], (int)m) != (int)m)
            detail::report_violation(rep, "functoriality",
                                     "identity law fails at morphism " + std::to_string(m));
    }
    for (size_t f = 0; f < O.morphisms.size(); ++f)
        for (int g : O.out_of[O.morphisms[f].dst]) {
            int c = O.compose(g, (int)f);
            if (c < 0) {
                detail::report_violation(rep, "functoriality",
                                         "missing composite " + std::to_string(g) + " o " +
                                             std::to_string(f));
                continue;
            }
            const auto& mc = O.morphisms[c];
            const auto& mf = O.morphisms[f];
            const auto& mg = O.morphisms[g];
            int a = O.objects[mf.src].base, b = O.objects[mf.dst].base,
                d = O.objects[mg.dst].base;
            if (mc.src != mf.src || mc.dst != mg.dst ||
                mc.base != uni.compose_spans(a, b, d, mg.base, mf.base))
                detail::report_violation(rep, "functoriality",
                                         "composite " + std::to_string(g) + " o " +
                                             std::to_string(f) + " not over the composed span");
        }
    if (!rep.passed) return rep;

    // (1) unique flagged lift over every inert span, cocartesian at set level
    for (size_t x = 0; x < O.objects.size(); ++x) {
        int a = O.objects[x].base;
        for (size_t b = 0; b < uni.objects.size(); ++b) {
            const auto& blk = uni.block(a, (int)b);
            for (size_t s = 0; s < blk.spans.size(); ++s) {
                if (!blk.inert[s]) continue;
                if ((long long)O.weight[x] * pushforward_inflation(blk.spans[s]) > rep.bound)
                    continue;  // pushforward not representable within the bound
                int e = flagged_lift(O, (int)x, (int)b, (int)s);
                if (e < 0) {
                    detail::report_violation(rep, "cocartesian-lift",
                                             "object " + std::to_string(x) +
                                                 " lacks a unique flagged lift over span " +
                                                 std::to_string(s) + " into base " +
                                                 std::to_string(b));
                    continue;
                }
                std::string why;
                if (!detail::unique_fillers(O, e, &why))
                    detail::report_violation(rep, "cocartesian-lift",
                                             "flagged lift of object " + std::to_string(x) +
                                                 " is not cocartesian: " + why);
            }
        }
    }

    // (2) Segal: fibers biject with component tuples representable in the bound
    for (size_t b = 0; b < uni.objects.size(); ++b) {
        auto orbs = orbit_decomposition(uni.objects[b].u);
        std::vector<const std::vector<int>*> comp_fibers;
        for (size_t w = 0; w < orbs.size(); ++w)
            comp_fibers.push_back(&O.fiber[uni.characteristic((int)b, (int)w).first]);
        std::function<long long(size_t, int)> admissible = [&](size_t w, int room) -> long long {
            if (w == comp_fibers.size()) return 1;
            long long n = 0;
            for (int y : *comp_fibers[w])
                if (O.weight[y] <= room) n += admissible(w + 1, room - O.weight[y]);
            return n;
        };
        long long expected = admissible(0, rep.bound);
        std::set<std::vector<int>> seen;
        bool injective = true;
        long long complete = 0;
        for (int x : O.fiber[b]) {
            auto tup = segal_components(O, x);
            if (std::find(tup.begin(), tup.end(), -1) != tup.end()) continue;
            ++complete;
            injective &= seen.insert(tup).second;
        }
        if (!injective || complete != (long long)O.fiber[b].size() ||
            (long long)O.fiber[b].size() != expected)
            detail::report_violation(rep, "segal",
                                     "fiber over base " + std::to_string(b) + " has " +
                                         std::to_string(O.fiber[b].size()) + " objects (" +
                                         std::to_string(complete) +
                                         " with full components) against " +
                                         std::to_string(expected) + " component tuples");
    }

    // (3') hom-sets over fiberwise-active spans decompose along target orbits
    for (size_t x = 0; x < O.objects.size(); ++x)
        for (size_t y = 0; y < O.objects.size(); ++y) {
            int a = O.objects[x].base, b = O.objects[y].base;
            const auto& blk = uni.block(a, b);
            auto orbs = orbit_decomposition(uni.objects[b].u);
            for (size_t s = 0; s < blk.spans.size(); ++s) {
                if (!blk.fw_active[s]) continue;
                const auto& lhs = O.at_base((int)x, (int)y, (int)s);
                std::vector<int> rho(orbs.size());
                long long prod = 1;
                bool usable = true;
                for (size_t w = 0; w < orbs.size(); ++w) {
                    auto [tw, chi] = uni.characteristic(b, (int)w);
                    rho[w] = flagged_lift(O, (int)y, tw, chi);
                    if (rho[w] < 0) { usable = false; break; }
                    int yw = O.morphisms[rho[w]].dst;
                    int cb = uni.compose_spans(a, b, tw, chi, (int)s);
                    prod *= (long long)O.at_base((int)x, yw, cb).size();
                }
                if (!usable) continue;  // reported under cocartesian-lift
                std::set<std::vector<int>> seen;
                bool injective = true;
                for (int m : lhs) {
                    std::vector<int> tup(orbs.size());
                    for (size_t w = 0; w < orbs.size(); ++w) tup[w] = O.compose(rho[w], m);
                    injective &= seen.insert(tup).second;
                }
                if (!injective || (long long)lhs.size() != prod)
                    detail::report_violation(
                        rep, "decomposition-3prime",
                        "hom(" + std::to_string(x) + "," + std::to_string(y) + ") over span " +
                            std::to_string(s) + " has " + std::to_string(lhs.size()) +
                            " elements against a product of " + std::to_string(prod));
            }
        }

    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const AxiomViolation& a, const AxiomViolation& b) {
                  return std::tie(a.axiom, a.witness) < std::tie(b.axiom, b.witness);
              });
    return rep;
}

// ---- multimorphism sets ---------------------------------------------------------------

struct OrbitChart {
    int cls = 0;
    std::vector<int> to_u;    // rep orbit point -> ambient point
    std::vector<int> from_u;  // ambient point -> rep orbit point (-1 outside)
};

inline OrbitChart orbit_chart(const GSet& u, const Orbit& o) {
    OrbitChart ch;
    ch.cls = o.stab_class;
    const auto& cg = coset_gset(u.group, u.group->class_rep[o.stab_class]);
    int q = chart_basepoints(u, o).front();
    ch.to_u.resize(cg.gs.size);
    ch.from_u.assign(u.size, -1);
    for (int c = 0; c < cg.gs.size; ++c) {
        int p = u.act(cg.coset_least[c], q);
        ch.to_u[c] = p;
        ch.from_u[p] = c;
    }
    return ch;
}

struct BasedPart {
    int obj = -1;               // universe object [P -> C]
    std::vector<int> to_orig;   // canonical point -> ambient point
    std::vector<int> from_orig; // ambient point -> canonical point (-1 outside)
};

// the subset pts of ambient, mapped into the class-cls rep orbit by f_to_c, as a
// universe object together with its coordinate charts
inline BasedPart based_part(const UniversePtr& uni, const GSet& ambient,
                            const std::vector<int>& pts, const std::vector<int>& f_to_c,
                            int cls) {
    BasedPart bp;
    auto sub = sub_gset(ambient, pts);
    std::vector<int> f(sub.gs.size);
    for (int i = 0; i < sub.gs.size; ++i) f[i] = f_to_c[sub.incl.map[i]];
    const auto& v = uni->objects[uni->identity_object[cls]].v;
    auto ca = canonical_arrow(sub.gs, f, v);
    auto it = uni->by_key.find(BaseUniverse::object_key(cls, ca.key));
    if (it == uni->by_key.end()) return bp;
    bp.obj = it->second;
    bp.to_orig.resize(ca.from_canonical.size());
    bp.from_orig.assign(ambient.size, -1);
    for (size_t t = 0; t < ca.from_canonical.size(); ++t) {
        bp.to_orig[t] = sub.incl.map[ca.from_canonical[t]];
        bp.from_orig[bp.to_orig[t]] = (int)t;
    }
    return bp;
}

// Mul^alpha(x, y) = product over target orbits Q of the morphisms
// [alpha^-1 Q -> Q]-object-with-components-x  ->  y_Q over the canonical
// fiberwise-active projection.  Elements are one factor choice per orbit.
struct MulSet {
    GMap alpha;
    std::vector<int> x, y;                  // operad objects per source/target orbit
    std::vector<BasedPart> parts;           // per target orbit: [alpha^-1 Q -> C]
    std::vector<OrbitChart> charts;         // per target orbit: chart of Q in the target
    std::vector<int> x_obj;                 // per target orbit: the assembled source object
    std::vector<int> proj_span;             // per target orbit: projection span index
    std::vector<std::vector<int>> factors;  // per target orbit: morphism indices

    long long count() const {
        long long n = 1;
        for (const auto& f : factors) n *= (long long)f.size();
        return n;
    }
};

inline MulSet mul_set(const DiscreteTOperad& O, const GMap& alpha, const std::vector<int>& x,
                      const std::vector<int>& y) {
    MulSet M;
    M.alpha = alpha;
    M.x = x;
    M.y = y;
    const auto& uni = *O.uni;
    auto src_orbs = orbit_decomposition(alpha.source);
    auto tgt_orbs = orbit_decomposition(alpha.target);
    assert(x.size() == src_orbs.size() && y.size() == tgt_orbs.size());
    auto src_orbit_of = orbit_of_point(alpha.source);
    for (size_t j = 0; j < tgt_orbs.size(); ++j) {
        auto ch = orbit_chart(alpha.target, tgt_orbs[j]);
        assert(O.objects[y[j]].base == uni.identity_object[ch.cls] &&
               "target colors must live over the matching orbit objects");
        std::vector<int> pts;
        std::vector<int> f_to_c(alpha.source.size, -1);
        for (int p = 0; p < alpha.source.size; ++p)
            if (ch.from_u[alpha.map[p]] >= 0) {
                pts.push_back(p);
                f_to_c[p] = ch.from_u[alpha.map[p]];
            }
        auto bp = based_part(O.uni, alpha.source, pts, f_to_c, ch.cls);
        if (bp.obj < 0) throw std::invalid_argument("mul_set: orbit preimage exceeds the bound");
        // locate the object over bp.obj whose components restrict x
        auto orbs = orbit_decomposition(uni.objects[bp.obj].u);
        std::vector<int> expected(orbs.size());
        for (size_t w = 0; w < orbs.size(); ++w)
            expected[w] = x[src_orbit_of[bp.to_orig[orbs[w].base]]];
        int xq = -1;
        for (int cand : O.fiber[bp.obj])
            if (segal_components(O, cand) == expected) {
                assert(xq < 0 && "segal condition must make the assembled object unique");
                xq = cand;
            }
        assert(xq >= 0 && "no object assembles the given source colors");
        auto proj = pointing(uni.objects[bp.obj], uni.objects[uni.identity_object[ch.cls]],
                             uni.objects[bp.obj].f);
        int s = uni.find_span(bp.obj, uni.identity_object[ch.cls], proj);
        assert(s >= 0);
        M.parts.push_back(std::move(bp));
        M.charts.push_back(std::move(ch));
        M.x_obj.push_back(xq);
        M.proj_span.push_back(s);
        M.factors.push_back(O.at_base(xq, y[j], s));
    }
    return M;
}

inline std::vector<int> unit_mul(const DiscreteTOperad& O, const MulSet& M) {
    std::vector<int> e(M.factors.size());
    for (size_t j = 0; j < M.factors.size(); ++j) {
        auto it = std::find(M.factors[j].begin(), M.factors[j].end(), O.identity[M.x[j]]);
        assert(it != M.factors[j].end() && "unit element missing");
        e[j] = (int)(it - M.factors[j].begin());
    }
    return e;
}

namespace detail {
// inert span carrying the canonical part over a target orbit Q (ambient index
// into M12's coordinates) down to the part recorded for orbit i of the middle map
inline int restriction_span(const DiscreteTOperad& O, const BasedPart& whole,
                            const OrbitChart& whole_chart, const std::vector<int>& mid_of_point,
                            const BasedPart& piece, const OrbitChart& piece_chart) {
    const auto& uni = *O.uni;
    const auto& src = uni.objects[whole.obj];
    const auto& dst = uni.objects[piece.obj];
    std::vector<int> base(dst.v.size);
    for (int c = 0; c < dst.v.size; ++c)
        base[c] = whole_chart.from_u[mid_of_point[piece_chart.to_u[c]]];
    std::vector<int> pairs, zx;
    for (int t = 0; t < src.u.size; ++t) {
        int p = piece.from_orig[whole.to_orig[t]];
        if (p < 0) continue;
        pairs.push_back(t * dst.v.size + dst.f[p]);
        zx.push_back(p);
    }
    auto sp = make_span(src, dst, std::move(base), std::move(pairs), std::move(zx));
    int s = uni.find_span(whole.obj, piece.obj, sp);
    assert(s >= 0);
    return s;
}
}  // namespace detail

// composition Mul^alpha(x, y) x Mul^beta(y, z) -> Mul^{beta alpha}(x, z); returns
// the composite multimorphism set together with the composed element
inline std::pair<MulSet, std::vector<int>> compose_mul(const DiscreteTOperad& O, const MulSet& M1,
                                                       const std::vector<int>& e1,
                                                       const MulSet& M2,
                                                       const std::vector<int>& e2) {
    const auto& uni = *O.uni;
    const GMap& alpha = M1.alpha;
    const GMap& beta = M2.alpha;
    assert(alpha.target == beta.source);
    GMap gamma{alpha.source, beta.target, {}};
    gamma.map.resize(alpha.source.size);
    for (int p = 0; p < alpha.source.size; ++p) gamma.map[p] = beta.map[alpha.map[p]];
    MulSet M12 = mul_set(O, gamma, M1.x, M2.y);

    auto mid_orbit_of = orbit_of_point(beta.source);
    std::vector<int> elem(M12.factors.size());
    for (size_t j = 0; j < M12.factors.size(); ++j) {
        // the fiberwise-active comparison from the assembled gamma-part to the beta-part
        const auto& A = uni.objects[M12.parts[j].obj];
        const auto& B = uni.objects[M2.parts[j].obj];
        std::vector<int> base(B.v.size);
        std::iota(base.begin(), base.end(), 0);
        std::vector<int> pairs, zx;
        for (int t = 0; t < A.u.size; ++t) {
            pairs.push_back(t * A.v.size + A.f[t]);
            zx.push_back(M2.parts[j].from_orig[alpha.map[M12.parts[j].to_orig[t]]]);
        }
        auto sp = make_span(A, B, std::move(base), std::move(pairs), std::move(zx));
        int sS = uni.find_span(M12.parts[j].obj, M2.parts[j].obj, sp);
        assert(sS >= 0);

        // constraints: restricting along each middle orbit recovers the e1 components
        auto orbs = orbit_decomposition(B.u);
        std::vector<std::pair<int, int>> want;  // (rho, required composite)
        for (size_t w = 0; w < orbs.size(); ++w) {
            auto [tw, chi] = uni.characteristic(M2.parts[j].obj, (int)w);
            int rho = flagged_lift(O, M2.x_obj[j], tw, chi);
            assert(rho >= 0);
            int i = mid_orbit_of[M2.parts[j].to_orig[orbs[w].base]];
            int sigma = detail::restriction_span(O, M12.parts[j], M12.charts[j], beta.map,
                                                 M1.parts[i], M1.charts[i]);
            int iota = flagged_lift(O, M12.x_obj[j], M1.parts[i].obj, sigma);
            assert(iota >= 0 && O.morphisms[iota].dst == M1.x_obj[i]);
            want.push_back({rho, O.compose(M1.factors[i][e1[i]], iota)});
        }
        int mu = -1;
        for (int cand : O.at_base(M12.x_obj[j], M2.x_obj[j], sS)) {
            bool ok = true;
            for (const auto& [rho, target] : want)
                if (O.compose(rho, cand) != target) { ok = false; break; }
            if (ok) {
                assert(mu < 0 && "decomposition condition must make the comparison unique");
                mu = cand;
            }
        }
        assert(mu >= 0 && "no comparison morphism assembles the first factor");
        int comp = O.compose(M2.factors[j][e2[j]], mu);
        auto it = std::find(M12.factors[j].begin(), M12.factors[j].end(), comp);
        assert(it != M12.factors[j].end());
        elem[j] = (int)(it - M12.factors[j].begin());
    }
    return {std::move(M12), std::move(elem)};
}

// base change along a cartesian square whose horizontal legs u, w are summand
// inclusions: restricts the colors and transports an element
inline std::pair<MulSet, std::vector<int>> base_change_mul(const DiscreteTOperad& O,
                                                           const MulSet& M,
                                                           const std::vector<int>& elem,
                                                           const GMap& u, const GMap& w,
                                                           const GMap& alpha0) {
    const auto& uni = *O.uni;
    const GMap& alpha = M.alpha;
    assert(u.target == alpha.source && w.target == alpha.target);
    assert(alpha0.source == u.source && alpha0.target == w.source);
    assert(is_summand_inclusion(w) && is_summand_inclusion(u));
    for (int p = 0; p < u.source.size; ++p)
        assert(w.map[alpha0.map[p]] == alpha.map[u.map[p]] && "square does not commute");
    // cartesian: points of the restricted source are exactly those of the total
    // source hitting the summand
    {
        int hits = 0;
        std::vector<int> wimg(alpha.target.size, 0);
        for (int q = 0; q < w.source.size; ++q) wimg[w.map[q]] = 1;
        for (int p = 0; p < alpha.source.size; ++p) hits += wimg[alpha.map[p]];
        assert(hits == u.source.size && "square is not cartesian");
    }

    std::vector<int> u_inv(alpha.source.size, -1), w_inv(alpha.target.size, -1);
    for (int p = 0; p < u.source.size; ++p) u_inv[u.map[p]] = p;
    for (int q = 0; q < w.source.size; ++q) w_inv[w.map[q]] = q;

    auto src_orbs = orbit_decomposition(alpha.source);
    auto tgt_orbs = orbit_decomposition(alpha.target);
    auto src0_orbs = orbit_decomposition(alpha0.source);
    auto tgt0_orbs = orbit_decomposition(alpha0.target);
    auto src_orbit_of = orbit_of_point(alpha.source);
    auto tgt_orbit_of = orbit_of_point(alpha.target);

    // the invertible twist I_c -> I_c induced by an orbit isomorphism inc: O0 -> O
    auto twist = [&](const GSet& amb0, const Orbit& o0, const GSet& amb, const Orbit& o,
                     const std::vector<int>& inc) {
        auto ch0 = orbit_chart(amb0, o0);
        auto ch = orbit_chart(amb, o);
        assert(ch0.cls == ch.cls);
        int io = uni.identity_object[ch.cls];
        const auto& I = uni.objects[io];
        std::vector<int> base(I.v.size), pairs, zx;
        std::vector<int> kinv(I.v.size);
        for (int c = 0; c < I.v.size; ++c) {
            base[c] = ch.from_u[inc[ch0.to_u[c]]];
            kinv[base[c]] = c;
        }
        for (int t = 0; t < I.u.size; ++t) {
            pairs.push_back(t * I.v.size + kinv[t]);
            zx.push_back(kinv[t]);
        }
        auto sp = make_span(I, I, std::move(base), std::move(pairs), std::move(zx));
        int s = uni.find_span(io, io, sp);
        assert(s >= 0);
        return std::make_pair(io, s);
    };

    std::vector<int> x0(src0_orbs.size()), y0(tgt0_orbs.size());
    for (size_t i0 = 0; i0 < src0_orbs.size(); ++i0) {
        int i = src_orbit_of[u.map[src0_orbs[i0].base]];
        auto [io, s] = twist(alpha0.source, src0_orbs[i0], alpha.source, src_orbs[i], u.map);
        int e = flagged_lift(O, M.x[i], io, s);
        assert(e >= 0);
        x0[i0] = O.morphisms[e].dst;
    }
    std::vector<int> y_lift(tgt0_orbs.size());
    for (size_t j0 = 0; j0 < tgt0_orbs.size(); ++j0) {
        int j = tgt_orbit_of[w.map[tgt0_orbs[j0].base]];
        auto [io, s] = twist(alpha0.target, tgt0_orbs[j0], alpha.target, tgt_orbs[j], w.map);
        int e = flagged_lift(O, M.y[j], io, s);
        assert(e >= 0);
        y0[j0] = O.morphisms[e].dst;
        y_lift[j0] = e;
    }
    MulSet M0 = mul_set(O, alpha0, x0, y0);

    std::vector<int> elem0(tgt0_orbs.size());
    for (size_t j0 = 0; j0 < tgt0_orbs.size(); ++j0) {
        int j = tgt_orbit_of[w.map[tgt0_orbs[j0].base]];
        // inert comparison from the total part to the restricted part
        const auto& src = uni.objects[M.parts[j].obj];
        const auto& dst = uni.objects[M0.parts[j0].obj];
        std::vector<int> base(dst.v.size), kinv(src.v.size);
        for (int c = 0; c < dst.v.size; ++c) {
            base[c] = M.charts[j].from_u[w.map[M0.charts[j0].to_u[c]]];
            kinv[base[c]] = c;
        }
        std::vector<int> pairs, zx;
        for (int t = 0; t < src.u.size; ++t) {
            pairs.push_back(t * dst.v.size + kinv[src.f[t]]);
            zx.push_back(M0.parts[j0].from_orig[u_inv[M.parts[j].to_orig[t]]]);
            assert(zx.back() >= 0);
        }
        auto sp = make_span(src, dst, std::move(base), std::move(pairs), std::move(zx));
        int s = uni.find_span(M.parts[j].obj, M0.parts[j0].obj, sp);
        assert(s >= 0);
        int etau = flagged_lift(O, M.x_obj[j], M0.parts[j0].obj, s);
        assert(etau >= 0 && O.morphisms[etau].dst == M0.x_obj[j0]);
        int mprime = O.compose(y_lift[j0], M.factors[j][elem[j]]);
        int found = -1;
        for (size_t pos = 0; pos < M0.factors[j0].size(); ++pos)
            if (O.compose(M0.factors[j0][pos], etau) == mprime) {
                assert(found < 0);
                found = (int)pos;
            }
        assert(found >= 0 && "no restricted element matches");
        elem0[j0] = found;
    }
    return {std::move(M0), std::move(elem0)};
}

// ---- morphisms of operads, unitality -------------------------------------------------

inline bool is_operad_morphism(const DiscreteTOperad& O, const DiscreteTOperad& P,
                               const std::vector<int>& obj_map,
                               const std::vector<int>& mor_map) {
    assert(O.uni.get() == P.uni.get());
    if (obj_map.size() != O.objects.size() || mor_map.size() != O.morphisms.size())
        throw std::invalid_argument("operad morphism: size mismatch");
    for (size_t x = 0; x < O.objects.size(); ++x)
        if (P.objects[obj_map[x]].base != O.objects[x].base)
            throw std::invalid_argument("operad morphism: not over the base");
    for (size_t m = 0; m < O.morphisms.size(); ++m) {
        const auto& om = O.morphisms[m];
        const auto& pm = P.morphisms[mor_map[m]];
        if (pm.src != obj_map[om.src] || pm.dst != obj_map[om.dst] || pm.base != om.base)
            throw std::invalid_argument("operad morphism: not over the base");
    }
    for (size_t x = 0; x < O.objects.size(); ++x)
        if (mor_map[O.identity[x]] != P.identity[obj_map[x]])
            throw std::invalid_argument("operad morphism: identities not preserved");
    for (size_t f = 0; f < O.morphisms.size(); ++f)
        for (int g : O.out_of[O.morphisms[f].dst])
            if (mor_map[O.compose(g, (int)f)] != P.compose(mor_map[g], mor_map[(int)f]))
                throw std::invalid_argument("operad morphism: composition not preserved");
    for (size_t m = 0; m < O.morphisms.size(); ++m)
        if (O.morphisms[m].inert && !P.morphisms[mor_map[m]].inert) return false;
    return true;
}

// Mul(empty, x) is a singleton for every orbit object x
inline bool is_unital(const DiscreteTOperad& O) {
    const auto& uni = *O.uni;
    for (int cls = 0; cls < uni.group->num_classes(); ++cls) {
        int eb = uni.empty_object[cls];
        if (O.fiber[eb].size() != 1) return false;
        int e = O.fiber[eb][0];
        std::vector<int> idbase(uni.objects[eb].v.size);
        std::iota(idbase.begin(), idbase.end(), 0);
        auto proj = make_span(uni.objects[eb], uni.objects[uni.identity_object[cls]],
                              std::move(idbase), {}, {});
        int s = uni.find_span(eb, uni.identity_object[cls], proj);
        assert(s >= 0);
        for (int x : O.fiber[uni.identity_object[cls]])
            if (O.at_base(e, x, s).size() != 1) return false;
    }
    return true;
}

// ---- monoidal envelope ---------------------------------------------------------------

// Objects are pairs (x, fiberwise-active span from base(x)), deduplicated up to
// fiber isomorphism; morphisms are pairs (m in O, base span) making the evident
// square commute.  Flagged inert edges are the canonical cocartesian lifts:
// factor the composed span, push x forward over the inert part in O, and land
// in the representative of the active part.
inline DiscreteTOperad envelope(const DiscreteTOperad& O) {
    const auto& uni = *O.uni;
    auto base_op = std::make_shared<DiscreteTOperad>(O);

    std::vector<int> inverse_of(O.morphisms.size(), -1);
    for (size_t m = 0; m < O.morphisms.size(); ++m)
        for (int m2 : O.out_of[O.morphisms[m].dst]) {
            if (O.morphisms[m2].dst != O.morphisms[m].src) continue;
            if (O.compose(m2, (int)m) == O.identity[O.morphisms[m].src] &&
                O.compose((int)m, m2) == O.identity[O.morphisms[m].dst]) {
                inverse_of[m] = m2;
                break;
            }
        }

    struct EnvObj { int x, b, s; };
    std::vector<EnvObj> reps;
    // candidate (x, b, s) -> (representative, invertible rep.x -> x over the base triangle)
    std::map<std::array<int, 3>, std::pair<int, int>> canon_of;
    for (size_t x = 0; x < O.objects.size(); ++x) {
        int a = O.objects[x].base;
        for (size_t b = 0; b < uni.objects.size(); ++b) {
            const auto& blk = uni.block(a, (int)b);
            for (size_t s = 0; s < blk.spans.size(); ++s) {
                if (!blk.fw_active[s]) continue;
                bool matched = false;
                for (size_t r = 0; r < reps.size() && !matched; ++r) {
                    if (reps[r].b != (int)b) continue;
                    int ra = O.objects[reps[r].x].base;
                    for (int m : O.out_of[reps[r].x]) {
                        if (inverse_of[m] < 0 || O.morphisms[m].dst != (int)x) continue;
                        if (uni.compose_spans(ra, a, (int)b, (int)s, O.morphisms[m].base) ==
                            reps[r].s) {
                            canon_of[{(int)x, (int)b, (int)s}] = {(int)r, m};
                            matched = true;
                            break;
                        }
                    }
                }
                if (!matched) {
                    canon_of[{(int)x, (int)b, (int)s}] = {(int)reps.size(),
                                                          O.identity[x]};
                    reps.push_back({(int)x, (int)b, (int)s});
                }
            }
        }
    }

    DiscreteTOperad E;
    E.uni = O.uni;
    for (size_t r = 0; r < reps.size(); ++r) {
        E.objects.push_back({reps[r].b, (int)r,
                             "x" + std::to_string(reps[r].x) + "s" + std::to_string(reps[r].s)});
        E.weight.push_back(O.weight[reps[r].x]);
    }

    auto key_map = std::make_shared<std::map<std::array<int, 4>, int>>();
    auto payload = std::make_shared<std::vector<std::pair<int, int>>>();  // (m, beta)
    for (size_t r1 = 0; r1 < reps.size(); ++r1)
        for (size_t r2 = 0; r2 < reps.size(); ++r2) {
            int a1 = O.objects[reps[r1].x].base, a2 = O.objects[reps[r2].x].base;
            const auto& bblk = uni.block(reps[r1].b, reps[r2].b);
            for (int m : O.out_of[reps[r1].x]) {
                if (O.morphisms[m].dst != reps[r2].x) continue;
                for (size_t beta = 0; beta < bblk.spans.size(); ++beta) {
                    if (uni.compose_spans(a1, reps[r1].b, reps[r2].b, (int)beta, reps[r1].s) !=
                        uni.compose_spans(a1, a2, reps[r2].b, reps[r2].s, O.morphisms[m].base))
                        continue;
                    (*key_map)[{(int)r1, (int)r2, m, (int)beta}] = (int)E.morphisms.size();
                    payload->push_back({m, (int)beta});
                    E.morphisms.push_back({(int)r1, (int)r2, (int)beta, false});
                }
            }
        }

    // flag the canonical lifts over inert base spans
    for (size_t r1 = 0; r1 < reps.size(); ++r1) {
        int a1 = O.objects[reps[r1].x].base;
        for (size_t b2 = 0; b2 < uni.objects.size(); ++b2) {
            const auto& bblk = uni.block(reps[r1].b, (int)b2);
            const auto& ablk = uni.block(a1, (int)b2);
            for (size_t beta = 0; beta < bblk.spans.size(); ++beta) {
                if (!bblk.inert[beta]) continue;
                int sc = uni.compose_spans(a1, reps[r1].b, (int)b2, (int)beta, reps[r1].s);
                auto fac = inert_active_factorize(ablk.spans[sc]);
                auto ca = canonical_arrow(fac.mid.u, fac.mid.f, fac.mid.v);
                auto mit = uni.by_key.find(
                    BaseUniverse::object_key(uni.object_class[b2], ca.key));
                if (mit == uni.by_key.end()) continue;  // pushforward beyond the bound
                int mid = mit->second;
                int iota = uni.find_span(a1, mid, fac.inert_part);
                int act = uni.find_span(mid, (int)b2, fac.active_part);
                assert(iota >= 0 && act >= 0);
                int e = flagged_lift(O, reps[r1].x, mid, iota);
                if (e < 0) continue;
                auto [r2, conn] = canon_of.at({O.morphisms[e].dst, (int)b2, act});
                int mr = conn == O.identity[O.morphisms[e].dst]
                             ? e
                             : O.compose(inverse_of[conn], e);
                auto kit = key_map->find({(int)r1, r2, mr, (int)beta});
                assert(kit != key_map->end());
                E.morphisms[kit->second].inert = true;
            }
        }
    }

    E.composer = [base_op, key_map, payload](const DiscreteTOperad& EE, int g, int f) -> int {
        const auto& mf = EE.morphisms[f];
        const auto& mg = EE.morphisms[g];
        auto [m1, b1] = (*payload)[f];
        auto [m2, b2] = (*payload)[g];
        int m = base_op->compose(m2, m1);
        if (m < 0) return -1;
        int beta = EE.uni->compose_spans(EE.objects[mf.src].base, EE.objects[mf.dst].base,
                                         EE.objects[mg.dst].base, b2, b1);
        auto it = key_map->find({mf.src, mg.dst, m, beta});
        return it == key_map->end() ? -1 : it->second;
    };
    E.reindex();
    for (size_t r = 0; r < reps.size(); ++r) {
        auto it = key_map->find({(int)r, (int)r, O.identity[reps[r].x],
                                 uni.identity_span_index(reps[r].b)});
        assert(it != key_map->end());
        E.identity.push_back(it->second);
    }
    return E;
}

// ---- suboperads ------------------------------------------------------------------------

struct SubOperadResult {
    bool closed = true;
    std::vector<std::string> issues;
    DiscreteTOperad op;
    std::vector<int> obj_map, mor_map;  // sub index -> ambient index
};

inline SubOperadResult build_suboperad(const DiscreteTOperad& O, const std::vector<char>& keep_obj,
                                       const std::vector<char>& keep_mor) {
    SubOperadResult out;
    std::vector<int> obj_new(O.objects.size(), -1), mor_new(O.morphisms.size(), -1);
    for (size_t x = 0; x < O.objects.size(); ++x)
        if (keep_obj[x]) {
            obj_new[x] = (int)out.obj_map.size();
            out.obj_map.push_back((int)x);
        }
    for (size_t m = 0; m < O.morphisms.size(); ++m) {
        if (!keep_mor[m]) continue;
        if (!keep_obj[O.morphisms[m].src] || !keep_obj[O.morphisms[m].dst]) {
            out.closed = false;
            out.issues.push_back("morphism " + std::to_string(m) + " has a dropped endpoint");
            continue;
        }
        mor_new[m] = (int)out.mor_map.size();
        out.mor_map.push_back((int)m);
    }
    for (size_t x = 0; x < O.objects.size(); ++x)
        if (keep_obj[x] && mor_new[O.identity[x]] < 0) {
            out.closed = false;
            out.issues.push_back("identity of object " + std::to_string(x) + " dropped");
        }
    for (int f : out.mor_map)
        for (int g : out.mor_map)
            if (O.composable(g, f)) {
                int c = O.compose(g, f);
                if (c < 0 || mor_new[c] < 0) {
                    out.closed = false;
                    out.issues.push_back("composite " + std::to_string(g) + " o " +
                                         std::to_string(f) + " leaves the subset");
                }
            }
    if (!out.closed) return out;

    auto base_op = std::make_shared<DiscreteTOperad>(O);
    auto to_old = std::make_shared<std::vector<int>>(out.mor_map);
    auto to_new = std::make_shared<std::vector<int>>(mor_new);
    out.op.uni = O.uni;
    for (int x : out.obj_map) {
        out.op.objects.push_back(O.objects[x]);
        out.op.weight.push_back(O.weight[x]);
    }
    for (int m : out.mor_map) {
        auto mm = O.morphisms[m];
        mm.src = obj_new[mm.src];
        mm.dst = obj_new[mm.dst];
        out.op.morphisms.push_back(mm);
    }
    out.op.composer = [base_op, to_old, to_new](const DiscreteTOperad&, int g, int f) -> int {
        int c = base_op->compose((*to_old)[g], (*to_old)[f]);
        return c < 0 ? -1 : (*to_new)[c];
    };
    out.op.reindex();
    for (int x : out.obj_map) out.op.identity.push_back(mor_new[O.identity[x]]);
    return out;
}

inline AxiomReport suboperad_check(const DiscreteTOperad& O, const std::vector<char>& keep_obj,
                                   const std::vector<char>& keep_mor) {
    auto sub = build_suboperad(O, keep_obj, keep_mor);
    if (!sub.closed) {
        AxiomReport rep;
        rep.bound = O.uni->bound;
        for (const auto& i : sub.issues) detail::report_violation(rep, "closure", i);
        return rep;
    }
    return check_operad_axioms(sub.op);
}

// sieves of the orbit category: downward-closed class sets under "admits a map to"
inline std::vector<std::vector<char>> orbit_sieves(const GroupPtr& g) {
    int nc = g->num_classes();
    std::vector<std::vector<char>> below(nc, std::vector<char>(nc, false));
    for (int c = 0; c < nc; ++c)
        for (int d = 0; d < nc; ++d)
            below[c][d] = !equivariant_maps(coset_gset(g, g->class_rep[d]).gs,
                                            coset_gset(g, g->class_rep[c]).gs)
                               .empty();
    std::vector<std::vector<char>> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << nc); ++mask) {
        bool sieve = true;
        for (int c = 0; c < nc && sieve; ++c)
            if (mask >> c & 1)
                for (int d = 0; d < nc; ++d)
                    if (below[c][d] && !(mask >> d & 1)) { sieve = false; break; }
        if (!sieve) continue;
        std::vector<char> s(nc);
        for (int c = 0; c < nc; ++c) s[c] = mask >> c & 1;
        out.push_back(s);
    }
    return out;
}

// the full subcategory on objects whose source orbits all lie in the class set
inline std::pair<std::vector<char>, std::vector<char>> full_subset_on_classes(
    const DiscreteTOperad& O, const std::vector<char>& classes) {
    std::vector<char> keep_obj(O.objects.size(), false);
    for (size_t x = 0; x < O.objects.size(); ++x) {
        bool ok = true;
        for (int c : orbit_class_multiset(O.uni->objects[O.objects[x].base].u))
            if (!classes[c]) { ok = false; break; }
        keep_obj[x] = ok;
    }
    std::vector<char> keep_mor(O.morphisms.size(), false);
    for (size_t m = 0; m < O.morphisms.size(); ++m)
        keep_mor[m] = keep_obj[O.morphisms[m].src] && keep_obj[O.morphisms[m].dst];
    return {keep_obj, keep_mor};
}

// ---- simplified criterion for cocartesian instances -----------------------------------

inline AxiomReport check_cocartesian_monoidal(const DiscreteTOperad& O) {
    AxiomReport rep;
    rep.bound = O.uni->bound;
    const auto& uni = *O.uni;
    // cocartesian lifts over every base span, flags ignored
    std::map<std::tuple<int, int, int>, int> pushforward;
    for (size_t x = 0; x < O.objects.size(); ++x) {
        int a = O.objects[x].base;
        for (size_t b = 0; b < uni.objects.size(); ++b) {
            const auto& blk = uni.block(a, (int)b);
            for (size_t s = 0; s < blk.spans.size(); ++s) {
                if ((long long)O.weight[x] * pushforward_inflation(blk.spans[s]) > rep.bound)
                    continue;
                int cocart = -1;
                for (int m : O.out_of[x]) {
                    if (O.morphisms[m].base != (int)s ||
                        O.objects[O.morphisms[m].dst].base != (int)b)
                        continue;
                    if (detail::unique_fillers(O, m)) {
                        cocart = m;
                        break;
                    }
                }
                if (cocart < 0)
                    detail::report_violation(rep, "cocartesian-lift",
                                             "object " + std::to_string(x) +
                                                 " has no cocartesian edge over span " +
                                                 std::to_string(s) + " into base " +
                                                 std::to_string(b));
                else
                    pushforward[{(int)x, (int)b, (int)s}] = cocart;
            }
        }
    }
    // Segal along cocartesian characteristic pushforwards
    for (size_t b = 0; b < uni.objects.size(); ++b) {
        auto orbs = orbit_decomposition(uni.objects[b].u);
        std::vector<const std::vector<int>*> comp_fibers;
        for (size_t w = 0; w < orbs.size(); ++w)
            comp_fibers.push_back(&O.fiber[uni.characteristic((int)b, (int)w).first]);
        std::function<long long(size_t, int)> admissible = [&](size_t w, int room) -> long long {
            if (w == comp_fibers.size()) return 1;
            long long n = 0;
            for (int y : *comp_fibers[w])
                if (O.weight[y] <= room) n += admissible(w + 1, room - O.weight[y]);
            return n;
        };
        long long expected = admissible(0, rep.bound);
        std::set<std::vector<int>> seen;
        bool injective = true;
        long long complete = 0;
        for (int x : O.fiber[b]) {
            std::vector<int> tup;
            bool ok = true;
            for (size_t w = 0; w < orbs.size(); ++w) {
                auto [tw, chi] = uni.characteristic((int)b, (int)w);
                auto it = pushforward.find({x, tw, chi});
                if (it == pushforward.end()) { ok = false; break; }
                tup.push_back(O.morphisms[it->second].dst);
            }
            if (!ok) continue;
            ++complete;
            injective &= seen.insert(tup).second;
        }
        if (!injective || complete != (long long)O.fiber[b].size() ||
            (long long)O.fiber[b].size() != expected)
            detail::report_violation(rep, "segal",
                                     "fiber over base " + std::to_string(b) + " has " +
                                         std::to_string(O.fiber[b].size()) + " objects (" +
                                         std::to_string(complete) +
                                         " with full components) against " +
                                         std::to_string(expected) + " component tuples");
    }
    return rep;
}

// ---- seeded mutations ------------------------------------------------------------------

inline DiscreteTOperad drop_inert_flag(const DiscreteTOperad& O, uint64_t seed) {
    std::vector<int> flagged;
    for (size_t m = 0; m < O.morphisms.size(); ++m) {
        const auto& mm = O.morphisms[m];
        if (!mm.inert) continue;
        if (std::find(O.identity.begin(), O.identity.end(), (int)m) != O.identity.end())
            continue;
        // only drop flags whose lift obligation is within checking scope
        const auto& sp =
            O.uni->block(O.objects[mm.src].base, O.objects[mm.dst].base).spans[mm.base];
        if ((long long)O.weight[mm.src] * pushforward_inflation(sp) > O.uni->bound) continue;
        flagged.push_back((int)m);
    }
    assert(!flagged.empty());
    std::mt19937_64 rng(seed);
    auto mutant = O;
    mutant.morphisms[flagged[rng() % flagged.size()]].inert = false;
    mutant.reindex();
    return mutant;
}

inline DiscreteTOperad duplicate_fiber_object(const DiscreteTOperad& O, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int x = (int)(rng() % O.objects.size());
    auto mutant = O;
    int nx = (int)mutant.objects.size();
    auto copy = O.objects[x];
    copy.label += "*";
    mutant.objects.push_back(copy);
    mutant.weight.push_back(O.weight[x]);
    int nm = (int)mutant.morphisms.size();
    mutant.morphisms.push_back({nx, nx, O.uni->identity_span_index(copy.base), true});
    mutant.identity.push_back(nm);
    mutant.comp_override[{nm, nm}] = nm;
    mutant.reindex();
    return mutant;
}

}  // namespace orbitkit
