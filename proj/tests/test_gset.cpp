#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <orbitkit/fixtures.hpp>
#include <orbitkit/gset.hpp>

#include <random>

using namespace orbitkit;

// Brute-force equivariant isomorphism search (desk-scale oracle).
static bool iso_bruteforce(const GSet& a, const GSet& b) {
    if (a.size != b.size) return false;
    std::vector<int> perm(a.size);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int g = 0; g < a.group->order && ok; ++g)
            for (int p = 0; p < a.size && ok; ++p)
                if (perm[a.act(g, p)] != b.act(g, perm[p])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return a.size == 0;
}

static GSet relabel(const GSet& x, const std::vector<int>& perm) {
    GSet out = x;
    for (int g = 0; g < x.group->order; ++g)
        for (int p = 0; p < x.size; ++p) out.action[g][perm[p]] = perm[x.act(g, p)];
    return out;
}

TEST_CASE("orbit decompositions") {
    auto c4 = builtin_group("C4");
    auto reg = regular_gset(c4);
    auto orbs = orbit_decomposition(reg);
    REQUIRE(orbs.size() == 1);
    CHECK(c4->subgroup_elems[orbs[0].stab_sub] == std::vector<int>{0});

    auto c2 = builtin_group("C2");
    auto triv3 = trivial_gset(c2, 3);
    CHECK(orbit_decomposition(triv3).size() == 3);
    for (const auto& o : orbit_decomposition(triv3))
        CHECK(c2->subgroup_elems[o.stab_sub].size() == 2);

    auto two_free = disjoint_union({regular_gset(c2), regular_gset(c2)}, c2).gs;
    auto orbs2 = orbit_decomposition(two_free);
    REQUIRE(orbs2.size() == 2);
    for (const auto& o : orbs2) CHECK(c2->subgroup_elems[o.stab_sub].size() == 1);
}

TEST_CASE("orbit type sizes partition the carrier") {
    for (const auto& name : builtin_group_names()) {
        auto g = builtin_group(name);
        auto x = disjoint_union({regular_gset(g), trivial_gset(g, 2)}, g).gs;
        int total = 0;
        for (const auto& o : orbit_decomposition(x)) total += (int)o.points.size();
        CHECK(total == x.size);
    }
}

TEST_CASE("pullbacks") {
    auto c2 = builtin_group("C2");
    auto pt = trivial_gset(c2, 1);
    auto free2 = regular_gset(c2);
    GMap f{free2, pt, {0, 0}};
    auto pb = pullback(f, f);
    CHECK(pb.gs.size == 4);
    CHECK(orbit_decomposition(pb.gs).size() == 2);  // 2 free orbits
    for (const auto& o : orbit_decomposition(pb.gs))
        CHECK(c2->subgroup_elems[o.stab_sub].size() == 1);

    // pullback along identity is the source
    GMap idm{free2, free2, {0, 1}};
    auto pb2 = pullback(f, GMap{pt, pt, {0}});
    CHECK(pb2.gs.size == 2);
    CHECK(iso_bruteforce(pb2.gs, free2));
}

TEST_CASE("S3 double-coset pullback") {
    auto s3 = builtin_group("S3");
    int sub2 = -1;
    for (int i = 0; i < s3->num_subgroups(); ++i)
        if (s3->subgroup_elems[i].size() == 2) { sub2 = i; break; }
    REQUIRE(sub2 >= 0);
    auto orb = coset_gset(s3, sub2).gs;
    auto pt = trivial_gset(s3, 1);
    GMap f{orb, pt, std::vector<int>(orb.size, 0)};
    auto pb = pullback(f, f);
    auto classes = orbit_class_multiset(pb.gs);
    // S3/C2 x S3/C2 = S3/C2 + S3/e (double cosets |C2\S3/C2| = 2)
    REQUIRE(classes.size() == 2);
    int cls_e = s3->subgroup_class[0];
    int cls_c2 = s3->subgroup_class[sub2];
    std::vector<int> expect = {cls_e, cls_c2};
    std::sort(expect.begin(), expect.end());
    CHECK(classes == expect);
}

TEST_CASE("pullback universal property against mediating-map search") {
    auto c4 = builtin_group("C4");
    std::vector<GSet> pieces;
    for (int c = 0; c < c4->num_classes(); ++c)
        pieces.push_back(coset_gset(c4, c4->class_rep[c]).gs);
    for (const auto& a : pieces)
        for (const auto& b : pieces)
            for (const auto& t : pieces)
                for (const auto& fv : equivariant_maps(a, t))
                    for (const auto& gv : equivariant_maps(b, t)) {
                        auto pb = pullback({a, t, fv}, {b, t, gv});
                        for (const auto& w : pieces)
                            for (const auto& w1 : equivariant_maps(w, a))
                                for (const auto& w2 : equivariant_maps(w, b)) {
                                    bool commutes = true;
                                    for (int p = 0; p < w.size; ++p)
                                        if (fv[w1[p]] != gv[w2[p]]) { commutes = false; break; }
                                    if (!commutes) continue;
                                    int count = 0;
                                    for (const auto& u : equivariant_maps(w, pb.gs)) {
                                        bool ok = true;
                                        for (int p = 0; p < w.size; ++p)
                                            if (pb.p1.map[u[p]] != w1[p] || pb.p2.map[u[p]] != w2[p])
                                                ok = false;
                                        if (ok) ++count;
                                    }
                                    CHECK(count == 1);
                                }
                    }
}

TEST_CASE("summand inclusions") {
    auto c2 = builtin_group("C2");
    auto free2 = regular_gset(c2);
    auto uni = disjoint_union({free2, trivial_gset(c2, 1)}, c2);
    GMap incl{free2, uni.gs, {0, 1}};
    CHECK(is_summand_inclusion(incl));

    auto two_free = disjoint_union({free2, free2}, c2).gs;
    GMap fold{two_free, free2, {0, 1, 0, 1}};
    CHECK(is_valid_gmap(fold));
    CHECK_FALSE(is_summand_inclusion(fold));
    CHECK(is_fold_like(fold));

    auto prod = product_gset(free2, free2);
    GMap diag{free2, prod.gs, {0 * 2 + 0, 1 * 2 + 1}};
    CHECK(is_valid_gmap(diag));
    CHECK(is_summand_inclusion(diag));  // the diagonal orbit is a summand
}

TEST_CASE("pullbacks of summand inclusions are summand inclusions") {
    auto c2 = builtin_group("C2");
    std::vector<GSet> xs = {
        regular_gset(c2), trivial_gset(c2, 2),
        disjoint_union({regular_gset(c2), trivial_gset(c2, 1)}, c2).gs};
    for (const auto& x : xs)
        for (const auto& y : xs)
            for (const auto& t : xs)
                for (const auto& fv : equivariant_maps(x, t))
                    for (const auto& gv : equivariant_maps(y, t)) {
                        GMap f{x, t, fv}, g{y, t, gv};
                        if (!is_summand_inclusion(f)) continue;
                        auto pb = pullback(f, g);
                        CHECK(is_summand_inclusion(pb.p2));
                    }
}

TEST_CASE("atomicity witness: split monos between orbits are isos") {
    for (const auto& name : builtin_group_names()) {
        auto g = builtin_group(name);
        for (int ca = 0; ca < g->num_classes(); ++ca)
            for (int cb = 0; cb < g->num_classes(); ++cb) {
                auto a = coset_gset(g, g->class_rep[ca]).gs;
                auto b = coset_gset(g, g->class_rep[cb]).gs;
                for (const auto& fv : equivariant_maps(a, b))
                    for (const auto& hv : equivariant_maps(b, a)) {
                        bool li = true;
                        for (int p = 0; p < a.size; ++p)
                            if (hv[fv[p]] != p) { li = false; break; }
                        if (li) CHECK(is_iso({a, b, fv}));
                    }
            }
    }
}

TEST_CASE("induction and restriction") {
    auto c2 = builtin_group("C2");
    // induce(e <= C2, point) = C2/e
    const auto& sg = c2->subgroup_as_group(0);
    auto pt = trivial_gset(sg.group, 1);
    auto ind = induce_gset(c2, 0, pt);
    CHECK(ind.size == 2);
    CHECK(iso_bruteforce(ind, regular_gset(c2)));

    auto empt = empty_gset(sg.group);
    CHECK(induce_gset(c2, 0, empt).size == 0);

    auto c4 = builtin_group("C4");
    int subc2 = -1;
    for (int i = 0; i < c4->num_subgroups(); ++i)
        if (c4->subgroup_elems[i].size() == 2) { subc2 = i; break; }
    auto res = restrict_gset(regular_gset(c4), subc2);
    auto orbs = orbit_decomposition(res);
    CHECK(orbs.size() == 2);
    for (const auto& o : orbs) CHECK(o.points.size() == 2);
}

TEST_CASE("induction matches double-coset decomposition") {
    auto s3 = builtin_group("S3");
    for (int hi = 0; hi < s3->num_subgroups(); ++hi) {
        const auto& sg = s3->subgroup_as_group(hi);
        for (int ki = 0; ki < sg.group->num_subgroups(); ++ki) {
            auto hk = coset_gset(sg.group, ki).gs;
            auto ind = induce_gset(s3, hi, hk);
            // oracle: G x_H H/K = G/K' where K' is K embedded in G
            std::vector<int> kelems;
            for (int e : sg.group->subgroup_elems[ki]) kelems.push_back(sg.embed[e]);
            std::sort(kelems.begin(), kelems.end());
            int kg = s3->subgroup_index(kelems);
            CHECK(iso_bruteforce(ind, coset_gset(s3, kg).gs));
        }
    }
}

TEST_CASE("canonical forms and hashes") {
    auto c4 = builtin_group("C4");
    auto reg = regular_gset(c4);
    auto rel = relabel(reg, {2, 0, 3, 1});
    REQUIRE(is_valid_gset(rel));
    CHECK(canonical_form(reg).hash == canonical_form(rel).hash);
    CHECK(canonical_form(reg).gs == canonical_form(rel).gs);

    auto c2 = builtin_group("C2");
    CHECK(canonical_form(regular_gset(c2)).hash != canonical_form(trivial_gset(c2, 2)).hash);
}

TEST_CASE("canonical form agrees with brute-force iso search on random relabelings") {
    auto s3 = builtin_group("S3");
    int sub2 = -1;
    for (int i = 0; i < s3->num_subgroups(); ++i)
        if (s3->subgroup_elems[i].size() == 2) { sub2 = i; break; }
    auto x = disjoint_union({coset_gset(s3, sub2).gs, regular_gset(s3)}, s3).gs;
    std::mt19937_64 rng(0);
    auto base_cf = canonical_form(x);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> perm(x.size);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto y = relabel(x, perm);
        REQUIRE(is_valid_gset(y));
        auto cf = canonical_form(y);
        CHECK(cf.hash == base_cf.hash);
        CHECK(cf.gs == base_cf.gs);
        // the canonical relabeling really is an isomorphism
        GMap m{cf.gs, y, cf.from_canonical};
        CHECK(is_valid_gmap(m));
        CHECK(is_iso(m));
    }
}

TEST_CASE("canonical form separates non-isomorphic sets (exhaustive, small)") {
    auto c4 = builtin_group("C4");
    std::vector<GSet> sets;
    for (int c = 0; c < c4->num_classes(); ++c) {
        sets.push_back(coset_gset(c4, c4->class_rep[c]).gs);
        sets.push_back(disjoint_union({coset_gset(c4, c4->class_rep[c]).gs, trivial_gset(c4, 1)},
                                      c4).gs);
    }
    for (const auto& a : sets)
        for (const auto& b : sets) {
            bool same_hash = canonical_form(a).hash == canonical_form(b).hash;
            CHECK(same_hash == iso_bruteforce(a, b));
        }
}

TEST_CASE("canonical arrows quotient exactly base-identity isomorphism") {
    auto c2 = builtin_group("C2");
    auto v = regular_gset(c2);
    auto u = regular_gset(c2);
    // both maps U -> V are isomorphic over id_V via precomposition
    auto maps = equivariant_maps(u, v);
    REQUIRE(maps.size() == 2);
    CHECK(canonical_arrow(u, maps[0], v).key == canonical_arrow(u, maps[1], v).key);
    // but over the point, 2 trivial points vs one free orbit differ
    auto pt = trivial_gset(c2, 1);
    auto t2 = trivial_gset(c2, 2);
    CHECK(canonical_arrow(u, {0, 0}, pt).key != canonical_arrow(t2, {0, 0}, pt).key);
}
