#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <orbitkit/fixtures.hpp>
#include <orbitkit/gset.hpp>

using namespace orbitkit;

// Independent oracle: test every subset for subgroup closure.
static std::vector<std::vector<int>> all_subgroups_bruteforce(const FiniteGroup& g) {
    std::vector<std::vector<int>> out;
    for (uint64_t mask = 1; mask < (uint64_t(1) << g.order); ++mask) {
        if (!(mask >> g.identity & 1)) continue;
        std::vector<int> elems;
        for (int i = 0; i < g.order; ++i)
            if (mask >> i & 1) elems.push_back(i);
        bool closed = true;
        for (int a : elems) {
            if (!(mask >> g.inverse(a) & 1)) { closed = false; break; }
            for (int b : elems)
                if (!(mask >> g.mul(a, b) & 1)) { closed = false; break; }
            if (!closed) break;
        }
        if (closed) out.push_back(elems);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

TEST_CASE("fixture groups are valid and have the advertised orders") {
    std::vector<int> orders = {1, 2, 3, 4, 4, 6, 6, 8};
    auto names = builtin_group_names();
    for (size_t i = 0; i < names.size(); ++i) {
        auto g = builtin_group(names[i]);
        CHECK(g->order == orders[i]);
        CHECK(g->mul(g->identity, 0) == 0);
    }
}

TEST_CASE("subgroup lattice matches the exhaustive subset oracle") {
    for (const auto& name : builtin_group_names()) {
        auto g = builtin_group(name);
        CAPTURE(name);
        CHECK(g->subgroup_elems == all_subgroups_bruteforce(*g));
    }
}

TEST_CASE("subgroup and class counts") {
    CHECK(builtin_group("trivial")->num_subgroups() == 1);
    CHECK(builtin_group("C2")->num_subgroups() == 2);
    CHECK(builtin_group("C2")->num_classes() == 2);
    CHECK(builtin_group("S3")->num_subgroups() == 6);
    CHECK(builtin_group("S3")->num_classes() == 4);
    CHECK(builtin_group("C4")->num_classes() == 3);
    CHECK(builtin_group("C2xC2")->num_subgroups() == 5);
    CHECK(builtin_group("Q8")->num_subgroups() == 6);
    CHECK(builtin_group("Q8")->num_classes() == 6);  // every subgroup of Q8 is normal
}

TEST_CASE("lattice containment is a partial order and divides the group order") {
    for (const auto& name : builtin_group_names()) {
        auto g = builtin_group(name);
        auto lat = subgroup_lattice(g);
        for (int i = 0; i < lat.num_subgroups; ++i) {
            CHECK(g->order % (int)g->subgroup_elems[i].size() == 0);
            CHECK(g->sub_leq[i][i]);
        }
        for (int a = 0; a < lat.num_subgroups; ++a)
            for (int b = 0; b < lat.num_subgroups; ++b)
                for (int c = 0; c < lat.num_subgroups; ++c)
                    if (g->sub_leq[a][b] && g->sub_leq[b][c]) CHECK(g->sub_leq[a][c]);
    }
}

TEST_CASE("weyl groups") {
    auto c2 = builtin_group("C2");
    CHECK(weyl_group(c2, 0)->order == 2);                      // (C2, e)
    CHECK(weyl_group(c2, c2->num_subgroups() - 1)->order == 1);  // (G, G)
    auto s3 = builtin_group("S3");
    // find a subgroup of order 2 (a transposition subgroup): normalizer is itself
    for (int i = 0; i < s3->num_subgroups(); ++i)
        if (s3->subgroup_elems[i].size() == 2) {
            CHECK(weyl_group(s3, i)->order == 1);
            break;
        }
}

TEST_CASE("weyl group order equals the G-map count G/H -> G/H") {
    for (const auto& name : builtin_group_names()) {
        auto g = builtin_group(name);
        for (int c = 0; c < g->num_classes(); ++c) {
            int sub = g->class_rep[c];
            const auto& orb = coset_gset(g, sub).gs;
            auto maps = equivariant_maps(orb, orb);
            CHECK((int)maps.size() == weyl_group(g, sub)->order);
        }
    }
}

TEST_CASE("homomorphism enumeration") {
    auto triv = builtin_group("trivial");
    auto c2 = builtin_group("C2");
    auto s2 = symmetric_group(2);
    auto s3 = builtin_group("S3");
    CHECK(enumerate_homs(triv, s3, false).size() == 1);
    CHECK(enumerate_homs(c2, s2, true).size() == 2);   // trivial and iso
    CHECK(enumerate_homs(c2, GroupPtr(symmetric_group(3)), true).size() == 2);
    // all homs C2 -> S3: trivial plus one per transposition
    CHECK(enumerate_homs(c2, GroupPtr(symmetric_group(3)), false).size() == 4);
}

TEST_CASE("homs are stable under inner automorphisms of the target") {
    auto s3 = builtin_group("S3");
    auto c2 = builtin_group("C2");
    auto homs = enumerate_homs(c2, s3, false);
    std::set<std::vector<int>> all;
    for (const auto& f : homs) all.insert(f.image);
    for (const auto& f : homs)
        for (int k = 0; k < s3->order; ++k) {
            std::vector<int> conj(f.image.size());
            for (size_t x = 0; x < f.image.size(); ++x) conj[x] = s3->conjugate(k, f.image[x]);
            CHECK(all.count(conj) == 1);
        }
}

TEST_CASE("hom enumeration results are homomorphisms") {
    auto q8 = builtin_group("Q8");
    auto c4 = builtin_group("C4");
    for (const auto& f : enumerate_homs(q8, c4, false)) CHECK(is_hom(f));
}

TEST_CASE("derived group constructions") {
    CHECK(symmetric_group(3)->order == 6);
    CHECK(symmetric_group(4)->order == 24);
    auto p = direct_product(builtin_group("C2"), symmetric_group(3));
    CHECK(p->order == 12);
    CHECK(p->num_subgroups() > 0);
}

TEST_CASE("subgroup_as_group round trip") {
    auto s3 = builtin_group("S3");
    for (int i = 0; i < s3->num_subgroups(); ++i) {
        const auto& sg = s3->subgroup_as_group(i);
        CHECK(sg.group->order == (int)s3->subgroup_elems[i].size());
        for (int a = 0; a < sg.group->order; ++a)
            for (int b = 0; b < sg.group->order; ++b)
                CHECK(sg.embed[sg.group->mul(a, b)] == s3->mul(sg.embed[a], sg.embed[b]));
    }
}

TEST_CASE("invalid tables are rejected") {
    CHECK_THROWS(FiniteGroup::make("bad", 2, 0, {{0, 1}, {1, 1}}));
    CHECK_THROWS(FiniteGroup::make("bad", 2, 1, {{0, 1}, {1, 0}}));
}
