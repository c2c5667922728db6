#pragma once

// Finite groups given by multiplication tables, together with the data the
// rest of the library leans on constantly: the full subgroup lattice,
// conjugacy classes of subgroups, normalizers/Weyl groups, and exhaustive
// homomorphism enumeration.  Everything is desk-scale (|G| <= 24), so we
// favour exhaustive algorithms with deterministic output order over anything
// clever.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitkit {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A subgroup is just its sorted element list inside a parent group.  Conjugate
// subgroups are distinct Subgroup values sharing a class id.
struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> elements;  // sorted element indices
};

struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<int> image;  // image[h] for every element h of source

    bool operator==(const GroupHom& o) const { return image == o.image; }
    bool operator<(const GroupHom& o) const { return image < o.image; }
};

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
public:
    std::string name;
    int order = 0;
    int identity = 0;
    std::vector<std::vector<int>> mult;  // mult[a][b] = a*b
    std::vector<int> inv;

    // Subgroup lattice, computed once at construction.
    // subgroup_elems is sorted by (size, element list); index 0 is {identity}
    // and the last entry is the whole group.
    std::vector<std::vector<int>> subgroup_elems;
    std::vector<int> subgroup_class;        // subgroup index -> class id
    std::vector<int> class_rep;             // class id -> subgroup index (lex-least)
    std::vector<std::vector<bool>> sub_leq; // sub_leq[a][b]: subgroup a contained in b

    int mul(int a, int b) const { return mult[a][b]; }
    int inverse(int a) const { return inv[a]; }
    int conjugate(int g, int x) const {  // g x g^-1
        return mult[mult[g][x]][inv[g]];
    }

    int num_subgroups() const { return (int)subgroup_elems.size(); }
    int num_classes() const { return (int)class_rep.size(); }

    int subgroup_index(const std::vector<int>& sorted_elems) const {
        auto it = sub_lookup_.find(sorted_elems);
        if (it == sub_lookup_.end()) throw std::invalid_argument("not a subgroup: lookup failed");
        return it->second;
    }

    int conjugate_subgroup(int sub, int g) const {
        std::vector<int> c;
        c.reserve(subgroup_elems[sub].size());
        for (int x : subgroup_elems[sub]) c.push_back(conjugate(g, x));
        std::sort(c.begin(), c.end());
        return subgroup_index(c);
    }

    bool subgroup_contains(int sub, int elem) const {
        const auto& v = subgroup_elems[sub];
        return std::binary_search(v.begin(), v.end(), elem);
    }

    // Intersection of two subgroups, as a subgroup index.
    int intersect_subgroups(int a, int b) const {
        std::vector<int> out;
        std::set_intersection(subgroup_elems[a].begin(), subgroup_elems[a].end(),
                              subgroup_elems[b].begin(), subgroup_elems[b].end(),
                              std::back_inserter(out));
        return subgroup_index(out);
    }

    std::vector<int> normalizer(int sub) const {
        std::vector<int> n;
        for (int g = 0; g < order; ++g)
            if (conjugate_subgroup(sub, g) == sub) n.push_back(g);
        return n;
    }

    int element_order(int a) const {
        int x = a, n = 1;
        while (x != identity) { x = mult[x][a]; ++n; }
        return n;
    }

    // The subgroup itself as a standalone FiniteGroup, with the embedding
    // back into this group.  Memoized so H-set categories have stable group
    // identity.
    struct SubgroupGroup {
        GroupPtr group;
        std::vector<int> embed;  // element of subgroup group -> element of parent
    };
    const SubgroupGroup& subgroup_as_group(int sub) const;

    static GroupPtr make(std::string name, int order, int identity,
                         std::vector<std::vector<int>> mult);

private:
    std::map<std::vector<int>, int> sub_lookup_;
    mutable std::map<int, SubgroupGroup> sub_group_cache_;

    void validate() const;
    void compute_lattice();
};

namespace detail {

inline std::vector<int> closure(const FiniteGroup& g, std::vector<int> seed) {
    std::set<int> have(seed.begin(), seed.end());
    have.insert(g.identity);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(have.begin(), have.end());
        for (int a : cur)
            for (int b : cur)
                if (have.insert(g.mul(a, b)).second) grew = true;
    }
    return {have.begin(), have.end()};
}

}  // namespace detail

inline void FiniteGroup::validate() const {
    if (order <= 0) throw std::invalid_argument("group order must be positive");
    if ((int)mult.size() != order) throw std::invalid_argument("mult table has wrong number of rows");
    for (const auto& row : mult) {
        if ((int)row.size() != order) throw std::invalid_argument("mult table row has wrong length");
        for (int v : row)
            if (v < 0 || v >= order) throw std::invalid_argument("mult table entry out of range");
    }
    if (identity < 0 || identity >= order) throw std::invalid_argument("identity out of range");
    for (int a = 0; a < order; ++a)
        if (mult[identity][a] != a || mult[a][identity] != a)
            throw std::invalid_argument("identity is not two-sided");
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
                    throw std::invalid_argument("mult table is not associative");
    for (int a = 0; a < order; ++a) {
        bool found = false;
        for (int b = 0; b < order; ++b)
            if (mult[a][b] == identity && mult[b][a] == identity) found = true;
        if (!found) throw std::invalid_argument("element without two-sided inverse");
    }
}

inline void FiniteGroup::compute_lattice() {
    inv.assign(order, -1);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (mult[a][b] == identity && mult[b][a] == identity) inv[a] = b;

    // All subgroups by closure saturation: repeatedly adjoin one generator.
    std::set<std::vector<int>> subs;
    subs.insert({identity});
    std::vector<std::vector<int>> frontier = {{identity}};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier) {
            for (int g = 0; g < order; ++g) {
                if (std::binary_search(s.begin(), s.end(), g)) continue;
                auto bigger = s;
                bigger.push_back(g);
                auto cl = detail::closure(*this, bigger);
                if (subs.insert(cl).second) next.push_back(cl);
            }
        }
        frontier = std::move(next);
    }
    subgroup_elems.assign(subs.begin(), subs.end());
    std::sort(subgroup_elems.begin(), subgroup_elems.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    for (int i = 0; i < (int)subgroup_elems.size(); ++i)
        sub_lookup_[subgroup_elems[i]] = i;

    int n = num_subgroups();
    subgroup_class.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (subgroup_class[i] >= 0) continue;
        int cls = (int)class_rep.size();
        class_rep.push_back(i);  // first in sort order = lex-least of its size
        // conjugation orbit
        std::vector<int> stack = {i};
        subgroup_class[i] = cls;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int g = 0; g < order; ++g) {
                int c = conjugate_subgroup(cur, g);
                if (subgroup_class[c] < 0) {
                    subgroup_class[c] = cls;
                    stack.push_back(c);
                }
            }
        }
    }

    sub_leq.assign(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            sub_leq[a][b] = std::includes(subgroup_elems[b].begin(), subgroup_elems[b].end(),
                                          subgroup_elems[a].begin(), subgroup_elems[a].end());
}

inline GroupPtr FiniteGroup::make(std::string name, int order, int identity,
                                  std::vector<std::vector<int>> mult) {
    auto g = std::make_shared<FiniteGroup>();
    g->name = std::move(name);
    g->order = order;
    g->identity = identity;
    g->mult = std::move(mult);
    g->validate();
    g->compute_lattice();
    return g;
}

inline const FiniteGroup::SubgroupGroup& FiniteGroup::subgroup_as_group(int sub) const {
    auto it = sub_group_cache_.find(sub);
    if (it != sub_group_cache_.end()) return it->second;
    const auto& elems = subgroup_elems[sub];
    int k = (int)elems.size();
    std::map<int, int> pos;
    for (int i = 0; i < k; ++i) pos[elems[i]] = i;
    std::vector<std::vector<int>> table(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            table[i][j] = pos.at(mult[elems[i]][elems[j]]);
    SubgroupGroup sg;
    sg.group = make(name + "_sub" + std::to_string(sub), k, pos.at(identity), std::move(table));
    sg.embed = elems;
    return sub_group_cache_.emplace(sub, std::move(sg)).first->second;
}

// ---- derived constructions ------------------------------------------------

// N_G(H)/H as a multiplication-table group on the cosets of H in its
// normalizer; cosets are ordered by least element.
inline GroupPtr weyl_group(const GroupPtr& g, int sub) {
    auto n = g->normalizer(sub);
    const auto& h = g->subgroup_elems[sub];
    std::vector<std::vector<int>> cosets;
    std::vector<int> coset_of(g->order, -1);
    for (int x : n) {
        if (coset_of[x] >= 0) continue;
        std::vector<int> c;
        for (int hh : h) c.push_back(g->mul(x, hh));
        std::sort(c.begin(), c.end());
        for (int y : c) coset_of[y] = (int)cosets.size();
        cosets.push_back(c);
    }
    int k = (int)cosets.size();
    std::vector<std::vector<int>> table(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            table[i][j] = coset_of[g->mul(cosets[i][0], cosets[j][0])];
    return FiniteGroup::make("W(" + g->name + ")", k, coset_of[g->identity], std::move(table));
}

inline GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
    int n = a->order * b->order;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    auto idx = [&](int x, int y) { return x * b->order + y; };
    for (int x1 = 0; x1 < a->order; ++x1)
        for (int y1 = 0; y1 < b->order; ++y1)
            for (int x2 = 0; x2 < a->order; ++x2)
                for (int y2 = 0; y2 < b->order; ++y2)
                    table[idx(x1, y1)][idx(x2, y2)] = idx(a->mul(x1, x2), b->mul(y1, y2));
    return FiniteGroup::make(a->name + "x" + b->name, n,
                             idx(a->identity, b->identity), std::move(table));
}

// Symmetric group on n letters; elements are permutations in lexicographic
// order, multiplication is composition (p*q)(i) = p(q(i)).
inline GroupPtr symmetric_group(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> rank;
    for (int i = 0; i < (int)perms.size(); ++i) rank[perms[i]] = i;
    int k = (int)perms.size();
    std::vector<std::vector<int>> table(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::vector<int> c(n);
            for (int t = 0; t < n; ++t) c[t] = perms[i][perms[j][t]];
            table[i][j] = rank.at(c);
        }
    return FiniteGroup::make("S" + std::to_string(n), k, 0, std::move(table));
}

inline const std::vector<int>& sym_perm(int n, int elem) {
    // Re-derive the permutation behind an element of symmetric_group(n).
    static std::map<int, std::vector<std::vector<int>>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<std::vector<int>> perms;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        it = cache.emplace(n, std::move(perms)).first;
    }
    return it->second[elem];
}

inline bool is_hom(const GroupHom& f) {
    if (!f.source || !f.target) return false;
    if ((int)f.image.size() != f.source->order) return false;
    for (int v : f.image)
        if (v < 0 || v >= f.target->order) return false;
    if (f.image[f.source->identity] != f.target->identity) return false;
    for (int a = 0; a < f.source->order; ++a)
        for (int b = 0; b < f.source->order; ++b)
            if (f.image[f.source->mul(a, b)] != f.target->mul(f.image[a], f.image[b]))
                return false;
    return true;
}

// A small generating set plus, for every element, some word reaching it.
struct GeneratorData {
    std::vector<int> generators;
    std::vector<std::vector<int>> words;  // words[x] = generator indices whose product is x
};

inline GeneratorData generating_set(const FiniteGroup& g) {
    GeneratorData out;
    std::vector<int> gen;
    while ((int)detail::closure(g, gen).size() < g.order) {
        auto cl = detail::closure(g, gen);
        std::set<int> have(cl.begin(), cl.end());
        for (int x = 0; x < g.order; ++x)
            if (!have.count(x)) { gen.push_back(x); break; }
    }
    out.generators = gen;
    // BFS to express each element as a word in the generators.
    out.words.assign(g.order, {});
    std::vector<bool> seen(g.order, false);
    seen[g.identity] = true;
    std::vector<int> queue = {g.identity};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (int gi = 0; gi < (int)gen.size(); ++gi) {
            int y = g.mul(x, gen[gi]);
            if (!seen[y]) {
                seen[y] = true;
                out.words[y] = out.words[x];
                out.words[y].push_back(gi);
                queue.push_back(y);
            }
        }
    }
    return out;
}

// All homomorphisms source -> target; with up_to_conjugacy, one representative
// per target-conjugacy orbit (the lexicographically least image vector).
inline std::vector<GroupHom> enumerate_homs(const GroupPtr& source, const GroupPtr& target,
                                            bool up_to_conjugacy) {
    auto gd = generating_set(*source);
    int ng = (int)gd.generators.size();
    std::vector<std::vector<int>> candidates(ng);
    for (int i = 0; i < ng; ++i) {
        int o = source->element_order(gd.generators[i]);
        for (int k = 0; k < target->order; ++k)
            if (o % target->element_order(k) == 0) candidates[i].push_back(k);
    }
    std::set<std::vector<int>> images;
    std::vector<int> assign(ng, 0);
    std::vector<int> choice(ng, 0);
    // Odometer over candidate generator images; verify each full assignment.
    bool done = ng == 0;
    auto emit = [&](const std::vector<int>& genimg) {
        GroupHom f{source, target, std::vector<int>(source->order)};
        for (int x = 0; x < source->order; ++x) {
            int v = target->identity;
            for (int gi : gd.words[x]) v = target->mul(v, genimg[gi]);
            f.image[x] = v;
        }
        if (is_hom(f)) images.insert(f.image);
    };
    if (ng == 0) emit({});
    while (!done) {
        std::vector<int> genimg(ng);
        for (int i = 0; i < ng; ++i) genimg[i] = candidates[i][choice[i]];
        emit(genimg);
        int i = 0;
        while (i < ng && ++choice[i] == (int)candidates[i].size()) choice[i++] = 0;
        if (i == ng) done = true;
    }
    std::vector<GroupHom> out;
    if (!up_to_conjugacy) {
        for (const auto& img : images) out.push_back({source, target, img});
        return out;
    }
    std::set<std::vector<int>> reps;
    for (const auto& img : images) {
        std::vector<int> best = img;
        for (int k = 0; k < target->order; ++k) {
            std::vector<int> conj(img.size());
            for (size_t x = 0; x < img.size(); ++x) conj[x] = target->conjugate(k, img[x]);
            if (conj < best) best = conj;
        }
        reps.insert(best);
    }
    for (const auto& img : reps) out.push_back({source, target, img});
    return out;
}

// Flat description of the subgroup lattice, for reports and golden files.
struct LatticeSummary {
    int num_subgroups = 0;
    int num_classes = 0;
    std::vector<std::pair<int, int>> containments;  // (smaller, larger) pairs, a != b
};

inline LatticeSummary subgroup_lattice(const GroupPtr& g) {
    LatticeSummary s;
    s.num_subgroups = g->num_subgroups();
    s.num_classes = g->num_classes();
    for (int a = 0; a < s.num_subgroups; ++a)
        for (int b = 0; b < s.num_subgroups; ++b)
            if (a != b && g->sub_leq[a][b]) s.containments.push_back({a, b});
    return s;
}

}  // namespace orbitkit
