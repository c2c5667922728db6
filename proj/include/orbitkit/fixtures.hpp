#pragma once

// Built-in fixture groups.  The same eight groups are also shipped as JSON
// fixtures; a test asserts the two agree.

#include <functional>

#include "group.hpp"

namespace orbitkit {

inline const std::vector<std::string>& builtin_group_names() {
    static const std::vector<std::string> names = {
        "trivial", "C2", "C3", "C4", "C2xC2", "C6", "S3", "Q8"};
    return names;
}

namespace detail {

inline GroupPtr cyclic_group(const std::string& name, int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup::make(name, n, 0, std::move(t));
}

inline GroupPtr klein_four() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
    return FiniteGroup::make("C2xC2", 4, 0, std::move(t));
}

inline GroupPtr quaternion_group() {
    // Elements 2u+s with u in {1,i,j,k} and s the sign bit.
    // Basis products: i*j=k, j*k=i, k*i=j, squares of i,j,k are -1.
    auto mul_basis = [](int a, int b, int& sign) -> int {
        if (a == 0) return b;
        if (b == 0) return a;
        if (a == b) { sign ^= 1; return 0; }
        // a,b distinct in {1,2,3}: cyclic (1,2,3) gives +, reverse gives -
        int c = 6 - a - b;
        if ((a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1)) return c;
        sign ^= 1;
        return c;
    };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int sign = (x & 1) ^ (y & 1);
            int u = mul_basis(x >> 1, y >> 1, sign);
            t[x][y] = 2 * u + sign;
        }
    return FiniteGroup::make("Q8", 8, 0, std::move(t));
}

}  // namespace detail

inline GroupPtr builtin_group(const std::string& name) {
    static std::map<std::string, GroupPtr> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    GroupPtr g;
    if (name == "trivial") g = detail::cyclic_group("trivial", 1);
    else if (name == "C2") g = detail::cyclic_group("C2", 2);
    else if (name == "C3") g = detail::cyclic_group("C3", 3);
    else if (name == "C4") g = detail::cyclic_group("C4", 4);
    else if (name == "C2xC2") g = detail::klein_four();
    else if (name == "C6") g = detail::cyclic_group("C6", 6);
    else if (name == "S3") {
        auto s3 = symmetric_group(3);
        g = FiniteGroup::make("S3", s3->order, s3->identity, s3->mult);
    } else if (name == "Q8") g = detail::quaternion_group();
    else throw std::invalid_argument("unknown fixture group: " + name);
    cache[name] = g;
    return g;
}

}  // namespace orbitkit
