#include "orbicalc/catalog.hpp"

#include "orbicalc/numeric.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace orbicalc {

namespace {

std::vector<int> cycle_perm(int degree, const std::vector<int>& cyc) {
    std::vector<int> p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    for (size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = cyc[(i + 1) % cyc.size()];
    return p;
}

std::vector<int> cyclic_shift(int degree, int offset, int len) {
    std::vector<int> c;
    for (int i = 0; i < len; ++i) c.push_back(offset + i);
    return cycle_perm(degree, c);
}

// Quaternion units as 2*b + s with b in {1,i,j,k} and s the sign bit.
int quat_mul(int x, int y) {
    static const int basis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    int bx = x / 2, by = y / 2;
    int s = (x % 2) ^ (y % 2) ^ sign[bx][by];
    return 2 * basis[bx][by] + s;
}

std::vector<int> quat_left(int x) {
    std::vector<int> p(8);
    for (int y = 0; y < 8; ++y) p[y] = quat_mul(x, y);
    return p;
}

struct Entry {
    int order;
    int degree;
    std::vector<std::vector<int>> gens;
};

const std::map<std::string, Entry>& entries() {
    static const std::map<std::string, Entry> table = [] {
        std::map<std::string, Entry> t;
        t["C1"] = {1, 1, {}};
        for (int m = 2; m <= 24; ++m) t["C" + std::to_string(m)] = {m, m, {cyclic_shift(m, 0, m)}};
        t["C2xC2"] = {4, 4, {cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})}};
        t["C2xC4"] = {8, 6, {cycle_perm(6, {0, 1}), cyclic_shift(6, 2, 4)}};
        t["D4"] = {8, 4, {cyclic_shift(4, 0, 4), std::vector<int>{2, 1, 0, 3}}};
        t["D6"] = {12, 6, {cyclic_shift(6, 0, 6), std::vector<int>{0, 5, 4, 3, 2, 1}}};
        t["Q8"] = {8, 8, {quat_left(2), quat_left(4)}};
        t["A4"] = {12, 4, {cycle_perm(4, {0, 1, 2}), std::vector<int>{1, 0, 3, 2}}};
        t["S3"] = {6, 3, {cycle_perm(3, {0, 1}), cycle_perm(3, {0, 1, 2})}};
        t["S4"] = {24, 4, {cycle_perm(4, {0, 1}), cycle_perm(4, {0, 1, 2, 3})}};
        return t;
    }();
    return table;
}

}  // namespace

bool is_catalog_name(const std::string& name) { return entries().count(name) > 0; }

FiniteGroup catalog_group(const std::string& name) {
    auto it = entries().find(name);
    if (it == entries().end()) throw InputError("unknown catalog group '" + name + "'");
    FiniteGroup g = FiniteGroup::from_permutations(it->second.degree, it->second.gens, name);
    if (g.order() != it->second.order) throw std::logic_error("catalog entry " + name + " has wrong order");
    return g;
}

std::vector<std::string> catalog_names(int max_order) {
    std::vector<std::pair<int, std::string>> items;
    for (const auto& [name, e] : entries())
        if (e.order <= max_order) items.emplace_back(e.order, name);
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<std::string> out;
    for (auto& [o, n] : items) out.push_back(n);
    return out;
}

}  // namespace orbicalc
