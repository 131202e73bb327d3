#include "indban/group.hpp"

#include "indban/error.hpp"

#include <algorithm>
#include <map>

namespace indban {

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<std::size_t>> table,
                                    std::vector<std::string> element_names) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorKind::NotAGroup, "empty table");
    for (const auto& row : table) {
        if (row.size() != n) throw Error(ErrorKind::NotAGroup, "table is not square");
        for (auto x : row)
            if (x >= n) throw Error(ErrorKind::NotAGroup, "table entry out of range");
    }
    FiniteGroup g;
    g.name_ = std::move(name);
    g.table_ = std::move(table);
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = g.table_[e][a] == a && g.table_[a][e] == a;
        if (ok) {
            g.e_ = e;
            found = true;
        }
    }
    if (!found) throw Error(ErrorKind::NotAGroup, "no identity element");
    g.inv_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (g.table_[a][b] == g.e_ && g.table_[b][a] == g.e_) g.inv_[a] = b;
        if (g.inv_[a] == n) throw Error(ErrorKind::NotAGroup, "element " + std::to_string(a) + " has no inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]])
                    throw Error(ErrorKind::NotAGroup, "associativity fails at (" + std::to_string(a) + ", " +
                                                          std::to_string(b) + ", " + std::to_string(c) + ")");
    if (element_names.empty())
        for (std::size_t a = 0; a < n; ++a) element_names.push_back("g" + std::to_string(a));
    if (element_names.size() != n) throw Error(ErrorKind::DimensionMismatch, "element names");
    g.names_ = std::move(element_names);
    return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::NotAGroup, "cyclic group of order 0");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(std::to_string(a));
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return from_table(n == 1 ? "1" : "Z/" + std::to_string(n), std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
    // r^i s^j at index i + n*j; s r = r^{-1} s
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dihedral groups need n >= 2");
    std::size_t m = 2 * n;
    std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m; ++a) {
        std::size_t i = a % n, j = a / n;
        names.push_back((i ? "r" + std::to_string(i) : std::string(j ? "" : "e")) + (j ? "s" : ""));
        for (std::size_t b = 0; b < m; ++b) {
            std::size_t k = b % n, l = b / n;
            std::size_t ri = j ? (i + n - k) % n : (i + k) % n;
            t[a][b] = ri + n * ((j + l) % 2);
        }
    }
    return from_table("D" + std::to_string(n), std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::quaternion() {
    // elements ±1, ±i, ±j, ±k as sign*unit with unit index 0..3
    auto mulu = [](std::size_t a, std::size_t b, int& sign) -> std::size_t {
        static const int s[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        static const std::size_t u[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        sign = s[a][b];
        return u[a][b];
    };
    std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
    const char* un[4] = {"1", "i", "j", "k"};
    std::vector<std::string> names;
    for (std::size_t a = 0; a < 8; ++a) {
        names.push_back(std::string(a >= 4 ? "-" : "") + un[a % 4]);
        for (std::size_t b = 0; b < 8; ++b) {
            int sign;
            std::size_t u = mulu(a % 4, b % 4, sign);
            bool neg = (sign < 0) != ((a >= 4) != (b >= 4));
            t[a][b] = u + (neg ? 4 : 0);
        }
    }
    return from_table("Q8", std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    std::size_t na = a.order(), nb = b.order();
    std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
    std::vector<std::string> names;
    for (std::size_t x = 0; x < na * nb; ++x) {
        names.push_back("(" + a.names_[x / nb] + "," + b.names_[x % nb] + ")");
        for (std::size_t y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
    return from_table(a.name() + "x" + b.name(), std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::from_permutations(std::string name, const std::vector<std::vector<std::size_t>>& generators) {
    if (generators.empty()) return trivial();
    std::size_t m = generators[0].size();
    std::vector<std::size_t> id(m);
    for (std::size_t i = 0; i < m; ++i) id[i] = i;
    for (const auto& g : generators) {
        auto s = g;
        std::sort(s.begin(), s.end());
        if (s != id) throw Error(ErrorKind::NotAGroup, "generator is not a permutation");
    }
    auto compose = [](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
        std::vector<std::size_t> r(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
        return r;
    };
    std::vector<std::vector<std::size_t>> elems{id};
    std::map<std::vector<std::size_t>, std::size_t> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : generators) {
            auto p = compose(g, elems[i]);
            if (!index.count(p)) {
                index[p] = elems.size();
                elems.push_back(p);
                if (elems.size() > 40320) throw Error(ErrorKind::CapExceeded, "permutation group too large");
            }
        }
    std::size_t n = elems.size();
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        std::string s = "[";
        for (std::size_t i = 0; i < m; ++i) s += (i ? " " : "") + std::to_string(elems[a][i]);
        names.push_back(s + "]");
        for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
    }
    return from_table(std::move(name), std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::symmetric3() { return from_permutations("S3", {{1, 0, 2}, {1, 2, 0}}); }

bool FiniteGroup::abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = 0; b < order(); ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<FiniteGroup> groups_up_to_order_8() {
    auto z = [](std::size_t n) { return FiniteGroup::cyclic(n); };
    return {z(1),
            z(2),
            z(3),
            z(4),
            FiniteGroup::direct_product(z(2), z(2)),
            z(5),
            z(6),
            FiniteGroup::symmetric3(),
            z(7),
            z(8),
            FiniteGroup::direct_product(z(4), z(2)),
            FiniteGroup::direct_product(FiniteGroup::direct_product(z(2), z(2)), z(2)),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion()};
}

} // namespace indban
