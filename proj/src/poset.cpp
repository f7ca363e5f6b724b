#include "rlkit/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace rlkit {

int Poset::index_of(const std::string& name) const {
    for (int i = 0; i < n; ++i)
        if (names[i] == name) return i;
    return -1;
}

std::vector<std::pair<int, int>> Poset::cover_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!lt(i, j)) continue;
            bool covered = true;
            for (int k = 0; k < n; ++k)
                if (lt(i, k) && lt(k, j)) {
                    covered = false;
                    break;
                }
            if (covered) out.emplace_back(i, j);
        }
    return out;
}

Poset Poset::dual() const {
    Poset d;
    d.names = names;
    d.n = n;
    d.rel.resize(rel.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d.rel[i * n + j] = rel[j * n + i];
    return d;
}

std::vector<int> Poset::linear_extension() const {
    std::vector<int> out;
    std::vector<bool> taken(n, false);
    for (int step = 0; step < n; ++step) {
        for (int i = 0; i < n; ++i) {
            if (taken[i]) continue;
            bool minimal = true;
            for (int j = 0; j < n; ++j)
                if (!taken[j] && lt(j, i)) {
                    minimal = false;
                    break;
                }
            if (minimal) {
                out.push_back(i);
                taken[i] = true;
                break;
            }
        }
    }
    return out;
}

Poset make_poset_from_leq(std::vector<std::string> names, std::vector<std::uint8_t> rel) {
    Poset p;
    p.n = static_cast<int>(names.size());
    p.names = std::move(names);
    if (rel.size() != static_cast<std::size_t>(p.n) * p.n)
        throw format_error("relation matrix is not n x n");
    p.rel = std::move(rel);
    for (int i = 0; i < p.n; ++i)
        if (!p.leq(i, i)) throw format_error("relation is not reflexive");
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            if (i != j && p.leq(i, j) && p.leq(j, i))
                throw format_error("relation is not antisymmetric: " + p.names[i] + " and " +
                                   p.names[j]);
            if (p.leq(i, j))
                for (int k = 0; k < p.n; ++k)
                    if (p.leq(j, k) && !p.leq(i, k))
                        throw format_error("relation is not transitive");
        }
    return p;
}

Poset make_poset(const std::vector<std::string>& nodes,
                 const std::vector<std::pair<std::string, std::string>>& edges) {
    const int n = static_cast<int>(nodes.size());
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) {
        if (index.count(nodes[i])) throw format_error("duplicate node name: " + nodes[i]);
        index[nodes[i]] = i;
    }
    std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) rel[i * n + i] = 1;
    for (const auto& [a, b] : edges) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end()) throw format_error("unknown node in edge: " + a);
        if (ib == index.end()) throw format_error("unknown node in edge: " + b);
        rel[ia->second * n + ib->second] = 1;
    }
    // Warshall closure
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (rel[i * n + k])
                for (int j = 0; j < n; ++j)
                    if (rel[k * n + j]) rel[i * n + j] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rel[i * n + j] && rel[j * n + i])
                throw format_error("cycle detected through nodes " + nodes[i] + " and " + nodes[j]);
    Poset p;
    p.names = nodes;
    p.n = n;
    p.rel = std::move(rel);
    return p;
}

PosetPredicateResult is_chain(const Poset& p) {
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j)
            if (!p.leq(i, j) && !p.leq(j, i)) return {false, {i, j}};
    return {};
}

PosetPredicateResult is_root_system(const Poset& p) {
    for (int x = 0; x < p.n; ++x)
        for (int i = 0; i < p.n; ++i)
            for (int j = i + 1; j < p.n; ++j)
                if (p.leq(x, i) && p.leq(x, j) && !p.leq(i, j) && !p.leq(j, i))
                    return {false, {x, i, j}};
    return {};
}

PosetPredicateResult is_antichain(const Poset& p, const std::vector<int>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (p.leq(s[i], s[j]) || p.leq(s[j], s[i])) return {false, {s[i], s[j]}};
    return {};
}

PosetPredicateResult is_upset(const Poset& p, const std::vector<int>& s) {
    std::vector<bool> in(p.n, false);
    for (int e : s) in[e] = true;
    for (int x : s)
        for (int y = 0; y < p.n; ++y)
            if (p.leq(x, y) && !in[y]) return {false, {x, y}};
    return {};
}

PosetPredicateResult is_downset(const Poset& p, const std::vector<int>& s) {
    std::vector<bool> in(p.n, false);
    for (int e : s) in[e] = true;
    for (int x : s)
        for (int y = 0; y < p.n; ++y)
            if (p.leq(y, x) && !in[y]) return {false, {y, x}};
    return {};
}

// ---------------------------------------------------------------------------
// Enumeration up to isomorphism.

namespace {

// strict relation as a bitmask over full-matrix positions i*n+j
using Mask = std::uint32_t;

bool transitive(Mask m, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m & (Mask{1} << (i * n + j)))
                for (int k = 0; k < n; ++k)
                    if ((m & (Mask{1} << (j * n + k))) && !(m & (Mask{1} << (i * n + k))))
                        return false;
    return true;
}

Mask relabel(Mask m, int n, const std::vector<int>& perm) {
    Mask out = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m & (Mask{1} << (i * n + j))) out |= Mask{1} << (perm[i] * n + perm[j]);
    return out;
}

Mask canonical(Mask m, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Mask best = m;
    do {
        best = std::min(best, relabel(m, n, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<Poset> enumerate_posets(int max_nodes) {
    if (max_nodes < 1 || max_nodes > 5)
        throw precondition_error("poset enumeration supports 1..5 nodes");
    std::vector<Poset> out;
    for (int n = 1; n <= max_nodes; ++n) {
        // candidate strict orders use only pairs (i, j) with i < j, so input
        // order is a linear extension by construction
        std::vector<int> pair_bits;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pair_bits.push_back(i * n + j);
        std::set<Mask> seen;
        std::vector<Mask> reps;
        for (Mask choice = 0; choice < (Mask{1} << pair_bits.size()); ++choice) {
            Mask m = 0;
            for (std::size_t b = 0; b < pair_bits.size(); ++b)
                if (choice & (Mask{1} << b)) m |= Mask{1} << pair_bits[b];
            if (!transitive(m, n)) continue;
            const Mask canon = canonical(m, n);
            if (seen.insert(canon).second) reps.push_back(canon);
        }
        std::sort(reps.begin(), reps.end());
        for (Mask canon : reps) {
            std::vector<std::string> names;
            for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
            auto build = [&](Mask m) {
                std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) * n, 0);
                for (int i = 0; i < n; ++i) rel[i * n + i] = 1;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        if (m & (Mask{1} << (i * n + j))) rel[i * n + j] = 1;
                return make_poset_from_leq(names, std::move(rel));
            };
            // relabel along the linear extension so input order is topological
            const Poset raw = build(canon);
            const std::vector<int> le = raw.linear_extension();
            std::vector<int> perm(n);
            for (int k = 0; k < n; ++k) perm[le[k]] = k;
            out.push_back(build(relabel(canon, n, perm)));
        }
    }
    return out;
}

}  // namespace rlkit
