#pragma once

#include "rlkit/errors.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rlkit {

/// A finite poset. Input is given as order pairs (typically cover edges);
/// the full reflexive-transitive relation is materialized once and queried
/// in O(1). Node names are strings; internal indices follow input order.
struct Poset {
    std::vector<std::string> names;
    int n = 0;
    std::vector<std::uint8_t> rel;  // n*n, rel[i*n+j] = 1 iff i <= j

    bool leq(int i, int j) const { return rel[i * n + j] != 0; }
    bool lt(int i, int j) const { return i != j && leq(i, j); }
    int index_of(const std::string& name) const;

    /// Cover edges of the stored relation (the Hasse diagram).
    std::vector<std::pair<int, int>> cover_edges() const;

    /// Order dual; an involution.
    Poset dual() const;

    /// Topological order, stable: repeatedly takes the minimal node with the
    /// smallest input index. Identity whenever input order is already
    /// topological.
    std::vector<int> linear_extension() const;
};

/// Builds a poset from order pairs between named nodes. Rejects cycles with
/// a report naming the offending nodes, and unknown or duplicate names.
Poset make_poset(const std::vector<std::string>& nodes,
                 const std::vector<std::pair<std::string, std::string>>& edges);

/// Builds a poset directly from a reflexive-transitive-antisymmetric
/// relation matrix; the axioms are verified.
Poset make_poset_from_leq(std::vector<std::string> names, std::vector<std::uint8_t> rel);

struct PosetPredicateResult {
    bool holds = true;
    std::vector<int> witness;  // offending nodes, if any
};

PosetPredicateResult is_chain(const Poset& p);
/// Every principal up-set is totally ordered.
PosetPredicateResult is_root_system(const Poset& p);
PosetPredicateResult is_antichain(const Poset& p, const std::vector<int>& s);
PosetPredicateResult is_upset(const Poset& p, const std::vector<int>& s);
PosetPredicateResult is_downset(const Poset& p, const std::vector<int>& s);

/// All posets with 1..max_nodes nodes up to isomorphism, each given by its
/// canonical representative (minimal strict-relation bitmask over all node
/// permutations), ordered by node count then by that bitmask. Nodes are
/// named x0, x1, ... and input order is a linear extension.
std::vector<Poset> enumerate_posets(int max_nodes);

}  // namespace rlkit
