#pragma once

#include "rlkit/algebra.hpp"
#include "rlkit/poset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rlkit {

/// Subsets of a carrier, stored as bitsets for fast closure loops.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    int count() const;
    bool subset_of(const Bitset& other) const;
    std::vector<int> members() const;

    bool operator==(const Bitset&) const = default;
    auto operator<=>(const Bitset&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

Bitset bitset_of(int n, const std::vector<int>& members);

struct FilterCheck {
    bool ok = true;
    std::string violation;          // "empty", "not an up-set", "not product-closed"
    std::vector<Element> witness;
};

/// A deductive filter is a nonempty up-set closed under the product.
FilterCheck is_deductive_filter(const Algebra& a, const Bitset& s);

/// Least deductive filter containing the seed: close under products, close
/// upward, iterate to a fixpoint. The empty seed yields {top}.
Bitset generated_filter(const Algebra& a, const Bitset& seed);

/// All deductive filters, in an inclusion-compatible order (by size, then by
/// member list).
std::vector<Bitset> enumerate_filters(const Algebra& a, const Caps& caps = {});

struct QuotientResult {
    Algebra algebra;
    std::vector<Element> projection;            // carrier -> class index
    std::vector<std::vector<Element>> classes;  // ordered by least member
};

/// Quotient by the congruence {(x, y) : (x -> y) & (y -> x) in F}.
/// Well-definedness of the class operations is verified; a failure would
/// mean F is not a filter or the algebra is invalid.
QuotientResult quotient(const Algebra& a, const Bitset& filter);

struct ValuesResult {
    std::vector<Bitset> values;  // filters maximal among those omitting some element
    Poset order;                 // (Delta, inclusion), nodes named v0, v1, ...
};

/// The set of values Delta(A) with its inclusion order.
ValuesResult values(const Algebra& a, const Caps& caps = {});

struct SiReport {
    bool is_si = false;
    std::optional<Bitset> min_nontrivial_filter;
    std::optional<Element> coatom;  // greatest element strictly below top
};

/// Subdirect irreducibility, decided by the least-nontrivial-filter
/// criterion and cross-checked against the unique-coatom criterion for
/// finite algebras; the two must agree.
SiReport si_analysis(const Algebra& a);

bool is_prime_filter(const Algebra& a, const Bitset& f);

}  // namespace rlkit
