#include "rlkit/filters.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace rlkit {

int Bitset::count() const {
    int c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool Bitset::subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~other.w_[i]) return false;
    return true;
}

std::vector<int> Bitset::members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

Bitset bitset_of(int n, const std::vector<int>& members) {
    Bitset b(n);
    for (int e : members) {
        if (e < 0 || e >= n) throw precondition_error("filter element out of range");
        b.set(e);
    }
    return b;
}

FilterCheck is_deductive_filter(const Algebra& a, const Bitset& s) {
    if (s.size() != a.n) throw precondition_error("filter bitset has wrong carrier size");
    if (s.count() == 0) return {false, "empty", {}};
    for (Element x = 0; x < a.n; ++x) {
        if (!s.test(x)) continue;
        for (Element y = 0; y < a.n; ++y)
            if (a.leq(x, y) && !s.test(y)) return {false, "not an up-set", {x, y}};
    }
    for (Element x = 0; x < a.n; ++x) {
        if (!s.test(x)) continue;
        for (Element y = 0; y < a.n; ++y)
            if (s.test(y) && !s.test(a.prod(x, y)))
                return {false, "not product-closed", {x, y, a.prod(x, y)}};
    }
    return {};
}

Bitset generated_filter(const Algebra& a, const Bitset& seed) {
    Bitset f = seed;
    f.set(a.top);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Element x = 0; x < a.n; ++x) {
            if (!f.test(x)) continue;
            for (Element y = 0; y < a.n; ++y) {
                if (f.test(y)) {
                    const Element p = a.prod(x, y);
                    if (!f.test(p)) {
                        f.set(p);
                        changed = true;
                    }
                }
                if (a.leq(x, y) && !f.test(y)) {
                    f.set(y);
                    changed = true;
                }
            }
        }
    }
    return f;
}

std::vector<Bitset> enumerate_filters(const Algebra& a, const Caps& caps) {
    if (a.n > caps.carrier) throw size_error("filter enumeration exceeds the size cap");
    std::set<Bitset> seen;
    std::vector<Bitset> work;
    const Bitset trivial = generated_filter(a, Bitset(a.n));
    seen.insert(trivial);
    work.push_back(trivial);
    for (std::size_t i = 0; i < work.size(); ++i) {
        const Bitset f = work[i];
        for (Element x = 0; x < a.n; ++x) {
            if (f.test(x)) continue;
            Bitset g = f;
            g.set(x);
            g = generated_filter(a, g);
            if (seen.insert(g).second) work.push_back(g);
        }
    }
    std::vector<Bitset> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const Bitset& x, const Bitset& y) {
        if (x.count() != y.count()) return x.count() < y.count();
        return x.members() < y.members();
    });
    return out;
}

QuotientResult quotient(const Algebra& a, const Bitset& filter) {
    const FilterCheck chk = is_deductive_filter(a, filter);
    if (!chk.ok) throw precondition_error("not a deductive filter: " + chk.violation);

    auto equiv = [&](Element x, Element y) {
        return filter.test(a.meet(a.impl(x, y), a.impl(y, x)));
    };
    std::vector<int> proj(a.n, -1);
    std::vector<std::vector<Element>> classes;
    for (Element x = 0; x < a.n; ++x) {
        if (proj[x] >= 0) continue;
        const int c = static_cast<int>(classes.size());
        classes.push_back({});
        for (Element y = x; y < a.n; ++y)
            if (proj[y] < 0 && equiv(x, y)) {
                proj[y] = c;
                classes[c].push_back(y);
            }
    }
    // the relation must be an equivalence; transitivity failure would mean
    // the filter check above is broken
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            if ((proj[x] == proj[y]) != equiv(x, y))
                throw internal_error("filter congruence is not an equivalence relation");

    const int m = static_cast<int>(classes.size());
    Algebra q;
    q.n = m;
    q.meet_t.resize(static_cast<std::size_t>(m) * m);
    q.join_t.resize(static_cast<std::size_t>(m) * m);
    q.prod_t.resize(static_cast<std::size_t>(m) * m);
    q.impl_t.resize(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Element x = classes[i][0], y = classes[j][0];
            const std::size_t cell = static_cast<std::size_t>(i) * m + j;
            q.meet_t[cell] = proj[a.meet(x, y)];
            q.join_t[cell] = proj[a.join(x, y)];
            q.prod_t[cell] = proj[a.prod(x, y)];
            q.impl_t[cell] = proj[a.impl(x, y)];
        }
    q.bottom = proj[a.bottom];
    q.top = proj[a.top];

    // well-definedness: representatives must not matter
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y) {
            const std::size_t cell = static_cast<std::size_t>(proj[x]) * m + proj[y];
            if (q.meet_t[cell] != proj[a.meet(x, y)] || q.join_t[cell] != proj[a.join(x, y)] ||
                q.prod_t[cell] != proj[a.prod(x, y)] || q.impl_t[cell] != proj[a.impl(x, y)])
                throw internal_error("quotient operations are not well-defined");
        }
    return {std::move(q), std::move(proj), std::move(classes)};
}

ValuesResult values(const Algebra& a, const Caps& caps) {
    const std::vector<Bitset> filters = enumerate_filters(a, caps);
    std::vector<Bitset> vals;
    for (const Bitset& f : filters) {
        bool is_value = false;
        for (Element x = 0; x < a.n && !is_value; ++x) {
            if (f.test(x)) continue;
            // f must be maximal among the filters omitting x
            bool maximal = true;
            for (const Bitset& g : filters)
                if (f != g && f.subset_of(g) && !g.test(x)) {
                    maximal = false;
                    break;
                }
            if (maximal) is_value = true;
        }
        if (is_value) vals.push_back(f);
    }
    const int k = static_cast<int>(vals.size());
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::uint8_t> rel(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (vals[i].subset_of(vals[j])) rel[i * k + j] = 1;
    return {std::move(vals), make_poset_from_leq(std::move(names), std::move(rel))};
}

SiReport si_analysis(const Algebra& a) {
    SiReport r;

    // least nontrivial deductive filter = intersection of the principal
    // filters of all elements strictly below top, when that is nontrivial
    std::vector<Element> below;
    for (Element x = 0; x < a.n; ++x)
        if (x != a.top) below.push_back(x);
    bool si_filters = false;
    Bitset least(a.n);
    if (!below.empty()) {
        std::vector<bool> inter(a.n, true);
        for (Element x : below) {
            Bitset seed(a.n);
            seed.set(x);
            const Bitset f = generated_filter(a, seed);
            for (Element e = 0; e < a.n; ++e)
                if (!f.test(e)) inter[e] = false;
        }
        Bitset i(a.n);
        for (Element e = 0; e < a.n; ++e)
            if (inter[e]) i.set(e);
        if (i.count() > 1) {
            si_filters = true;
            least = i;
        }
    }

    // unique coatom criterion: a greatest element strictly below top
    std::optional<Element> coatom;
    for (Element c = 0; c < a.n; ++c) {
        if (c == a.top) continue;
        bool greatest = true;
        for (Element x : below)
            if (!a.leq(x, c)) {
                greatest = false;
                break;
            }
        if (greatest) {
            coatom = c;
            break;
        }
    }

    if (si_filters != coatom.has_value())
        throw internal_error("subdirect irreducibility criteria disagree");
    r.is_si = si_filters;
    if (si_filters) r.min_nontrivial_filter = least;
    r.coatom = coatom;
    return r;
}

bool is_prime_filter(const Algebra& a, const Bitset& f) {
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            if (f.test(a.join(x, y)) && !f.test(x) && !f.test(y)) return false;
    return true;
}

}  // namespace rlkit
