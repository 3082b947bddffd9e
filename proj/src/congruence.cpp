#include "ualg/congruence.hpp"

#include <algorithm>
#include <set>

#include "ualg/union_find.hpp"

namespace ualg {

bool CongruenceSet::contains(const Partition& p) const {
    return std::binary_search(parts.begin(), parts.end(), p);
}

Partition CongruenceSet::join_in(const Partition& a, const Partition& b) const {
    std::optional<Partition> acc;
    for (const Partition& p : parts) {
        if (!a.refines(p) || !b.refines(p)) continue;
        acc = acc ? meet(*acc, p) : p;
    }
    if (!acc) fail(ErrorCode::InvalidArgument, "congruence set has no upper bound for the pair");
    return *acc;
}

bool is_congruence(const FiniteAlgebra& a, const Partition& p) {
    if (p.size() != a.size) fail(ErrorCode::SizeMismatch, "partition size does not match algebra");
    for (std::size_t op = 0; op < a.sig.count(); ++op) {
        int k = a.sig.symbols()[op].arity;
        if (k == 0) continue;
        // Compatibility via one-coordinate substitutions.
        std::vector<int> args(k, 0);
        bool more = true;
        while (more) {
            int base = a.apply(static_cast<int>(op), args);
            for (int i = 0; i < k; ++i) {
                for (int y = 0; y < a.size; ++y) {
                    if (y == args[i] || !p.same(args[i], y)) continue;
                    std::vector<int> alt(args);
                    alt[i] = y;
                    if (!p.same(base, a.apply(static_cast<int>(op), alt))) return false;
                }
            }
            more = false;
            for (int i = k - 1; i >= 0; --i) {
                if (++args[i] < a.size) { more = true; break; }
                args[i] = 0;
            }
        }
    }
    return true;
}

namespace {

Partition cg_closure(const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& seeds) {
    UnionFind uf(a.size);
    for (auto [x, y] : seeds) {
        if (x < 0 || x >= a.size || y < 0 || y >= a.size)
            fail(ErrorCode::InvalidArgument, "congruence generator pair out of range");
        uf.unite(x, y);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t op = 0; op < a.sig.count(); ++op) {
            int k = a.sig.symbols()[op].arity;
            if (k == 0) continue;
            std::vector<int> args(k, 0);
            bool more = true;
            while (more) {
                int base = a.apply(static_cast<int>(op), args);
                for (int i = 0; i < k; ++i) {
                    for (int y = args[i] + 1; y < a.size; ++y) {
                        if (!uf.same(args[i], y)) continue;
                        std::vector<int> alt(args);
                        alt[i] = y;
                        if (uf.unite(base, a.apply(static_cast<int>(op), alt))) changed = true;
                    }
                }
                more = false;
                for (int i = k - 1; i >= 0; --i) {
                    if (++args[i] < a.size) { more = true; break; }
                    args[i] = 0;
                }
            }
        }
    }
    return Partition(uf.roots());
}

}  // namespace

Partition cg_pair(const FiniteAlgebra& a, int x, int y) {
    return cg_closure(a, {{x, y}});
}

Partition cg_set(const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& pairs) {
    return cg_closure(a, pairs);
}

CongruenceSet con_all(const FiniteAlgebra& a, std::size_t cap) {
    std::set<Partition> found;
    found.insert(Partition::identity(a.size));
    for (int x = 0; x < a.size; ++x)
        for (int y = x + 1; y < a.size; ++y) found.insert(cg_pair(a, x, y));

    // Join closure; every congruence is a join of principals, so this is all
    // of Con(A).
    std::vector<Partition> work(found.begin(), found.end());
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Partition jn = join(work[i], work[j]);
            if (found.insert(jn).second) {
                if (found.size() > cap)
                    fail(ErrorCode::SizeOverflow,
                         "congruence lattice exceeds cap " + std::to_string(cap));
                work.push_back(std::move(jn));
            }
        }
    }

    CongruenceSet out;
    out.parent = a.name;
    out.ground_size = a.size;
    out.parts.assign(found.begin(), found.end());
    return out;
}

IrrResult irr(const CongruenceSet& c) {
    IrrResult out;
    for (const Partition& theta : c.parts) {
        if (theta.is_total()) continue;
        std::optional<Partition> above;
        for (const Partition& phi : c.parts) {
            if (phi == theta || !theta.refines(phi)) continue;
            above = above ? meet(*above, phi) : phi;
        }
        if (above && *above != theta) out.meet_irreducible.push_back(theta);
    }
    out.completely_meet_irreducible = out.meet_irreducible;
    return out;
}

namespace {

// Enumerates multisets (non-decreasing index tuples) over [0, m).
bool next_multiset(std::vector<int>& idx, int m) {
    int n = static_cast<int>(idx.size());
    for (int i = n - 1; i >= 0; --i) {
        if (idx[i] + 1 < m) {
            int v = idx[i] + 1;
            for (int j = i; j < n; ++j) idx[j] = v;
            return true;
        }
    }
    return false;
}

}  // namespace

bool n_irreducible(const CongruenceSet& c, const Partition& theta, int n) {
    if (n <= 0) fail(ErrorCode::InvalidArgument, "n must be positive");
    if (!c.contains(theta)) fail(ErrorCode::InvalidArgument, "theta not in the congruence set");

    // Components of a meet equal to theta must lie above it.
    std::vector<Partition> cands;
    for (const Partition& p : c.parts)
        if (theta.refines(p)) cands.push_back(p);
    int m = static_cast<int>(cands.size());

    std::vector<int> idx(n, 0);
    do {
        Partition acc = cands[idx[0]];
        for (int i = 1; i < n; ++i) acc = meet(acc, cands[idx[i]]);
        if (acc != theta) continue;
        bool droppable = false;
        for (int skip = 0; skip < n && !droppable; ++skip) {
            if (skip > 0 && idx[skip] == idx[skip - 1]) continue;  // same component, same result
            Partition rest = Partition::total(theta.size());
            for (int i = 0; i < n; ++i)
                if (i != skip) rest = meet(rest, cands[idx[i]]);
            droppable = (rest == theta);
        }
        if (!droppable) return false;
    } while (next_multiset(idx, m));
    return true;
}

std::optional<std::vector<Partition>> decompose_irreducible(const CongruenceSet& c,
                                                            const Partition& theta, int n) {
    if (!n_irreducible(c, theta, n)) return std::nullopt;

    std::vector<Partition> irrs;
    for (const Partition& p : irr(c).meet_irreducible)
        if (theta.refines(p)) irrs.push_back(p);
    int m = static_cast<int>(irrs.size());

    // Smallest family first, then lexicographically least index combination;
    // the empty meet is the total partition.
    for (int k = 0; k <= n - 1; ++k) {
        std::vector<int> comb(k);
        for (int i = 0; i < k; ++i) comb[i] = i;
        if (k > m) break;
        while (true) {
            Partition acc = Partition::total(theta.size());
            for (int i = 0; i < k; ++i) acc = meet(acc, irrs[comb[i]]);
            if (acc == theta) {
                std::vector<Partition> out;
                for (int i = 0; i < k; ++i) out.push_back(irrs[comb[i]]);
                return out;
            }
            int i = k - 1;
            while (i >= 0 && comb[i] == m - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    // Unreachable for genuine congruence lattices: an n-irreducible element
    // always meets down from at most n-1 meet-irreducibles.
    throw std::logic_error("n-irreducible element without a small decomposition");
}

LatticeProps lattice_props(const CongruenceSet& c) {
    LatticeProps out;
    out.distributive = true;
    out.permuting = true;
    const auto& ps = c.parts;
    for (const Partition& x : ps) {
        for (const Partition& y : ps) {
            for (const Partition& z : ps) {
                Partition lhs = meet(x, c.join_in(y, z));
                Partition rhs = c.join_in(meet(x, y), meet(x, z));
                if (lhs != rhs) { out.distributive = false; goto dist_done; }
            }
        }
    }
dist_done:
    for (const Partition& x : ps) {
        for (const Partition& y : ps) {
            if (!compose_equals(x, y, c.join_in(x, y))) { out.permuting = false; return out; }
        }
    }
    return out;
}

}  // namespace ualg
