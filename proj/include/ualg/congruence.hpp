#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/core.hpp"
#include "ualg/partition.hpp"

namespace ualg {

// A duplicate-free, canonically sorted family of verified congruences of one
// algebra, closed under the meets (and for absolute lattices, joins) needed
// by its construction.  Ordered under refinement it is a lattice with meet =
// intersection and join = least member above both.
struct CongruenceSet {
    std::string parent;
    int ground_size = 0;
    std::vector<Partition> parts;  // sorted by canonical encoding

    bool contains(const Partition& p) const;
    // Least member above both arguments (the lattice join of the family).
    Partition join_in(const Partition& a, const Partition& b) const;
};

bool is_congruence(const FiniteAlgebra& a, const Partition& p);

// Least congruence relating a and b: one-coordinate-difference closure over
// a union-find, run to fixpoint.
Partition cg_pair(const FiniteAlgebra& a, int x, int y);

// Least congruence containing all the pairs; same closure engine.
Partition cg_set(const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& pairs);

// Full congruence lattice: principal congruences closed under join, plus the
// identity.  Complete because every congruence is the join of the principal
// congruences below it.
CongruenceSet con_all(const FiniteAlgebra& a, std::size_t cap = kDefaultLatticeCap);

struct IrrResult {
    std::vector<Partition> meet_irreducible;
    std::vector<Partition> completely_meet_irreducible;  // same set in a finite lattice
};

// Meet-irreducible members of a full (relative) congruence lattice.  In the
// finite case theta is meet irreducible iff the meet of everything strictly
// above it stays strictly above (equivalently: unique upper cover).  The top
// never qualifies, by the empty-meet convention.
IrrResult irr(const CongruenceSet& c);

// Whether every way of writing theta as an n-fold meet over members of c has
// a redundant component.  Exhaustive over multisets.
bool n_irreducible(const CongruenceSet& c, const Partition& theta, int n);

// For n-irreducible theta, a family of at most n-1 meet-irreducibles meeting
// to theta (lexicographically least witness, smallest size first); nullopt
// when theta is not n-irreducible.
std::optional<std::vector<Partition>> decompose_irreducible(const CongruenceSet& c,
                                                            const Partition& theta, int n);

struct LatticeProps {
    bool distributive = false;
    bool permuting = false;
};

// Distributivity via the meet-over-join law on all triples; permutability via
// join = relational composition on all pairs.
LatticeProps lattice_props(const CongruenceSet& c);

}  // namespace ualg
