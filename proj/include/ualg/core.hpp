#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/partition.hpp"
#include "ualg/term.hpp"

namespace ualg {

// Bottom-up evaluation of a term over an algebra's tables.
int eval_term(const FiniteAlgebra& a, const Term& t, const std::vector<int>& env);

// Least subuniverse containing the generators, with a first-discovered
// witness term per element.  Witnesses are found breadth-first (minimal
// application depth), examining symbols in signature order and argument
// tuples in increasing order, so the result is deterministic.
struct GeneratedSubuniverse {
    Subset elements;
    std::vector<int> generators;   // as passed, witnessed by x0, x1, ...
    std::map<int, Term> witness;
};

GeneratedSubuniverse sg(const FiniteAlgebra& a, const std::vector<int>& gens);

// Mixed-radix tuple encoding with earlier factors more significant:
// index = sum a_i * prod_{j>i} n_j.
std::size_t encode_tuple(const std::vector<int>& tuple, const std::vector<int>& radices);
std::vector<int> decode_tuple(std::size_t index, const std::vector<int>& radices);

// Direct product with coordinatewise operations.  The empty product is the
// one-element algebra over the supplied signature.
FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors,
                      std::size_t cap = kDefaultUniverseCap,
                      const std::optional<Signature>& empty_sig = std::nullopt);

struct QuotientResult {
    FiniteAlgebra algebra;
    std::vector<int> projection;  // element -> block id
};

// Quotient by a congruence; checks compatibility and throws NotACongruence
// with the violating operation otherwise.
QuotientResult quotient(const FiniteAlgebra& a, const Partition& theta);

struct InducedResult {
    FiniteAlgebra algebra;
    std::vector<int> carrier;  // new index -> old element (order preserving)
};

// Re-indexed algebra on a closed subset; throws NotClosed with a violating
// application otherwise.
InducedResult induced_subalgebra(const FiniteAlgebra& a, const Subset& s);

// Whether f (total map on a's universe) commutes with every operation.
bool is_hom(const std::vector<int>& f, const FiniteAlgebra& a, const FiniteAlgebra& b);

// Kernel partition of a map.
Partition kernel(const std::vector<int>& f);

// Generated subuniverse inside an implicit product of coordinate algebras
// (all over one signature).  Elements are coordinate tuples; operations are
// evaluated coordinatewise without materializing the ambient product, so the
// ambient size may be astronomically larger than the cap.  Witnesses are held
// as a DAG over element indices and expanded to terms on demand.
struct ProductSg {
    struct Node {
        int var = -1;               // generator index, or
        int op = -1;                // signature symbol index
        std::vector<int> children;  // element indices
    };

    std::vector<std::vector<int>> elements;  // sorted lexicographically
    std::vector<std::vector<int>> generators;
    std::vector<Node> nodes;                 // aligned with elements
    std::vector<std::string> op_names;       // signature symbol names

    bool contains(const std::vector<int>& e) const;
    int index_of(const std::vector<int>& e) const;  // -1 if absent
    Term witness_term(int index) const;
    std::optional<Term> witness_for(const std::vector<int>& e) const;
};

// When stop_at is given, the closure halts at the end of the level in which
// that tuple first appears (its witness is still depth-minimal); a full
// fixpoint run remains the authority for non-membership.
ProductSg sg_product(const std::vector<const FiniteAlgebra*>& coords,
                     const std::vector<std::vector<int>>& gens, std::size_t cap,
                     const std::vector<int>* stop_at = nullptr);

struct MaterializedSub {
    FiniteAlgebra algebra;                   // universe re-indexed along sorted tuples
    std::vector<std::vector<int>> carrier;   // new index -> tuple
    std::map<int, Term> witness;             // new index -> witness term

    int index_of(const std::vector<int>& tuple) const;  // -1 if absent
};

MaterializedSub materialize(const ProductSg& gen, const std::vector<const FiniteAlgebra*>& coords,
                            std::string name);

}  // namespace ualg
