#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ualg/classctx.hpp"
#include "ualg/core.hpp"
#include "ualg/term.hpp"

namespace ualg {

// Free algebra of the context's class over a finite variable set, realized
// concretely: the subalgebra generated by the projection tuples inside the
// product over generators C of C^(|C|^vars), where coordinates are the
// variable assignments into each C.
struct FreeAlgebra {
    FiniteAlgebra base;
    int num_vars = 0;
    std::vector<int> var_elements;  // element of base realizing each variable
    std::map<int, Term> witness;    // element -> witness term over the variables
};

FreeAlgebra free_algebra(const ClassContext& k, int vars, std::size_t cap = kDefaultUniverseCap);

// Identity checking over the generators of the context (sound for the
// generated variety, since identities persist under H, S, P).
bool verify_identities(const ClassContext& k,
                       const std::vector<std::pair<Term, Term>>& identities);

// Identity schemas for a candidate term.
std::vector<std::pair<Term, Term>> nu_identities(const Term& t, int arity);
std::vector<std::pair<Term, Term>> pixley_identities(const Term& t);
std::vector<std::pair<Term, Term>> maltsev_identities(const Term& t);

// Pointwise discriminator check on every generator:
// t(a, b, c) = c when a = b, and a otherwise.
bool verify_discriminator(const ClassContext& k, const Term& t);

// Term detection by free-algebra membership.  Each returned term is
// re-verified against its identity schema; a nullopt is an exhausted
// (complete) membership search, never a budget stop.
std::optional<Term> nu_term(const ClassContext& k, int arity, std::size_t cap = kDefaultUniverseCap);
std::optional<Term> pixley_term(const ClassContext& k, std::size_t cap = kDefaultUniverseCap);
std::optional<Term> maltsev_term(const ClassContext& k, std::size_t cap = kDefaultUniverseCap);
std::optional<Term> discriminator_term(const ClassContext& k, std::size_t cap = kDefaultUniverseCap);

// Constructive dichotomy: either the class generates an arithmetical variety
// (Pixley membership succeeds) or the membership failure is turned into a
// candidate weak-ES failure via the full-quotient construction.  Reports
// Inconclusive when the candidate pair is not fully epic, which can happen
// when the dichotomy's hypotheses fail for the context.
Certificate arithmeticity_witness(const ClassContext& k, std::size_t cap = kDefaultUniverseCap);

}  // namespace ualg
