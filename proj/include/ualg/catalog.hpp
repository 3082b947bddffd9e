#pragma once

#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/core.hpp"

namespace ualg::catalog {

// Element names are decorative metadata for human-readable output; all
// semantics use the integer encoding.
struct CatalogEntry {
    std::string key;
    FiniteAlgebra algebra;
    std::vector<std::string> element_names;
};

// The bounded-length lattice construction: inside A1 x 2-chain, A is
// (A1 x {0}) + (up-set of b x {1}) and B is generated by A and (a, 1).
struct DlExample {
    FiniteAlgebra ambient;
    Subset a;
    Subset b;
};

// Builders for recognized keys: chain_lattice(n), chain_semilattice(n),
// boolean(k), implication_of_boolean(k), heyting_chain(n).  Keys are parsed
// from their textual form, e.g. "boolean(2)".
CatalogEntry build(const std::string& key);

bool is_dl_example_key(const std::string& key);
// Key form: dl_example(<lattice key>, a, b) with a strictly below b.
DlExample build_dl_example(const std::string& key);

// Concrete instances exercised by the test suites.
std::vector<CatalogEntry> standard_entries();

// One line per recognized family, for `catalog list`.
std::vector<std::string> family_help();

}  // namespace ualg::catalog
