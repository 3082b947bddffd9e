#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ualg/errors.hpp"

namespace ualg {

inline constexpr std::size_t kDefaultUniverseCap = 1'000'000;
inline constexpr std::size_t kDefaultLatticeCap = 1'000'000;
inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

// Hard caps on constructed objects.  Exceeding a cap raises SizeOverflow or
// SearchBudgetExceeded; nothing is ever truncated silently.
struct Limits {
    std::size_t universe_cap = kDefaultUniverseCap;
    std::size_t lattice_cap = kDefaultLatticeCap;
    std::uint64_t node_budget = kDefaultNodeBudget;
};

struct OpSym {
    std::string name;
    int arity = 0;
    bool operator==(const OpSym& o) const { return name == o.name && arity == o.arity; }
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<OpSym> symbols);

    const std::vector<OpSym>& symbols() const { return symbols_; }
    std::size_t count() const { return symbols_.size(); }

    // Index of a symbol by name, -1 if absent.
    int index_of(const std::string& name) const;
    int arity_of(const std::string& name) const;  // throws UnknownSymbol

    bool operator==(const Signature& o) const { return symbols_ == o.symbols_; }
    bool operator!=(const Signature& o) const { return !(*this == o); }

private:
    std::vector<OpSym> symbols_;
};

// base^exp with an overflow guard; throws SizeOverflow past cap.
std::size_t checked_pow(std::size_t base, int exp, std::size_t cap);

// Finite algebra on universe {0..size-1}.  Operation tables are flat,
// row-major with the leftmost argument varying slowest: the table index for
// arguments (a1,...,ak) is ((a1*n + a2)*n + ...)*n + ak.
struct FiniteAlgebra {
    std::string name;
    int size = 0;
    Signature sig;
    std::vector<std::vector<int>> tables;  // aligned with sig.symbols()

    bool trivial() const { return size == 1; }

    int apply(int op_index, const std::vector<int>& args) const;

    // Checks all structural invariants: positive size, table lengths equal to
    // size^arity, entries inside the universe.  Throws on violation.
    void validate() const;
};

// Subset of an algebra's universe in canonical form (strictly increasing),
// tagged with the parent algebra's identity.
struct Subset {
    std::string parent;
    int parent_size = 0;
    std::vector<int> elems;

    bool contains(int e) const;
    bool is_universe() const { return static_cast<int>(elems.size()) == parent_size; }
    void validate() const;  // sortedness, no duplicates, range
};

Subset make_subset(const FiniteAlgebra& a, std::vector<int> elems);

}  // namespace ualg
