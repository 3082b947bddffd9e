#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace ualg {

// Partition of {0..n-1} in canonical block encoding: block ids are assigned
// by first occurrence scanning elements 0..n-1, so block_of[0] == 0 and each
// new block gets the next id.  Canonicity makes array equality sound, and the
// lexicographic order on block_of arrays is the canonical tie-breaking order
// used throughout.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> block_of);  // relabels into canonical form

    static Partition identity(int n);
    static Partition total(int n);
    // Equivalence closure of the given pairs on {0..n-1}.
    static Partition from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    int size() const { return static_cast<int>(block_of_.size()); }
    int block(int e) const { return block_of_[e]; }
    int num_blocks() const;
    bool same(int a, int b) const { return block_of_[a] == block_of_[b]; }
    const std::vector<int>& block_of() const { return block_of_; }

    bool is_identity() const;
    bool is_total() const;

    // Relation inclusion: every block of *this lies inside a block of other.
    bool refines(const Partition& other) const;

    std::vector<std::vector<int>> blocks() const;

    // Text form: blocks as sorted element lists joined by "|", e.g. "0 1|2".
    std::string to_text() const;
    static Partition parse_text(const std::string& text, int n);

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> block_of_;
};

// Lattice and relation operations on partitions of one ground set.
Partition meet(const Partition& a, const Partition& b);          // intersection of relations
Partition join(const Partition& a, const Partition& b);          // transitive closure of union

// Induced partition on a subset (strictly increasing element list), with the
// result canonicalized in the subset's own re-indexing.
Partition restrict_to(const Partition& theta, const std::vector<int>& elems);

// Whether the relational composition a∘b equals the relation of c.
bool compose_equals(const Partition& a, const Partition& b, const Partition& c);

}  // namespace ualg
